#include <gtest/gtest.h>

#include "builders.hpp"
#include "ecm/oracle.hpp"
#include "ecm/reductions.hpp"
#include "ecm/rules.hpp"

using namespace ecm;
using namespace ecm::test;

TEST(GoalHolds, ConstructiveSoleWinner) {
    auto inst = instance(RuleId::Plurality, {"a", "p"}, {voter(ord({"p", "a"}))}, "CCDV", Mode::MPlus, 0);
    EXPECT_TRUE(goal_holds(inst, ControlAction{Ctl::DV, {}, 0}, {}));
}

TEST(GoalHolds, DestructiveAgainstCondorcetWinner) {
    auto inst = instance(RuleId::Condorcet, {"a", "p"}, {voter(ord({"p", "a"}))}, "DCDV", Mode::MPlus, 0);
    EXPECT_FALSE(goal_holds(inst, ControlAction{Ctl::DV, {}, 0}, {}));
}

TEST(GoalHolds, BordaPartitionImageSplitManipulators) {
    auto inst = partition_to_borda_ccav_mf({1, 1});
    ControlAction add_pab{Ctl::AV, {0}, 0};
    std::vector<Ballot> split{ord({"a", "b", "p"}), ord({"b", "a", "p"})};
    EXPECT_FALSE(goal_holds(inst, add_pab, split));
    WeightedBallots wb{{split[0], 1}, {split[1], 1}, {inst.spec.unregistered[0].ballot, 2}};
    EXPECT_EQ(score(RuleId::Borda, {"a", "b", "p"}, wb, "p"), 4);
    EXPECT_EQ(score(RuleId::Borda, {"a", "b", "p"}, wb, "a"), 5);
}

TEST(QuantifierPrefix, Examples) {
    EXPECT_EQ(quantifier_prefix(Scenario{true, Mode::MPlus, false}, ControlType::parse("CCAV")).symbols(), "∃∃");
    EXPECT_EQ(quantifier_prefix(Scenario{true, Mode::CF, false}, ControlType::parse("CCAC")).symbols(), "∃∀");
    EXPECT_EQ(quantifier_prefix(Scenario{true, Mode::MF, true}, ControlType::parse("CCPV-TP")).symbols(), "∀∃∀");
    EXPECT_EQ(quantifier_prefix(Scenario{true, Mode::CF, true}, ControlType::parse("CCPV-TP")).symbols(), "∃∀∀");
}

TEST(QuantifierPrefix, RevotingNeedsPartition) {
    try {
        quantifier_prefix(Scenario{true, Mode::MF, true}, ControlType::parse("CCAV"));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::InvalidScenario);
    }
}

TEST(Scenario, GoalMustMatchType) {
    try {
        validate_scenario(Scenario{false, Mode::CF, false}, ControlType::parse("CCAV"));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::InvalidScenario);
    }
}

TEST(EnumerateProfiles, Counts) {
    auto lin = instance(RuleId::Plurality, {"a", "b", "p"}, {manip()}, "CCDV", Mode::MPlus, 0);
    EXPECT_EQ(count_profiles(lin), 6);
    lin.election.voters.push_back(manip());
    EXPECT_EQ(count_profiles(lin), 36);
    auto ap = instance(RuleId::Approval, {"a", "p"}, {manip(), manip()}, "DCDV", Mode::MPlus, 0);
    EXPECT_EQ(count_profiles(ap), 16);
    int n = 0;
    enumerate_profiles(ap, 100, [&](const std::vector<Ballot>& prof) {
        EXPECT_EQ(prof.size(), 2U);
        ++n;
        return true;
    });
    EXPECT_EQ(n, 16);
}

TEST(EnumerateProfiles, LexicographicOrder) {
    auto inst = instance(RuleId::Plurality, {"a", "b", "p"}, {manip()}, "CCDV", Mode::MPlus, 0);
    std::vector<Ballot> seen;
    enumerate_profiles(inst, 100, [&](const std::vector<Ballot>& prof) {
        seen.push_back(prof[0]);
        return true;
    });
    ASSERT_EQ(seen.size(), 6U);
    EXPECT_EQ(seen.front(), ord({"a", "b", "p"}));
    EXPECT_EQ(seen.back(), ord({"p", "b", "a"}));
}

TEST(EnumerateProfiles, BudgetError) {
    auto inst = instance(RuleId::Plurality, {"a", "b", "p"}, {manip(), manip()}, "CCDV", Mode::MPlus, 0);
    try {
        enumerate_profiles(inst, 35, [](const std::vector<Ballot>&) { return true; });
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::Budget);
        EXPECT_NE(std::string(e.what()).find("36"), std::string::npos);
    }
}

TEST(Oracle, ZeroManipulatorsMatchPlainControl) {
    // 2 a-votes, 1 p-vote, delete one a-vote.
    auto inst = instance(RuleId::Plurality, {"a", "p"},
                         {voter(ord({"a", "p"})), voter(ord({"a", "p"})), voter(ord({"p", "a"}))}, "CCDV",
                         Mode::MPlus, 1);
    for (Mode m : {Mode::MPlus, Mode::CF, Mode::MF}) {
        inst.scenario.mode = m;
        EXPECT_TRUE(solve_oracle(inst).answer);
    }
    inst.spec.limit = 0;
    for (Mode m : {Mode::MPlus, Mode::CF, Mode::MF}) {
        inst.scenario.mode = m;
        EXPECT_FALSE(solve_oracle(inst).answer);
    }
}

TEST(Oracle, BordaPartitionImages) {
    EXPECT_TRUE(solve_oracle(partition_to_borda_ccav_mf({1, 3})).answer);
    EXPECT_FALSE(solve_oracle(partition_to_borda_ccav_mf({1, 1})).answer);
    EXPECT_FALSE(solve_oracle(partition_to_borda_ccav_mf({1, 1, 2})).answer);
}

TEST(Oracle, WitnessesAndCounterexamples) {
    auto inst = instance(RuleId::Plurality, {"a", "p"}, {voter(ord({"a", "p"})), manip()}, "CCDV", Mode::MPlus, 1);
    auto r = solve_oracle(inst);
    ASSERT_TRUE(r.answer);
    EXPECT_EQ(r.witness_kind, "witness");
    ASSERT_TRUE(r.action.has_value());
    EXPECT_TRUE(goal_holds(inst, *r.action, r.profile));

    auto mf = inst;
    mf.scenario.mode = Mode::MF;
    mf.spec.limit = 0;
    auto q = solve_oracle(mf);
    ASSERT_FALSE(q.answer);
    EXPECT_EQ(q.witness_kind, "counterexample");
    ASSERT_EQ(q.profile.size(), 1U);
    EXPECT_FALSE(goal_holds(mf, ControlAction{Ctl::DV, {}, 0}, q.profile));
}

TEST(Oracle, QuantifierWeakening) {
    auto inst = instance(RuleId::Plurality, {"a", "b", "p"},
                         {voter(ord({"a", "b", "p"})), voter(ord({"p", "a", "b"})), manip()}, "CCDV",
                         Mode::MPlus, 1);
    for (int k = 0; k <= 3; ++k) {
        inst.spec.limit = k;
        auto at = [&](Mode m) {
            auto i = inst;
            i.scenario.mode = m;
            return solve_oracle(i).answer;
        };
        const bool mp = at(Mode::MPlus), cf = at(Mode::CF), mf = at(Mode::MF);
        EXPECT_TRUE(!cf || mf);
        EXPECT_TRUE(!mf || mp);
    }
}

TEST(Oracle, RevoteEqualToFirstVoteReproducesNonRevoting) {
    auto inst = instance(RuleId::Plurality, {"a", "b", "p"},
                         {voter(ord({"a", "b", "p"})), voter(ord({"p", "a", "b"})), manip()}, "CCPV-TP",
                         Mode::MPlus);
    Compiled cc = compile(inst.election, inst.spec);
    for (const auto& a : legal_actions(cc))
        for (const auto& b : ballot_space(cc.rule, cc.C)) {
            Profile prof{&b};
            EXPECT_EQ(evaluate(cc, a, prof), evaluate(cc, a, prof, &prof));
        }
}

TEST(Oracle, BudgetRefusesBeforeSearch) {
    auto inst = instance(RuleId::Plurality, {"a", "b", "p"}, {manip(), manip(), manip()}, "CCDV",
                         Mode::CF, 0);
    try {
        solve_oracle(inst, 100);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::Budget);
    }
}
