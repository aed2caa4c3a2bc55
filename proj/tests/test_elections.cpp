#include <gtest/gtest.h>

#include "builders.hpp"
#include "ecm/rules.hpp"

using namespace ecm;
using namespace ecm::test;

namespace {

WeightedBallots unit(std::initializer_list<Ballot> bs) {
    WeightedBallots out;
    for (const auto& b : bs) out.emplace_back(b, 1);
    return out;
}

}  // namespace

TEST(Winners, PluralitySingleVoter) {
    EXPECT_EQ(winners(RuleId::Plurality, {"a", "b", "p"}, unit({ord({"p", "a", "b"})})),
              (std::set<Name>{"p"}));
}

TEST(Winners, BordaTieBetweenRivals) {
    WeightedBallots b = unit({ord({"a", "b", "p"}), ord({"b", "a", "p"})});
    const std::vector<Name> c{"p", "a", "b"};
    EXPECT_EQ(score(RuleId::Borda, c, b, "p"), 0);
    EXPECT_EQ(score(RuleId::Borda, c, b, "a"), 3);
    EXPECT_EQ(score(RuleId::Borda, c, b, "b"), 3);
    EXPECT_EQ(winners(RuleId::Borda, c, b), (std::set<Name>{"a", "b"}));
}

TEST(Winners, CondorcetCycleHasNoWinner) {
    auto b = unit({ord({"a", "b", "c"}), ord({"b", "c", "a"}), ord({"c", "a", "b"})});
    EXPECT_TRUE(winners(RuleId::Condorcet, {"a", "b", "c"}, b).empty());
}

TEST(Winners, EmptyBallotsScoreRulesAllWin) {
    for (RuleId r : {RuleId::Plurality, RuleId::Approval, RuleId::Veto, RuleId::Borda})
        EXPECT_EQ(winners(r, {"a", "b", "p"}, {}), (std::set<Name>{"a", "b", "p"})) << rule_name(r);
}

TEST(Winners, EmptyBallotsCondorcetNoWinner) {
    EXPECT_TRUE(winners(RuleId::Condorcet, {"a", "p"}, {}).empty());
}

TEST(Winners, CondorcetSingleCandidateWins) {
    EXPECT_EQ(winners(RuleId::Condorcet, {"p"}, unit({ord({"p"})})), (std::set<Name>{"p"}));
}

TEST(Winners, CondorcetStrictMajority) {
    auto b = unit({ord({"p", "a"}), ord({"p", "a"}), ord({"a", "p"})});
    EXPECT_EQ(winners(RuleId::Condorcet, {"a", "p"}, b), (std::set<Name>{"p"}));
    auto tie = unit({ord({"p", "a"}), ord({"a", "p"})});
    EXPECT_TRUE(winners(RuleId::Condorcet, {"a", "p"}, tie).empty());
}

TEST(Winners, InconsistentBallotIsMalformed) {
    try {
        winners(RuleId::Plurality, {"a", "p"}, unit({ord({"p", "x"})}));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::MalformedInput);
    }
}

TEST(Winners, UnknownRuleId) {
    try {
        parse_rule("schulze");
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::UnsupportedRule);
    }
}

TEST(Score, VetoWeighted) {
    WeightedBallots b{{ord({"a", "b", "p"}), 2}};
    const std::vector<Name> c{"a", "b", "p"};
    EXPECT_EQ(score(RuleId::Veto, c, b, "a"), 2);
    EXPECT_EQ(score(RuleId::Veto, c, b, "b"), 2);
    EXPECT_EQ(score(RuleId::Veto, c, b, "p"), 0);
}

TEST(Score, Approval) {
    auto b = unit({appr({"p", "a"}), appr({"p"})});
    const std::vector<Name> c{"a", "b", "p"};
    EXPECT_EQ(score(RuleId::Approval, c, b, "p"), 2);
    EXPECT_EQ(score(RuleId::Approval, c, b, "a"), 1);
    EXPECT_EQ(score(RuleId::Approval, c, b, "b"), 0);
}

TEST(Score, BordaWeightThreeKMinusOne) {
    WeightedBallots b{{ord({"p", "a", "b"}), 2}};  // K = 1
    const std::vector<Name> c{"a", "b", "p"};
    EXPECT_EQ(score(RuleId::Borda, c, b, "p"), 4);
    EXPECT_EQ(score(RuleId::Borda, c, b, "a"), 2);
    EXPECT_EQ(score(RuleId::Borda, c, b, "b"), 0);
}

TEST(Score, CondorcetHasNoScore) {
    try {
        score(RuleId::Condorcet, {"a", "p"}, {}, "p");
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::UnsupportedRule);
    }
}

TEST(Score, BigWeights) {
    Weight big = Weight(1) << 80;
    WeightedBallots b{{ord({"a", "p"}), big}, {ord({"p", "a"}), big + 1}};
    EXPECT_EQ(score(RuleId::Plurality, {"a", "p"}, b, "p"), big + 1);
    EXPECT_EQ(winners(RuleId::Plurality, {"a", "p"}, b), (std::set<Name>{"p"}));
    EXPECT_EQ(winners(RuleId::Condorcet, {"a", "p"}, b), (std::set<Name>{"p"}));
}

TEST(Margin, Examples) {
    auto three = unit({ord({"p", "b"}), ord({"p", "b"}), ord({"p", "b"})});
    EXPECT_EQ(pairwise_margin({"b", "p"}, three, "p", "b"), 3);
    EXPECT_EQ(pairwise_margin({"a", "b"}, unit({ord({"a", "b"}), ord({"b", "a"})}), "a", "b"), 0);
    auto cycle = unit({ord({"a", "b", "c"}), ord({"b", "c", "a"}), ord({"c", "a", "b"})});
    EXPECT_EQ(pairwise_margin({"a", "b", "c"}, cycle, "a", "b"), 1);
}

TEST(Margin, ApprovalRejected) {
    try {
        pairwise_margin({"a", "p"}, unit({appr({"a"})}), "a", "p");
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::UnsupportedRule);
    }
}

TEST(Names, Alphabet) {
    EXPECT_TRUE(valid_name("<q1,01,0>"));
    EXPECT_TRUE(valid_name("Ab_9"));
    EXPECT_FALSE(valid_name(""));
    EXPECT_FALSE(valid_name("a b"));
    EXPECT_FALSE(valid_name("a-b"));
}

// Anonymity, weight splitting and duplication on a few fixed profiles.
TEST(Winners, InvarianceProperties) {
    const std::vector<Name> c{"a", "b", "p"};
    WeightedBallots b{{ord({"a", "b", "p"}), 2}, {ord({"p", "b", "a"}), 1}, {ord({"b", "p", "a"}), 1}};
    for (RuleId r : {RuleId::Plurality, RuleId::Veto, RuleId::Borda, RuleId::Condorcet}) {
        auto w = winners(r, c, b);
        WeightedBallots rev(b.rbegin(), b.rend());
        EXPECT_EQ(winners(r, c, rev), w);
        WeightedBallots split{{ord({"a", "b", "p"}), 1}, {ord({"a", "b", "p"}), 1}, b[1], b[2]};
        EXPECT_EQ(winners(r, c, split), w);
        WeightedBallots dbl = b;
        dbl.insert(dbl.end(), b.begin(), b.end());
        EXPECT_EQ(winners(r, c, dbl), w);
    }
}
