#include <gtest/gtest.h>

#include "builders.hpp"
#include "ecm/campaign.hpp"
#include "ecm/io.hpp"
#include "ecm/reductions.hpp"

using namespace ecm;
using namespace ecm::test;

namespace {

const char* kMinimal = R"({
  "format_version": 1,
  "system": "plurality",
  "candidates": ["a", "p"],
  "distinguished": "p",
  "control": {"type": "CCDV", "limit": 1},
  "scenario": {"goal": "constructive", "mode": "M+", "revoting": false},
  "voters": [
    {"ballot": ["a", "p"], "weight": 1, "registered": true, "manipulator": false},
    {"ballot": null, "weight": 1, "registered": true, "manipulator": true}
  ]
})";

std::string parse_error(const std::string& text) {
    try {
        parse_instance(text);
    } catch (const Error& e) {
        return e.what();
    }
    return "";
}

std::string replace(std::string s, const std::string& from, const std::string& to) {
    auto at = s.find(from);
    EXPECT_NE(at, std::string::npos);
    return s.replace(at, from.size(), to);
}

}  // namespace

TEST(Io, MinimalDocument) {
    ProblemInstance inst = parse_instance(kMinimal);
    EXPECT_EQ(inst.election.rule, RuleId::Plurality);
    EXPECT_EQ(inst.spec.type.name(), "CCDV");
    EXPECT_EQ(inst.spec.limit, 1);
    ASSERT_EQ(inst.election.voters.size(), 2U);
    EXPECT_TRUE(inst.election.voters[1].ballot.is_blank());
    EXPECT_EQ(parse_instance(serialize_instance(inst)), inst);
}

TEST(Io, ManipulatorBallotMustBeNull) {
    std::string doc = replace(kMinimal, R"("ballot": null)", R"("ballot": ["p", "a"])");
    EXPECT_NE(parse_error(doc).find("$.voters[1].ballot"), std::string::npos);
}

TEST(Io, UnknownFieldRejected) {
    std::string doc = replace(kMinimal, R"("limit": 1)", R"("limit": 1, "budget": 3)");
    EXPECT_NE(parse_error(doc).find("unknown field 'budget'"), std::string::npos);
}

TEST(Io, SyntaxErrorHasOffset) {
    EXPECT_NE(parse_error("{\"format_version\": 1,,}").find("byte 22"), std::string::npos);
}

TEST(Io, WrongVersion) {
    std::string doc = replace(kMinimal, R"("format_version": 1)", R"("format_version": 2)");
    EXPECT_NE(parse_error(doc).find("$.format_version"), std::string::npos);
}

TEST(Io, PartitionTypeTakesNoLimit) {
    std::string doc = replace(kMinimal, R"("type": "CCDV", "limit": 1)", R"("type": "CCPV-TE", "limit": 1)");
    EXPECT_NE(parse_error(doc).find("$.control.limit"), std::string::npos);
}

TEST(Io, ReductionImagesRoundTrip) {
    std::vector<ProblemInstance> imgs{
        partition_to_borda_ccav_mf({1, 3}),
        qbf2_to_nonpartition(parse_formula("(or x1 (not x2))"), ControlType::parse("DCAV"), Mode::CF),
        qbf2_to_nonpartition(parse_formula("(or x1 (not x2))"), ControlType::parse("CCAC"), Mode::MF),
        qbf2_to_ccpv(parse_formula("(or x1 (not x2))"), Tie::TP, Mode::MF),
        qbf3_to_ccpv_tp_mf_revoting(parse_formula("(or x1 x2 x3)"))};
    for (const auto& inst : imgs) {
        const std::string text = serialize_instance(inst);
        EXPECT_EQ(parse_instance(text), inst);
        EXPECT_EQ(serialize_instance(parse_instance(text)), text);
    }
}

TEST(Io, BigWeightsAsStrings) {
    ProblemInstance inst = parse_instance(kMinimal);
    inst.election.voters[0].weight = Weight(1) << 70;
    const std::string text = serialize_instance(inst);
    EXPECT_NE(text.find("\"1180591620717411303424\""), std::string::npos);
    EXPECT_EQ(parse_instance(text), inst);
}

TEST(Io, ApprovalBallotsAreSets) {
    std::string doc = replace(replace(kMinimal, "plurality", "approval"), R"(["a", "p"], "weight")",
                              R"(["p", "a"], "weight")");
    ProblemInstance inst = parse_instance(doc);
    EXPECT_EQ(inst.election.voters[0].ballot, appr({"a", "p"}));
}

TEST(Campaign, BoundsText) {
    Bounds b = parse_bounds("candidates=3,voters=5,manipulators=2,nonmanipulators=3,weights=1:2:3,exact=1");
    EXPECT_EQ(parse_bounds(bounds_text(b)).weights, (std::vector<int>{1, 2, 3}));
    EXPECT_TRUE(b.exact_candidates);
    try {
        parse_bounds("colors=3");
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::Parse);
    }
}

TEST(Campaign, GeneratedInstancesRoundTrip) {
    Bounds b = parse_bounds("candidates=3,voters=3,manipulators=1");
    std::uint64_t n = 0;
    for (const char* t : {"CCAV", "DCAC", "CCPC-TE"})
        generate_instances(RuleId::Approval, ControlType::parse(t), Mode::MF, b, 1, 0,
                           [&](const ProblemInstance& inst) {
                               ++n;
                               ASSERT_EQ(parse_instance(serialize_instance(inst)), inst);
                           });
    EXPECT_GT(n, 100U);
}

TEST(Campaign, EmptyBoundsEmptyReport) {
    CampaignConfig cfg;
    cfg.rules = {RuleId::Plurality};
    cfg.bounds = parse_bounds("candidates=0");
    CampaignReport r = run_campaign(cfg);
    EXPECT_EQ(r.instances, 0U);
    EXPECT_TRUE(r.mismatches.empty());
    EXPECT_TRUE(r.complete);
}

TEST(Campaign, FaultInjectionIsCaught) {
    CampaignConfig cfg;
    cfg.rules = {RuleId::Plurality};
    cfg.types = {ControlType::parse("CCDV")};
    cfg.modes = {Mode::CF};
    cfg.bounds = parse_bounds("candidates=2,voters=2,manipulators=1");
    CampaignReport r = run_campaign(cfg, [](const ProblemInstance&) { return true; });
    ASSERT_FALSE(r.mismatches.empty());
    // The counterexample is a replayable document.
    ProblemInstance replay = parse_instance(r.mismatches[0].instance);
    EXPECT_FALSE(solve_oracle(replay).answer);
}

TEST(Campaign, SeededRandomIsDeterministic) {
    CampaignConfig cfg;
    cfg.rules = {RuleId::Condorcet};
    cfg.types = {ControlType::parse("DCDV")};
    cfg.bounds = parse_bounds("candidates=4,voters=4,manipulators=1");
    cfg.random_instances = 30;
    cfg.seed = 99;
    EXPECT_EQ(report_to_json(run_campaign(cfg)).dump(), report_to_json(run_campaign(cfg)).dump());
}
