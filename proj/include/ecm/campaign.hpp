#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include <json.hpp>

#include "ecm/oracle.hpp"
#include "ecm/solvers.hpp"

namespace ecm {

struct Bounds {
    int candidates = 3;     // registered plus spoilers
    int voters = 4;         // registered plus unregistered
    int manipulators = 2;
    int nonmanipulators = 4;
    std::vector<int> weights{1};
    bool exact_candidates = false;  // only instances with exactly `candidates`
};

// "candidates=3,voters=4,manipulators=2,weights=1:2:3,exact=1"
Bounds parse_bounds(const std::string& text);
std::string bounds_text(const Bounds& b);

struct CampaignConfig {
    std::vector<RuleId> rules;
    std::vector<ControlType> types;  // empty: every registry type of the rule
    std::vector<Mode> modes;         // empty: every registry mode
    Bounds bounds;
    std::uint64_t seed = 1;
    std::uint64_t budget = kDefaultBudget;
    std::uint64_t random_instances = 0;  // 0: exhaustive
};

struct Mismatch {
    std::string key;
    bool direct = false;
    bool oracle = false;
    std::string instance;  // serialized document
};

struct CaseStats {
    std::uint64_t instances = 0, yes = 0, no = 0, skipped = 0;
};

struct CampaignReport {
    CampaignConfig config;
    std::vector<std::pair<std::string, CaseStats>> cases;  // by registry key order
    std::vector<Mismatch> mismatches;
    std::uint64_t instances = 0;
    bool complete = true;
};

using DirectFn = std::function<bool(const ProblemInstance&)>;

// Direct solver vs oracle on every generated instance. `direct` overrides the
// registry dispatch (used for fault injection).
CampaignReport run_campaign(const CampaignConfig& cfg, const DirectFn& direct = {});

// Instances generated for one (rule, type, mode); exhaustive up to relabeling
// of the non-distinguished candidates, or seeded random.
void generate_instances(RuleId rule, const ControlType& type, Mode mode, const Bounds& b,
                        std::uint64_t seed, std::uint64_t randomCount,
                        const std::function<void(const ProblemInstance&)>& fn);

nlohmann::json report_to_json(const CampaignReport& r);

}  // namespace ecm
