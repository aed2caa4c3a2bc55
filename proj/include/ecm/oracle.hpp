#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "ecm/scenario.hpp"

namespace ecm {

constexpr std::uint64_t kDefaultBudget = 100'000'000;

// Every ballot a manipulator may cast over `cands`: permutations in
// lexicographic order, or approval subsets by ascending mask.
std::vector<IBallot> ballot_space(RuleId rule, CandSet cands);

// Number of full manipulator profiles over the ballot universe.
Weight count_profiles(const ProblemInstance& inst);

// Profiles over the ballot universe, first manipulator varying slowest.
// Throws a budget error when the count exceeds `budget`.
void enumerate_profiles(const ProblemInstance& inst, std::uint64_t budget,
                        const std::function<bool(const std::vector<Ballot>&)>& fn);

struct OracleResult {
    bool answer = false;
    std::optional<ControlAction> action;
    std::string action_text;
    std::vector<Ballot> profile;  // witness (M+) or counterexample (MF)
    std::vector<Ballot> revote;
    std::string witness_kind;     // "witness", "counterexample" or ""
    Weight nominal_states = 0;
    std::uint64_t evaluations = 0;
};

// Nominal search size used for the budget check.
Weight oracle_state_count(const ProblemInstance& inst);

OracleResult solve_oracle(const ProblemInstance& inst, std::uint64_t budget = kDefaultBudget);

}  // namespace ecm
