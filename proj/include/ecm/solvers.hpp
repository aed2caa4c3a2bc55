#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ecm/scenario.hpp"

namespace ecm {

enum class SolverTag { Polynomial, NpSearch, Unsupported };
const char* solver_tag_name(SolverTag t);

struct RegistryKey {
    RuleId rule;
    ControlType type;
    Mode mode;
};

// Entries claimed by the direct solvers; everything else is Unsupported.
const std::vector<RegistryKey>& registry_entries();
SolverTag registry_lookup(RuleId rule, const ControlType& type, const Scenario& s);

struct DirectResult {
    bool answer = false;
    std::string solver;
    // Filled by solvers that construct one (plurality M+CCPV-TE).
    std::optional<ControlAction> action;
    std::string action_text;
    std::vector<Ballot> profile;
};

// Dispatches through the registry; throws Unsupported outside it.
DirectResult solve_direct(const ProblemInstance& inst);

bool solve_plurality(const ProblemInstance& inst);
bool solve_approval(const ProblemInstance& inst);
bool solve_condorcet(const ProblemInstance& inst);
bool solve_veto3w(const ProblemInstance& inst);
bool solve_borda3w_cf(const ProblemInstance& inst);

// Manipulator-free control decision.
bool base_control(RuleId rule, const ControlSpec& spec, const Election& e);

}  // namespace ecm
