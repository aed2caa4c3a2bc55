#pragma once

#include <string>
#include <vector>

#include "ecm/scenario.hpp"

namespace ecm::test {

inline Ballot ord(std::vector<Name> names) { return Ballot::order(std::move(names)); }
inline Ballot appr(std::vector<Name> names) { return Ballot::approval(std::move(names)); }

inline Voter voter(Ballot b, Weight w = 1) { return Voter{std::move(b), std::move(w), false, true}; }
inline Voter manip(Weight w = 1) { return Voter{Ballot::blank(), std::move(w), true, true}; }
inline Voter unreg(Ballot b, Weight w = 1) { return Voter{std::move(b), std::move(w), false, false}; }
inline Voter unreg_manip(Weight w = 1) { return Voter{Ballot::blank(), std::move(w), true, false}; }

inline std::vector<Voter> copies(int n, const Voter& v) { return std::vector<Voter>(n, v); }

inline std::vector<Voter> concat(std::initializer_list<std::vector<Voter>> parts) {
    std::vector<Voter> out;
    for (const auto& p : parts) out.insert(out.end(), p.begin(), p.end());
    return out;
}

inline ProblemInstance instance(RuleId rule, std::vector<Name> cands, std::vector<Voter> voters,
                                const std::string& type, Mode mode, std::int64_t limit = 0,
                                const Name& p = "p") {
    ProblemInstance inst;
    inst.election.rule = rule;
    inst.election.candidates = std::move(cands);
    inst.election.voters = std::move(voters);
    inst.spec.type = ControlType::parse(type);
    inst.spec.limit = limit;
    inst.spec.p = p;
    inst.scenario = Scenario{inst.spec.type.constructive, mode, false};
    return inst;
}

}  // namespace ecm::test
