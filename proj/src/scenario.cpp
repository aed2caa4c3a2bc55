#include "ecm/scenario.hpp"

namespace ecm {

const char* mode_name(Mode m) {
    switch (m) {
    case Mode::MPlus: return "M+";
    case Mode::CF: return "CF";
    case Mode::MF: return "MF";
    }
    return "?";
}

Mode parse_mode(std::string_view s) {
    if (s == "M+" || s == "Mplus") return Mode::MPlus;
    if (s == "CF") return Mode::CF;
    if (s == "MF") return Mode::MF;
    fail(ErrorKind::MalformedInput, "unknown scenario mode '" + std::string(s) + "'");
}

void validate_scenario(const Scenario& s, const ControlType& t) {
    if (s.constructive != t.constructive)
        fail(ErrorKind::InvalidScenario, "scenario goal does not match control type " + t.name());
    if (s.revoting && !t.is_partition())
        fail(ErrorKind::InvalidScenario, "revoting needs a partition control type");
}

bool goal_holds(const Compiled& cc, const Scenario& s, const ControlAction& a,
                const Profile& prof, const Profile* revote) {
    if (revote && !s.revoting)
        fail(ErrorKind::InvalidScenario, "revote profile given without revoting");
    return has(evaluate(cc, a, prof, revote), cc.p) == s.constructive;
}

namespace {

std::vector<IBallot> internal_profile(const Compiled& cc, const std::vector<Ballot>& ballots) {
    if (static_cast<int>(ballots.size()) != cc.m())
        fail(ErrorKind::MalformedInput, "profile size does not match manipulator count");
    std::vector<IBallot> out(ballots.size());
    for (std::size_t i = 0; i < ballots.size(); ++i)
        if (!ballots[i].is_blank()) out[i] = to_internal(cc.u, ballots[i]);
    return out;
}

Profile pointers(const std::vector<Ballot>& ext, const std::vector<IBallot>& in) {
    Profile p(in.size(), nullptr);
    for (std::size_t i = 0; i < in.size(); ++i)
        if (!ext[i].is_blank()) p[i] = &in[i];
    return p;
}

}  // namespace

bool goal_holds(const ProblemInstance& inst, const ControlAction& a,
                const std::vector<Ballot>& profile, const std::vector<Ballot>* revote) {
    validate_scenario(inst.scenario, inst.spec.type);
    Compiled cc = compile(inst.election, inst.spec);
    auto in = internal_profile(cc, profile);
    Profile prof = pointers(profile, in);
    if (!revote) return goal_holds(cc, inst.scenario, a, prof);
    auto rin = internal_profile(cc, *revote);
    Profile rev = pointers(*revote, rin);
    return goal_holds(cc, inst.scenario, a, prof, &rev);
}

std::string QuantifierPrefix::symbols() const {
    std::string s;
    for (const auto& b : blocks) s += b.q == Quant::Exists ? "∃" : "∀";
    return s;
}

std::string QuantifierPrefix::describe() const {
    std::string s;
    for (const auto& b : blocks) {
        if (!s.empty()) s += ", ";
        s += b.q == Quant::Exists ? "exists " : "forall ";
        s += b.over == Over::Action ? "action" : b.over == Over::Profile ? "profile" : "revote";
    }
    return s;
}

QuantifierPrefix quantifier_prefix(const Scenario& s, const ControlType& t) {
    validate_scenario(s, t);
    QuantifierPrefix q;
    const Quant adv = s.mode == Mode::MPlus ? Quant::Exists : Quant::ForAll;
    if (s.mode == Mode::MF) {
        q.blocks = {{Quant::ForAll, Over::Profile}, {Quant::Exists, Over::Action}};
    } else {
        q.blocks = {{Quant::Exists, Over::Action}, {adv, Over::Profile}};
    }
    if (s.revoting) q.blocks.push_back({adv, Over::Revote});
    return q;
}

}  // namespace ecm
