#pragma once

#include <string>
#include <vector>

#include "ecm/control.hpp"

namespace ecm {

enum class Mode { MPlus, CF, MF };

const char* mode_name(Mode m);  // "M+", "CF", "MF"
Mode parse_mode(std::string_view s);

struct Scenario {
    bool constructive = true;
    Mode mode = Mode::MPlus;
    bool revoting = false;

    bool operator==(const Scenario&) const = default;
};

struct ProblemInstance {
    Election election;
    ControlSpec spec;
    Scenario scenario;

    bool operator==(const ProblemInstance&) const = default;
};

// Goal direction must agree with the control type and revoting needs a
// partition type.
void validate_scenario(const Scenario& s, const ControlType& t);

bool goal_holds(const Compiled& cc, const Scenario& s, const ControlAction& a,
                const Profile& prof, const Profile* revote = nullptr);

// Name-level form; profiles list one ballot per manipulator (registered first,
// then unregistered, each in input order). Inactive manipulators may stay blank.
bool goal_holds(const ProblemInstance& inst, const ControlAction& a,
                const std::vector<Ballot>& profile,
                const std::vector<Ballot>* revote = nullptr);

enum class Quant { Exists, ForAll };
enum class Over { Action, Profile, Revote };

struct QuantBlock {
    Quant q;
    Over over;
};

struct QuantifierPrefix {
    std::vector<QuantBlock> blocks;
    std::string symbols() const;  // e.g. "∃∀∀"
    std::string describe() const; // e.g. "exists action, forall profile"
};

QuantifierPrefix quantifier_prefix(const Scenario& s, const ControlType& t);

}  // namespace ecm
