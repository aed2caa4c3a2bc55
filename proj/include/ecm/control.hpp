#pragma once

#include <functional>
#include <string>
#include <vector>

#include "ecm/election.hpp"

namespace ecm {

enum class Ctl { AV, DV, AC, DC, PV, PC, RPC };
enum class Tie { None, TE, TP };

struct ControlType {
    bool constructive = true;
    Ctl kind = Ctl::AV;
    Tie tie = Tie::None;

    std::string name() const;  // e.g. "CCPV-TE"
    static ControlType parse(std::string_view s);
    bool is_partition() const { return kind == Ctl::PV || kind == Ctl::PC || kind == Ctl::RPC; }
    bool has_limit() const { return !is_partition(); }
    bool operator==(const ControlType&) const = default;
};

// All twenty types in a fixed order.
const std::vector<ControlType>& all_control_types();

struct ControlSpec {
    ControlType type;
    std::int64_t limit = 0;
    std::vector<Voter> unregistered;  // AV only
    std::vector<Name> spoilers;       // AC only
    Name p;

    bool operator==(const ControlSpec&) const = default;
};

// voters: added unregistered (AV), deleted registered (DV) or V1 (PV), ascending.
// cands: added spoilers (AC), deleted candidates (DC) or C1 (PC/RPC), as
// universe bits of the compiled election.
struct ControlAction {
    Ctl kind = Ctl::AV;
    std::vector<int> voters;
    CandSet cands = 0;

    bool operator==(const ControlAction&) const = default;
};

// Index-based view of an election plus control spec; validated on construction.
struct Compiled {
    RuleId rule = RuleId::Plurality;
    Universe u;
    CandSet C = 0;  // registered candidates
    CandSet D = 0;  // spoilers
    int p = -1;
    ControlType type;
    std::int64_t limit = 0;

    std::vector<IBallot> reg, unreg;
    std::vector<Weight> regW, unregW;
    std::vector<std::int64_t> regW64, unregW64;
    std::vector<char> regManip, unregManip;
    std::vector<int> regOrd, unregOrd;  // manipulator ordinal or -1
    int mReg = 0, mUnreg = 0;
    bool small = true;

    int m() const { return mReg + mUnreg; }
    int nReg() const { return static_cast<int>(reg.size()); }
    int nUnreg() const { return static_cast<int>(unreg.size()); }
    CandSet ballot_universe() const { return C | D; }
};

Compiled compile(const Election& e, const ControlSpec& spec);

// Manipulator ballots by ordinal: registered manipulators in roll order, then
// unregistered ones. nullptr marks a ballot that was never set.
using Profile = std::vector<const IBallot*>;

CandSet candidates_after(const Compiled& cc, const ControlAction& a);
// Manipulator ordinals whose ballots can influence the outcome of `a`.
std::vector<int> active_manipulators(const Compiled& cc, const ControlAction& a);

struct RoundOne {
    std::vector<CandSet> subWinners;
    std::vector<CandSet> promoted;
    CandSet finalists = 0;
};

RoundOne round_one(const Compiled& cc, const ControlAction& a, const Profile& prof);
CandSet final_round(const Compiled& cc, CandSet finalists, const Profile& prof);

// Full evaluation; `revote` (partition types only) replaces manipulator
// ballots in the final stage.
CandSet evaluate(const Compiled& cc, const ControlAction& a, const Profile& prof,
                 const Profile* revote = nullptr);

// Calls fn on every legal action until it returns false. Returns false if stopped.
bool for_each_action(const Compiled& cc, const std::function<bool(const ControlAction&)>& fn);
std::vector<ControlAction> legal_actions(const Compiled& cc);
Weight count_action_space(const Compiled& cc);

// Name-level API.
std::vector<ControlAction> legal_actions(const ControlSpec& spec, const Election& e);
Weight count_action_space(const ControlSpec& spec, const Election& e);
std::string describe_action(const Compiled& cc, const ControlAction& a);

}  // namespace ecm
