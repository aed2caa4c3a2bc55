#include "ecm/oracle.hpp"

#include <algorithm>
#include <bit>
#include <map>

namespace ecm {

std::vector<IBallot> ballot_space(RuleId rule, CandSet cands) {
    std::vector<IBallot> out;
    std::vector<std::uint8_t> idx;
    for (CandSet s = cands; s; s &= s - 1) idx.push_back(static_cast<std::uint8_t>(std::countr_zero(s)));
    if (uses_approval_ballots(rule)) {
        const std::uint64_t n = idx.size();
        for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
            IBallot b;
            b.approval = true;
            for (std::uint64_t i = 0; i < n; ++i)
                if ((mask >> i) & 1U) b.approved |= bit(idx[i]);
            out.push_back(b);
        }
        return out;
    }
    do {
        IBallot b;
        b.order = idx;
        out.push_back(std::move(b));
    } while (std::next_permutation(idx.begin(), idx.end()));
    return out;
}

namespace {

Weight space_size(RuleId rule, int n) {
    if (uses_approval_ballots(rule)) return Weight(1) << n;
    Weight f = 1;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

Weight power(Weight b, int e) {
    Weight r = 1;
    while (e-- > 0) r *= b;
    return r;
}

void check_budget(const Weight& count, std::uint64_t budget) {
    if (count > budget)
        fail(ErrorKind::Budget, "search needs " + count.str() + " states, budget is " +
                                    std::to_string(budget));
}

// Odometer over assignments of `space` to the ordinals in `ords`; fn returns
// true to stop. Returns true if stopped.
bool assignments(Profile& prof, const std::vector<int>& ords, const std::vector<IBallot>& space,
                 const std::function<bool()>& fn) {
    std::vector<std::size_t> digit(ords.size(), 0);
    for (int o : ords) prof[o] = &space[0];
    while (true) {
        if (fn()) return true;
        int i = static_cast<int>(ords.size()) - 1;
        while (i >= 0 && digit[i] + 1 == space.size()) {
            digit[i] = 0;
            prof[ords[i]] = &space[0];
            --i;
        }
        if (i < 0) return false;
        prof[ords[i]] = &space[++digit[i]];
    }
}

Ballot complete(const Compiled& cc, const IBallot* b) {
    if (!b) return Ballot::blank();
    IBallot full = *b;
    if (!full.approval) {
        CandSet seen = 0;
        for (auto i : full.order) seen |= bit(i);
        for (CandSet s = cc.ballot_universe() & ~seen; s; s &= s - 1)
            full.order.push_back(static_cast<std::uint8_t>(std::countr_zero(s)));
    }
    return to_external(cc.u, full, cc.ballot_universe());
}

std::vector<Ballot> external(const Compiled& cc, const Profile& p) {
    std::vector<Ballot> out;
    for (const IBallot* b : p) out.push_back(complete(cc, b));
    return out;
}

class Search {
public:
    Search(const Compiled& cc, const Scenario& s) : cc_(cc), s_(s) {
        for (int i = 0; i < cc.mReg; ++i) regOrds_.push_back(i);
        for (int i = 0; i < cc.m(); ++i) allOrds_.push_back(i);
    }

    OracleResult run() {
        OracleResult r;
        Profile prof(cc_.m(), nullptr);
        Profile rev(cc_.m(), nullptr);
        switch (s_.mode) {
        case Mode::MPlus:
        case Mode::CF: {
            const bool coop = s_.mode == Mode::MPlus;
            const bool completed = for_each_action(cc_, [&](const ControlAction& a) {
                std::fill(prof.begin(), prof.end(), nullptr);
                bool ok = profile_block(a, prof, rev, coop);
                if (ok) {
                    r.action = a;
                    r.action_text = describe_action(cc_, a);
                    if (coop) {
                        r.profile = external(cc_, prof);
                        if (s_.revoting) r.revote = external(cc_, rev);
                    }
                    r.witness_kind = "witness";
                }
                return !ok;
            });
            r.answer = !completed;
            break;
        }
        case Mode::MF: {
            const auto& space = space_of(cc_.ballot_universe());
            bool broken = assignments(prof, allOrds_, space, [&] {
                bool found = !for_each_action(cc_, [&](const ControlAction& a) {
                    return !after_profile(a, prof, rev, false);
                });
                return !found;
            });
            r.answer = !broken;
            if (broken) {
                r.profile = external(cc_, prof);
                r.witness_kind = "counterexample";
            }
            break;
        }
        }
        r.evaluations = evals_;
        return r;
    }

private:
    const std::vector<IBallot>& space_of(CandSet s) {
        auto it = spaces_.find(s);
        if (it == spaces_.end()) it = spaces_.emplace(s, ballot_space(cc_.rule, s)).first;
        return it->second;
    }

    // Profile quantifier for M+ (exists) or CF (forall).
    bool profile_block(const ControlAction& a, Profile& prof, Profile& rev, bool coop) {
        std::vector<int> active = active_manipulators(cc_, a);
        const auto& space = space_of(candidates_after(cc_, a));
        if (coop) {
            return assignments(prof, active, space, [&] { return after_profile(a, prof, rev, true); });
        }
        return !assignments(prof, active, space, [&] { return !after_profile(a, prof, rev, false); });
    }

    // Goal after action and profile; the optional revote block is existential
    // when coop, universal otherwise.
    bool after_profile(const ControlAction& a, Profile& prof, Profile& rev, bool coop) {
        if (!s_.revoting) {
            ++evals_;
            return has(evaluate(cc_, a, prof), cc_.p) == s_.constructive;
        }
        RoundOne r1 = round_one(cc_, a, prof);
        const auto& space = space_of(r1.finalists);
        std::fill(rev.begin(), rev.end(), nullptr);
        auto goal = [&] {
            ++evals_;
            return has(final_round(cc_, r1.finalists, rev), cc_.p) == s_.constructive;
        };
        if (coop) return assignments(rev, regOrds_, space, goal);
        return !assignments(rev, regOrds_, space, [&] { return !goal(); });
    }

    const Compiled& cc_;
    Scenario s_;
    std::vector<int> regOrds_, allOrds_;
    std::map<CandSet, std::vector<IBallot>> spaces_;
    std::uint64_t evals_ = 0;
};

}  // namespace

Weight count_profiles(const ProblemInstance& inst) {
    Compiled cc = compile(inst.election, inst.spec);
    return power(space_size(cc.rule, popcount(cc.ballot_universe())), cc.m());
}

void enumerate_profiles(const ProblemInstance& inst, std::uint64_t budget,
                        const std::function<bool(const std::vector<Ballot>&)>& fn) {
    Compiled cc = compile(inst.election, inst.spec);
    check_budget(power(space_size(cc.rule, popcount(cc.ballot_universe())), cc.m()), budget);
    auto space = ballot_space(cc.rule, cc.ballot_universe());
    std::vector<int> ords;
    for (int i = 0; i < cc.m(); ++i) ords.push_back(i);
    Profile prof(cc.m(), nullptr);
    assignments(prof, ords, space, [&] { return !fn(external(cc, prof)); });
}

Weight oracle_state_count(const ProblemInstance& inst) {
    Compiled cc = compile(inst.election, inst.spec);
    const int n = popcount(cc.ballot_universe());
    Weight count = count_action_space(cc) * power(space_size(cc.rule, n), cc.m());
    if (inst.scenario.revoting)
        count *= power(space_size(cc.rule, popcount(cc.C)), cc.mReg);
    return count;
}

OracleResult solve_oracle(const ProblemInstance& inst, std::uint64_t budget) {
    validate_scenario(inst.scenario, inst.spec.type);
    Compiled cc = compile(inst.election, inst.spec);
    Weight states = oracle_state_count(inst);
    check_budget(states, budget);
    OracleResult r = Search(cc, inst.scenario).run();
    r.nominal_states = states;
    return r;
}

}  // namespace ecm
