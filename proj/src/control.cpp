#include "ecm/control.hpp"

#include <algorithm>
#include <bit>
#include <sstream>

#include "ecm/rules.hpp"

namespace ecm {

namespace {

const char* kind_code(Ctl k) {
    switch (k) {
    case Ctl::AV: return "AV";
    case Ctl::DV: return "DV";
    case Ctl::AC: return "AC";
    case Ctl::DC: return "DC";
    case Ctl::PV: return "PV";
    case Ctl::PC: return "PC";
    case Ctl::RPC: return "RPC";
    }
    return "?";
}

}  // namespace

std::string ControlType::name() const {
    std::string s = constructive ? "CC" : "DC";
    s += kind_code(kind);
    if (tie == Tie::TE) s += "-TE";
    if (tie == Tie::TP) s += "-TP";
    return s;
}

ControlType ControlType::parse(std::string_view s) {
    for (const auto& t : all_control_types())
        if (t.name() == s) return t;
    fail(ErrorKind::MalformedInput, "unknown control type '" + std::string(s) + "'");
}

const std::vector<ControlType>& all_control_types() {
    static const std::vector<ControlType> types = [] {
        std::vector<ControlType> v;
        for (bool cc : {true, false}) {
            for (Ctl k : {Ctl::AV, Ctl::DV, Ctl::AC, Ctl::DC})
                v.push_back(ControlType{cc, k, Tie::None});
            for (Ctl k : {Ctl::PV, Ctl::PC, Ctl::RPC})
                for (Tie t : {Tie::TE, Tie::TP}) v.push_back(ControlType{cc, k, t});
        }
        return v;
    }();
    return types;
}

Compiled compile(const Election& e, const ControlSpec& spec) {
    Compiled cc;
    cc.rule = e.rule;
    cc.type = spec.type;
    cc.limit = spec.limit;
    if (e.candidates.empty()) fail(ErrorKind::MalformedInput, "candidate list is empty");
    if (spec.type.kind != Ctl::AC && !spec.spoilers.empty())
        fail(ErrorKind::MalformedInput, "spoiler candidates are only legal for AC");
    if (spec.type.kind != Ctl::AV && !spec.unregistered.empty())
        fail(ErrorKind::MalformedInput, "unregistered voters are only legal for AV");
    if (spec.type.is_partition() && spec.limit != 0)
        fail(ErrorKind::MalformedInput, "partition control carries no limit");
    if (spec.limit < 0) fail(ErrorKind::MalformedInput, "limit must be nonnegative");

    std::vector<Name> all = e.candidates;
    all.insert(all.end(), spec.spoilers.begin(), spec.spoilers.end());
    cc.u = Universe(all);
    cc.C = cc.u.mask_of(e.candidates);
    cc.D = cc.u.mask_of(spec.spoilers);
    cc.p = cc.u.index(spec.p);
    if (cc.p < 0 || !has(cc.C, cc.p))
        fail(ErrorKind::MalformedInput, "distinguished candidate '" + spec.p + "' is not registered");

    const CandSet ballotSet = cc.ballot_universe();
    const int width = popcount(ballotSet);
    auto load = [&](const Voter& v, bool expectRegistered, std::vector<IBallot>& bs,
                    std::vector<Weight>& ws, std::vector<char>& ms, std::vector<int>& ords,
                    int& count) {
        if (v.registered != expectRegistered)
            fail(ErrorKind::MalformedInput, expectRegistered
                                                ? "voter roll holds an unregistered voter"
                                                : "unregistered pool holds a registered voter");
        if (v.weight < 1) fail(ErrorKind::MalformedInput, "weight must be at least 1");
        if (v.manipulator) {
            if (!v.ballot.is_blank())
                fail(ErrorKind::MalformedInput, "manipulator ballot must be blank");
            bs.emplace_back();
            ords.push_back(count++);
        } else {
            if (v.ballot.is_blank())
                fail(ErrorKind::MalformedInput, "nonmanipulative voter has a blank ballot");
            IBallot b = to_internal(cc.u, v.ballot);
            if (b.approval != uses_approval_ballots(cc.rule))
                fail(ErrorKind::MalformedInput, "ballot kind does not match the rule");
            if (!b.approval && static_cast<int>(b.order.size()) != width)
                fail(ErrorKind::MalformedInput, "linear order must rank every candidate");
            bs.push_back(std::move(b));
            ords.push_back(-1);
        }
        ws.push_back(v.weight);
        ms.push_back(v.manipulator ? 1 : 0);
    };
    for (const auto& v : e.voters) load(v, true, cc.reg, cc.regW, cc.regManip, cc.regOrd, cc.mReg);
    int unregCount = 0;
    for (const auto& v : spec.unregistered)
        load(v, false, cc.unreg, cc.unregW, cc.unregManip, cc.unregOrd, unregCount);
    cc.mUnreg = unregCount;
    for (auto& o : cc.unregOrd)
        if (o >= 0) o += cc.mReg;

    std::vector<Weight> ws = cc.regW;
    ws.insert(ws.end(), cc.unregW.begin(), cc.unregW.end());
    cc.small = weights_small(ws);
    for (const auto& w : cc.regW) cc.regW64.push_back(cc.small ? w.convert_to<std::int64_t>() : 0);
    for (const auto& w : cc.unregW) cc.unregW64.push_back(cc.small ? w.convert_to<std::int64_t>() : 0);
    return cc;
}

namespace {

const IBallot* manip_ballot(const Profile& prof, int ord) {
    const IBallot* b = (ord >= 0 && ord < static_cast<int>(prof.size())) ? prof[ord] : nullptr;
    if (!b) fail(ErrorKind::UnresolvedManipulator, "manipulator ballot not set");
    return b;
}

void push_reg(const Compiled& cc, int i, const Profile& prof, std::vector<Vote>& out) {
    const IBallot* b = cc.regManip[i] ? manip_ballot(prof, cc.regOrd[i]) : &cc.reg[i];
    out.push_back(Vote{b, cc.regW64[i], &cc.regW[i]});
}

void push_unreg(const Compiled& cc, int j, const Profile& prof, std::vector<Vote>& out) {
    const IBallot* b = cc.unregManip[j] ? manip_ballot(prof, cc.unregOrd[j]) : &cc.unreg[j];
    out.push_back(Vote{b, cc.unregW64[j], &cc.unregW[j]});
}

std::vector<Vote> all_registered(const Compiled& cc, const Profile& prof) {
    std::vector<Vote> v;
    v.reserve(cc.reg.size());
    for (int i = 0; i < cc.nReg(); ++i) push_reg(cc, i, prof, v);
    return v;
}

CandSet promote(const ControlType& t, CandSet w) {
    if (t.tie == Tie::TE) return popcount(w) == 1 ? w : 0;
    return w;
}

}  // namespace

CandSet candidates_after(const Compiled& cc, const ControlAction& a) {
    switch (cc.type.kind) {
    case Ctl::AC: return cc.C | a.cands;
    case Ctl::DC: return cc.C & ~a.cands;
    default: return cc.C;
    }
}

std::vector<int> active_manipulators(const Compiled& cc, const ControlAction& a) {
    std::vector<int> out;
    for (int i = 0; i < cc.nReg(); ++i) {
        if (!cc.regManip[i]) continue;
        if (cc.type.kind == Ctl::DV && std::binary_search(a.voters.begin(), a.voters.end(), i))
            continue;
        out.push_back(cc.regOrd[i]);
    }
    if (cc.type.kind == Ctl::AV)
        for (int j : a.voters)
            if (cc.unregManip[j]) out.push_back(cc.unregOrd[j]);
    return out;
}

RoundOne round_one(const Compiled& cc, const ControlAction& a, const Profile& prof) {
    RoundOne r;
    const ControlType& t = cc.type;
    if (t.kind == Ctl::PV) {
        std::vector<Vote> v1, v2;
        std::size_t k = 0;
        for (int i = 0; i < cc.nReg(); ++i) {
            bool inV1 = k < a.voters.size() && a.voters[k] == i;
            if (inV1) ++k;
            push_reg(cc, i, prof, inV1 ? v1 : v2);
        }
        r.subWinners = {winners_internal(cc.rule, cc.u, cc.C, v1, cc.small),
                        winners_internal(cc.rule, cc.u, cc.C, v2, cc.small)};
    } else if (t.kind == Ctl::PC || t.kind == Ctl::RPC) {
        std::vector<Vote> v = all_registered(cc, prof);
        CandSet c1 = a.cands & cc.C, c2 = cc.C & ~a.cands;
        r.subWinners.push_back(winners_internal(cc.rule, cc.u, c1, v, cc.small));
        if (t.kind == Ctl::RPC) r.subWinners.push_back(winners_internal(cc.rule, cc.u, c2, v, cc.small));
        if (t.kind == Ctl::PC) r.finalists |= c2;
    } else {
        fail(ErrorKind::InvalidScenario, "round one exists only for partition control");
    }
    for (CandSet w : r.subWinners) {
        r.promoted.push_back(promote(t, w));
        r.finalists |= r.promoted.back();
    }
    return r;
}

CandSet final_round(const Compiled& cc, CandSet finalists, const Profile& prof) {
    std::vector<Vote> v = all_registered(cc, prof);
    return winners_internal(cc.rule, cc.u, finalists, v, cc.small);
}

CandSet evaluate(const Compiled& cc, const ControlAction& a, const Profile& prof,
                 const Profile* revote) {
    if (revote && !cc.type.is_partition())
        fail(ErrorKind::InvalidScenario, "revoting applies only to partition control");
    if (cc.type.is_partition()) {
        RoundOne r = round_one(cc, a, prof);
        return final_round(cc, r.finalists, revote ? *revote : prof);
    }
    std::vector<Vote> v;
    switch (cc.type.kind) {
    case Ctl::AV:
        v = all_registered(cc, prof);
        for (int j : a.voters) push_unreg(cc, j, prof, v);
        break;
    case Ctl::DV: {
        std::size_t k = 0;
        for (int i = 0; i < cc.nReg(); ++i) {
            if (k < a.voters.size() && a.voters[k] == i) { ++k; continue; }
            push_reg(cc, i, prof, v);
        }
        break;
    }
    default:
        v = all_registered(cc, prof);
    }
    return winners_internal(cc.rule, cc.u, candidates_after(cc, a), v, cc.small);
}

namespace {

// Subsets of `items` of size at most k, by size then lexicographically.
bool for_each_subset(const std::vector<int>& items, std::int64_t k,
                     const std::function<bool(const std::vector<int>&)>& fn) {
    const int n = static_cast<int>(items.size());
    const int top = static_cast<int>(std::min<std::int64_t>(k, n));
    std::vector<int> idx, pick;
    for (int s = 0; s <= top; ++s) {
        idx.resize(s);
        for (int i = 0; i < s; ++i) idx[i] = i;
        while (true) {
            pick.clear();
            for (int i : idx) pick.push_back(items[i]);
            if (!fn(pick)) return false;
            int i = s - 1;
            while (i >= 0 && idx[i] == n - s + i) --i;
            if (i < 0) break;
            ++idx[i];
            for (int j = i + 1; j < s; ++j) idx[j] = idx[j - 1] + 1;
        }
    }
    return true;
}

std::vector<int> bits_of(CandSet s) {
    std::vector<int> v;
    for (; s; s &= s - 1) v.push_back(std::countr_zero(s));
    return v;
}

Weight binom(int n, int k) {
    Weight r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

}  // namespace

bool for_each_action(const Compiled& cc, const std::function<bool(const ControlAction&)>& fn) {
    ControlAction a;
    a.kind = cc.type.kind;
    switch (cc.type.kind) {
    case Ctl::AV:
    case Ctl::DV: {
        std::vector<int> items(cc.type.kind == Ctl::AV ? cc.nUnreg() : cc.nReg());
        for (std::size_t i = 0; i < items.size(); ++i) items[i] = static_cast<int>(i);
        return for_each_subset(items, cc.limit, [&](const std::vector<int>& s) {
            a.voters = s;
            return fn(a);
        });
    }
    case Ctl::AC:
    case Ctl::DC: {
        CandSet pool = cc.type.kind == Ctl::AC ? cc.D : cc.C;
        if (cc.type.kind == Ctl::DC && !cc.type.constructive) pool &= ~bit(cc.p);
        return for_each_subset(bits_of(pool), cc.limit, [&](const std::vector<int>& s) {
            a.cands = 0;
            for (int i : s) a.cands |= bit(i);
            return fn(a);
        });
    }
    case Ctl::PV: {
        const int n = cc.nReg();
        if (n == 0) return fn(a);
        if (n - 1 >= 63) fail(ErrorKind::Budget, "too many voters to partition");
        for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << (n - 1)); ++mask) {
            a.voters = {0};
            for (int i = 1; i < n; ++i)
                if ((mask >> (i - 1)) & 1U) a.voters.push_back(i);
            if (!fn(a)) return false;
        }
        return true;
    }
    case Ctl::PC:
    case Ctl::RPC: {
        std::vector<int> cs = bits_of(cc.C);
        CandSet fixed = 0;
        if (cc.type.kind == Ctl::RPC) {
            fixed = bit(cs.front());
            cs.erase(cs.begin());
        }
        const int n = static_cast<int>(cs.size());
        for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
            a.cands = fixed;
            for (int i = 0; i < n; ++i)
                if ((mask >> i) & 1U) a.cands |= bit(cs[i]);
            if (!fn(a)) return false;
        }
        return true;
    }
    }
    return true;
}

std::vector<ControlAction> legal_actions(const Compiled& cc) {
    std::vector<ControlAction> out;
    for_each_action(cc, [&](const ControlAction& a) {
        out.push_back(a);
        return true;
    });
    return out;
}

Weight count_action_space(const Compiled& cc) {
    auto limited = [&](int n) {
        Weight total = 0;
        for (int s = 0; s <= std::min<std::int64_t>(cc.limit, n); ++s) total += binom(n, s);
        return total;
    };
    switch (cc.type.kind) {
    case Ctl::AV: return limited(cc.nUnreg());
    case Ctl::DV: return limited(cc.nReg());
    case Ctl::AC: return limited(popcount(cc.D));
    case Ctl::DC: return limited(popcount(cc.C) - (cc.type.constructive ? 0 : 1));
    case Ctl::PV: return cc.nReg() == 0 ? Weight(1) : Weight(1) << (cc.nReg() - 1);
    case Ctl::PC: return Weight(1) << popcount(cc.C);
    case Ctl::RPC: return Weight(1) << (popcount(cc.C) - 1);
    }
    return 0;
}

std::vector<ControlAction> legal_actions(const ControlSpec& spec, const Election& e) {
    return legal_actions(compile(e, spec));
}

Weight count_action_space(const ControlSpec& spec, const Election& e) {
    return count_action_space(compile(e, spec));
}

std::string describe_action(const Compiled& cc, const ControlAction& a) {
    std::ostringstream os;
    auto list = [&](const std::vector<int>& v) {
        os << '[';
        for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
        os << ']';
    };
    auto names = [&](CandSet s) {
        os << '{';
        auto ns = cc.u.names_of(s);
        for (std::size_t i = 0; i < ns.size(); ++i) os << (i ? "," : "") << ns[i];
        os << '}';
    };
    switch (a.kind) {
    case Ctl::AV: os << "add unregistered voters "; list(a.voters); break;
    case Ctl::DV: os << "delete voters "; list(a.voters); break;
    case Ctl::AC: os << "add candidates "; names(a.cands); break;
    case Ctl::DC: os << "delete candidates "; names(a.cands); break;
    case Ctl::PV: {
        os << "V1=";
        list(a.voters);
        std::vector<int> rest;
        for (int i = 0; i < cc.nReg(); ++i)
            if (!std::binary_search(a.voters.begin(), a.voters.end(), i)) rest.push_back(i);
        os << " V2=";
        list(rest);
        break;
    }
    case Ctl::PC:
    case Ctl::RPC:
        os << "C1=";
        names(a.cands & cc.C);
        os << " C2=";
        names(cc.C & ~a.cands);
        break;
    }
    return os.str();
}

}  // namespace ecm
