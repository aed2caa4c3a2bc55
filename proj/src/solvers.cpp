#include "ecm/solvers.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <limits>
#include <map>

namespace ecm {

namespace {

using I = std::int64_t;
using Scores = std::array<I, kMaxCandidates>;

std::vector<int> members(CandSet s) {
    std::vector<int> v;
    for (; s; s &= s - 1) v.push_back(std::countr_zero(s));
    return v;
}

int top_in(const IBallot& b, CandSet s) {
    for (auto i : b.order)
        if (has(s, i)) return i;
    return -1;
}

int bottom_in(const IBallot& b, CandSet s) {
    int last = -1;
    for (auto i : b.order)
        if (has(s, i)) last = i;
    return last;
}

bool prefers(const IBallot& b, int x, int y) {
    for (auto i : b.order) {
        if (i == x) return true;
        if (i == y) return false;
    }
    return false;
}

I ceil_half(I x) { return x >= 0 ? (x + 1) / 2 : -((-x) / 2); }

// ---- shared per-instance data for unit-weight rules ----

struct View {
    const Compiled& cc;
    Scenario sc;
    std::vector<int> C, D;
    int p;
    I mR, mU, k;

    View(const Compiled& c, const Scenario& s)
        : cc(c), sc(s), C(members(c.C)), D(members(c.D)), p(c.p), mR(c.mReg), mU(c.mUnreg),
          k(c.limit) {}

    std::vector<int> others() const {
        std::vector<int> v;
        for (int c : C)
            if (c != p) v.push_back(c);
        return v;
    }

    // Plurality tops over C of nonmanipulative voters.
    Scores tops(bool registered) const {
        Scores s{};
        const auto& bs = registered ? cc.reg : cc.unreg;
        const auto& ms = registered ? cc.regManip : cc.unregManip;
        for (std::size_t i = 0; i < bs.size(); ++i)
            if (!ms[i]) ++s[top_in(bs[i], cc.C)];
        return s;
    }

    Scores approvals(bool registered, int exclude = -1) const {
        Scores s{};
        const auto& bs = registered ? cc.reg : cc.unreg;
        const auto& ms = registered ? cc.regManip : cc.unregManip;
        for (std::size_t i = 0; i < bs.size(); ++i) {
            if (ms[i]) continue;
            if (exclude >= 0 && has(bs[i].approved, exclude)) continue;
            for (CandSet a = bs[i].approved; a; a &= a - 1) ++s[std::countr_zero(a)];
        }
        return s;
    }

    // nm[x][y]: registered nonmanipulative margin of x over y.
    std::vector<std::vector<I>> margins() const {
        const int n = cc.u.size();
        std::vector<std::vector<I>> m(n, std::vector<I>(n, 0));
        for (int i = 0; i < cc.nReg(); ++i) {
            if (cc.regManip[i]) continue;
            const auto& o = cc.reg[i].order;
            for (std::size_t a = 0; a < o.size(); ++a)
                for (std::size_t b = a + 1; b < o.size(); ++b) ++m[o[a]][o[b]], --m[o[b]][o[a]];
        }
        return m;
    }

    // Nonmanipulative voters (registered or not) preferring x to y.
    I count_pref(bool registered, int x, int y) const {
        I n = 0;
        const auto& bs = registered ? cc.reg : cc.unreg;
        const auto& ms = registered ? cc.regManip : cc.unregManip;
        for (std::size_t i = 0; i < bs.size(); ++i)
            if (!ms[i] && prefers(bs[i], x, y)) ++n;
        return n;
    }

    bool coop() const { return sc.mode == Mode::MPlus; }
};

I max_over(const Scores& s, const std::vector<int>& cs) {
    I best = std::numeric_limits<I>::min();
    for (int c : cs) best = std::max(best, s[c]);
    return best;
}

// ---- plurality ----

// Manipulator-free CCPV-TE on scores s with pairwise rivals B.
bool ccpv_te_base(const View& v, const Scores& s, CandSet B) {
    if (v.C.size() == 1) return true;
    if (s[v.p] < 1) return false;
    if (B == 0) return true;
    int rtop = -1;
    for (int r : members(B))
        if (rtop < 0 || s[r] > s[rtop]) rtop = r;
    I s2 = 0;
    for (int y : v.C)
        if (y != v.p && y != rtop) s2 = std::max(s2, s[y]);
    return s[v.p] + s2 >= s[rtop] + 1;
}

// Partition realizing ccpv_te_base for voters whose effective tops are given.
ControlAction ccpv_te_witness(const View& v, const std::vector<int>& top, const Scores& s,
                              CandSet B) {
    const int p = v.p;
    Scores quota{};
    for (int c : v.C)
        if (c != p) quota[c] = std::min(s[c], std::max<I>(0, s[p] - 1));
    if (B != 0) {
        int rtop = -1;
        for (int r : members(B))
            if (rtop < 0 || s[r] > s[rtop]) rtop = r;
        const I rstar = std::max<I>(0, s[rtop] - s[p] + 1);
        if (rstar > 0) {
            int y2 = -1;
            for (int y : v.C)
                if (y != p && y != rtop && (y2 < 0 || s[y] > s[y2])) y2 = y;
            if (y2 >= 0) quota[y2] = has(B, y2) ? s[y2] - rstar : 0;
        }
    }
    std::vector<char> inV1(top.size(), 0);
    for (std::size_t i = 0; i < top.size(); ++i) {
        int t = top[i];
        if (t == p) inV1[i] = 1;
        else if (quota[t] > 0) { inV1[i] = 1; --quota[t]; }
    }
    if (!top.empty() && !inV1[0])
        for (auto& x : inV1) x = !x;
    ControlAction a;
    a.kind = Ctl::PV;
    for (std::size_t i = 0; i < top.size(); ++i)
        if (inV1[i]) a.voters.push_back(static_cast<int>(i));
    return a;
}

IBallot ranking(const View& v, std::vector<int> front, std::vector<int> back) {
    IBallot b;
    for (int c : front) b.order.push_back(static_cast<std::uint8_t>(c));
    for (int c : members(v.cc.ballot_universe()))
        if (std::find(front.begin(), front.end(), c) == front.end() &&
            std::find(back.begin(), back.end(), c) == back.end())
            b.order.push_back(static_cast<std::uint8_t>(c));
    for (int c : back) b.order.push_back(static_cast<std::uint8_t>(c));
    return b;
}

bool plurality(const View& v, DirectResult* out) {
    const ControlType& t = v.cc.type;
    const int p = v.p;
    const auto rest = v.others();
    const Scores s = v.tops(true);
    const Scores u = v.tops(false);
    const I mR = v.mR, mU = v.mU, k = v.k;
    const bool coop = v.coop();
    const I maxRest = rest.empty() ? 0 : max_over(s, rest);

    switch (t.kind) {
    case Ctl::AV:
        if (t.constructive) {
            if (rest.empty()) return true;
            if (coop) return s[p] + mR + std::min(k, u[p] + mU) >= maxRest;
            return s[p] + std::min(k, u[p]) >= maxRest + mR;
        }
        for (int c : rest) {
            if (coop ? s[c] + mR + std::min(k, u[c] + mU) > s[p]
                     : s[c] + std::min(k, u[c]) > s[p] + mR)
                return true;
        }
        return false;
    case Ctl::DV:
        if (t.constructive) {
            if (rest.empty()) return true;
            if (coop) {
                I need = 0;
                for (int c : rest) need += std::max<I>(0, s[c] - (s[p] + mR));
                return need <= k;
            }
            if (v.sc.mode == Mode::CF) {
                const I d = std::min(k, mR), left = mR - d, k2 = k - d, T = s[p] - left;
                if (T < 0) return false;
                I need = 0;
                for (int c : rest) need += std::max<I>(0, s[c] - T);
                return need <= k2;
            }
            int r = rest[0];
            for (int c : rest)
                if (s[c] > s[r]) r = c;
            I need = 0;
            for (int c : rest) need += std::max<I>(0, s[c] + (c == r ? mR : 0) - s[p]);
            return need <= k;
        }
        for (int c : rest) {
            if (coop ? s[c] + mR > s[p] - std::min(k, s[p])
                     : s[c] > s[p] + mR - std::min(k, s[p] + mR))
                return true;
        }
        return false;
    case Ctl::PV:
        break;
    default:
        fail(ErrorKind::Unsupported, "no plurality solver for " + t.name());
    }

    const auto nm = v.margins();
    const I m = mR;
    if (t.constructive) {
        if (rest.empty()) return true;
        if (v.sc.mode == Mode::MPlus) {
            Scores sp = s;
            sp[p] += m;
            CandSet B = 0;
            for (int c : rest)
                if (nm[p][c] + m < 0) B |= bit(c);
            const bool ok = ccpv_te_base(v, sp, B);
            if (ok && out) {
                std::vector<int> top;
                Profile prof(v.cc.m(), nullptr);
                std::vector<IBallot> store(v.cc.m());
                for (int i = 0; i < v.cc.nReg(); ++i) {
                    if (v.cc.regManip[i]) {
                        int o = v.cc.regOrd[i];
                        store[o] = ranking(v, {p}, {});
                        prof[o] = &store[o];
                        top.push_back(p);
                    } else {
                        top.push_back(top_in(v.cc.reg[i], v.cc.C));
                    }
                }
                ControlAction a = ccpv_te_witness(v, top, sp, B);
                if (!has(evaluate(v.cc, a, prof), p))
                    fail(ErrorKind::Unsupported, "internal: CCPV-TE witness does not verify");
                out->action = a;
                out->action_text = describe_action(v.cc, a);
                for (int o = 0; o < v.cc.m(); ++o)
                    out->profile.push_back(to_external(v.cc.u, store[o], v.cc.ballot_universe()));
            }
            return ok;
        }
        CandSet Badv = 0;
        for (int c : rest)
            if (nm[p][c] - m < 0) Badv |= bit(c);
        if (v.sc.mode == Mode::MF) {
            Scores sm = s;
            if (Badv) {
                int r = -1;
                for (int c : members(Badv))
                    if (r < 0 || s[c] > s[r]) r = c;
                sm[r] += m;
            }
            return ccpv_te_base(v, sm, Badv);
        }
        std::vector<int> nonRivals;
        for (int c : rest)
            if (!has(Badv, c)) nonRivals.push_back(c);
        for (I k1 = 0; k1 <= m; ++k1) {
            for (I ap = k1 + 1; ap <= s[p]; ++ap) {
                if (Badv == 0) return true;
                const I tq = ap - k1 - 1, bp = s[p] - ap, k2 = m - k1;
                I rstar = -1;
                int rtop = -1;
                for (int r : members(Badv)) {
                    I L = std::max<I>(0, s[r] - tq);
                    if (L > rstar) { rstar = L; rtop = r; }
                }
                I blocker = bp;
                if (k2 >= 1) {
                    for (int x : nonRivals) blocker = std::max(blocker, s[x]);
                    if (blocker >= rstar + k2) return true;
                } else {
                    for (int y : rest)
                        if (y != rtop) blocker = std::max(blocker, s[y]);
                    if (blocker >= rstar) return true;
                }
            }
        }
        return false;
    }

    // DCPV-TE
    if (rest.empty()) return false;
    Scores sx = s;
    I mm = m;
    CandSet B = 0;
    if (coop) {
        for (int c : rest)
            if (nm[p][c] - m < 0) B |= bit(c);
    } else {
        sx[p] += m;
        mm = 0;
        for (int c : rest)
            if (nm[p][c] + m < 0) B |= bit(c);
    }
    for (int c : rest)
        if (sx[p] <= sx[c] + mm) return true;
    for (std::size_t i = 0; i < rest.size(); ++i)
        for (std::size_t j = i + 1; j < rest.size(); ++j)
            if (sx[p] <= sx[rest[i]] + sx[rest[j]] + mm) return true;
    for (int r : members(B)) {
        if (sx[r] + mm < 1 || sx[p] < 1) continue;
        bool ok = true;
        for (int c : rest)
            if (c != r && sx[c] > sx[p] + sx[r] + mm - 2) { ok = false; break; }
        if (ok) return true;
    }
    return false;
}

// ---- partition DP shared by approval and Condorcet DCPV ----

// Is there a split of the voters with sum(a) >= th over side one and
// sum(b) >= th over side two?
bool split_exists(const std::vector<std::pair<int, int>>& ab, int th) {
    const int n = static_cast<int>(ab.size());
    const int off = n, width = 2 * n + 1;
    const int none = std::numeric_limits<int>::min();
    std::vector<int> best(width, none);
    best[off] = 0;
    for (const auto& [a, b] : ab) {
        std::vector<int> next(width, none);
        for (int s1 = 0; s1 < width; ++s1) {
            if (best[s1] == none) continue;
            int j = s1 + a;
            next[j] = std::max(next[j], best[s1]);
            next[s1] = std::max(next[s1], best[s1] + b);
        }
        best.swap(next);
    }
    for (int s1 = 0; s1 < width; ++s1)
        if (best[s1] != none && s1 - off >= th && best[s1] >= th) return true;
    return false;
}

// ---- approval ----

bool approval(const View& v) {
    const ControlType& t = v.cc.type;
    const int p = v.p;
    const auto rest = v.others();
    const Scores s = v.approvals(true);
    const I m = v.mR, k = v.k;
    const bool coop = v.coop();
    const I maxRest = rest.empty() ? std::numeric_limits<I>::min() : max_over(s, rest);

    switch (t.kind) {
    case Ctl::AC:
        if (t.constructive) {
            if (rest.empty()) return true;
            return coop ? s[p] + m >= maxRest : s[p] >= maxRest + m;
        } else {
            I best = maxRest;
            if (k >= 1 && !v.D.empty()) best = std::max(best, max_over(s, v.D));
            if (rest.empty() && (k < 1 || v.D.empty())) return false;
            return coop ? best + m > s[p] : best > s[p] + m;
        }
    case Ctl::DC:
        if (t.constructive) {
            I n = 0;
            for (int c : rest)
                if (coop ? s[c] > s[p] + m : s[c] + m > s[p]) ++n;
            return n <= k;
        }
        if (rest.empty()) return false;
        return coop ? maxRest + m > s[p] : maxRest > s[p] + m;
    case Ctl::PC:
    case Ctl::RPC:
        if (t.constructive) {
            if (rest.empty()) return true;
            if (t.tie == Tie::TP) return coop ? s[p] + m >= maxRest : s[p] >= maxRest + m;
            int d = rest[0];
            for (int c : rest)
                if (s[c] > s[d]) d = c;
            bool tied = false;
            for (int c : rest)
                if (c != d && s[c] == s[d]) tied = true;
            if (coop) {
                if (s[p] + m >= s[d]) return true;
                for (int e : rest)
                    if (e != d && s[e] + m >= s[d]) return true;
                return false;
            }
            if (m >= 1) return s[p] >= s[d] + m;
            return s[p] >= s[d] || tied;
        }
        if (rest.empty()) return false;
        for (int d : rest) {
            if (t.tie == Tie::TE ? (coop ? s[d] + m >= s[p] : s[d] >= s[p] + m)
                                 : (coop ? s[d] + m > s[p] : s[d] > s[p] + m))
                return true;
        }
        return false;
    case Ctl::AV: {
        if (t.constructive) break;
        const Scores unp = v.approvals(false, p);
        for (int c : rest) {
            if (coop ? s[c] + m - s[p] + std::min(k, unp[c] + v.mU) > 0
                     : s[c] - s[p] - m + std::min(k, unp[c]) > 0)
                return true;
        }
        return false;
    }
    case Ctl::DV: {
        if (t.constructive) break;
        for (int c : rest) {
            I npc = 0;
            for (int i = 0; i < v.cc.nReg(); ++i)
                if (!v.cc.regManip[i] && has(v.cc.reg[i].approved, p) &&
                    !has(v.cc.reg[i].approved, c))
                    ++npc;
            if (coop ? s[c] + m - s[p] + std::min(k, npc) > 0
                     : s[c] - s[p] - m + std::min(k, m + npc) > 0)
                return true;
        }
        return false;
    }
    case Ctl::PV: {
        if (t.constructive) break;
        if (rest.empty()) return false;
        std::vector<CandSet> ballots;
        CandSet manip = coop ? (v.cc.C & ~bit(p)) : bit(p);
        for (int i = 0; i < v.cc.nReg(); ++i)
            ballots.push_back((v.cc.regManip[i] ? manip : v.cc.reg[i].approved) & v.cc.C);
        Scores sigma{};
        for (CandSet b : ballots)
            for (CandSet a = b; a; a &= a - 1) ++sigma[std::countr_zero(a)];
        const bool tp = t.tie == Tie::TP;
        for (int c : rest)
            if (tp ? sigma[c] > sigma[p] : sigma[c] >= sigma[p]) return true;
        for (int c1 : rest)
            for (int c2 : rest) {
                std::vector<std::pair<int, int>> ab;
                for (CandSet b : ballots)
                    ab.push_back({int(has(b, c1)) - int(has(b, p)), int(has(b, c2)) - int(has(b, p))});
                if (split_exists(ab, tp ? 1 : 0)) return true;
            }
        return false;
    }
    }
    fail(ErrorKind::Unsupported, "no approval solver for " + t.name());
}

// ---- Condorcet ----

bool cc_partition_coop(const View& v, const std::vector<std::vector<I>>& nm) {
    const int p = v.p;
    const I m = v.mR;
    const auto Cp = v.others();
    if (Cp.empty()) return true;
    CandSet L = 0;
    for (int c : Cp)
        if (nm[p][c] + m <= 0) L |= bit(c);
    if (Cp.size() == 1) return !has(L, Cp[0]);
    if (L == 0) return true;
    for (int w : Cp) {
        if (has(L, w)) continue;
        bool all = true;
        for (int d : Cp)
            if (d != w && nm[w][d] + m <= 0) { all = false; break; }
        if (all) return true;
    }
    const int n = static_cast<int>(Cp.size());
    std::vector<std::vector<I>> r(n, std::vector<I>(n, 0));
    std::vector<std::vector<char>> edge(n, std::vector<char>(n, 0));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (i == j) continue;
            r[i][j] = std::max<I>(0, ceil_half(m + nm[Cp[i]][Cp[j]]));
            edge[i][j] = r[i][j] <= m;
        }
    std::vector<char> good(n, 0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (i == j || !edge[i][j] || !edge[j][i]) continue;
            if (r[i][j] + r[j][i] <= m) good[i] = good[j] = 1;
        }
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (i == j || !edge[i][j]) continue;
            for (int l = 0; l < n; ++l) {
                if (l == i || l == j || !edge[j][l] || !edge[l][i]) continue;
                if (r[i][j] + r[j][l] + r[l][i] <= 2 * m) good[i] = good[j] = good[l] = 1;
            }
        }
    // Every node must reach a node on a feasible short cycle.
    std::vector<char> reach = good;
    for (bool changed = true; changed;) {
        changed = false;
        for (int i = 0; i < n; ++i) {
            if (reach[i]) continue;
            for (int j = 0; j < n; ++j)
                if (j != i && edge[i][j] && reach[j]) { reach[i] = 1; changed = true; break; }
        }
    }
    return std::all_of(reach.begin(), reach.end(), [](char x) { return x != 0; });
}

bool condorcet(const View& v) {
    const ControlType& t = v.cc.type;
    const int p = v.p;
    const auto rest = v.others();
    const auto nm = v.margins();
    const I m = v.mR, k = v.k;
    const bool coop = v.coop();
    auto weak = [&](int c, I shift) { return nm[p][c] + shift <= 0; };  // p fails to beat c

    switch (t.kind) {
    case Ctl::AC:
        if (t.constructive) {
            for (int c : rest)
                if (coop ? nm[p][c] + m <= 0 : nm[p][c] - m <= 0) return false;
            return true;
        }
        for (int c : rest)
            if (weak(c, coop ? -m : m)) return true;
        if (k >= 1)
            for (int d : v.D)
                if (weak(d, coop ? -m : m)) return true;
        return false;
    case Ctl::DC:
        if (t.constructive) {
            I n = 0;
            for (int c : rest)
                if (weak(c, coop ? m : -m)) ++n;
            return n <= k;
        }
        for (int c : rest)
            if (weak(c, coop ? -m : m)) return true;
        return false;
    case Ctl::PC:
    case Ctl::RPC:
        if (t.constructive) {
            if (coop) return cc_partition_coop(v, nm);
            for (int c : rest) {
                if (nm[p][c] - m > 0) continue;
                bool all = true;
                for (int d : rest)
                    if (d != c && nm[c][d] + m <= 0) { all = false; break; }
                if (all) return false;
            }
            return true;
        }
        for (int c : rest)
            if (weak(c, coop ? -m : m)) return true;
        return false;
    case Ctl::AV:
        if (t.constructive) break;
        for (int c : rest) {
            const I u = v.count_pref(false, c, p);
            if (coop ? nm[p][c] - m - std::min(k, u + v.mU) <= 0
                     : nm[p][c] + m - std::min(k, u) <= 0)
                return true;
        }
        return false;
    case Ctl::DV:
        if (t.constructive) break;
        for (int c : rest) {
            const I n = v.count_pref(true, p, c);
            if (coop ? nm[p][c] - m - std::min(k, n) <= 0
                     : nm[p][c] + m - std::min(k, n + m) <= 0)
                return true;
        }
        return false;
    case Ctl::PV: {
        if (t.constructive) break;
        if (rest.empty()) return false;
        std::vector<const IBallot*> ballots;
        IBallot manip = coop ? ranking(v, {}, {p}) : ranking(v, {p}, {});
        for (int i = 0; i < v.cc.nReg(); ++i)
            ballots.push_back(v.cc.regManip[i] ? &manip : &v.cc.reg[i]);
        for (int c : rest) {
            I mg = 0;
            for (const IBallot* b : ballots) mg += prefers(*b, p, c) ? 1 : -1;
            if (mg <= 0) return true;
        }
        for (int c1 : rest)
            for (int c2 : rest) {
                std::vector<std::pair<int, int>> ab;
                for (const IBallot* b : ballots)
                    ab.push_back({prefers(*b, c1, p) ? 1 : -1, prefers(*b, c2, p) ? 1 : -1});
                if (split_exists(ab, 0)) return true;
            }
        return false;
    }
    }
    fail(ErrorKind::Unsupported, "no Condorcet solver for " + t.name());
}

// ---- weighted veto and Borda, three candidates ----

bool veto3(const Compiled& cc) {
    const int p = cc.p;
    std::array<Weight, kMaxCandidates> veto{};
    for (int i = 0; i < cc.nReg(); ++i)
        veto[cc.regManip[i] ? p : bottom_in(cc.reg[i], cc.C)] += cc.regW[i];
    std::vector<int> rest;
    for (int c : members(cc.C))
        if (c != p) rest.push_back(c);
    if (cc.type.kind == Ctl::AV) {
        std::int64_t used = 0;
        for (int c : rest) {
            Weight deficit = veto[p] - veto[c];
            if (deficit <= 0) continue;
            std::vector<Weight> ws;
            for (int j = 0; j < cc.nUnreg(); ++j)
                if (!cc.unregManip[j] && bottom_in(cc.unreg[j], cc.C) == c) ws.push_back(cc.unregW[j]);
            std::sort(ws.rbegin(), ws.rend());
            std::size_t n = 0;
            while (deficit > 0 && n < ws.size()) deficit -= ws[n++];
            if (deficit > 0) return false;
            used += static_cast<std::int64_t>(n);
        }
        return used <= cc.limit;
    }
    Weight target = std::min(veto[rest[0]], veto[rest[1]]);
    Weight excess = veto[p] - target;
    if (excess <= 0) return true;
    std::vector<Weight> ws;
    for (int i = 0; i < cc.nReg(); ++i)
        if (cc.regManip[i] || bottom_in(cc.reg[i], cc.C) == p) ws.push_back(cc.regW[i]);
    std::sort(ws.rbegin(), ws.rend());
    std::int64_t n = 0;
    while (excess > 0 && n < static_cast<std::int64_t>(ws.size())) excess -= ws[n++];
    return excess <= 0 && n <= cc.limit;
}

bool borda3_cf(const Compiled& cc) {
    const int p = cc.p;
    std::vector<int> rest;
    for (int c : members(cc.C))
        if (c != p) rest.push_back(c);
    IBallot ab, ba;
    ab.order = {static_cast<std::uint8_t>(rest[0]), static_cast<std::uint8_t>(rest[1]),
                static_cast<std::uint8_t>(p)};
    ba.order = {static_cast<std::uint8_t>(rest[1]), static_cast<std::uint8_t>(rest[0]),
                static_cast<std::uint8_t>(p)};
    Profile pa(cc.m(), &ab), pb(cc.m(), &ba);
    return !for_each_action(cc, [&](const ControlAction& a) {
        return !(has(evaluate(cc, a, pa), p) && has(evaluate(cc, a, pb), p));
    });
}

// ---- registry ----

struct Reg {
    std::map<std::tuple<int, std::string, int>, SolverTag> table;
    std::vector<RegistryKey> keys;

    void add(RuleId r, const std::string& type, std::initializer_list<Mode> modes, SolverTag tag) {
        for (Mode m : modes) {
            table[{static_cast<int>(r), type, static_cast<int>(m)}] = tag;
            keys.push_back({r, ControlType::parse(type), m});
        }
    }
};

const Reg& registry() {
    static const Reg reg = [] {
        Reg r;
        const auto all = {Mode::MPlus, Mode::CF, Mode::MF};
        const auto P = SolverTag::Polynomial;
        for (const char* t : {"CCAV", "CCDV", "CCPV-TE", "DCAV", "DCDV", "DCPV-TE"})
            r.add(RuleId::Plurality, t, all, P);
        for (const char* t : {"CCAC", "CCDC", "CCPC-TE", "CCPC-TP", "CCRPC-TE", "CCRPC-TP", "DCAC",
                              "DCDC", "DCPC-TE", "DCPC-TP", "DCRPC-TE", "DCRPC-TP", "DCAV", "DCDV",
                              "DCPV-TE", "DCPV-TP"})
            r.add(RuleId::Approval, t, all, P);
        for (const char* t : {"CCAC", "CCDC", "CCPC-TE", "CCPC-TP", "CCRPC-TE", "CCRPC-TP", "DCAC",
                              "DCDC", "DCAV", "DCDV", "DCPV-TE", "DCPV-TP", "DCPC-TE", "DCPC-TP",
                              "DCRPC-TE", "DCRPC-TP"})
            r.add(RuleId::Condorcet, t, all, P);
        for (const char* t : {"CCAV", "CCDV"}) {
            r.add(RuleId::Veto, t, {Mode::CF, Mode::MF}, P);
            r.add(RuleId::Borda, t, {Mode::CF}, SolverTag::NpSearch);
        }
        return r;
    }();
    return reg;
}

bool unit_weights(const Compiled& cc) {
    for (const auto& w : cc.regW)
        if (w != 1) return false;
    for (const auto& w : cc.unregW)
        if (w != 1) return false;
    return true;
}

Compiled prepare(const ProblemInstance& inst, RuleId expect) {
    if (inst.election.rule != expect)
        fail(ErrorKind::Unsupported, std::string("solver expects rule ") + rule_name(expect));
    if (registry_lookup(inst.election.rule, inst.spec.type, inst.scenario) == SolverTag::Unsupported)
        fail(ErrorKind::Unsupported, std::string("no direct solver for ") + rule_name(expect) + " " +
                                         inst.spec.type.name() + " " + mode_name(inst.scenario.mode) +
                                         (inst.scenario.revoting ? " with revoting" : ""));
    validate_scenario(inst.scenario, inst.spec.type);
    Compiled cc = compile(inst.election, inst.spec);
    if (expect == RuleId::Veto || expect == RuleId::Borda) {
        if (popcount(cc.C) != 3)
            fail(ErrorKind::Unsupported, "three-candidate solver needs exactly three candidates");
    } else if (!unit_weights(cc)) {
        fail(ErrorKind::Unsupported, "direct solver needs unit weights");
    }
    return cc;
}

}  // namespace

const char* solver_tag_name(SolverTag t) {
    switch (t) {
    case SolverTag::Polynomial: return "polynomial";
    case SolverTag::NpSearch: return "np-search";
    case SolverTag::Unsupported: return "unsupported";
    }
    return "?";
}

const std::vector<RegistryKey>& registry_entries() { return registry().keys; }

SolverTag registry_lookup(RuleId rule, const ControlType& type, const Scenario& s) {
    if (s.revoting) return SolverTag::Unsupported;
    const auto& t = registry().table;
    auto it = t.find({static_cast<int>(rule), type.name(), static_cast<int>(s.mode)});
    return it == t.end() ? SolverTag::Unsupported : it->second;
}

bool solve_plurality(const ProblemInstance& inst) {
    Compiled cc = prepare(inst, RuleId::Plurality);
    return plurality(View(cc, inst.scenario), nullptr);
}

bool solve_approval(const ProblemInstance& inst) {
    Compiled cc = prepare(inst, RuleId::Approval);
    return approval(View(cc, inst.scenario));
}

bool solve_condorcet(const ProblemInstance& inst) {
    Compiled cc = prepare(inst, RuleId::Condorcet);
    return condorcet(View(cc, inst.scenario));
}

bool solve_veto3w(const ProblemInstance& inst) { return veto3(prepare(inst, RuleId::Veto)); }

bool solve_borda3w_cf(const ProblemInstance& inst) {
    return borda3_cf(prepare(inst, RuleId::Borda));
}

DirectResult solve_direct(const ProblemInstance& inst) {
    DirectResult r;
    const RuleId rule = inst.election.rule;
    r.solver = std::string(rule_name(rule)) + " " + inst.spec.type.name() + " " +
               mode_name(inst.scenario.mode);
    switch (rule) {
    case RuleId::Plurality: {
        Compiled cc = prepare(inst, rule);
        r.answer = plurality(View(cc, inst.scenario), &r);
        break;
    }
    case RuleId::Approval: r.answer = solve_approval(inst); break;
    case RuleId::Condorcet: r.answer = solve_condorcet(inst); break;
    case RuleId::Veto: r.answer = solve_veto3w(inst); break;
    case RuleId::Borda: r.answer = solve_borda3w_cf(inst); break;
    default: fail(ErrorKind::Unsupported, std::string("no direct solver for ") + rule_name(rule));
    }
    return r;
}

bool base_control(RuleId rule, const ControlSpec& spec, const Election& e) {
    for (const auto& v : e.voters)
        if (v.manipulator) fail(ErrorKind::MalformedInput, "base control takes no manipulators");
    for (const auto& v : spec.unregistered)
        if (v.manipulator) fail(ErrorKind::MalformedInput, "base control takes no manipulators");
    ProblemInstance inst{e, spec, Scenario{spec.type.constructive, Mode::MPlus, false}};
    inst.election.rule = rule;
    if (rule == RuleId::Veto || rule == RuleId::Borda) inst.scenario.mode = Mode::CF;
    return solve_direct(inst).answer;
}

}  // namespace ecm
