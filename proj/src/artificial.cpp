#include "ecm/artificial.hpp"

#include <bit>
#include <optional>
#include <unordered_map>

namespace ecm {

std::string binary(int value, int width) {
    std::string s(width, '0');
    for (int i = 0; i < width; ++i)
        if ((value >> i) & 1) s[width - 1 - i] = '1';
    return s;
}

int bits_for(int n) { return n <= 1 ? 1 : static_cast<int>(std::bit_width(static_cast<unsigned>(n))); }

namespace art {

std::string pair_name(int i, int b, int width) { return "v" + binary(i, width) + "_" + std::to_string(b); }
std::string carrier_name(int j, int width) { return "m" + binary(j, width); }
std::string slot_name(int j, int width) { return "c" + binary(j, width); }
std::string rev_dummy(int j, int width) { return "<dummy," + binary(j, width) + ">"; }
std::string rev_q(int level, int i, int b, int width) {
    return "<q" + std::to_string(level) + "," + binary(i, width) + "," + std::to_string(b) + ">";
}

std::vector<Name> slot_pair_ballot(int i, int b, const std::vector<Name>& slots, const Name& f,
                                   const Name& other) {
    std::vector<Name> r{slots[i - 1]};
    if (b == 1) r.push_back(other);
    r.push_back(f);
    for (std::size_t j = 0; j < slots.size(); ++j)
        if (static_cast<int>(j) != i - 1) r.push_back(slots[j]);
    if (b == 0) r.push_back(other);
    return r;
}

std::vector<Name> slot_sentinel(const std::vector<Name>& slots, const Name& f) {
    std::vector<Name> r{kDummy, f};
    r.insert(r.end(), slots.begin(), slots.end());
    return r;
}

}  // namespace art

namespace {

const std::optional<DecodedName>& decoded(const Name& n) {
    thread_local std::unordered_map<Name, std::optional<DecodedName>> cache;
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, decode_formula_name(n)).first;
    return it->second;
}

bool unit_weights(const std::vector<Vote>& votes) {
    for (const auto& v : votes)
        if (*v.big != 1) return false;
    return true;
}

std::vector<std::uint8_t> projected(const IBallot& b, CandSet cands) {
    std::vector<std::uint8_t> r;
    for (auto i : b.order)
        if (has(cands, i)) r.push_back(i);
    return r;
}

bool prefers(const std::vector<std::uint8_t>& order, int a, int b) {
    for (auto i : order) {
        if (i == a) return true;
        if (i == b) return false;
    }
    return false;
}

std::vector<int> members(CandSet s) {
    std::vector<int> v;
    for (; s; s &= s - 1) v.push_back(std::countr_zero(s));
    return v;
}

std::vector<bool> join(const std::vector<bool>& a, const std::vector<bool>& b) {
    std::vector<bool> r = a;
    r.insert(r.end(), b.begin(), b.end());
    return r;
}

// ---- formula-ac ----

CandSet formula_ac(const Universe& u, CandSet cands, const std::vector<Vote>& votes) {
    const int f = std::countr_zero(cands);
    const auto& d = decoded(u.names[f]);
    bool polarityD = d && !d->tag.empty() && d->tag[0] == 'd';
    const CandSet lose = polarityD ? cands : 0;
    if (!d || d->tag.size() != 3 || (d->tag[0] != 'c' && d->tag[0] != 'd') ||
        (d->tag[1] != 'E' && d->tag[1] != 'A') || d->z < 2 || d->z % 2 != 0)
        return lose;
    if (!unit_weights(votes)) return lose;
    const int l = d->z / 2;
    const int w = bits_for(l);
    const char layout = d->tag[2];
    std::vector<int> rest = members(cands & ~bit(f));
    std::vector<bool> chair(l), manip(l);

    if (layout == 'C' || layout == 'K') {
        const int carriers = layout == 'K' ? l : 0;
        if (static_cast<int>(rest.size()) != l + carriers || votes.size() != 1) return lose;
        for (int j = 0; j < carriers; ++j)
            if (u.names[rest[j]] != art::carrier_name(j + 1, w)) return lose;
        for (int i = 1; i <= l; ++i) {
            const Name& n = u.names[rest[carriers + i - 1]];
            if (n == art::pair_name(i, 0, w)) chair[i - 1] = false;
            else if (n == art::pair_name(i, 1, w)) chair[i - 1] = true;
            else return lose;
        }
        auto order = projected(*votes[0].ballot, cands);
        for (int j = 0; j < l; ++j) manip[j] = prefers(order, rest[j], f);
    } else if (layout == 'V') {
        if (static_cast<int>(rest.size()) != l + 1) return lose;
        std::vector<Name> slots;
        for (int j = 0; j < l; ++j) {
            slots.push_back(art::slot_name(j + 1, w));
            if (u.names[rest[j]] != slots.back()) return lose;
        }
        if (u.names[rest[l]] != art::kDummy) return lose;
        if (static_cast<int>(votes.size()) != l + 2) return lose;
        auto names_of = [&](const IBallot& b) {
            std::vector<Name> r;
            for (auto i : projected(b, cands)) r.push_back(u.names[i]);
            return r;
        };
        if (names_of(*votes[1].ballot) != art::slot_sentinel(slots, u.names[f])) return lose;
        for (int i = 1; i <= l; ++i) {
            auto got = names_of(*votes[1 + i].ballot);
            if (got == art::slot_pair_ballot(i, 0, slots, u.names[f], art::kDummy)) chair[i - 1] = false;
            else if (got == art::slot_pair_ballot(i, 1, slots, u.names[f], art::kDummy)) chair[i - 1] = true;
            else return lose;
        }
        auto order = projected(*votes[0].ballot, cands);
        for (int j = 0; j < l; ++j) manip[j] = prefers(order, rest[j], f);
    } else {
        return lose;
    }
    const bool holds = eval(d->formula, d->tag[1] == 'E' ? join(chair, manip) : join(manip, chair));
    return holds != polarityD ? cands : 0;
}

// ---- shared doubling pattern ----

// Classifies each ballot into a pair type 2*(i-1)+b or -1, then checks the
// "k doubles" (extra = false) or "k doubles plus one" (extra = true) shape.
struct Shape {
    bool ok = false;
    std::vector<bool> doubled;  // bit of the doubled type per index
    int extra = -1;             // vote index of the extra ballot
};

Shape doubling(const std::vector<int>& types, int k, bool wantExtra) {
    Shape s;
    const int n = static_cast<int>(types.size());
    if (n != 2 * k + (wantExtra ? 1 : 0)) return s;
    std::vector<int> count(2 * k, 0);
    int nonpair = -1, nonpairs = 0;
    for (int v = 0; v < n; ++v) {
        if (types[v] < 0) { ++nonpairs; nonpair = v; }
        else ++count[types[v]];
    }
    if (nonpairs > (wantExtra ? 1 : 0)) return s;
    bool needExtra = wantExtra && nonpairs == 0;
    int extraType = -1;
    s.doubled.assign(k, false);
    for (int i = 0; i < k; ++i) {
        int c0 = count[2 * i], c1 = count[2 * i + 1];
        if (c0 == 2 && c1 == 0) s.doubled[i] = false;
        else if (c0 == 0 && c1 == 2) s.doubled[i] = true;
        else if (needExtra && c0 + c1 == 3 && (c0 >= 2 || c1 >= 2)) {
            needExtra = false;
            s.doubled[i] = c1 >= 2;
            extraType = (c0 == 3 || c0 == 1) ? 2 * i : 2 * i + 1;
        } else return s;
    }
    if (needExtra) return s;
    if (wantExtra) {
        if (nonpairs == 1) s.extra = nonpair;
        else
            for (int v = 0; v < n; ++v)
                if (types[v] == extraType) { s.extra = v; break; }
    }
    s.ok = true;
    return s;
}

// ---- formula-pv ----

CandSet formula_pv(const Universe& u, CandSet cands, const std::vector<Vote>& votes) {
    const int eps = u.index(art::kEps);
    if (eps < 0 || !has(cands, eps)) return cands;
    const int f = std::countr_zero(cands);
    const auto& d = decoded(u.names[f]);
    if (!d || (d->tag != "E" && d->tag != "A") || d->z < 2 || d->z % 2 != 0) return 0;
    const int k = d->z / 2;
    const int w = bits_for(k);
    std::vector<int> rest = members(cands & ~bit(f) & ~bit(eps));
    if (static_cast<int>(rest.size()) != k) return 0;
    std::vector<Name> slots;
    for (int j = 0; j < k; ++j) {
        slots.push_back(art::slot_name(j + 1, w));
        if (u.names[rest[j]] != slots.back()) return 0;
    }
    if (!unit_weights(votes)) return bit(eps);

    std::vector<std::vector<std::uint8_t>> patterns;
    for (int i = 1; i <= k; ++i)
        for (int b = 0; b < 2; ++b) {
            std::vector<std::uint8_t> p;
            for (const auto& n : art::slot_pair_ballot(i, b, slots, u.names[f], art::kEps))
                p.push_back(static_cast<std::uint8_t>(u.index(n)));
            patterns.push_back(std::move(p));
        }
    std::vector<int> types;
    std::vector<std::vector<std::uint8_t>> orders;
    for (const auto& v : votes) {
        orders.push_back(projected(*v.ballot, cands));
        int t = -1;
        for (std::size_t j = 0; j < patterns.size(); ++j)
            if (orders.back() == patterns[j]) { t = static_cast<int>(j); break; }
        types.push_back(t);
    }
    if (doubling(types, k, false).ok) return 0;
    Shape a = doubling(types, k, true);
    if (!a.ok) return bit(eps);
    std::vector<bool> g(k);
    for (int j = 0; j < k; ++j) g[j] = prefers(orders[a.extra], rest[j], f);
    const bool holds = eval(d->formula, d->tag == "E" ? join(a.doubled, g) : join(g, a.doubled));
    return holds ? bit(f) : 0;
}

// ---- formula-rev ----

CandSet formula_rev(const Universe& u, CandSet cands, const std::vector<Vote>& votes) {
    const int f = std::countr_zero(cands);
    const auto& d = decoded(u.names[f]);
    if (!d || d->tag != "R" || d->z < 3 || d->z % 3 != 0) return 0;
    const int k = d->z / 3;
    const int w = bits_for(k);
    const int eps = u.index(art::kEps), epsp = u.index(art::kEpsPrime);
    if (epsp < 0 || !has(cands, epsp)) return 0;
    const bool first = eps >= 0 && has(cands, eps);

    std::vector<int> carriers;
    for (int j = 0; j + 1 < k; ++j) {
        int c = u.index(art::rev_dummy(j, w));
        if (c < 0 || !has(cands, c)) return 0;
        carriers.push_back(c);
    }
    carriers.push_back(epsp);
    CandSet core = bit(f);
    for (int c : carriers) core |= bit(c);
    std::vector<int> q[3][2];  // q[level][b][i-1]
    for (int level = 1; level <= 2; ++level)
        for (int b = 0; b < 2; ++b)
            for (int i = 1; i <= k; ++i) q[level][b].push_back(u.index(art::rev_q(level, i, b, w)));

    if (!unit_weights(votes)) return first ? bit(eps) : 0;
    std::vector<int> others = members(core & ~bit(f));
    auto pattern = [&](int i, int b) {
        std::vector<std::uint8_t> p;
        const int ci = carriers[i - 1];
        if (b == 0) p = {static_cast<std::uint8_t>(ci), static_cast<std::uint8_t>(f)};
        else p = {static_cast<std::uint8_t>(f), static_cast<std::uint8_t>(ci)};
        for (int o : others)
            if (o != ci) p.push_back(static_cast<std::uint8_t>(o));
        return p;
    };
    std::vector<std::vector<std::uint8_t>> patterns;
    for (int i = 1; i <= k; ++i)
        for (int b = 0; b < 2; ++b) patterns.push_back(pattern(i, b));
    std::vector<int> types;
    std::vector<std::vector<std::uint8_t>> cores;
    for (const auto& v : votes) {
        cores.push_back(projected(*v.ballot, core));
        int t = -1;
        for (std::size_t j = 0; j < patterns.size(); ++j)
            if (cores.back() == patterns[j]) { t = static_cast<int>(j); break; }
        types.push_back(t);
    }
    auto bits_of = [&](const std::vector<std::uint8_t>& order) {
        std::vector<bool> g(k);
        for (int j = 0; j < k; ++j) g[j] = prefers(order, carriers[j], f);
        return g;
    };

    if (first) {
        if (doubling(types, k, false).ok) return 0;
        Shape a = doubling(types, k, true);
        if (!a.ok) return bit(eps);
        std::vector<bool> g = bits_of(cores[a.extra]);
        CandSet out = core;
        for (int i = 0; i < k; ++i) {
            int q1 = q[1][g[i] ? 1 : 0][i], q2 = q[2][a.doubled[i] ? 1 : 0][i];
            if (q1 < 0 || q2 < 0) return 0;
            out |= bit(q1) | bit(q2);
        }
        return out & cands;
    }

    // Final round: the finalist set must be exactly core plus one q1 and one
    // q2 candidate per index, and the votes the doubled pattern plus one.
    std::vector<bool> q1bits(k), q2bits(k);
    CandSet expect = core;
    for (int level = 1; level <= 2; ++level)
        for (int i = 0; i < k; ++i) {
            int c0 = q[level][0][i], c1 = q[level][1][i];
            bool h0 = c0 >= 0 && has(cands, c0), h1 = c1 >= 0 && has(cands, c1);
            if (h0 == h1) return 0;
            (level == 1 ? q1bits : q2bits)[i] = h1;
            expect |= bit(h1 ? c1 : c0);
        }
    if (expect != cands) return 0;
    const int n = static_cast<int>(types.size());
    if (n != 4 * k + 1) return 0;
    std::vector<int> count(2 * k, 0);
    int nonpair = -1, nonpairs = 0;
    for (int v = 0; v < n; ++v) {
        if (types[v] < 0) { ++nonpairs; nonpair = v; }
        else ++count[types[v]];
    }
    int extra = -1;
    if (nonpairs == 1) {
        for (int c : count)
            if (c != 2) return 0;
        extra = nonpair;
    } else if (nonpairs == 0) {
        int three = -1;
        for (int t = 0; t < 2 * k; ++t) {
            if (count[t] == 3 && three < 0) three = t;
            else if (count[t] != 2) return 0;
        }
        if (three < 0) return 0;
        for (int v = 0; v < n; ++v)
            if (types[v] == three) { extra = v; break; }
    } else {
        return 0;
    }
    std::vector<bool> bits = join(join(q1bits, q2bits), bits_of(cores[extra]));
    return eval(d->formula, bits) ? bit(f) : 0;
}

}  // namespace

CandSet artificial_winners(RuleId rule, const Universe& u, CandSet cands,
                           const std::vector<Vote>& votes) {
    if (cands == 0) return 0;
    for (const auto& v : votes)
        if (v.ballot->approval)
            fail(ErrorKind::MalformedInput, "formula rules read linear orders");
    switch (rule) {
    case RuleId::FormulaAC: return formula_ac(u, cands, votes);
    case RuleId::FormulaPV: return formula_pv(u, cands, votes);
    case RuleId::FormulaRev: return formula_rev(u, cands, votes);
    default: fail(ErrorKind::UnsupportedRule, "not a formula rule");
    }
}

}  // namespace ecm
