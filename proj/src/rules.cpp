#include "ecm/rules.hpp"

#include <array>
#include <bit>
#include <type_traits>

#include "ecm/artificial.hpp"

namespace ecm {

namespace {

void require_kind(RuleId rule, const IBallot& b) {
    if (uses_approval_ballots(rule) != b.approval)
        fail(ErrorKind::MalformedInput,
             std::string("ballot kind does not match rule ") + rule_name(rule));
}

template <class N>
N weight_of(const Vote& v) {
    if constexpr (std::is_same_v<N, std::int64_t>) return v.w;
    else return *v.big;
}

template <class N>
CandSet score_winners(RuleId rule, CandSet cands, const std::vector<Vote>& votes) {
    std::array<N, kMaxCandidates> sc{};
    const int k = popcount(cands);
    for (const auto& v : votes) {
        const IBallot& b = *v.ballot;
        require_kind(rule, b);
        N w = weight_of<N>(v);
        switch (rule) {
        case RuleId::Approval:
            for (CandSet s = b.approved & cands; s; s &= s - 1) sc[std::countr_zero(s)] += w;
            break;
        case RuleId::Plurality:
            for (auto i : b.order)
                if (has(cands, i)) { sc[i] += w; break; }
            break;
        case RuleId::Veto: {
            int last = -1;
            for (auto i : b.order) {
                if (!has(cands, i)) continue;
                sc[i] += w;
                last = i;
            }
            if (last >= 0) sc[last] -= w;
            break;
        }
        case RuleId::Borda: {
            int pts = k - 1;
            for (auto i : b.order)
                if (has(cands, i)) sc[i] += w * N(pts--);
            break;
        }
        default: break;
        }
    }
    CandSet best = 0;
    N top{};
    for (CandSet s = cands; s; s &= s - 1) {
        int i = std::countr_zero(s);
        if (best == 0 || sc[i] > top) { top = sc[i]; best = bit(i); }
        else if (sc[i] == top) best |= bit(i);
    }
    return best;
}

template <class N>
CandSet condorcet_winner(CandSet cands, const std::vector<Vote>& votes) {
    if (cands == 0) return 0;
    if (popcount(cands) == 1) return cands;
    if (votes.empty()) return 0;
    std::array<int, kMaxCandidates> local{};
    std::vector<int> present;
    for (CandSet s = cands; s; s &= s - 1) {
        local[std::countr_zero(s)] = static_cast<int>(present.size());
        present.push_back(std::countr_zero(s));
    }
    const std::size_t n = present.size();
    std::vector<N> m(n * n);
    std::vector<int> seen;
    for (const auto& v : votes) {
        const IBallot& b = *v.ballot;
        require_kind(RuleId::Condorcet, b);
        N w = weight_of<N>(v);
        seen.clear();
        for (auto i : b.order) {
            if (!has(cands, i)) continue;
            int li = local[i];
            for (int e : seen) m[e * n + li] += w, m[li * n + e] -= w;
            seen.push_back(li);
        }
    }
    for (std::size_t c = 0; c < n; ++c) {
        bool all = true;
        for (std::size_t d = 0; d < n; ++d)
            if (d != c && !(m[c * n + d] > 0)) { all = false; break; }
        if (all) return bit(present[c]);
    }
    return 0;
}

struct Owned {
    Universe u;
    CandSet cands;
    std::vector<IBallot> ballots;
    std::vector<Weight> weights;
    std::vector<Vote> votes;
    bool small;
};

Owned own(RuleId rule, const std::vector<Name>& candidates, const WeightedBallots& ballots) {
    if (candidates.empty()) fail(ErrorKind::MalformedInput, "candidate list is empty");
    Owned o{Universe(candidates), 0, {}, {}, {}, true};
    o.cands = o.u.all();
    for (const auto& [b, w] : ballots) {
        if (w < 1) fail(ErrorKind::MalformedInput, "weight must be positive");
        IBallot ib = to_internal(o.u, b);
        if (!ib.approval && static_cast<int>(ib.order.size()) != o.u.size())
            fail(ErrorKind::MalformedInput, "linear order is not a permutation of the candidates");
        require_kind(rule, ib);
        o.ballots.push_back(std::move(ib));
        o.weights.push_back(w);
    }
    o.small = weights_small(o.weights);
    for (std::size_t i = 0; i < o.ballots.size(); ++i)
        o.votes.push_back(Vote{&o.ballots[i],
                               o.small ? o.weights[i].convert_to<std::int64_t>() : 0,
                               &o.weights[i]});
    return o;
}

}  // namespace

bool weights_small(const std::vector<Weight>& ws) {
    Weight total = 0;
    for (const auto& w : ws) total += w;
    return total < (Weight(1) << 40);
}

CandSet winners_internal(RuleId rule, const Universe& u, CandSet cands,
                         const std::vector<Vote>& votes, bool small) {
    if (cands == 0) return 0;
    if (is_artificial(rule)) return artificial_winners(rule, u, cands, votes);
    if (rule == RuleId::Condorcet)
        return small ? condorcet_winner<std::int64_t>(cands, votes)
                     : condorcet_winner<Weight>(cands, votes);
    return small ? score_winners<std::int64_t>(rule, cands, votes)
                 : score_winners<Weight>(rule, cands, votes);
}

std::set<Name> winners(RuleId rule, const std::vector<Name>& candidates,
                       const WeightedBallots& ballots) {
    Owned o = own(rule, candidates, ballots);
    auto ws = o.u.names_of(winners_internal(rule, o.u, o.cands, o.votes, o.small));
    return {ws.begin(), ws.end()};
}

Weight score(RuleId rule, const std::vector<Name>& candidates,
             const WeightedBallots& ballots, const Name& c) {
    if (!is_score_rule(rule))
        fail(ErrorKind::UnsupportedRule, std::string("no score function for ") + rule_name(rule));
    Owned o = own(rule, candidates, ballots);
    int ci = o.u.index(c);
    if (ci < 0) fail(ErrorKind::MalformedInput, "unknown candidate '" + c + "'");
    const int k = o.u.size();
    Weight total = 0;
    for (std::size_t i = 0; i < o.ballots.size(); ++i) {
        const IBallot& b = o.ballots[i];
        const Weight& w = o.weights[i];
        if (rule == RuleId::Approval) {
            if (has(b.approved, ci)) total += w;
            continue;
        }
        int pos = 0;
        while (b.order[pos] != ci) ++pos;
        if (rule == RuleId::Plurality && pos == 0) total += w;
        if (rule == RuleId::Veto && pos != k - 1) total += w;
        if (rule == RuleId::Borda) total += w * (k - 1 - pos);
    }
    return total;
}

Weight pairwise_margin(const std::vector<Name>& candidates, const WeightedBallots& ballots,
                       const Name& c, const Name& d) {
    if (c == d) fail(ErrorKind::MalformedInput, "pairwise margin needs two distinct candidates");
    for (const auto& [b, w] : ballots)
        if (b.kind == Ballot::Kind::Approval)
            fail(ErrorKind::UnsupportedRule, "pairwise margin needs linear orders");
    Owned o = own(RuleId::Condorcet, candidates, ballots);
    int ci = o.u.index(c), di = o.u.index(d);
    if (ci < 0 || di < 0) fail(ErrorKind::MalformedInput, "unknown candidate");
    Weight m = 0;
    for (std::size_t i = 0; i < o.ballots.size(); ++i) {
        for (auto x : o.ballots[i].order) {
            if (x == ci) { m += o.weights[i]; break; }
            if (x == di) { m -= o.weights[i]; break; }
        }
    }
    return m;
}

}  // namespace ecm
