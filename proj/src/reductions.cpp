#include "ecm/reductions.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

#include "ecm/artificial.hpp"
#include "ecm/rules.hpp"

namespace ecm {

ProblemInstance pad_zero_manipulators(const ProblemInstance& control, Mode mode) {
    for (const auto& v : control.election.voters)
        if (v.manipulator) fail(ErrorKind::MalformedInput, "control instance has manipulators");
    for (const auto& v : control.spec.unregistered)
        if (v.manipulator) fail(ErrorKind::MalformedInput, "control instance has manipulators");
    ProblemInstance out = control;
    out.scenario.constructive = control.spec.type.constructive;
    out.scenario.mode = mode;
    out.scenario.revoting = false;
    return out;
}

bool solve_manipulation(const ManipulationInstance& mi) {
    const auto& e = mi.election;
    std::vector<std::vector<Name>> space;
    if (uses_approval_ballots(e.rule)) {
        for (std::uint32_t mask = 0; mask < (1U << e.candidates.size()); ++mask) {
            std::vector<Name> a;
            for (std::size_t i = 0; i < e.candidates.size(); ++i)
                if ((mask >> i) & 1U) a.push_back(e.candidates[i]);
            space.push_back(a);
        }
    } else {
        std::vector<Name> c = e.candidates;
        std::sort(c.begin(), c.end());
        do space.push_back(c);
        while (std::next_permutation(c.begin(), c.end()));
    }
    std::vector<std::size_t> manip;
    for (std::size_t i = 0; i < e.voters.size(); ++i)
        if (e.voters[i].manipulator) manip.push_back(i);
    std::vector<std::size_t> pick(manip.size(), 0);
    for (;;) {
        WeightedBallots wb;
        std::size_t j = 0;
        for (std::size_t i = 0; i < e.voters.size(); ++i) {
            const auto& v = e.voters[i];
            if (!v.manipulator) { wb.emplace_back(v.ballot, v.weight); continue; }
            const auto& names = space[pick[j++]];
            wb.emplace_back(uses_approval_ballots(e.rule) ? Ballot::approval(names) : Ballot::order(names),
                            v.weight);
        }
        if (winners(e.rule, e.candidates, wb).count(mi.p) == (mi.constructive ? 1U : 0U)) return true;
        std::size_t d = 0;
        while (d < pick.size() && ++pick[d] == space.size()) pick[d++] = 0;
        if (d == pick.size()) return false;
    }
}

Embedding embed_manipulation(const ManipulationInstance& mi, const ControlType& target, Mode mode) {
    if (target.is_partition())
        fail(ErrorKind::Unsupported, "partition types have no neutral control action");
    const bool flip = mode != Mode::MPlus;
    if (target.constructive != (mi.constructive != flip))
        fail(ErrorKind::InvalidScenario, std::string("target ") + target.name() + " has the wrong goal for " +
                                             mode_name(mode));
    Embedding out;
    out.complement = flip;
    out.instance.election = mi.election;
    out.instance.spec.type = target;
    out.instance.spec.p = mi.p;
    out.instance.spec.limit = 0;
    out.instance.scenario = Scenario{target.constructive, mode, false};
    return out;
}

namespace {

Formula remap(const Formula& f, const std::vector<int>& to) {
    if (f.op == Formula::Op::Var) return Formula::variable(to[f.var]);
    Formula g = f;
    for (auto& k : g.kids) k = remap(k, to);
    return g;
}

std::vector<Name> sorted(std::vector<Name> v) {
    std::sort(v.begin(), v.end());
    return v;
}

Voter nonmanip(std::vector<Name> order) { return Voter{Ballot::order(std::move(order)), 1, false, true}; }
Voter manipulator() { return Voter{Ballot::blank(), 1, true, true}; }

}  // namespace

Formula normalize_blocks(const Formula& f, std::vector<int> blocks, int count) {
    const int z = max_var(f);
    if (blocks.empty()) {
        if (z == 0 || z % count != 0)
            fail(ErrorKind::MalformedInput, "formula has " + std::to_string(z) +
                                                " variables, not divisible into " + std::to_string(count) +
                                                " blocks");
        blocks.assign(count, z / count);
    }
    if (static_cast<int>(blocks.size()) != count)
        fail(ErrorKind::MalformedInput, "expected " + std::to_string(count) + " block sizes");
    for (int b : blocks)
        if (b < 1) fail(ErrorKind::MalformedInput, "block sizes must be positive");
    if (std::accumulate(blocks.begin(), blocks.end(), 0) < z)
        fail(ErrorKind::MalformedInput, "formula uses variables beyond the blocks");
    const int l = *std::max_element(blocks.begin(), blocks.end());
    std::vector<int> to(1, 0);
    for (int b = 0; b < count; ++b)
        for (int i = 0; i < blocks[b]; ++i) to.push_back(b * l + i + 1);
    return pad(remap(f, to), l * count);
}

QbfShape reduction_shape(Mode mode) { return mode == Mode::MF ? QbfShape::AE : QbfShape::EA; }

ProblemInstance qbf2_to_nonpartition(const Formula& f0, const ControlType& type, Mode mode,
                                     const std::vector<int>& blocks) {
    if (type.is_partition()) fail(ErrorKind::Unsupported, "partition types use qbf2_to_ccpv");
    if (mode == Mode::MPlus) fail(ErrorKind::InvalidScenario, "QBF images are CF or MF");
    const Formula f = normalize_blocks(f0, blocks, 2);
    const int l = max_var(f) / 2;
    const int w = bits_for(l);
    const bool voterLayout = type.kind == Ctl::AV || type.kind == Ctl::DV;
    const char layout = voterLayout ? 'V' : (mode == Mode::MF ? 'K' : 'C');
    std::string tag;
    tag += type.constructive ? 'c' : 'd';
    tag += mode == Mode::CF ? 'E' : 'A';
    tag += layout;
    const Name F = encode_formula_name(tag, f);

    ProblemInstance inst;
    inst.election.rule = RuleId::FormulaAC;
    inst.spec.type = type;
    inst.spec.p = F;
    inst.spec.limit = l;
    inst.scenario = Scenario{type.constructive, mode, false};
    auto& e = inst.election;
    e.candidates.push_back(F);

    if (voterLayout) {
        std::vector<Name> slots;
        for (int j = 1; j <= l; ++j) slots.push_back(art::slot_name(j, w));
        e.candidates.insert(e.candidates.end(), slots.begin(), slots.end());
        e.candidates.push_back(art::kDummy);
        e.voters.push_back(manipulator());
        e.voters.push_back(nonmanip(art::slot_sentinel(slots, F)));
        auto& pairs = type.kind == Ctl::AV ? inst.spec.unregistered : e.voters;
        for (int i = 1; i <= l; ++i)
            for (int b = 0; b < 2; ++b) {
                Voter v = nonmanip(art::slot_pair_ballot(i, b, slots, F, art::kDummy));
                v.registered = type.kind != Ctl::AV;
                pairs.push_back(std::move(v));
            }
        return inst;
    }

    if (layout == 'K')
        for (int j = 1; j <= l; ++j) e.candidates.push_back(art::carrier_name(j, w));
    std::vector<Name> pairs;
    for (int i = 1; i <= l; ++i)
        for (int b = 0; b < 2; ++b) pairs.push_back(art::pair_name(i, b, w));
    if (type.kind == Ctl::AC) inst.spec.spoilers = pairs;
    else e.candidates.insert(e.candidates.end(), pairs.begin(), pairs.end());
    e.voters.push_back(manipulator());
    return inst;
}

ProblemInstance qbf2_to_ccpv(const Formula& f0, Tie tie, Mode mode, const std::vector<int>& blocks) {
    if (tie == Tie::None) fail(ErrorKind::MalformedInput, "CCPV needs a tie rule");
    if (mode == Mode::MPlus) fail(ErrorKind::InvalidScenario, "QBF images are CF or MF");
    const Formula f = normalize_blocks(f0, blocks, 2);
    const int k = max_var(f) / 2;
    const int w = bits_for(k);
    const Name F = encode_formula_name(mode == Mode::CF ? "E" : "A", f);

    ProblemInstance inst;
    inst.election.rule = RuleId::FormulaPV;
    inst.spec.type = ControlType{true, Ctl::PV, tie};
    inst.spec.p = F;
    inst.scenario = Scenario{true, mode, false};
    auto& e = inst.election;
    std::vector<Name> slots;
    for (int j = 1; j <= k; ++j) slots.push_back(art::slot_name(j, w));
    e.candidates = {F, art::kEps};
    e.candidates.insert(e.candidates.end(), slots.begin(), slots.end());
    for (int i = 1; i <= k; ++i)
        for (int b = 0; b < 2; ++b)
            for (int copy = 0; copy < 2; ++copy)
                e.voters.push_back(nonmanip(art::slot_pair_ballot(i, b, slots, F, art::kEps)));
    e.voters.push_back(manipulator());
    return inst;
}

ProblemInstance qbf3_to_ccpv_tp_mf_revoting(const Formula& f0, const std::vector<int>& blocks) {
    const Formula f = normalize_blocks(f0, blocks, 3);
    const int k = max_var(f) / 3;
    const int w = bits_for(k);
    const Name F = encode_formula_name("R", f);

    ProblemInstance inst;
    inst.election.rule = RuleId::FormulaRev;
    inst.spec.type = ControlType{true, Ctl::PV, Tie::TP};
    inst.spec.p = F;
    inst.scenario = Scenario{true, Mode::MF, true};
    auto& e = inst.election;
    std::vector<Name> carriers;
    for (int j = 0; j + 1 < k; ++j) carriers.push_back(art::rev_dummy(j, w));
    carriers.push_back(art::kEpsPrime);
    std::vector<Name> tail{art::kEps};
    for (int level = 1; level <= 2; ++level)
        for (int i = 1; i <= k; ++i)
            for (int b = 0; b < 2; ++b) tail.push_back(art::rev_q(level, i, b, w));
    tail = sorted(tail);
    e.candidates = {F};
    e.candidates.insert(e.candidates.end(), carriers.begin(), carriers.end());
    e.candidates.insert(e.candidates.end(), tail.begin(), tail.end());

    // Core part in projection order: the two named candidates, then the
    // remaining carriers by name.
    const std::vector<Name> others = sorted(carriers);
    for (int i = 1; i <= k; ++i)
        for (int b = 0; b < 2; ++b) {
            std::vector<Name> r;
            if (b == 0) r = {carriers[i - 1], F};
            else r = {F, carriers[i - 1]};
            for (const auto& o : others)
                if (o != carriers[i - 1]) r.push_back(o);
            r.insert(r.end(), tail.begin(), tail.end());
            for (int copy = 0; copy < 2; ++copy) e.voters.push_back(nonmanip(r));
        }
    e.voters.push_back(manipulator());
    return inst;
}

bool has_partition(const std::vector<std::int64_t>& weights) {
    const std::int64_t sum = std::accumulate(weights.begin(), weights.end(), std::int64_t{0});
    if (sum % 2 != 0) return false;
    const std::size_t t = weights.size();
    if (t > 30) fail(ErrorKind::Budget, "partition instance too large for enumeration");
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << t); ++mask) {
        std::int64_t s = 0;
        for (std::size_t i = 0; i < t; ++i)
            if ((mask >> i) & 1U) s += weights[i];
        if (2 * s == sum) return true;
    }
    return false;
}

ProblemInstance partition_to_borda_ccav_mf(const std::vector<std::int64_t>& weights) {
    if (weights.empty()) fail(ErrorKind::MalformedInput, "partition instance needs at least one weight");
    for (auto x : weights)
        if (x < 1) fail(ErrorKind::MalformedInput, "partition weights must be positive");
    const std::int64_t sum = std::accumulate(weights.begin(), weights.end(), std::int64_t{0});
    if (sum % 2 != 0) fail(ErrorKind::MalformedInput, "partition weights must have an even sum");
    const std::int64_t K = sum / 2;

    ProblemInstance inst;
    inst.election.rule = RuleId::Borda;
    inst.election.candidates = {"a", "b", "p"};
    inst.spec.type = ControlType{true, Ctl::AV, Tie::None};
    inst.spec.p = "p";
    inst.spec.limit = 1;
    inst.scenario = Scenario{true, Mode::MF, false};
    for (auto x : weights) inst.election.voters.push_back(Voter{Ballot::blank(), x, true, true});
    for (auto order : {std::vector<Name>{"p", "a", "b"}, std::vector<Name>{"p", "b", "a"}})
        inst.spec.unregistered.push_back(Voter{Ballot::order(order), 3 * K - 1, false, false});
    return inst;
}

}  // namespace ecm
