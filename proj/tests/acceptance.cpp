// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on failure.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>

#include "builders.hpp"
#include "ecm/campaign.hpp"
#include "ecm/io.hpp"
#include "ecm/reductions.hpp"
#include "ecm/rules.hpp"

using namespace ecm;
using namespace ecm::test;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
};

Outcome campaign(std::vector<RuleId> rules, const std::string& bounds) {
    CampaignConfig cfg;
    cfg.rules = std::move(rules);
    cfg.bounds = parse_bounds(bounds);
    CampaignReport r = run_campaign(cfg);
    std::uint64_t skipped = 0;
    for (const auto& [name, st] : r.cases) skipped += st.skipped;
    std::ostringstream s;
    s << r.cases.size() << " cases, " << r.instances << " instances, " << r.mismatches.size()
      << " mismatches, " << skipped << " skipped";
    if (!r.mismatches.empty()) s << "; first: " << r.mismatches[0].key;
    return {r.mismatches.empty() && skipped == 0 && r.complete && r.instances > 0, s.str()};
}

constexpr const char* kWeighted3 = "candidates=3,exact=1,voters=5,manipulators=2,nonmanipulators=3,weights=1:2:3";

// ---- criterion 5 ----

Outcome borda_fixtures() {
    Outcome out;
    std::ostringstream s;
    struct Fixture {
        std::vector<std::int64_t> w;
        bool answer;
    };
    for (const Fixture& f : {Fixture{{1, 1}, false}, Fixture{{1, 3}, true}}) {
        const std::int64_t K = (f.w[0] + f.w[1]) / 2;
        ProblemInstance inst = partition_to_borda_ccav_mf(f.w);
        const bool got = solve_oracle(inst).answer;
        // p's score once either unregistered voter is added, whatever the
        // manipulators (all of whom rank p last) do.
        bool arithmetic = true;
        for (const auto& added : inst.spec.unregistered) {
            WeightedBallots wb{{added.ballot, added.weight}};
            for (std::size_t i = 0; i < f.w.size(); ++i)
                wb.emplace_back(ord(i % 2 ? std::vector<Name>{"b", "a", "p"} : std::vector<Name>{"a", "b", "p"}),
                                f.w[i]);
            arithmetic &= score(RuleId::Borda, inst.election.candidates, wb, "p") == 6 * K - 2;
        }
        // With the split manipulators of (1,1), the rival reaches 6K-1.
        if (K == 1) {
            WeightedBallots wb{{inst.spec.unregistered[0].ballot, inst.spec.unregistered[0].weight},
                               {ord({"a", "b", "p"}), 1},
                               {ord({"b", "a", "p"}), 1}};
            arithmetic &= score(RuleId::Borda, inst.election.candidates, wb, "a") == 6 * K - 1;
        }
        out.pass &= got == f.answer && arithmetic;
        s << "(" << f.w[0] << "," << f.w[1] << ") K=" << K << " oracle " << (got ? "yes" : "no")
          << (arithmetic ? ", p=6K-2" : ", ARITHMETIC MISMATCH") << "; ";
    }
    CampaignConfig cfg;
    cfg.rules = {RuleId::Borda};
    cfg.bounds = parse_bounds(kWeighted3);
    CampaignReport r = run_campaign(cfg);
    out.pass &= r.mismatches.empty() && r.complete && r.instances > 0;
    s << "borda CF campaign " << r.instances << " instances, " << r.mismatches.size() << " mismatches";
    out.detail = s.str();
    return out;
}

// ---- criterion 6 ----

std::vector<Formula> two_block_family() {
    std::vector<Formula> fs;
    auto lit = [](int v, bool neg) {
        Formula x = Formula::variable(v);
        return neg ? Formula::negation(x) : x;
    };
    // Pairings of an outer variable (x1, x2) with an inner one (x3, x4).
    const int pairings[2][2][2] = {{{1, 3}, {2, 4}}, {{1, 4}, {2, 3}}};
    for (const auto& pr : pairings)
        for (bool dnf : {true, false})
            for (int signs = 0; signs < 16; ++signs) {
                std::vector<Formula> terms;
                for (int t = 0; t < 2; ++t) {
                    std::vector<Formula> ls{lit(pr[t][0], signs >> (2 * t) & 1), lit(pr[t][1], signs >> (2 * t + 1) & 1)};
                    terms.push_back(dnf ? Formula::conj(ls) : Formula::disj(ls));
                }
                fs.push_back(dnf ? Formula::disj(terms) : Formula::conj(terms));
            }
    for (const char* s : {"(and x1 (not x1) x2 x3 x4)", "(or x1 (not x1) x2 x3 x4)",
                          "(and (or x1 x2) (or x3 (not x3) x4))", "(or (and x3 x4) (and x1 x2))"})
        fs.push_back(parse_formula(s));
    return fs;
}

std::vector<Formula> three_block_family() {
    std::vector<Formula> fs;
    auto lit = [](int v, bool neg) {
        Formula x = Formula::variable(v);
        return neg ? Formula::negation(x) : x;
    };
    for (int shape = 0; shape < 4; ++shape)
        for (int signs = 0; signs < 4; ++signs) {
            Formula a = lit(1, signs & 1), b = lit(2, false), c = lit(3, signs >> 1 & 1);
            switch (shape) {
            case 0: fs.push_back(Formula::disj({a, Formula::conj({b, c})})); break;
            case 1: fs.push_back(Formula::conj({a, Formula::disj({b, c})})); break;
            case 2: fs.push_back(Formula::disj({Formula::conj({a, b}), Formula::conj({Formula::negation(a), Formula::negation(b)}), c})); break;
            default: fs.push_back(Formula::conj({Formula::disj({a, b}), Formula::disj({Formula::negation(b), c})})); break;
            }
        }
    return fs;
}

Outcome reduction_soundness() {
    Outcome out;
    int checks = 0, mismatches = 0, yes = 0;
    const std::vector<int> two{2, 2};
    const auto family = two_block_family();
    for (const auto& f0 : family) {
        const Formula f = normalize_blocks(f0, two, 2);
        for (Mode m : {Mode::CF, Mode::MF}) {
            const bool truth = qbf_eval(f, reduction_shape(m));
            yes += truth;
            std::vector<ProblemInstance> imgs;
            for (const auto& t : all_control_types())
                if (!t.is_partition()) imgs.push_back(qbf2_to_nonpartition(f0, t, m, two));
            for (Tie tie : {Tie::TE, Tie::TP}) imgs.push_back(qbf2_to_ccpv(f0, tie, m, two));
            for (const auto& inst : imgs) {
                ++checks;
                if (solve_oracle(inst).answer != truth) {
                    ++mismatches;
                    if (mismatches == 1)
                        out.detail += "first mismatch " + inst.spec.type.name() + " " + mode_name(m) + " " +
                                      to_sexpr(f0) + "; ";
                }
            }
        }
    }
    const auto family3 = three_block_family();
    int yes3 = 0;
    for (const auto& f0 : family3) {
        const std::vector<int> one{1, 1, 1};
        const bool truth = qbf_eval(normalize_blocks(f0, one, 3), QbfShape::AEA);
        yes3 += truth;
        ++checks;
        if (solve_oracle(qbf3_to_ccpv_tp_mf_revoting(f0, one), 1'000'000'000).answer != truth) {
            ++mismatches;
            out.detail += "three-block mismatch " + to_sexpr(f0) + "; ";
        }
    }
    out.pass = mismatches == 0 && family.size() >= 50 && family3.size() >= 10;
    out.detail += std::to_string(family.size()) + " two-block formulas x 20 images (" + std::to_string(yes) +
                  "/" + std::to_string(2 * family.size()) + " true), " + std::to_string(family3.size()) +
                  " three-block formulas (" + std::to_string(yes3) + " true), " + std::to_string(checks) +
                  " checks, " + std::to_string(mismatches) + " mismatches";
    return out;
}

// ---- criterion 7 ----

Outcome partition_reduction() {
    int checks = 0, mismatches = 0, parts = 0;
    std::vector<std::int64_t> w;
    std::function<void()> rec = [&] {
        if (!w.empty()) {
            std::int64_t sum = 0;
            for (auto x : w) sum += x;
            if (sum % 2 == 0) {
                ++checks;
                const bool p = has_partition(w);
                parts += p;
                if (solve_oracle(partition_to_borda_ccav_mf(w)).answer != !p) ++mismatches;
            }
        }
        if (w.size() == 4) return;
        for (std::int64_t x = 1; x <= 4; ++x) {
            w.push_back(x);
            rec();
            w.pop_back();
        }
    };
    rec();
    return {mismatches == 0 && checks > 0,
            std::to_string(checks) + " weight lists (" + std::to_string(parts) + " with a partition), " +
                std::to_string(mismatches) + " mismatches"};
}

// ---- criterion 8 ----

const RuleId kStandard[] = {RuleId::Plurality, RuleId::Approval, RuleId::Veto, RuleId::Borda, RuleId::Condorcet};

Outcome inheritance() {
    Outcome out;
    std::mt19937_64 rng(2024);
    int control = 0, controlBad = 0;
    const Bounds zero = parse_bounds("candidates=3,voters=4,manipulators=0,weights=1:2");
    const auto& types = all_control_types();
    for (int i = 0; i < 100; ++i) {
        const RuleId rule = kStandard[i % 5];
        const ControlType& t = types[rng() % types.size()];
        std::vector<ProblemInstance> pool;
        generate_instances(rule, t, Mode::MPlus, zero, rng(), 4, [&](const ProblemInstance& p) { pool.push_back(p); });
        const ProblemInstance& base = pool.back();
        bool plain = false;
        for (const auto& a : legal_actions(base.spec, base.election))
            if (goal_holds(base, a, {})) { plain = true; break; }
        ++control;
        for (Mode m : {Mode::MPlus, Mode::CF, Mode::MF})
            if (solve_oracle(pad_zero_manipulators(base, m)).answer != plain) {
                ++controlBad;
                break;
            }
    }

    int embeds = 0, embedBad = 0;
    const std::vector<std::vector<Name>> candidateSets{{"a", "p"}, {"a", "b", "p"}};
    for (int i = 0; i < 100; ++i) {
        ManipulationInstance mi;
        mi.election.rule = kStandard[i % 5];
        mi.election.candidates = candidateSets[rng() % 2];
        mi.p = "p";
        mi.constructive = rng() % 2 == 0;
        const bool weighted = mi.election.rule == RuleId::Veto || mi.election.rule == RuleId::Borda;
        const int nonmanip = 1 + static_cast<int>(rng() % 3), manips = 1 + static_cast<int>(rng() % 2);
        for (int v = 0; v < nonmanip; ++v) {
            std::vector<Name> c = mi.election.candidates;
            std::shuffle(c.begin(), c.end(), rng);
            if (mi.election.rule == RuleId::Approval) c.resize(rng() % (c.size() + 1));
            Ballot b = mi.election.rule == RuleId::Approval ? appr(c) : ord(c);
            mi.election.voters.push_back(voter(b, weighted ? 1 + static_cast<int>(rng() % 3) : 1));
        }
        for (int v = 0; v < manips; ++v) mi.election.voters.push_back(manip(weighted ? 1 + static_cast<int>(rng() % 3) : 1));
        const bool truth = solve_manipulation(mi);
        for (Ctl kind : {Ctl::AV, Ctl::DV, Ctl::AC, Ctl::DC})
            for (Mode m : {Mode::MPlus, Mode::CF, Mode::MF}) {
                ControlType t{mi.constructive != (m != Mode::MPlus), kind, Tie::None};
                Embedding e = embed_manipulation(mi, t, m);
                ++embeds;
                if ((solve_oracle(e.instance).answer != e.complement) != truth || e.complement != (m != Mode::MPlus))
                    ++embedBad;
            }
    }
    out.pass = controlBad == 0 && embedBad == 0;
    out.detail = std::to_string(control) + " control instances (" + std::to_string(controlBad) +
                 " disagreeing), " + std::to_string(embeds) + " embeddings of 100 manipulation instances (" +
                 std::to_string(embedBad) + " failing)";
    return out;
}

// ---- criterion 9 ----

Outcome worked_example() {
    auto voters = concat({{voter(ord({"p", "a", "b"}))}, copies(100, voter(ord({"a", "b", "p"}))),
                          copies(101, voter(ord({"b", "a", "p"}))), {manip()}});
    ProblemInstance inst = instance(RuleId::Plurality, {"a", "b", "p"}, voters, "CCPV-TE", Mode::MPlus);
    DirectResult d = solve_direct(inst);
    bool allP = !d.profile.empty();
    for (const auto& b : d.profile) allP &= !b.names.empty() && b.names.front() == "p";
    const bool valid = d.action.has_value() && goal_holds(inst, *d.action, d.profile);

    // 2^202 voter partitions are out of reach; the oracle runs on the same
    // election with each block of identical voters merged into one weighted
    // voter. A partition found there splits no block, so it is a partition of
    // the original election with the same outcome.
    ProblemInstance merged = instance(RuleId::Plurality, {"a", "b", "p"},
                                      {voter(ord({"p", "a", "b"})), voter(ord({"a", "b", "p"}), 100),
                                       voter(ord({"b", "a", "p"}), 101), manip()},
                                      "CCPV-TE", Mode::MPlus);
    OracleResult o = solve_oracle(merged);
    bool lifted = false;
    if (o.answer && o.action) {
        // Expand the merged witness back to unit voters.
        const int first[] = {0, 1, 101, 202}, count[] = {1, 100, 101, 1};
        ControlAction a{Ctl::PV, {}, 0};
        for (int v : o.action->voters)
            for (int j = 0; j < count[v]; ++j) a.voters.push_back(first[v] + j);
        lifted = goal_holds(inst, a, o.profile);
    }
    Outcome out;
    out.pass = d.answer && allP && valid && o.answer && lifted;
    const std::size_t v1 = d.action ? d.action->voters.size() : 0;
    out.detail = std::string("direct ") + (d.answer ? "yes" : "no") + " with |V1|=" + std::to_string(v1) +
                 ", |V2|=" + std::to_string(voters.size() - v1) + " and " +
                 (allP ? "every manipulator voting p" : "a non-p manipulator") + (valid ? " (valid)" : " (INVALID)") +
                 "; oracle " + (o.answer ? "yes" : "no") + " with " + o.action_text +
                 (lifted ? " (lifted witness valid)" : " (lifted witness INVALID)");
    return out;
}

// ---- criterion 10 ----

Outcome determinism() {
    auto once = [] {
        std::string all;
        CampaignConfig cfg;
        cfg.rules = {RuleId::Plurality, RuleId::Condorcet};
        cfg.bounds = parse_bounds("candidates=3,voters=3,manipulators=1");
        all += report_to_json(run_campaign(cfg)).dump(2);
        cfg.rules = {RuleId::Approval, RuleId::Veto};
        cfg.bounds = parse_bounds("candidates=3,voters=5,manipulators=2,weights=1:2");
        cfg.random_instances = 200;
        cfg.seed = 17;
        all += report_to_json(run_campaign(cfg)).dump(2);
        all += serialize_instance(qbf2_to_ccpv(parse_formula("(or x1 (not x2))"), Tie::TE, Mode::CF));
        return all;
    };
    const std::string a = once(), b = once();
    return {a == b && !a.empty(), std::to_string(a.size()) + " bytes of reports, runs " + (a == b ? "identical" : "DIFFER")};
}

}  // namespace

int main() {
    struct Criterion {
        int id;
        const char* name;
        std::function<Outcome()> run;
    };
    const std::vector<Criterion> criteria{
        {1, "oracle equivalence, plurality", [] { return campaign({RuleId::Plurality}, "candidates=3,voters=4,manipulators=2"); }},
        {2, "oracle equivalence, approval", [] { return campaign({RuleId::Approval}, "candidates=3,voters=4,manipulators=2"); }},
        {3, "oracle equivalence, condorcet", [] { return campaign({RuleId::Condorcet}, "candidates=3,voters=4,manipulators=2"); }},
        {4, "weighted veto, three candidates", [] { return campaign({RuleId::Veto}, kWeighted3); }},
        {5, "borda partition fixtures and CF solver", borda_fixtures},
        {6, "QBF reduction soundness", reduction_soundness},
        {7, "partition reduction soundness", partition_reduction},
        {8, "inheritance identities", inheritance},
        {9, "worked CCPV-TE example", worked_example},
        {10, "determinism", determinism},
    };
    int failed = 0;
    for (const auto& c : criteria) {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::printf("criterion %2d %s: %s (%s) [%.1fs]\n", c.id, o.pass ? "PASS" : "FAIL", c.name, o.detail.c_str(), secs);
        std::fflush(stdout);
        failed += !o.pass;
    }
    return failed == 0 ? 0 : 1;
}
