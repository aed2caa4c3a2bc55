// Command-line front end: solve, reduce, fuzz, enumerate.
//
// Exit status: 0 yes / success, 1 no / mismatches found, 2 error.

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "ecm/campaign.hpp"
#include "ecm/io.hpp"
#include "ecm/oracle.hpp"
#include "ecm/reductions.hpp"
#include "ecm/solvers.hpp"

using namespace ecm;
using nlohmann::json;

namespace {

constexpr int kYes = 0, kNo = 1, kError = 2;

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, sep))
        if (!item.empty()) out.push_back(item);
    return out;
}

json profile_json(const std::vector<Ballot>& p) {
    json a = json::array();
    for (const auto& b : p) a.push_back(ballot_to_json(b));
    return a;
}

std::string ballot_text(const Ballot& b) {
    if (b.is_blank()) return "-";
    std::string s;
    const char* sep = b.kind == Ballot::Kind::Approval ? "," : ">";
    for (const auto& n : b.names) s += (s.empty() ? "" : sep) + n;
    return b.kind == Ballot::Kind::Approval ? "{" + s + "}" : s;
}

std::string profile_text(const std::vector<Ballot>& p) {
    std::string s;
    for (const auto& b : p) s += (s.empty() ? "" : " | ") + ballot_text(b);
    return s;
}

void emit(const std::string& text, const std::string& path) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) fail(ErrorKind::Parse, "cannot write '" + path + "'");
    out << text;
}

// ---- solve ----

struct SolveOpts {
    std::string path;
    std::string method = "both";
    std::uint64_t budget = kDefaultBudget;
    std::string format = "text";
};

int run_solve(const SolveOpts& o) {
    const ProblemInstance inst = load_instance(o.path);
    json rep = json::object();
    rep["instance"] = o.path;
    rep["method"] = o.method;
    std::optional<bool> direct, oracle;
    using clock = std::chrono::steady_clock;
    json timings = json::object();

    if (o.method == "direct" || o.method == "both") {
        auto t0 = clock::now();
        try {
            DirectResult r = solve_direct(inst);
            timings["direct_ms"] = std::chrono::duration<double, std::milli>(clock::now() - t0).count();
            direct = r.answer;
            json d = {{"answer", r.answer}, {"solver", r.solver}};
            if (r.action) d["action"] = r.action_text;
            if (!r.profile.empty()) d["profile"] = profile_json(r.profile);
            rep["direct"] = d;
        } catch (const Error& e) {
            // Under "both" an unsupported case still gets the oracle answer.
            if (o.method == "direct" || e.kind() != ErrorKind::Unsupported) throw;
            rep["direct_unsupported"] = e.what();
        }
    }
    if (o.method == "oracle" || o.method == "both") {
        auto t0 = clock::now();
        OracleResult r = solve_oracle(inst, o.budget);
        timings["oracle_ms"] = std::chrono::duration<double, std::milli>(clock::now() - t0).count();
        oracle = r.answer;
        json d = {{"answer", r.answer},
                  {"nominal_states", weight_to_json(r.nominal_states)},
                  {"evaluations", r.evaluations}};
        if (!r.witness_kind.empty()) d["witness_kind"] = r.witness_kind;
        if (r.action) d["action"] = r.action_text;
        if (!r.profile.empty()) d["profile"] = profile_json(r.profile);
        if (!r.revote.empty()) d["revote"] = profile_json(r.revote);
        rep["oracle"] = d;
    }
    const bool answer = oracle ? *oracle : *direct;
    rep["answer"] = answer;
    if (direct && oracle) rep["agreement"] = *direct == *oracle;
    rep["timings"] = timings;

    if (o.format == "json") {
        std::cout << rep.dump(2) << "\n";
    } else {
        std::cout << "answer: " << (answer ? "yes" : "no") << "\n";
        for (const char* side : {"direct", "oracle"}) {
            if (!rep.contains(side)) continue;
            const json& d = rep[side];
            std::cout << side << ": " << (d["answer"].get<bool>() ? "yes" : "no");
            if (d.contains("solver")) std::cout << " (" << d["solver"].get<std::string>() << ")";
            std::cout << "\n";
            if (d.contains("action")) std::cout << "  action: " << d["action"].get<std::string>() << "\n";
            if (d.contains("profile")) {
                std::vector<Ballot> p;
                for (const auto& b : d["profile"])
                    p.push_back(b.is_null() ? Ballot::blank()
                                            : Ballot{inst.election.rule == RuleId::Approval
                                                         ? Ballot::Kind::Approval
                                                         : Ballot::Kind::LinearOrder,
                                                     b.get<std::vector<Name>>()});
                std::cout << "  " << d.value("witness_kind", std::string("profile")) << ": "
                          << profile_text(p) << "\n";
            }
        }
        if (rep.contains("direct_unsupported"))
            std::cout << "direct: unsupported (" << rep["direct_unsupported"].get<std::string>() << ")\n";
        if (rep.contains("agreement"))
            std::cout << "agreement: " << (rep["agreement"].get<bool>() ? "true" : "false") << "\n";
    }
    if (direct && oracle && *direct != *oracle) return kError;
    return answer ? kYes : kNo;
}

// ---- reduce ----

struct ReduceOpts {
    std::string kind;
    std::vector<std::string> args;
    std::string out;
    std::string blocks;
    std::uint64_t budget = kDefaultBudget;
};

std::vector<int> parse_blocks(const std::string& s) {
    std::vector<int> b;
    for (const auto& x : split(s, ',')) {
        if (x.find_first_not_of("0123456789") != std::string::npos || x.size() > 3)
            fail(ErrorKind::Parse, "bad block size '" + x + "'");
        b.push_back(std::stoi(x));
    }
    return b;
}

void need_args(const ReduceOpts& o, std::size_t n, const char* usage) {
    if (o.args.size() != n) fail(ErrorKind::Parse, std::string("usage: reduce ") + o.kind + " " + usage);
}

int run_reduce(const ReduceOpts& o) {
    ProblemInstance inst;
    std::string source;
    const auto blocks = parse_blocks(o.blocks);
    auto qbf_truth = [](const Formula& f, QbfShape s) {
        if (max_var(f) > 24) return std::string("not evaluated");
        return std::string(qbf_shape_name(s)) + " " + (qbf_eval(f, s) ? "true" : "false");
    };

    if (o.kind == "qbf2-nonpartition") {
        need_args(o, 3, "TYPE MODE FORMULA");
        Formula f = parse_formula(o.args[2]);
        Mode m = parse_mode(o.args[1]);
        inst = qbf2_to_nonpartition(f, ControlType::parse(o.args[0]), m, blocks);
        source = qbf_truth(normalize_blocks(f, blocks, 2), reduction_shape(m));
    } else if (o.kind == "qbf2-ccpv") {
        need_args(o, 3, "TE|TP MODE FORMULA");
        Tie tie = o.args[0] == "TE" ? Tie::TE : o.args[0] == "TP" ? Tie::TP : Tie::None;
        if (tie == Tie::None) fail(ErrorKind::Parse, "tie rule must be TE or TP");
        Formula f = parse_formula(o.args[2]);
        Mode m = parse_mode(o.args[1]);
        inst = qbf2_to_ccpv(f, tie, m, blocks);
        source = qbf_truth(normalize_blocks(f, blocks, 2), reduction_shape(m));
    } else if (o.kind == "qbf3-revoting") {
        need_args(o, 1, "FORMULA");
        Formula f = parse_formula(o.args[0]);
        inst = qbf3_to_ccpv_tp_mf_revoting(f, blocks);
        source = qbf_truth(normalize_blocks(f, blocks, 3), QbfShape::AEA);
    } else if (o.kind == "partition-borda") {
        if (o.args.empty()) fail(ErrorKind::Parse, "usage: reduce partition-borda W1 W2 ...");
        std::vector<std::int64_t> w;
        for (const auto& a : o.args) {
            if (a.empty() || a.find_first_not_of("0123456789") != std::string::npos || a.size() > 12)
                fail(ErrorKind::Parse, "bad weight '" + a + "'");
            w.push_back(std::stoll(a));
        }
        inst = partition_to_borda_ccav_mf(w);
        source = w.size() <= 24 ? std::string("partition ") + (has_partition(w) ? "exists" : "does not exist")
                                : "not evaluated";
    } else if (o.kind == "inherit-control") {
        need_args(o, 2, "INSTANCE MODE");
        inst = pad_zero_manipulators(load_instance(o.args[0]), parse_mode(o.args[1]));
        source = "control answer preserved";
    } else if (o.kind == "inherit-manip") {
        need_args(o, 3, "INSTANCE TYPE MODE");
        ProblemInstance src = load_instance(o.args[0]);
        ManipulationInstance mi{src.election, src.spec.p, src.scenario.constructive};
        Embedding emb = embed_manipulation(mi, ControlType::parse(o.args[1]), parse_mode(o.args[2]));
        inst = emb.instance;
        source = std::string("manipulation ") + (mi.constructive ? "constructive" : "destructive");
        if (oracle_state_count(inst) <= o.budget)
            source += std::string(", answer ") + (solve_manipulation(mi) ? "yes" : "no");
        source += emb.complement ? ", image answers the complement" : ", image answers directly";
    } else {
        fail(ErrorKind::Parse, "unknown reduction '" + o.kind + "'");
    }
    emit(serialize_instance(inst), o.out);
    std::cerr << "source: " << source << "\n";
    return kYes;
}

// ---- fuzz / enumerate ----

struct FuzzOpts {
    std::string rules = "plurality";
    std::string types, modes;
    std::string bounds;
    std::uint64_t seed = 1;
    std::uint64_t budget = kDefaultBudget;
    std::uint64_t random = 0;
    std::string format = "json";
    std::string out;
    bool broken = false;
};

CampaignConfig campaign_config(const FuzzOpts& o) {
    CampaignConfig cfg;
    for (const auto& r : split(o.rules, ',')) cfg.rules.push_back(parse_rule(r));
    for (const auto& t : split(o.types, ',')) cfg.types.push_back(ControlType::parse(t));
    for (const auto& m : split(o.modes, ',')) cfg.modes.push_back(parse_mode(m));
    cfg.bounds = parse_bounds(o.bounds);
    cfg.seed = o.seed;
    cfg.budget = o.budget;
    cfg.random_instances = o.random;
    return cfg;
}

int run_fuzz(const FuzzOpts& o) {
    const CampaignConfig cfg = campaign_config(o);
    DirectFn direct;
    if (o.broken) direct = [](const ProblemInstance& inst) { return !solve_direct(inst).answer; };
    const CampaignReport rep = run_campaign(cfg, direct);
    if (o.format == "json") {
        emit(report_to_json(rep).dump(2) + "\n", o.out);
    } else {
        std::ostringstream s;
        for (const auto& [name, st] : rep.cases)
            s << name << ": " << st.instances << " instances, " << st.yes << " yes, " << st.no << " no, "
              << st.skipped << " skipped\n";
        s << "instances: " << rep.instances << "\nmismatches: " << rep.mismatches.size()
          << "\ncomplete: " << (rep.complete ? "true" : "false") << "\n";
        for (const auto& m : rep.mismatches)
            s << "mismatch " << m.key << ": direct " << (m.direct ? "yes" : "no") << ", oracle "
              << (m.oracle ? "yes" : "no") << "\n" << m.instance;
        emit(s.str(), o.out);
    }
    return rep.mismatches.empty() ? kYes : kNo;
}

int run_enumerate(const FuzzOpts& o) {
    const CampaignConfig cfg = campaign_config(o);
    if (cfg.rules.size() != 1 || cfg.types.size() != 1 || cfg.modes.size() != 1)
        fail(ErrorKind::Parse, "enumerate needs exactly one rule, type and mode");
    std::ostringstream s;
    std::uint64_t n = 0;
    generate_instances(cfg.rules[0], cfg.types[0], cfg.modes[0], cfg.bounds, cfg.seed,
                       cfg.random_instances, [&](const ProblemInstance& inst) {
                           ++n;
                           if (o.format == "json") s << instance_to_json(inst).dump() << "\n";
                       });
    if (o.format != "json") s << n << "\n";
    emit(s.str(), o.out);
    return kYes;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Election control with manipulative voters: solvers, oracle and reductions"};
    app.require_subcommand(1);
    SolveOpts so;
    ReduceOpts ro;
    FuzzOpts fo, eo;
    eo.format = "text";

    auto* solve = app.add_subcommand("solve", "Decide an instance document");
    solve->add_option("path", so.path, "Instance file")->required();
    solve->add_option("--method", so.method)->check(CLI::IsMember({"direct", "oracle", "both"}));
    solve->add_option("--budget", so.budget, "Oracle state budget");
    solve->add_option("--format", so.format)->check(CLI::IsMember({"text", "json"}));

    auto* reduce = app.add_subcommand("reduce", "Write the image of a hardness reduction");
    reduce->add_option("kind", ro.kind, "qbf2-nonpartition, qbf2-ccpv, qbf3-revoting, partition-borda, "
                                        "inherit-control or inherit-manip")
        ->required();
    reduce->add_option("args", ro.args, "Source arguments");
    reduce->add_option("-o,--output", ro.out, "Output file (default: standard output)");
    reduce->add_option("--blocks", ro.blocks, "Quantifier block widths, e.g. 1,2");
    reduce->add_option("--budget", ro.budget, "Bound for evaluating the source problem");

    auto add_campaign_opts = [](CLI::App* c, FuzzOpts& o) {
        c->add_option("--rules,--rule", o.rules, "Comma-separated rule ids");
        c->add_option("--types,--type", o.types, "Comma-separated control types (default: registry)");
        c->add_option("--modes,--mode", o.modes, "Comma-separated modes (default: registry)");
        c->add_option("--bounds", o.bounds, "e.g. candidates=3,voters=4,manipulators=2,weights=1:2");
        c->add_option("--seed", o.seed);
        c->add_option("--budget", o.budget, "Oracle state budget per instance");
        c->add_option("--random", o.random, "Seeded random instances instead of exhaustive enumeration");
        c->add_option("--format", o.format)->check(CLI::IsMember({"text", "json"}));
        c->add_option("-o,--output", o.out, "Output file (default: standard output)");
    };
    auto* fuzz = app.add_subcommand("fuzz", "Compare direct solvers with the oracle");
    add_campaign_opts(fuzz, fo);
    fuzz->add_flag("--broken-direct", fo.broken, "Negate the direct answers (fault injection)");
    auto* enumerate = app.add_subcommand("enumerate", "List the instances a campaign would generate");
    add_campaign_opts(enumerate, eo);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kError;
    }
    try {
        if (*solve) return run_solve(so);
        if (*reduce) return run_reduce(ro);
        if (*fuzz) return run_fuzz(fo);
        if (*enumerate) return run_enumerate(eo);
    } catch (const Error& e) {
        std::cerr << "error (" << error_kind_name(e.kind()) << "): " << e.what() << "\n";
        return kError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kError;
    }
    return kError;
}
