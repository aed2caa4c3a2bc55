#include "ecm/campaign.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <sstream>

#include "ecm/io.hpp"

namespace ecm {

using nlohmann::json;

Bounds parse_bounds(const std::string& text) {
    Bounds b;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        auto eq = item.find('=');
        if (eq == std::string::npos) fail(ErrorKind::Parse, "bounds: expected key=value in '" + item + "'");
        std::string key = item.substr(0, eq), val = item.substr(eq + 1);
        auto num = [&](const std::string& s) {
            if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos || s.size() > 6)
                fail(ErrorKind::Parse, "bounds: bad number '" + s + "'");
            return std::stoi(s);
        };
        if (key == "candidates") b.candidates = num(val);
        else if (key == "voters") b.voters = num(val);
        else if (key == "manipulators") b.manipulators = num(val);
        else if (key == "nonmanipulators") b.nonmanipulators = num(val);
        else if (key == "exact") b.exact_candidates = num(val) != 0;
        else if (key == "weights") {
            b.weights.clear();
            std::stringstream ws(val);
            std::string w;
            while (std::getline(ws, w, ':')) b.weights.push_back(num(w));
            if (b.weights.empty() || std::count(b.weights.begin(), b.weights.end(), 0))
                fail(ErrorKind::Parse, "bounds: weights must be positive");
        } else fail(ErrorKind::Parse, "bounds: unknown key '" + key + "'");
    }
    if (b.candidates > 6) fail(ErrorKind::Parse, "bounds: at most 6 candidates");
    return b;
}

std::string bounds_text(const Bounds& b) {
    std::string w;
    for (int x : b.weights) w += (w.empty() ? "" : ":") + std::to_string(x);
    return "candidates=" + std::to_string(b.candidates) + ",voters=" + std::to_string(b.voters) +
           ",manipulators=" + std::to_string(b.manipulators) +
           ",nonmanipulators=" + std::to_string(b.nonmanipulators) + ",weights=" + w +
           ",exact=" + (b.exact_candidates ? "1" : "0");
}

namespace {

const char* kLabels[] = {"a", "b", "c", "d", "e"};

struct Kind {
    Ballot ballot;
    int weight = 1;
    bool manipulator = false;
    bool registered = true;
};

bool operator<(const Kind& x, const Kind& y) {
    return std::tie(x.manipulator, x.registered, x.weight, x.ballot.names) <
           std::tie(y.manipulator, y.registered, y.weight, y.ballot.names);
}

struct Layout {
    std::vector<Name> C, D;
};

std::vector<Layout> layouts(const ControlType& t, const Bounds& b) {
    std::vector<Layout> out;
    for (int total = 1; total <= b.candidates; ++total) {
        if (b.exact_candidates && total != b.candidates) continue;
        for (int nd = 0; nd < total; ++nd) {
            if (nd > 0 && t.kind != Ctl::AC) break;
            Layout l;
            l.C.push_back("p");
            for (int i = 0; i < total - 1; ++i) (i < total - 1 - nd ? l.C : l.D).push_back(kLabels[i]);
            out.push_back(l);
        }
    }
    return out;
}

// Nonmanipulative ballots over the universe.
std::vector<Ballot> ballots(RuleId rule, std::vector<Name> u) {
    std::sort(u.begin(), u.end());
    std::vector<Ballot> out;
    if (uses_approval_ballots(rule)) {
        for (std::uint32_t mask = 0; mask < (1U << u.size()); ++mask) {
            std::vector<Name> a;
            for (std::size_t i = 0; i < u.size(); ++i)
                if ((mask >> i) & 1U) a.push_back(u[i]);
            out.push_back(Ballot::approval(a));
        }
        return out;
    }
    if (rule == RuleId::Veto) {
        // One representative order per vetoed candidate.
        for (std::size_t v = 0; v < u.size(); ++v) {
            std::vector<Name> o;
            for (std::size_t i = 0; i < u.size(); ++i)
                if (i != v) o.push_back(u[i]);
            o.push_back(u[v]);
            out.push_back(Ballot::order(o));
        }
        return out;
    }
    do out.push_back(Ballot::order(u));
    while (std::next_permutation(u.begin(), u.end()));
    return out;
}

Ballot relabel(RuleId rule, const Ballot& b, const std::map<Name, Name>& sigma) {
    std::vector<Name> ns;
    for (const auto& n : b.names) ns.push_back(sigma.at(n));
    if (b.kind == Ballot::Kind::Approval) return Ballot::approval(ns);
    if (rule == RuleId::Veto) {
        Name vetoed = ns.back();
        ns.pop_back();
        std::sort(ns.begin(), ns.end());
        ns.push_back(vetoed);
    }
    return Ballot::order(ns);
}

std::vector<std::map<Name, Name>> relabelings(const Layout& l) {
    std::vector<std::map<Name, Name>> out;
    std::vector<Name> cs(l.C.begin() + 1, l.C.end()), ds = l.D;
    std::vector<Name> pc = cs, pd = ds;
    do {
        do {
            std::map<Name, Name> m{{"p", "p"}};
            for (std::size_t i = 0; i < cs.size(); ++i) m[cs[i]] = pc[i];
            for (std::size_t i = 0; i < ds.size(); ++i) m[ds[i]] = pd[i];
            out.push_back(m);
        } while (std::next_permutation(pd.begin(), pd.end()));
    } while (std::next_permutation(pc.begin(), pc.end()));
    return out;
}

std::int64_t pool_size(const ControlType& t, const Layout& l, int reg, int unreg) {
    switch (t.kind) {
    case Ctl::AV: return unreg;
    case Ctl::DV: return reg;
    case Ctl::AC: return static_cast<std::int64_t>(l.D.size());
    case Ctl::DC: return static_cast<std::int64_t>(l.C.size());
    default: return -1;
    }
}

ProblemInstance build(RuleId rule, const ControlType& t, Mode mode, const Layout& l,
                      const std::vector<Kind>& kinds, const std::vector<int>& pick, std::int64_t k) {
    ProblemInstance inst;
    inst.election.rule = rule;
    inst.election.candidates = l.C;
    inst.spec.type = t;
    inst.spec.p = "p";
    inst.spec.limit = k < 0 ? 0 : k;
    if (t.kind == Ctl::AC) inst.spec.spoilers = l.D;
    inst.scenario = Scenario{t.constructive, mode, false};
    for (int i : pick) {
        const Kind& kd = kinds[i];
        Voter v{kd.manipulator ? Ballot::blank() : kd.ballot, kd.weight, kd.manipulator, kd.registered};
        (kd.registered ? inst.election.voters : inst.spec.unregistered).push_back(std::move(v));
    }
    return inst;
}

void emit_with_limits(RuleId rule, const ControlType& t, Mode mode, const Layout& l,
                      const std::vector<Kind>& kinds, const std::vector<int>& pick,
                      const std::function<void(const ProblemInstance&)>& fn) {
    int reg = 0, unreg = 0;
    for (int i : pick) (kinds[i].registered ? reg : unreg)++;
    const std::int64_t pool = pool_size(t, l, reg, unreg);
    if (pool < 0) {
        fn(build(rule, t, mode, l, kinds, pick, -1));
        return;
    }
    for (std::int64_t k = 0; k <= pool; ++k) fn(build(rule, t, mode, l, kinds, pick, k));
}

}  // namespace

void generate_instances(RuleId rule, const ControlType& type, Mode mode, const Bounds& b,
                        std::uint64_t seed, std::uint64_t randomCount,
                        const std::function<void(const ProblemInstance&)>& fn) {
    const auto ls = layouts(type, b);
    std::mt19937_64 rng(seed);
    for (std::size_t li = 0; li < ls.size(); ++li) {
        const Layout& l = ls[li];
        std::vector<Name> u = l.C;
        u.insert(u.end(), l.D.begin(), l.D.end());
        std::vector<Kind> kinds;
        std::vector<bool> regs{true};
        if (type.kind == Ctl::AV) regs.push_back(false);
        for (bool r : regs) {
            for (const auto& bal : ballots(rule, u))
                for (int w : b.weights) kinds.push_back(Kind{bal, w, false, r});
            for (int w : b.weights) kinds.push_back(Kind{Ballot::blank(), w, true, r});
        }
        std::sort(kinds.begin(), kinds.end());

        if (randomCount > 0) {
            // Split the random draws evenly over the candidate layouts.
            const std::uint64_t share = randomCount / ls.size() + (li < randomCount % ls.size() ? 1 : 0);
            for (std::uint64_t n = 0; n < share; ++n) {
                std::uniform_int_distribution<int> total(0, b.voters);
                const int nv = total(rng);
                std::vector<int> pick;
                int manips = 0, nonmanips = 0;
                for (int tries = 0; static_cast<int>(pick.size()) < nv && tries < 64; ++tries) {
                    std::uniform_int_distribution<std::size_t> any(0, kinds.size() - 1);
                    int kidx = static_cast<int>(any(rng));
                    bool m = kinds[kidx].manipulator;
                    if (m && manips >= b.manipulators) continue;
                    if (!m && nonmanips >= b.nonmanipulators) continue;
                    (m ? manips : nonmanips)++;
                    pick.push_back(kidx);
                }
                int reg = 0, unreg = 0;
                for (int i : pick) (kinds[i].registered ? reg : unreg)++;
                std::int64_t pool = pool_size(type, l, reg, unreg);
                std::int64_t k = -1;
                if (pool >= 0) k = std::uniform_int_distribution<std::int64_t>(0, pool)(rng);
                fn(build(rule, type, mode, l, kinds, pick, k));
            }
            continue;
        }

        std::map<std::tuple<bool, bool, int, std::vector<Name>>, int> index;
        for (std::size_t i = 0; i < kinds.size(); ++i)
            index[{kinds[i].manipulator, kinds[i].registered, kinds[i].weight, kinds[i].ballot.names}] =
                static_cast<int>(i);
        std::vector<std::vector<int>> maps;
        for (const auto& sigma : relabelings(l)) {
            std::vector<int> m(kinds.size());
            for (std::size_t i = 0; i < kinds.size(); ++i) {
                Ballot rb = kinds[i].manipulator ? kinds[i].ballot : relabel(rule, kinds[i].ballot, sigma);
                m[i] = index.at({kinds[i].manipulator, kinds[i].registered, kinds[i].weight, rb.names});
            }
            maps.push_back(std::move(m));
        }
        auto canonical = [&](const std::vector<int>& pick) {
            std::vector<int> img(pick.size());
            for (const auto& m : maps) {
                for (std::size_t i = 0; i < pick.size(); ++i) img[i] = m[pick[i]];
                std::sort(img.begin(), img.end());
                if (img < pick) return false;
            }
            return true;
        };
        std::vector<int> pick;
        std::function<void(int, int, int)> rec = [&](int from, int manips, int nonmanips) {
            if (canonical(pick)) emit_with_limits(rule, type, mode, l, kinds, pick, fn);
            if (static_cast<int>(pick.size()) == b.voters) return;
            for (int i = from; i < static_cast<int>(kinds.size()); ++i) {
                bool m = kinds[i].manipulator;
                if (m ? manips >= b.manipulators : nonmanips >= b.nonmanipulators) continue;
                pick.push_back(i);
                rec(i, manips + (m ? 1 : 0), nonmanips + (m ? 0 : 1));
                pick.pop_back();
            }
        };
        rec(0, 0, 0);
    }
}

CampaignReport run_campaign(const CampaignConfig& cfg, const DirectFn& direct) {
    CampaignReport rep;
    rep.config = cfg;
    for (const auto& key : registry_entries()) {
        if (std::find(cfg.rules.begin(), cfg.rules.end(), key.rule) == cfg.rules.end()) continue;
        if (!cfg.types.empty() &&
            std::find(cfg.types.begin(), cfg.types.end(), key.type) == cfg.types.end())
            continue;
        if (!cfg.modes.empty() && std::find(cfg.modes.begin(), cfg.modes.end(), key.mode) == cfg.modes.end())
            continue;
        const std::string name =
            std::string(rule_name(key.rule)) + " " + key.type.name() + " " + mode_name(key.mode);
        CaseStats st;
        generate_instances(key.rule, key.type, key.mode, cfg.bounds, cfg.seed, cfg.random_instances,
                           [&](const ProblemInstance& inst) {
                               ++st.instances;
                               bool d, o;
                               try {
                                   d = direct ? direct(inst) : solve_direct(inst).answer;
                                   o = solve_oracle(inst, cfg.budget).answer;
                               } catch (const Error& e) {
                                   if (e.kind() != ErrorKind::Budget && e.kind() != ErrorKind::Unsupported)
                                       throw;
                                   ++st.skipped;
                                   if (e.kind() == ErrorKind::Budget) rep.complete = false;
                                   return;
                               }
                               (o ? st.yes : st.no)++;
                               if (d != o) rep.mismatches.push_back({name, d, o, serialize_instance(inst)});
                           });
        rep.instances += st.instances;
        rep.cases.emplace_back(name, st);
    }
    return rep;
}

json report_to_json(const CampaignReport& r) {
    json j = json::object();
    j["format_version"] = kFormatVersion;
    json cfg = json::object();
    cfg["rules"] = json::array();
    for (RuleId id : r.config.rules) cfg["rules"].push_back(rule_name(id));
    cfg["types"] = json::array();
    for (const auto& t : r.config.types) cfg["types"].push_back(t.name());
    cfg["modes"] = json::array();
    for (Mode m : r.config.modes) cfg["modes"].push_back(mode_name(m));
    cfg["bounds"] = bounds_text(r.config.bounds);
    cfg["seed"] = r.config.seed;
    cfg["budget"] = r.config.budget;
    cfg["random_instances"] = r.config.random_instances;
    j["config"] = cfg;
    j["cases"] = json::array();
    for (const auto& [name, st] : r.cases)
        j["cases"].push_back({{"case", name}, {"instances", st.instances}, {"yes", st.yes},
                              {"no", st.no}, {"skipped", st.skipped}});
    j["mismatches"] = json::array();
    for (const auto& m : r.mismatches)
        j["mismatches"].push_back({{"case", m.key}, {"direct", m.direct}, {"oracle", m.oracle},
                                   {"instance", json::parse(m.instance)}});
    j["instances"] = r.instances;
    j["mismatch_count"] = r.mismatches.size();
    j["complete"] = r.complete;
    return j;
}

}  // namespace ecm
