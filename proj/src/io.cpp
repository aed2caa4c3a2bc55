#include "ecm/io.hpp"

#include <fstream>
#include <limits>
#include <set>
#include <sstream>

namespace ecm {

using nlohmann::json;

namespace {

[[noreturn]] void bad(const std::string& path, const std::string& what) {
    fail(ErrorKind::Parse, path + ": " + what);
}

void only_fields(const json& j, const std::string& path, std::initializer_list<const char*> allowed) {
    if (!j.is_object()) bad(path, "expected an object");
    std::set<std::string> ok(allowed.begin(), allowed.end());
    for (const auto& [key, value] : j.items())
        if (!ok.count(key)) bad(path, "unknown field '" + key + "'");
}

const json& field(const json& j, const std::string& path, const char* key) {
    auto it = j.find(key);
    if (it == j.end()) bad(path, std::string("missing field '") + key + "'");
    return *it;
}

std::string str(const json& j, const std::string& path) {
    if (!j.is_string()) bad(path, "expected a string");
    return j.get<std::string>();
}

bool boolean(const json& j, const std::string& path) {
    if (!j.is_boolean()) bad(path, "expected true or false");
    return j.get<bool>();
}

std::vector<Name> names(const json& j, const std::string& path) {
    if (!j.is_array()) bad(path, "expected a list of names");
    std::vector<Name> out;
    for (std::size_t i = 0; i < j.size(); ++i) {
        std::string p = path + "[" + std::to_string(i) + "]";
        std::string n = str(j[i], p);
        if (!valid_name(n)) bad(p, "invalid candidate name '" + n + "'");
        out.push_back(n);
    }
    return out;
}

Weight weight(const json& j, const std::string& path) {
    Weight w;
    if (j.is_number_unsigned()) w = j.get<std::uint64_t>();
    else if (j.is_number_integer()) w = j.get<std::int64_t>();
    else if (j.is_string()) {
        std::string s = j.get<std::string>();
        if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
            bad(path, "weight string must be a decimal integer");
        w = Weight(s);
    } else bad(path, "expected an integer weight");
    if (w < 1) bad(path, "weight must be at least 1");
    return w;
}

Voter voter(const json& j, const std::string& path, RuleId rule, bool defaultRegistered) {
    only_fields(j, path, {"ballot", "weight", "registered", "manipulator"});
    Voter v;
    v.registered = j.contains("registered") ? boolean(j["registered"], path + ".registered")
                                            : defaultRegistered;
    v.manipulator = j.contains("manipulator") ? boolean(j["manipulator"], path + ".manipulator") : false;
    v.weight = j.contains("weight") ? weight(j["weight"], path + ".weight") : Weight(1);
    const json& b = field(j, path, "ballot");
    if (b.is_null()) {
        if (!v.manipulator) bad(path + ".ballot", "only manipulators may have a null ballot");
        v.ballot = Ballot::blank();
    } else {
        if (v.manipulator) bad(path + ".ballot", "manipulator ballot must be null");
        auto ns = names(b, path + ".ballot");
        v.ballot = uses_approval_ballots(rule) ? Ballot::approval(ns) : Ballot::order(ns);
    }
    return v;
}

}  // namespace

json weight_to_json(const Weight& w) {
    if (w <= std::numeric_limits<std::int64_t>::max()) return w.convert_to<std::int64_t>();
    return w.str();
}

json ballot_to_json(const Ballot& b) {
    if (b.is_blank()) return nullptr;
    return b.names;
}

ProblemInstance instance_from_json(const json& j) {
    only_fields(j, "$", {"format_version", "system", "candidates", "distinguished", "control",
                         "scenario", "voters"});
    const json& ver = field(j, "$", "format_version");
    if (!ver.is_number_integer() || ver.get<int>() != kFormatVersion)
        bad("$.format_version", "unsupported format version");
    ProblemInstance inst;
    try {
        inst.election.rule = parse_rule(str(field(j, "$", "system"), "$.system"));
    } catch (const Error& e) {
        bad("$.system", e.what());
    }
    const RuleId rule = inst.election.rule;
    inst.election.candidates = names(field(j, "$", "candidates"), "$.candidates");
    inst.spec.p = str(field(j, "$", "distinguished"), "$.distinguished");

    const json& c = field(j, "$", "control");
    only_fields(c, "$.control", {"type", "limit", "unregistered_voters", "spoiler_candidates"});
    try {
        inst.spec.type = ControlType::parse(str(field(c, "$.control", "type"), "$.control.type"));
    } catch (const Error& e) {
        bad("$.control.type", e.what());
    }
    const ControlType& t = inst.spec.type;
    if (t.has_limit()) {
        const json& l = field(c, "$.control", "limit");
        if (!l.is_number_integer() || l.get<std::int64_t>() < 0)
            bad("$.control.limit", "expected a nonnegative integer");
        inst.spec.limit = l.get<std::int64_t>();
    } else if (c.contains("limit")) {
        bad("$.control.limit", "partition control takes no limit");
    }
    if (c.contains("unregistered_voters")) {
        if (t.kind != Ctl::AV) bad("$.control.unregistered_voters", "only AV has unregistered voters");
        const json& us = c["unregistered_voters"];
        if (!us.is_array()) bad("$.control.unregistered_voters", "expected a list");
        for (std::size_t i = 0; i < us.size(); ++i) {
            std::string p = "$.control.unregistered_voters[" + std::to_string(i) + "]";
            Voter v = voter(us[i], p, rule, false);
            if (v.registered) bad(p + ".registered", "unregistered voter marked registered");
            inst.spec.unregistered.push_back(std::move(v));
        }
    }
    if (c.contains("spoiler_candidates")) {
        if (t.kind != Ctl::AC) bad("$.control.spoiler_candidates", "only AC has spoiler candidates");
        inst.spec.spoilers = names(c["spoiler_candidates"], "$.control.spoiler_candidates");
    }

    const json& s = field(j, "$", "scenario");
    only_fields(s, "$.scenario", {"goal", "mode", "revoting"});
    std::string goal = str(field(s, "$.scenario", "goal"), "$.scenario.goal");
    if (goal != "constructive" && goal != "destructive")
        bad("$.scenario.goal", "expected constructive or destructive");
    inst.scenario.constructive = goal == "constructive";
    try {
        inst.scenario.mode = parse_mode(str(field(s, "$.scenario", "mode"), "$.scenario.mode"));
    } catch (const Error& e) {
        bad("$.scenario.mode", e.what());
    }
    inst.scenario.revoting = s.contains("revoting") ? boolean(s["revoting"], "$.scenario.revoting") : false;

    const json& vs = field(j, "$", "voters");
    if (!vs.is_array()) bad("$.voters", "expected a list");
    for (std::size_t i = 0; i < vs.size(); ++i) {
        std::string p = "$.voters[" + std::to_string(i) + "]";
        Voter v = voter(vs[i], p, rule, true);
        if (!v.registered) bad(p + ".registered", "unregistered voters belong under control");
        inst.election.voters.push_back(std::move(v));
    }

    try {
        validate_scenario(inst.scenario, inst.spec.type);
        compile(inst.election, inst.spec);
    } catch (const Error& e) {
        fail(e.kind(), std::string("$: ") + e.what());
    }
    return inst;
}

ProblemInstance parse_instance(std::string_view text) {
    json j;
    try {
        j = json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        fail(ErrorKind::Parse, "syntax error at byte " + std::to_string(e.byte) + ": " + e.what());
    }
    return instance_from_json(j);
}

namespace {

json voter_json(const Voter& v) {
    json j = json::object();
    j["ballot"] = ballot_to_json(v.ballot);
    j["weight"] = weight_to_json(v.weight);
    j["registered"] = v.registered;
    j["manipulator"] = v.manipulator;
    return j;
}

}  // namespace

json instance_to_json(const ProblemInstance& inst) {
    json j = json::object();
    j["format_version"] = kFormatVersion;
    j["system"] = rule_name(inst.election.rule);
    j["candidates"] = inst.election.candidates;
    j["distinguished"] = inst.spec.p;
    json c = json::object();
    c["type"] = inst.spec.type.name();
    if (inst.spec.type.has_limit()) c["limit"] = inst.spec.limit;
    if (inst.spec.type.kind == Ctl::AV) {
        c["unregistered_voters"] = json::array();
        for (const auto& v : inst.spec.unregistered) c["unregistered_voters"].push_back(voter_json(v));
    }
    if (inst.spec.type.kind == Ctl::AC) c["spoiler_candidates"] = inst.spec.spoilers;
    j["control"] = c;
    j["scenario"] = {{"goal", inst.scenario.constructive ? "constructive" : "destructive"},
                     {"mode", mode_name(inst.scenario.mode)},
                     {"revoting", inst.scenario.revoting}};
    j["voters"] = json::array();
    for (const auto& v : inst.election.voters) j["voters"].push_back(voter_json(v));
    return j;
}

std::string serialize_instance(const ProblemInstance& inst) {
    return instance_to_json(inst).dump(2) + "\n";
}

ProblemInstance load_instance(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(ErrorKind::Parse, "cannot open '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_instance(ss.str());
}

void save_instance(const std::string& path, const ProblemInstance& inst) {
    std::ofstream out(path);
    if (!out) fail(ErrorKind::Parse, "cannot write '" + path + "'");
    out << serialize_instance(inst);
}

}  // namespace ecm
