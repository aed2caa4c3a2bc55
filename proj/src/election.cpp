#include "ecm/election.hpp"

#include <algorithm>
#include <bit>

namespace ecm {

const char* error_kind_name(ErrorKind k) {
    switch (k) {
    case ErrorKind::MalformedInput: return "malformed-input";
    case ErrorKind::UnsupportedRule: return "unsupported-rule";
    case ErrorKind::Unsupported: return "unsupported";
    case ErrorKind::UnresolvedManipulator: return "unresolved-manipulator";
    case ErrorKind::InvalidScenario: return "invalid-scenario";
    case ErrorKind::Budget: return "budget";
    case ErrorKind::Parse: return "parse";
    }
    return "error";
}

void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

bool valid_name(std::string_view s) {
    if (s.empty()) return false;
    for (unsigned char ch : s) {
        bool ok = (ch >= 'a' && ch <= 'z') || (ch >= 'A' && ch <= 'Z') ||
                  (ch >= '0' && ch <= '9') || ch == '_' || ch == '<' ||
                  ch == '>' || ch == ',';
        if (!ok) return false;
    }
    return true;
}

Ballot Ballot::order(std::vector<Name> ranking) {
    Ballot b;
    b.kind = Kind::LinearOrder;
    b.names = std::move(ranking);
    return b;
}

Ballot Ballot::approval(std::vector<Name> approved) {
    Ballot b;
    b.kind = Kind::Approval;
    std::sort(approved.begin(), approved.end());
    approved.erase(std::unique(approved.begin(), approved.end()), approved.end());
    b.names = std::move(approved);
    return b;
}

namespace {
struct RuleRow {
    RuleId id;
    const char* name;
};
constexpr RuleRow kRules[] = {
    {RuleId::Plurality, "plurality"}, {RuleId::Approval, "approval"},
    {RuleId::Veto, "veto"},           {RuleId::Borda, "borda"},
    {RuleId::Condorcet, "condorcet"}, {RuleId::FormulaAC, "formula-ac"},
    {RuleId::FormulaPV, "formula-pv"}, {RuleId::FormulaRev, "formula-rev"},
};
}  // namespace

const char* rule_name(RuleId r) {
    for (const auto& row : kRules)
        if (row.id == r) return row.name;
    return "?";
}

RuleId parse_rule(std::string_view s) {
    for (const auto& row : kRules)
        if (s == row.name) return row.id;
    fail(ErrorKind::UnsupportedRule, "unknown rule id '" + std::string(s) + "'");
}

bool is_score_rule(RuleId r) {
    return r == RuleId::Plurality || r == RuleId::Approval || r == RuleId::Veto ||
           r == RuleId::Borda;
}

bool uses_approval_ballots(RuleId r) { return r == RuleId::Approval; }

bool is_artificial(RuleId r) {
    return r == RuleId::FormulaAC || r == RuleId::FormulaPV || r == RuleId::FormulaRev;
}

int popcount(CandSet s) { return std::popcount(s); }

Universe::Universe(std::vector<Name> ns) : names(std::move(ns)) {
    std::sort(names.begin(), names.end());
    if (std::adjacent_find(names.begin(), names.end()) != names.end())
        fail(ErrorKind::MalformedInput, "duplicate candidate name");
    if (size() > kMaxCandidates)
        fail(ErrorKind::MalformedInput, "too many candidates");
    for (const auto& n : names)
        if (!valid_name(n)) fail(ErrorKind::MalformedInput, "invalid candidate name '" + n + "'");
}

int Universe::index(const Name& n) const {
    auto it = std::lower_bound(names.begin(), names.end(), n);
    if (it == names.end() || *it != n) return -1;
    return static_cast<int>(it - names.begin());
}

CandSet Universe::mask_of(const std::vector<Name>& ns) const {
    CandSet s = 0;
    for (const auto& n : ns) {
        int i = index(n);
        if (i < 0) fail(ErrorKind::MalformedInput, "unknown candidate '" + n + "'");
        s |= bit(i);
    }
    return s;
}

CandSet Universe::all() const {
    return size() == 64 ? ~CandSet{0} : (bit(size()) - 1);
}

std::vector<Name> Universe::names_of(CandSet s) const {
    std::vector<Name> out;
    for (int i = 0; i < size(); ++i)
        if (has(s, i)) out.push_back(names[i]);
    return out;
}

IBallot to_internal(const Universe& u, const Ballot& b) {
    IBallot ib;
    switch (b.kind) {
    case Ballot::Kind::Blank:
        fail(ErrorKind::UnresolvedManipulator, "blank ballot cannot be evaluated");
    case Ballot::Kind::Approval:
        ib.approval = true;
        ib.approved = u.mask_of(b.names);
        break;
    case Ballot::Kind::LinearOrder: {
        CandSet seen = 0;
        for (const auto& n : b.names) {
            int i = u.index(n);
            if (i < 0) fail(ErrorKind::MalformedInput, "ballot names unknown candidate '" + n + "'");
            if (has(seen, i)) fail(ErrorKind::MalformedInput, "ballot repeats candidate '" + n + "'");
            seen |= bit(i);
            ib.order.push_back(static_cast<std::uint8_t>(i));
        }
        break;
    }
    }
    return ib;
}

Ballot to_external(const Universe& u, const IBallot& b, CandSet restrict_to) {
    if (b.approval) return Ballot::approval(u.names_of(b.approved & restrict_to));
    std::vector<Name> r;
    for (auto i : b.order)
        if (has(restrict_to, i)) r.push_back(u.names[i]);
    return Ballot::order(std::move(r));
}

IBallot project(const IBallot& b, CandSet cands) {
    IBallot out;
    out.approval = b.approval;
    out.approved = b.approved & cands;
    for (auto i : b.order)
        if (has(cands, i)) out.order.push_back(i);
    return out;
}

}  // namespace ecm
