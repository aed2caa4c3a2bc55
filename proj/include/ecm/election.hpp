#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "ecm/error.hpp"

namespace ecm {

using Weight = boost::multiprecision::cpp_int;
using Name = std::string;

// Letters, digits and the four punctuation bytes `_ < > ,`.
bool valid_name(std::string_view s);

struct Ballot {
    enum class Kind { LinearOrder, Approval, Blank };

    Kind kind = Kind::Blank;
    // Ranking for LinearOrder, approved names (sorted) for Approval.
    std::vector<Name> names;

    static Ballot order(std::vector<Name> ranking);
    static Ballot approval(std::vector<Name> approved);
    static Ballot blank() { return Ballot{}; }

    bool is_blank() const { return kind == Kind::Blank; }
    bool operator==(const Ballot&) const = default;
};

struct Voter {
    Ballot ballot;
    Weight weight = 1;
    bool manipulator = false;
    bool registered = true;

    bool operator==(const Voter&) const = default;
};

enum class RuleId {
    Plurality,
    Approval,
    Veto,
    Borda,
    Condorcet,
    FormulaAC,
    FormulaPV,
    FormulaRev,
};

const char* rule_name(RuleId r);
RuleId parse_rule(std::string_view s);
bool is_score_rule(RuleId r);
bool uses_approval_ballots(RuleId r);
bool is_artificial(RuleId r);

struct Election {
    std::vector<Name> candidates;
    std::vector<Voter> voters;
    RuleId rule = RuleId::Plurality;

    bool operator==(const Election&) const = default;
};

// ---- index-based internals shared by the evaluators ----

using CandSet = std::uint64_t;
constexpr int kMaxCandidates = 64;

inline CandSet bit(int i) { return CandSet{1} << i; }
inline bool has(CandSet s, int i) { return (s >> i) & 1U; }
int popcount(CandSet s);

// Candidate names sorted by byte order; index order equals lexicographic order.
struct Universe {
    std::vector<Name> names;

    explicit Universe(std::vector<Name> ns = {});
    int size() const { return static_cast<int>(names.size()); }
    int index(const Name& n) const;  // -1 when absent
    CandSet mask_of(const std::vector<Name>& ns) const;
    CandSet all() const;
    std::vector<Name> names_of(CandSet s) const;
};

struct IBallot {
    bool approval = false;
    std::vector<std::uint8_t> order;  // universe indices, best first
    CandSet approved = 0;

    bool operator==(const IBallot&) const = default;
};

IBallot to_internal(const Universe& u, const Ballot& b);
Ballot to_external(const Universe& u, const IBallot& b, CandSet restrict_to);

// Erasure for orders, intersection for approval sets.
IBallot project(const IBallot& b, CandSet cands);

struct Vote {
    const IBallot* ballot;
    std::int64_t w;        // valid when the tally runs in small mode
    const Weight* big;     // always valid
};

}  // namespace ecm
