#pragma once

#include <string>
#include <vector>

#include "ecm/election.hpp"
#include "ecm/formula.hpp"

namespace ecm {

// Winner sets of the formula-reading rules. Ballots are read through
// projection onto `cands`; every voter must have weight 1.
CandSet artificial_winners(RuleId rule, const Universe& u, CandSet cands,
                           const std::vector<Vote>& votes);

// Fixed-width binary, most significant bit first.
std::string binary(int value, int width);
int bits_for(int n);

// Candidate names used by the formula rules.
namespace art {

std::string pair_name(int i, int b, int width);  // "v" + bin(i) + "_" + b
std::string carrier_name(int j, int width);      // "m" + bin(j)
std::string slot_name(int j, int width);         // "c" + bin(j)
inline const char* kDummy = "z";
inline const char* kEps = "eps";
inline const char* kEpsPrime = "epsp";
std::string rev_dummy(int j, int width);         // "<dummy," + bin(j) + ">"
std::string rev_q(int level, int i, int b, int width);  // "<q1," + bin(i) + "," + b + ">"

// Full linear ballots over the listed candidates.
std::vector<Name> slot_pair_ballot(int i, int b, const std::vector<Name>& slots,
                                   const Name& f, const Name& other);
std::vector<Name> slot_sentinel(const std::vector<Name>& slots, const Name& f);

}  // namespace art

}  // namespace ecm
