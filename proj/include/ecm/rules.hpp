#pragma once

#include <set>
#include <utility>
#include <vector>

#include "ecm/election.hpp"

namespace ecm {

// Winner set over `cands`; ballots are read through projection onto `cands`.
// `small` promises that every partial weight sum fits in 62 bits.
CandSet winners_internal(RuleId rule, const Universe& u, CandSet cands,
                         const std::vector<Vote>& votes, bool small);

bool weights_small(const std::vector<Weight>& ws);

using WeightedBallots = std::vector<std::pair<Ballot, Weight>>;

std::set<Name> winners(RuleId rule, const std::vector<Name>& candidates,
                       const WeightedBallots& ballots);

Weight score(RuleId rule, const std::vector<Name>& candidates,
             const WeightedBallots& ballots, const Name& c);

Weight pairwise_margin(const std::vector<Name>& candidates,
                       const WeightedBallots& ballots, const Name& c,
                       const Name& d);

}  // namespace ecm
