#pragma once

#include <vector>

#include "ecm/formula.hpp"
#include "ecm/scenario.hpp"

namespace ecm {

// ---- inheritance ----

// Wraps a manipulator-free control instance in the requested mode.
ProblemInstance pad_zero_manipulators(const ProblemInstance& control, Mode mode);

// Unweighted or weighted coalitional manipulation: can the manipulators make
// p a winner (constructive) or a nonwinner (destructive)?
struct ManipulationInstance {
    Election election;
    Name p;
    bool constructive = true;
};

// Brute force over all manipulator ballots.
bool solve_manipulation(const ManipulationInstance& mi);

struct Embedding {
    ProblemInstance instance;
    bool complement = false;  // manipulation answer = NOT instance answer
};

// The control dimension is neutralized (empty pools, limit 0). M+ keeps the
// goal; CF and MF need the opposite goal and answer the complement.
Embedding embed_manipulation(const ManipulationInstance& mi, const ControlType& target,
                             Mode mode);

// ---- QBF reductions ----

// Moves block b of `blocks` to x_{b*l+1}.. with l = max block width and pads
// the gaps with tautologies. Empty `blocks` splits max_var evenly into `count`.
Formula normalize_blocks(const Formula& f, std::vector<int> blocks, int count);

// Eight add/delete types, CF (exists-forall) or MF (forall-exists), over formula-ac.
ProblemInstance qbf2_to_nonpartition(const Formula& f, const ControlType& type, Mode mode,
                                     const std::vector<int>& blocks = {});

// CCPV-TE/TP over formula-pv.
ProblemInstance qbf2_to_ccpv(const Formula& f, Tie tie, Mode mode,
                             const std::vector<int>& blocks = {});

// CCPV-TP, MF with revoting, over formula-rev; answer = forall-exists-forall truth.
ProblemInstance qbf3_to_ccpv_tp_mf_revoting(const Formula& f,
                                            const std::vector<int>& blocks = {});

// Shape whose truth the image of each reduction decides.
QbfShape reduction_shape(Mode mode);

// ---- partition ----

bool has_partition(const std::vector<std::int64_t>& weights);

// Borda, three candidates, weighted CCAV-MF; answer = NOT has_partition.
ProblemInstance partition_to_borda_ccav_mf(const std::vector<std::int64_t>& weights);

}  // namespace ecm
