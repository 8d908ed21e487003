#pragma once

#include <vector>

#include "isocone/preorder.hpp"
#include "isocone/solver.hpp"

namespace isocone {

// Two-stage partition of the ground set: comparable components first, then
// comparability-connected level sets of a reference isotonic function.
struct LevelPartition {
  struct Set {
    int component = 0;
    int level = 0;        // per-component, ascending reference value
    double value = 0.0;   // common reference value on the set
    std::vector<int> members;  // element indices, sorted ascending
  };
  std::vector<Set> sets;
  // Smallest comparable level distance; +infinity when no pair of distinct
  // sets has a comparable cross-element.
  double epsilon_tilde = 0.0;
  // Lumped remainder for the truncated case; empty in the pure finite case.
  std::vector<int> tail_set;
};

// Unique comparable-level-set partition of g0 (which must be isotonic on p,
// up to 1e-12 slack). Reference values are grouped by exact equality.
LevelPartition level_partition(const PreOrder& p, const std::vector<double>& g0);

// Keeps the m_prime level sets with largest |reference value| (ties broken by
// smallest member index), lumps the rest into tail_set; epsilon_tilde becomes
// the truncated separation constant.
LevelPartition truncated_level_partition(const PreOrder& p, const std::vector<double>& g0,
                                         int m_prime);

// Concatenation operator: per-set isotonic (or antitonic) regression of the
// restriction of theta, including the tail set when present. Equals the
// weighted variant when weights are non-uniform.
std::vector<double> phi(const PreOrder& p, const LevelPartition& lp,
                        const std::vector<double>& theta, const std::vector<double>& weights,
                        bool antitonic = false);

// True iff sup |g - g0| < epsilon_tilde / 2 (always true for the +infinity
// sentinel); under this condition the full projection equals the phi
// concatenation exactly.
bool check_localization(const PreOrder& p, const LevelPartition& lp,
                        const std::vector<double>& g, const std::vector<double>& g0);

}  // namespace isocone
