#pragma once

#include <vector>

#include "isocone/preorder.hpp"

namespace isocone {

struct WeightedFunction {
  std::vector<double> values;
  std::vector<double> weights;  // strictly positive
};

struct SolveDiagnostics {
  int chain_components = 0;  // solved by PAVA
  int cut_components = 0;    // solved by recursive min-cut partitioning
  int maxflow_calls = 0;
};

struct IsotonicFit {
  std::vector<double> fitted;
  // Maximal comparability-connected constant blocks of the fitted vector,
  // element indices sorted ascending.
  std::vector<std::vector<int>> blocks;
  double objective = 0.0;
  SolveDiagnostics diagnostics;
};

// Exact weighted least-squares projection onto the isotonic cone of p.
// Comparable components are solved independently: chains by pooled adjacent
// violators, general DAGs by recursive max-closure (min-cut) partitioning.
IsotonicFit isotonic_regression(const PreOrder& p, const WeightedFunction& f);

// Projection onto the antitonic cone, computed as -isotonic(-values).
IsotonicFit antitonic_regression(const PreOrder& p, const WeightedFunction& f);

// Independent slow oracle: Dykstra cyclic projection onto the half-spaces
// {x_i <= x_j} for the supplied relation edges, in the w-weighted inner
// product. Stops when the max coordinate change over a full cycle drops
// below tol; throws if max_iter cycles do not suffice.
std::vector<double> oracle_projection(const PreOrder& p, const WeightedFunction& f,
                                      double tol, int max_iter);

}  // namespace isocone
