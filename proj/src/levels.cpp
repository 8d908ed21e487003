#include "isocone/levels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <stdexcept>

namespace isocone {

namespace {

bool comparable_cross_pair(const PreOrder& p, const std::vector<int>& a,
                           const std::vector<int>& b) {
  for (int x : a) {
    for (int y : b) {
      if (p.comparable(x, y)) return true;
    }
  }
  return false;
}

std::vector<LevelPartition::Set> build_sets(const PreOrder& p, const std::vector<double>& g0) {
  if (static_cast<int>(g0.size()) != p.size()) {
    throw std::invalid_argument("reference vector length does not match ground set size");
  }
  if (!p.is_isotonic(g0)) {
    throw std::invalid_argument("reference vector is not isotonic on the pre-order");
  }

  // First stage: group by (component, exact reference value).
  std::map<std::pair<int, double>, std::vector<int>> groups;
  for (int i = 0; i < p.size(); ++i) {
    groups[{p.component_of(i), g0[i]}].push_back(i);
  }

  std::vector<LevelPartition::Set> sets;
  std::vector<int> level_counter(p.component_count(), 0);
  for (auto& [key, members] : groups) {
    // Second stage: split by comparability connectivity.
    const int k = static_cast<int>(members.size());
    std::vector<int> parent(k);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    for (int i = 0; i < k; ++i) {
      for (int j = i + 1; j < k; ++j) {
        if (p.comparable(members[i], members[j])) parent[find(i)] = find(j);
      }
    }
    std::map<int, std::vector<int>> pieces;
    for (int i = 0; i < k; ++i) pieces[find(i)].push_back(members[i]);
    for (auto& [root, piece] : pieces) {
      LevelPartition::Set s;
      s.component = key.first;
      s.level = level_counter[key.first]++;
      s.value = key.second;
      s.members = piece;
      sets.push_back(std::move(s));
    }
  }
  return sets;
}

double smallest_comparable_distance(const PreOrder& p,
                                    const std::vector<LevelPartition::Set>& sets) {
  double eps = std::numeric_limits<double>::infinity();
  for (size_t a = 0; a < sets.size(); ++a) {
    for (size_t b = a + 1; b < sets.size(); ++b) {
      if (sets[a].component != sets[b].component) continue;
      if (sets[a].value == sets[b].value) continue;  // split pieces, never comparable
      double d = std::abs(sets[a].value - sets[b].value);
      if (d >= eps) continue;
      if (comparable_cross_pair(p, sets[a].members, sets[b].members)) eps = d;
    }
  }
  return eps;
}

}  // namespace

LevelPartition level_partition(const PreOrder& p, const std::vector<double>& g0) {
  LevelPartition lp;
  lp.sets = build_sets(p, g0);
  lp.epsilon_tilde = smallest_comparable_distance(p, lp.sets);
  return lp;
}

LevelPartition truncated_level_partition(const PreOrder& p, const std::vector<double>& g0,
                                         int m_prime) {
  std::vector<LevelPartition::Set> all = build_sets(p, g0);
  const int m = static_cast<int>(all.size());
  if (m_prime < 1 || m_prime >= m) {
    throw std::invalid_argument("m_prime must be in [1, number of level sets - 1]");
  }

  std::vector<int> order(m);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    double ma = std::abs(all[a].value), mb = std::abs(all[b].value);
    if (ma != mb) return ma > mb;
    return all[a].members.front() < all[b].members.front();
  });

  LevelPartition lp;
  std::vector<char> kept(m, 0);
  for (int r = 0; r < m_prime; ++r) {
    kept[order[r]] = 1;
    lp.sets.push_back(all[order[r]]);
  }
  for (int idx = 0; idx < m; ++idx) {
    if (!kept[idx]) {
      lp.tail_set.insert(lp.tail_set.end(), all[idx].members.begin(), all[idx].members.end());
    }
  }
  std::sort(lp.tail_set.begin(), lp.tail_set.end());

  // Separation over kept sets against every original level set.
  double eps = std::numeric_limits<double>::infinity();
  for (int a = 0; a < m; ++a) {
    if (!kept[a]) continue;
    for (int b = 0; b < m; ++b) {
      if (a == b) continue;
      if (all[a].component != all[b].component) continue;
      if (all[a].value == all[b].value) continue;
      double d = std::abs(all[a].value - all[b].value);
      if (d >= eps) continue;
      if (comparable_cross_pair(p, all[a].members, all[b].members)) eps = d;
    }
  }
  lp.epsilon_tilde = eps;
  return lp;
}

std::vector<double> phi(const PreOrder& p, const LevelPartition& lp,
                        const std::vector<double>& theta, const std::vector<double>& weights,
                        bool antitonic) {
  if (static_cast<int>(theta.size()) != p.size() ||
      static_cast<int>(weights.size()) != p.size()) {
    throw std::invalid_argument("vector length does not match ground set size");
  }
  std::vector<double> out(p.size(), 0.0);
  auto solve_piece = [&](const std::vector<int>& members) {
    if (members.size() == 1) {
      out[members[0]] = theta[members[0]];
      return;
    }
    PreOrder sub = p.restrict_to(members);
    WeightedFunction wf;
    wf.values.reserve(members.size());
    wf.weights.reserve(members.size());
    for (int i : members) {
      wf.values.push_back(theta[i]);
      wf.weights.push_back(weights[i]);
    }
    IsotonicFit fit = antitonic ? antitonic_regression(sub, wf) : isotonic_regression(sub, wf);
    for (size_t k = 0; k < members.size(); ++k) out[members[k]] = fit.fitted[k];
  };
  for (const auto& s : lp.sets) solve_piece(s.members);
  if (!lp.tail_set.empty()) solve_piece(lp.tail_set);
  return out;
}

bool check_localization(const PreOrder& p, const LevelPartition& lp,
                        const std::vector<double>& g, const std::vector<double>& g0) {
  if (g.size() != g0.size() || static_cast<int>(g.size()) != p.size()) {
    throw std::invalid_argument("vector length does not match ground set size");
  }
  if (std::isinf(lp.epsilon_tilde)) return true;
  double sup = 0.0;
  for (size_t i = 0; i < g.size(); ++i) sup = std::max(sup, std::abs(g[i] - g0[i]));
  return sup < lp.epsilon_tilde / 2.0;
}

}  // namespace isocone
