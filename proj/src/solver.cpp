#include "isocone/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <queue>
#include <set>
#include <stdexcept>

namespace isocone {

namespace {

constexpr double kBlockMergeRelTol = 1e-10;

void validate_input(const PreOrder& p, const WeightedFunction& f) {
  if (static_cast<int>(f.values.size()) != p.size()) {
    throw std::invalid_argument("values length does not match ground set size");
  }
  if (static_cast<int>(f.weights.size()) != p.size()) {
    throw std::invalid_argument("weights length does not match ground set size");
  }
  for (double v : f.values) {
    if (!std::isfinite(v)) throw std::invalid_argument("values must be finite");
  }
  for (double w : f.weights) {
    if (!(w > 0.0) || !std::isfinite(w)) {
      throw std::invalid_argument("weights must be strictly positive and finite");
    }
  }
}

// Weighted PAVA for a non-decreasing fit along a chain.
std::vector<double> pava(const std::vector<double>& v, const std::vector<double>& w) {
  const int n = static_cast<int>(v.size());
  std::vector<double> level(n), weight(n);
  std::vector<int> count(n);
  int top = -1;
  for (int i = 0; i < n; ++i) {
    ++top;
    level[top] = v[i];
    weight[top] = w[i];
    count[top] = 1;
    while (top > 0 && level[top - 1] >= level[top]) {
      double wsum = weight[top - 1] + weight[top];
      level[top - 1] = (weight[top - 1] * level[top - 1] + weight[top] * level[top]) / wsum;
      weight[top - 1] = wsum;
      count[top - 1] += count[top];
      --top;
    }
  }
  std::vector<double> out;
  out.reserve(n);
  for (int b = 0; b <= top; ++b) {
    for (int k = 0; k < count[b]; ++k) out.push_back(level[b]);
  }
  return out;
}

class MaxFlow {
 public:
  explicit MaxFlow(int n) : graph_(n), level_(n), iter_(n) {}

  void add_edge(int from, int to, double cap) {
    graph_[from].push_back({to, cap, static_cast<int>(graph_[to].size())});
    graph_[to].push_back({from, 0.0, static_cast<int>(graph_[from].size()) - 1});
  }

  double run(int s, int t) {
    double flow = 0.0;
    while (bfs(s, t)) {
      std::fill(iter_.begin(), iter_.end(), 0);
      double f;
      while ((f = dfs(s, t, std::numeric_limits<double>::infinity())) > 0.0) flow += f;
    }
    return flow;
  }

  // Source side of the min cut after run(): nodes reachable in the residual.
  std::vector<char> source_side(int s) const {
    std::vector<char> seen(graph_.size(), 0);
    std::queue<int> q;
    q.push(s);
    seen[s] = 1;
    while (!q.empty()) {
      int u = q.front();
      q.pop();
      for (const Edge& e : graph_[u]) {
        if (e.cap > kResidualEps && !seen[e.to]) {
          seen[e.to] = 1;
          q.push(e.to);
        }
      }
    }
    return seen;
  }

 private:
  struct Edge {
    int to;
    double cap;
    int rev;
  };
  static constexpr double kResidualEps = 1e-13;

  bool bfs(int s, int t) {
    std::fill(level_.begin(), level_.end(), -1);
    std::queue<int> q;
    level_[s] = 0;
    q.push(s);
    while (!q.empty()) {
      int u = q.front();
      q.pop();
      for (const Edge& e : graph_[u]) {
        if (e.cap > kResidualEps && level_[e.to] < 0) {
          level_[e.to] = level_[u] + 1;
          q.push(e.to);
        }
      }
    }
    return level_[t] >= 0;
  }

  double dfs(int u, int t, double f) {
    if (u == t) return f;
    for (int& i = iter_[u]; i < static_cast<int>(graph_[u].size()); ++i) {
      Edge& e = graph_[u][i];
      if (e.cap > kResidualEps && level_[e.to] == level_[u] + 1) {
        double d = dfs(e.to, t, std::min(f, e.cap));
        if (d > 0.0) {
          e.cap -= d;
          graph_[e.to][e.rev].cap += d;
          return d;
        }
      }
    }
    return 0.0;
  }

  std::vector<std::vector<Edge>> graph_;
  std::vector<int> level_;
  std::vector<int> iter_;
};

// State shared by the per-component solvers; works on SCC condensation nodes.
struct CondensedProblem {
  const PreOrder& p;
  std::vector<double> value;   // weighted mean per scc
  std::vector<double> weight;  // summed weight per scc
  std::vector<int> rep;        // representative element per scc
  std::vector<double> fitted;  // result per scc
  SolveDiagnostics diag;

  explicit CondensedProblem(const PreOrder& pre, const WeightedFunction& f)
      : p(pre),
        value(pre.scc_count(), 0.0),
        weight(pre.scc_count(), 0.0),
        rep(pre.scc_count(), 0),
        fitted(pre.scc_count(), 0.0) {
    for (int c = 0; c < p.scc_count(); ++c) {
      double wsum = 0.0, vsum = 0.0;
      for (int i : p.scc_members()[c]) {
        wsum += f.weights[i];
        vsum += f.weights[i] * f.values[i];
      }
      value[c] = vsum / wsum;
      weight[c] = wsum;
      rep[c] = p.scc_members()[c][0];
    }
  }

  bool leq(int c, int d) const { return p.leq(rep[c], rep[d]); }

  // Recursive max-closure partitioning. `nodes` is a block of scc indices;
  // the order within the block is the induced closure relation.
  void solve_block(const std::vector<int>& nodes) {
    const int k = static_cast<int>(nodes.size());
    double wsum = 0.0, vsum = 0.0;
    for (int c : nodes) {
      wsum += weight[c];
      vsum += weight[c] * value[c];
    }
    const double mu = vsum / wsum;
    if (k == 1) {
      fitted[nodes[0]] = mu;
      return;
    }

    // Max weight up-closed subset of the block, node weights w*(v - mu).
    MaxFlow flow(k + 2);
    const int s = k, t = k + 1;
    double positive_sum = 0.0, scale = 0.0;
    for (int i = 0; i < k; ++i) {
      double a = weight[nodes[i]] * (value[nodes[i]] - mu);
      scale += std::abs(a);
      if (a > 0.0) {
        flow.add_edge(s, i, a);
        positive_sum += a;
      } else if (a < 0.0) {
        flow.add_edge(i, t, -a);
      }
    }
    const double inf = std::numeric_limits<double>::infinity();
    for (int i = 0; i < k; ++i) {
      for (int j = 0; j < k; ++j) {
        if (i != j && leq(nodes[i], nodes[j])) flow.add_edge(i, j, inf);
      }
    }
    double closure_value = positive_sum - flow.run(s, t);
    ++diag.maxflow_calls;

    std::vector<char> side = flow.source_side(s);
    std::vector<int> upper, lower;
    for (int i = 0; i < k; ++i) (side[i] ? upper : lower).push_back(nodes[i]);

    const double eps = 1e-12 * std::max(1.0, scale);
    if (closure_value <= eps || upper.empty() || lower.empty()) {
      for (int c : nodes) fitted[c] = mu;
      return;
    }
    solve_block(lower);
    solve_block(upper);
  }

  // Total-order check on the component's sccs; fills chain order on success.
  bool chain_order(const std::vector<int>& comp, std::vector<int>* order) const {
    const int m = static_cast<int>(comp.size());
    std::vector<std::pair<int, int>> by_reach(m);  // (-reach count, scc)
    for (int i = 0; i < m; ++i) {
      int cnt = 0;
      for (int j = 0; j < m; ++j) {
        if (leq(comp[i], comp[j])) ++cnt;
      }
      by_reach[i] = {-cnt, comp[i]};
    }
    std::sort(by_reach.begin(), by_reach.end());
    for (int i = 0; i + 1 < m; ++i) {
      if (by_reach[i].first == by_reach[i + 1].first) return false;
      if (!leq(by_reach[i].second, by_reach[i + 1].second)) return false;
    }
    order->resize(m);
    for (int i = 0; i < m; ++i) (*order)[i] = by_reach[i].second;
    return true;
  }
};

}  // namespace

IsotonicFit isotonic_regression(const PreOrder& p, const WeightedFunction& f) {
  validate_input(p, f);
  const int n = p.size();

  CondensedProblem prob(p, f);

  // Comparable components of the condensation.
  std::vector<std::vector<int>> comp_sccs(p.component_count());
  for (int c = 0; c < p.scc_count(); ++c) {
    comp_sccs[p.component_of(prob.rep[c])].push_back(c);
  }

  for (const auto& comp : comp_sccs) {
    if (comp.empty()) continue;
    if (comp.size() == 1) {
      prob.fitted[comp[0]] = prob.value[comp[0]];
      continue;
    }
    std::vector<int> order;
    if (prob.chain_order(comp, &order)) {
      std::vector<double> v(order.size()), w(order.size());
      for (size_t i = 0; i < order.size(); ++i) {
        v[i] = prob.value[order[i]];
        w[i] = prob.weight[order[i]];
      }
      std::vector<double> fit = pava(v, w);
      for (size_t i = 0; i < order.size(); ++i) prob.fitted[order[i]] = fit[i];
      ++prob.diag.chain_components;
    } else {
      prob.solve_block(comp);
      ++prob.diag.cut_components;
    }
  }

  IsotonicFit out;
  out.fitted.resize(n);
  for (int i = 0; i < n; ++i) out.fitted[i] = prob.fitted[p.scc_of(i)];
  out.diagnostics = prob.diag;

  out.objective = 0.0;
  for (int i = 0; i < n; ++i) {
    double d = out.fitted[i] - f.values[i];
    out.objective += d * d * f.weights[i];
  }

  // Maximal comparability-connected constant blocks: merge along relation
  // edges whose endpoint values agree up to relative tolerance.
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& [a, b] : p.edges()) {
    double tol = kBlockMergeRelTol *
                 std::max({1.0, std::abs(out.fitted[a]), std::abs(out.fitted[b])});
    if (std::abs(out.fitted[a] - out.fitted[b]) <= tol) parent[find(a)] = find(b);
  }
  std::vector<int> block_id(n, -1);
  for (int i = 0; i < n; ++i) {
    int r = find(i);
    if (block_id[r] == -1) {
      block_id[r] = static_cast<int>(out.blocks.size());
      out.blocks.emplace_back();
    }
    block_id[i] = block_id[r];
    out.blocks[block_id[i]].push_back(i);
  }
  return out;
}

IsotonicFit antitonic_regression(const PreOrder& p, const WeightedFunction& f) {
  WeightedFunction neg{f.values, f.weights};
  for (double& v : neg.values) v = -v;
  IsotonicFit fit = isotonic_regression(p, neg);
  for (double& v : fit.fitted) v = -v;
  return fit;
}

std::vector<double> oracle_projection(const PreOrder& p, const WeightedFunction& f,
                                      double tol, int max_iter) {
  validate_input(p, f);
  if (!(tol > 0.0)) throw std::invalid_argument("tol must be positive");

  std::set<std::pair<int, int>> dedup;
  for (const auto& e : p.edges()) {
    if (e.first != e.second) dedup.insert(e);
  }
  std::vector<std::pair<int, int>> cons(dedup.begin(), dedup.end());
  if (cons.empty()) return f.values;

  std::vector<double> x = f.values;
  // Dykstra increments, one (sparse) pair per constraint.
  std::vector<std::pair<double, double>> inc(cons.size(), {0.0, 0.0});

  for (int iter = 0; iter < max_iter; ++iter) {
    double max_change = 0.0;
    for (size_t m = 0; m < cons.size(); ++m) {
      auto [i, j] = cons[m];
      double zi = x[i] + inc[m].first;
      double zj = x[j] + inc[m].second;
      double xi = zi, xj = zj;
      if (zi > zj) {
        double pooled = (f.weights[i] * zi + f.weights[j] * zj) /
                        (f.weights[i] + f.weights[j]);
        xi = xj = pooled;
      }
      inc[m] = {zi - xi, zj - xj};
      max_change = std::max({max_change, std::abs(x[i] - xi), std::abs(x[j] - xj)});
      x[i] = xi;
      x[j] = xj;
    }
    if (max_change < tol) return x;
  }
  throw std::runtime_error("oracle_projection: no convergence within max_iter cycles");
}

}  // namespace isocone
