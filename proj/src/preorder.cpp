#include "isocone/preorder.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <unordered_map>

namespace isocone {

namespace {

std::vector<std::pair<int, int>> resolve_edges(
    const std::vector<std::string>& elements,
    const std::vector<std::pair<std::string, std::string>>& edges) {
  std::unordered_map<std::string, int> idx;
  for (int i = 0; i < static_cast<int>(elements.size()); ++i) {
    if (!idx.emplace(elements[i], i).second) {
      throw std::invalid_argument("duplicate element label: " + elements[i]);
    }
  }
  std::vector<std::pair<int, int>> out;
  out.reserve(edges.size());
  for (const auto& [a, b] : edges) {
    auto ia = idx.find(a);
    auto ib = idx.find(b);
    if (ia == idx.end()) throw std::invalid_argument("edge references unknown label: " + a);
    if (ib == idx.end()) throw std::invalid_argument("edge references unknown label: " + b);
    out.emplace_back(ia->second, ib->second);
  }
  return out;
}

// Iterative Tarjan SCC; returns scc id per node, ids in reverse topological
// order of the condensation (sources get the highest ids).
std::vector<int> tarjan_scc(int n, const std::vector<std::vector<int>>& adj, int* count_out) {
  std::vector<int> index(n, -1), low(n, 0), scc(n, -1);
  std::vector<char> on_stack(n, 0);
  std::vector<int> stack;
  int next_index = 0, scc_count = 0;

  struct Frame {
    int v;
    size_t child;
  };
  for (int root = 0; root < n; ++root) {
    if (index[root] != -1) continue;
    std::vector<Frame> call{{root, 0}};
    index[root] = low[root] = next_index++;
    stack.push_back(root);
    on_stack[root] = 1;
    while (!call.empty()) {
      Frame& f = call.back();
      if (f.child < adj[f.v].size()) {
        int w = adj[f.v][f.child++];
        if (index[w] == -1) {
          index[w] = low[w] = next_index++;
          stack.push_back(w);
          on_stack[w] = 1;
          call.push_back({w, 0});
        } else if (on_stack[w]) {
          low[f.v] = std::min(low[f.v], index[w]);
        }
      } else {
        if (low[f.v] == index[f.v]) {
          int w;
          do {
            w = stack.back();
            stack.pop_back();
            on_stack[w] = 0;
            scc[w] = scc_count;
          } while (w != f.v);
          ++scc_count;
        }
        int v = f.v;
        call.pop_back();
        if (!call.empty()) low[call.back().v] = std::min(low[call.back().v], low[v]);
      }
    }
  }
  *count_out = scc_count;
  return scc;
}

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

}  // namespace

PreOrder::PreOrder(std::vector<std::string> elements,
                   const std::vector<std::pair<std::string, std::string>>& edges)
    : elements_(std::move(elements)), edges_(resolve_edges(elements_, edges)) {
  build();
}

PreOrder::PreOrder(std::vector<std::string> elements, std::vector<std::pair<int, int>> edges)
    : elements_(std::move(elements)), edges_(std::move(edges)) {
  const int n = size();
  if (n < 1) throw std::invalid_argument("pre-order must have at least one element");
  {
    std::unordered_map<std::string, int> seen;
    for (int i = 0; i < n; ++i) {
      if (!seen.emplace(elements_[i], i).second) {
        throw std::invalid_argument("duplicate element label: " + elements_[i]);
      }
    }
  }
  for (const auto& [a, b] : edges_) {
    if (a < 0 || a >= n || b < 0 || b >= n) {
      throw std::invalid_argument("edge index out of range");
    }
  }
  build();
}

void PreOrder::build() {
  const int n = size();
  if (n < 1) throw std::invalid_argument("pre-order must have at least one element");
  std::vector<std::vector<int>> adj(n);
  for (const auto& [a, b] : edges_) {
    if (a != b) adj[a].push_back(b);
  }

  int scc_count = 0;
  scc_id_ = tarjan_scc(n, adj, &scc_count);
  scc_members_.assign(scc_count, {});
  for (int i = 0; i < n; ++i) scc_members_[scc_id_[i]].push_back(i);

  dag_adj_.assign(scc_count, {});
  {
    std::vector<char> seen(scc_count, 0);
    for (int c = 0; c < scc_count; ++c) {
      for (int v : scc_members_[c]) {
        for (int w : adj[v]) {
          int d = scc_id_[w];
          if (d != c && !seen[d]) {
            seen[d] = 1;
            dag_adj_[c].push_back(d);
          }
        }
      }
      for (int d : dag_adj_[c]) seen[d] = 0;
    }
  }

  // Tarjan ids are reverse-topological: every condensation edge c -> d has
  // d < c, so a single ascending pass accumulates reachability.
  reach_.assign(scc_count, std::vector<unsigned char>(scc_count, 0));
  for (int c = 0; c < scc_count; ++c) {
    reach_[c][c] = 1;
    for (int d : dag_adj_[c]) {
      const auto& rd = reach_[d];
      auto& rc = reach_[c];
      for (int k = 0; k < scc_count; ++k) rc[k] |= rd[k];
    }
  }

  UnionFind uf(n);
  for (const auto& [a, b] : edges_) uf.unite(a, b);
  component_.assign(n, -1);
  component_count_ = 0;
  for (int i = 0; i < n; ++i) {
    int r = uf.find(i);
    if (component_[r] == -1) component_[r] = component_count_++;
    component_[i] = component_[r];
  }
}

int PreOrder::index_of(const std::string& label) const {
  for (int i = 0; i < size(); ++i) {
    if (elements_[i] == label) return i;
  }
  throw std::invalid_argument("unknown element: " + label);
}

bool PreOrder::leq(int a, int b) const {
  if (a < 0 || a >= size() || b < 0 || b >= size()) {
    throw std::invalid_argument("element index out of range");
  }
  return reach_[scc_id_[a]][scc_id_[b]] != 0;
}

bool PreOrder::comparable(int a, int b) const { return leq(a, b) || leq(b, a); }

bool PreOrder::comparable(const std::string& a, const std::string& b) const {
  return comparable(index_of(a), index_of(b));
}

bool PreOrder::is_isotonic(const std::vector<double>& v, double slack) const {
  if (static_cast<int>(v.size()) != size()) {
    throw std::invalid_argument("vector length does not match ground set size");
  }
  for (const auto& [a, b] : edges_) {
    if (v[a] > v[b] + slack) return false;
    if (reach_[scc_id_[b]][scc_id_[a]] && std::abs(v[a] - v[b]) > slack) return false;
  }
  return true;
}

ComponentPartition PreOrder::comparable_components() const {
  ComponentPartition out;
  out.components.assign(component_count_, {});
  for (int i = 0; i < size(); ++i) out.components[component_[i]].push_back(i);
  return out;
}

PreOrder PreOrder::restrict_to(const std::vector<int>& subset) const {
  const int k = static_cast<int>(subset.size());
  std::vector<std::string> labels(k);
  for (int i = 0; i < k; ++i) labels[i] = elements_[subset[i]];
  std::vector<std::pair<int, int>> sub_edges;
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < k; ++j) {
      if (i != j && leq(subset[i], subset[j])) sub_edges.emplace_back(i, j);
    }
  }
  return PreOrder(std::move(labels), std::move(sub_edges));
}

PreOrder grid_preorder(const std::vector<int>& dims) {
  if (dims.empty()) throw std::invalid_argument("grid needs at least one dimension");
  long long total = 1;
  for (int d : dims) {
    if (d < 1) throw std::invalid_argument("grid dimension must be positive");
    total *= d;
    if (total > 5'000'000) throw std::invalid_argument("grid too large");
  }
  const int n = static_cast<int>(total);
  const int nd = static_cast<int>(dims.size());

  std::vector<int> stride(nd, 1);
  for (int a = nd - 2; a >= 0; --a) stride[a] = stride[a + 1] * dims[a + 1];

  std::vector<std::string> labels(n);
  std::vector<int> coord(nd, 1);
  for (int i = 0; i < n; ++i) {
    std::string s;
    for (int a = 0; a < nd; ++a) {
      if (a) s += ',';
      s += std::to_string(coord[a]);
    }
    labels[i] = std::move(s);
    for (int a = nd - 1; a >= 0; --a) {
      if (++coord[a] <= dims[a]) break;
      coord[a] = 1;
    }
  }

  std::vector<std::pair<int, int>> edges;
  std::fill(coord.begin(), coord.end(), 1);
  for (int i = 0; i < n; ++i) {
    for (int a = 0; a < nd; ++a) {
      if (coord[a] < dims[a]) edges.emplace_back(i, i + stride[a]);
    }
    for (int a = nd - 1; a >= 0; --a) {
      if (++coord[a] <= dims[a]) break;
      coord[a] = 1;
    }
  }
  return PreOrder(std::move(labels), std::move(edges));
}

}  // namespace isocone
