#pragma once

#include <string>
#include <utility>
#include <vector>

namespace isocone {

struct ComponentPartition {
  // Disjoint element-index sets covering the ground set, each sorted ascending.
  std::vector<std::vector<int>> components;
};

// Finite pre-ordered set. The relation is the reflexive-transitive closure of
// the supplied edge list; cycles are allowed (a <= b and b <= a with a != b),
// so the canonical internal form is the SCC condensation with a reachability
// table on top of it.
class PreOrder {
 public:
  PreOrder(std::vector<std::string> elements,
           const std::vector<std::pair<std::string, std::string>>& edges);
  PreOrder(std::vector<std::string> elements,
           std::vector<std::pair<int, int>> edges);

  int size() const { return static_cast<int>(elements_.size()); }
  const std::vector<std::string>& elements() const { return elements_; }
  const std::vector<std::pair<int, int>>& edges() const { return edges_; }
  int index_of(const std::string& label) const;

  // a <= b in the closure.
  bool leq(int a, int b) const;
  bool comparable(int a, int b) const;
  bool comparable(const std::string& a, const std::string& b) const;

  bool is_isotonic(const std::vector<double>& v, double slack = 1e-12) const;

  ComponentPartition comparable_components() const;
  int component_of(int i) const { return component_[i]; }
  int component_count() const { return component_count_; }

  int scc_count() const { return static_cast<int>(scc_members_.size()); }
  int scc_of(int i) const { return scc_id_[i]; }
  const std::vector<std::vector<int>>& scc_members() const { return scc_members_; }
  // Deduplicated condensation adjacency, no self loops.
  const std::vector<std::vector<int>>& scc_dag() const { return dag_adj_; }

  // Sub-pre-order on the given element indices; the relation is the induced
  // closure relation, so transitive paths through dropped elements survive.
  // Element i of the result corresponds to subset[i] of this pre-order.
  PreOrder restrict_to(const std::vector<int>& subset) const;

 private:
  void build();

  std::vector<std::string> elements_;
  std::vector<std::pair<int, int>> edges_;
  std::vector<int> scc_id_;
  std::vector<std::vector<int>> scc_members_;
  std::vector<std::vector<int>> dag_adj_;
  std::vector<std::vector<unsigned char>> reach_;  // scc x scc, closure incl. self
  std::vector<int> component_;
  int component_count_ = 0;
};

// d-dimensional matrix order with cover edges between coordinate-adjacent
// points; elements are labeled "i1,i2,...,id" (1-based) in row-major order.
PreOrder grid_preorder(const std::vector<int>& dims);

}  // namespace isocone
