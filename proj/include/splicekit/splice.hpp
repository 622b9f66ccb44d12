#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "splicekit/graph.hpp"
#include "splicekit/numeric.hpp"

namespace splicekit {

struct SpliceVertex {
  std::string id;  // resolution-graph vertex id when derived from a graph
};

struct SpliceEdge {
  std::size_t a = 0;
  std::size_t b = 0;
  std::optional<BigInt> weight_a;  // weight at end a
  std::optional<BigInt> weight_b;
  // interior resolution-graph vertices, ordered from a to b
  std::optional<std::vector<std::string>> string;
};

// Tree with optional weights at each (vertex, edge) pair.
class WeightedTree {
 public:
  std::size_t add_vertex(std::string id);
  std::size_t add_edge(SpliceEdge e);

  std::size_t size() const { return vertices_.size(); }
  const std::string& id(std::size_t v) const { return vertices_[v].id; }
  const std::vector<SpliceEdge>& edges() const { return edges_; }
  const SpliceEdge& edge(std::size_t e) const { return edges_[e]; }
  std::optional<std::size_t> find(std::string_view id) const;
  std::size_t index_of(std::string_view id) const;

  const std::vector<std::size_t>& incident(std::size_t v) const { return incident_[v]; }
  std::size_t valency(std::size_t v) const { return incident_[v].size(); }
  bool is_leaf(std::size_t v) const { return valency(v) <= 1; }
  bool is_node(std::size_t v) const { return valency(v) >= 3; }
  std::vector<std::size_t> nodes() const;
  std::vector<std::size_t> leaves() const;

  std::size_t other_end(std::size_t e, std::size_t v) const;
  std::optional<std::size_t> edge_between(std::size_t v, std::size_t w) const;
  const std::optional<BigInt>& weight_slot(std::size_t v, std::size_t e) const;
  const BigInt& weight(std::size_t v, std::size_t e) const;  // throws if absent
  void set_weight(std::size_t v, std::size_t e, std::optional<BigInt> w);
  BigInt weight_product(std::size_t v) const;  // d_v

  std::vector<std::size_t> path_vertices(std::size_t v, std::size_t w) const;
  std::vector<std::size_t> path_edges(std::size_t v, std::size_t w) const;
  // vertices of the component on the e-side of v
  std::vector<std::size_t> side_vertices(std::size_t v, std::size_t e) const;
  std::vector<std::size_t> side_leaves(std::size_t v, std::size_t e) const;

 private:
  std::vector<SpliceVertex> vertices_;
  std::vector<SpliceEdge> edges_;
  std::vector<std::vector<std::size_t>> incident_;
};

class SpliceDiagram : public WeightedTree {};
class MaximalSpliceDiagram : public WeightedTree {};

SpliceDiagram splice_from_resolution(const ResolutionGraph& g);
MaximalSpliceDiagram maximal_splice(const ResolutionGraph& g);

struct LinkingNumbers {
  BigInt full;     // l_vw
  BigInt reduced;  // l'_vw
};
LinkingNumbers linking_numbers(const WeightedTree& t, std::size_t v, std::size_t w);
// l_vv = d_v, off-diagonal l_vw; rows in vertex order
IntegerMatrix linking_matrix(const WeightedTree& t);
// adj(-A) = det * (-A)^{-1}
IntegerMatrix linking_matrix_from_inverse(const ResolutionGraph& g);

BigInt edge_determinant(const SpliceDiagram& d, std::size_t e);
BigInt edge_determinant(const MaximalSpliceDiagram& d, std::size_t e);

struct EdgeDeterminantCheck {
  std::string a, b;
  BigInt edge_determinant;
  BigInt string_determinant;
  BigInt det_gamma;
  bool holds;
};
std::vector<EdgeDeterminantCheck> verify_edge_det_theorem(const ResolutionGraph& g);

// Same ids, same edges (by id pairs) and the same weights at every end.
bool same_diagram(const WeightedTree& x, const WeightedTree& y);

struct ContinuedFraction {
  BigInt n = 1;
  BigInt p = 0;
  friend bool operator==(const ContinuedFraction&, const ContinuedFraction&) = default;
};
// Entries are the self-intersections -b_i with b_i >= 1.
ContinuedFraction continued_fraction_of_string(const std::vector<std::int64_t>& weights);
std::vector<std::int64_t> string_of_cf(const ContinuedFraction& cf);
ContinuedFraction reverse_cf(const ContinuedFraction& cf);
// n' = (p p' - 1) / n
BigInt cf_n_prime(const ContinuedFraction& cf);

BigInt ideal_generator(const WeightedTree& t, std::size_t v, std::size_t e);

struct IdealCheck {
  std::size_t node, edge;
  BigInt weight, generator;
  bool holds;
};
struct IdealReport {
  std::vector<IdealCheck> entries;
  bool holds = true;
};
IdealReport check_ideal_condition(const SpliceDiagram& d);

BigInt leaf_knot_order(const ResolutionGraph& g, std::string_view leaf);

bool is_end_node(const WeightedTree& t, std::size_t v);

enum class ReductionMode { raw, normalized };

struct NonIntegralWeight {
  std::string node, toward;
  Rational value;
};

struct ReductionResult {
  SpliceDiagram diagram;
  BigInt r;  // weight at v* toward the rest
  bool degenerate = false;  // single-node input, empty diagram returned
  std::vector<NonIntegralWeight> non_integral;
};

struct ReductionOptions {
  ReductionMode mode = ReductionMode::normalized;
  BigInt det = 1;                 // det(Gamma), used by normalized mode
  std::string new_leaf_id;        // id of the leaf replacing v*; defaults to v*'s id
};

ReductionResult end_node_reduce(const SpliceDiagram& d, std::size_t v_star, const ReductionOptions& opts = {});

struct GraphReduction {
  ResolutionGraph working;  // input, blown up if the central string was empty
  bool blown_up = false;
  ResolutionGraph reduced;  // Gamma tilde
  std::string new_leaf;     // w*
  ReductionResult formula;  // via the weight formula
  SpliceDiagram derived;    // splice_from_resolution(reduced)
  BigInt det_reduced;
  bool r_is_det = false;
  bool agree = false;
};

GraphReduction end_node_reduce_graph(const ResolutionGraph& g, std::string_view v_star);

}  // namespace splicekit
