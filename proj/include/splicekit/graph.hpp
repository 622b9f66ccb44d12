#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "splicekit/linalg.hpp"
#include "splicekit/matrix.hpp"

namespace splicekit {

enum class VertexKind { leaf, string, node };

std::string_view to_string(VertexKind kind);

struct Vertex {
  std::string id;
  std::int64_t weight;  // self-intersection E_v.E_v
  friend bool operator==(const Vertex&, const Vertex&) = default;
};

using IdPair = std::pair<std::string, std::string>;

// Weighted tree. Vertex order is insertion order; all matrices use it.
// Weights are not checked here (see validation_problems).
class ResolutionGraph {
 public:
  ResolutionGraph(std::vector<Vertex> vertices, const std::vector<IdPair>& edges);

  std::size_t size() const { return vertices_.size(); }
  const Vertex& vertex(std::size_t i) const { return vertices_[i]; }
  const std::vector<Vertex>& vertices() const { return vertices_; }
  const std::string& id(std::size_t i) const { return vertices_[i].id; }
  std::int64_t weight(std::size_t i) const { return vertices_[i].weight; }

  std::optional<std::size_t> find(std::string_view id) const;
  std::size_t index_of(std::string_view id) const;  // throws unknown_vertex

  // sorted by index
  const std::vector<std::size_t>& neighbors(std::size_t i) const { return adjacency_[i]; }
  std::size_t valency(std::size_t i) const { return adjacency_[i].size(); }
  bool adjacent(std::size_t a, std::size_t b) const;

  // (a, b) in input order
  const std::vector<std::pair<std::size_t, std::size_t>>& edges() const { return edges_; }

  VertexKind kind(std::size_t i) const;
  bool is_node(std::size_t i) const { return kind(i) == VertexKind::node; }
  bool is_leaf(std::size_t i) const { return kind(i) == VertexKind::leaf; }
  std::vector<std::size_t> nodes() const;
  std::vector<std::size_t> leaves() const;

  // Empty when the graph is a valid resolution graph (all weights negative).
  std::vector<std::string> validation_problems() const;

  // Component of (graph - from) containing `toward`, sorted.
  std::vector<std::size_t> branch(std::size_t from, std::size_t toward) const;
  // One branch per neighbour of i, in neighbour order.
  std::vector<std::vector<std::size_t>> branches(std::size_t i) const;
  // Vertices on the path a..b inclusive, in order.
  std::vector<std::size_t> path(std::size_t a, std::size_t b) const;

  ResolutionGraph induced(std::span<const std::size_t> subset) const;

 private:
  std::vector<Vertex> vertices_;
  std::vector<std::pair<std::size_t, std::size_t>> edges_;
  std::vector<std::vector<std::size_t>> adjacency_;
  std::unordered_map<std::string, std::size_t> index_;
};

IntegerMatrix intersection_matrix(const ResolutionGraph& g);
// -A restricted to a vertex subset (in the given order). Empty subset gives 0x0.
IntegerMatrix negated_intersection_matrix(const ResolutionGraph& g, std::span<const std::size_t> subset);

bool is_negative_definite(const ResolutionGraph& g);
void require_negative_definite(const ResolutionGraph& g);  // throws not_negative_definite

// det(-A). Throws not_negative_definite.
BigInt det_gamma(const ResolutionGraph& g);
// det(-A) of an induced subgraph; the empty subgraph has determinant 1.
BigInt subgraph_determinant(const ResolutionGraph& g, std::span<const std::size_t> subset);

std::vector<VertexKind> classify_vertices(const ResolutionGraph& g);

// Maximal connected subgraphs without nodes, each listed in path order.
std::vector<std::vector<std::size_t>> strings(const ResolutionGraph& g);
bool is_quasi_minimal(const ResolutionGraph& g);

// New (-1) vertex between a and b; a and b lose one from their weights.
ResolutionGraph blow_up_edge(const ResolutionGraph& g, std::string_view a, std::string_view b,
                             std::string new_id = {});

}  // namespace splicekit
