#include "splicekit/graph.hpp"

#include <algorithm>
#include <numeric>

#include "splicekit/error.hpp"

namespace splicekit {

std::string_view to_string(VertexKind kind) {
  switch (kind) {
    case VertexKind::leaf: return "leaf";
    case VertexKind::string: return "string";
    case VertexKind::node: return "node";
  }
  return "?";
}

ResolutionGraph::ResolutionGraph(std::vector<Vertex> vertices, const std::vector<IdPair>& edges)
    : vertices_(std::move(vertices)) {
  if (vertices_.empty()) throw SpliceError(ErrorCode::validation, "graph has no vertices");
  for (std::size_t i = 0; i < vertices_.size(); ++i) {
    if (vertices_[i].id.empty()) throw SpliceError(ErrorCode::validation, "empty vertex id");
    if (!index_.emplace(vertices_[i].id, i).second)
      throw SpliceError(ErrorCode::validation, "duplicate vertex id '" + vertices_[i].id + "'");
  }
  adjacency_.resize(vertices_.size());
  for (const auto& [a, b] : edges) {
    auto ia = find(a), ib = find(b);
    if (!ia) throw SpliceError(ErrorCode::validation, "edge references unknown vertex '" + a + "'");
    if (!ib) throw SpliceError(ErrorCode::validation, "edge references unknown vertex '" + b + "'");
    if (*ia == *ib) throw SpliceError(ErrorCode::validation, "self-loop at '" + a + "'");
    if (adjacent(*ia, *ib)) throw SpliceError(ErrorCode::validation, "duplicate edge " + a + "-" + b);
    edges_.emplace_back(*ia, *ib);
    adjacency_[*ia].push_back(*ib);
    adjacency_[*ib].push_back(*ia);
  }
  for (auto& adj : adjacency_) std::sort(adj.begin(), adj.end());
  if (edges_.size() + 1 != vertices_.size())
    throw SpliceError(ErrorCode::validation, "not a tree: " + std::to_string(vertices_.size()) + " vertices but " +
                                                 std::to_string(edges_.size()) + " edges");
  // connectivity
  std::vector<char> seen(vertices_.size(), 0);
  std::vector<std::size_t> stack{0};
  seen[0] = 1;
  std::size_t count = 1;
  while (!stack.empty()) {
    std::size_t v = stack.back();
    stack.pop_back();
    for (std::size_t w : adjacency_[v])
      if (!seen[w]) {
        seen[w] = 1;
        ++count;
        stack.push_back(w);
      }
  }
  if (count != vertices_.size()) throw SpliceError(ErrorCode::validation, "not a tree: graph is disconnected");
}

std::optional<std::size_t> ResolutionGraph::find(std::string_view id) const {
  auto it = index_.find(std::string(id));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::size_t ResolutionGraph::index_of(std::string_view id) const {
  auto i = find(id);
  if (!i) throw SpliceError(ErrorCode::unknown_vertex, "unknown vertex '" + std::string(id) + "'");
  return *i;
}

bool ResolutionGraph::adjacent(std::size_t a, std::size_t b) const {
  const auto& adj = adjacency_[a];
  return std::find(adj.begin(), adj.end(), b) != adj.end();
}

VertexKind ResolutionGraph::kind(std::size_t i) const {
  const std::size_t d = valency(i);
  if (d <= 1) return VertexKind::leaf;
  if (d == 2) return VertexKind::string;
  return VertexKind::node;
}

std::vector<std::size_t> ResolutionGraph::nodes() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < size(); ++i)
    if (is_node(i)) out.push_back(i);
  return out;
}

std::vector<std::size_t> ResolutionGraph::leaves() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < size(); ++i)
    if (is_leaf(i)) out.push_back(i);
  return out;
}

std::vector<std::string> ResolutionGraph::validation_problems() const {
  std::vector<std::string> out;
  for (const auto& v : vertices_)
    if (v.weight >= 0) out.push_back("vertex '" + v.id + "' has non-negative weight " + std::to_string(v.weight));
  return out;
}

std::vector<std::size_t> ResolutionGraph::branch(std::size_t from, std::size_t toward) const {
  std::vector<std::size_t> out{toward};
  std::vector<std::pair<std::size_t, std::size_t>> stack{{toward, from}};
  while (!stack.empty()) {
    auto [v, parent] = stack.back();
    stack.pop_back();
    for (std::size_t w : adjacency_[v])
      if (w != parent) {
        out.push_back(w);
        stack.emplace_back(w, v);
      }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::vector<std::size_t>> ResolutionGraph::branches(std::size_t i) const {
  std::vector<std::vector<std::size_t>> out;
  for (std::size_t n : adjacency_[i]) out.push_back(branch(i, n));
  return out;
}

std::vector<std::size_t> ResolutionGraph::path(std::size_t a, std::size_t b) const {
  std::vector<std::size_t> parent(size(), size());
  std::vector<std::size_t> queue{a};
  parent[a] = a;
  for (std::size_t h = 0; h < queue.size(); ++h) {
    std::size_t v = queue[h];
    if (v == b) break;
    for (std::size_t w : adjacency_[v])
      if (parent[w] == size()) {
        parent[w] = v;
        queue.push_back(w);
      }
  }
  std::vector<std::size_t> out;
  for (std::size_t v = b; v != a; v = parent[v]) out.push_back(v);
  out.push_back(a);
  std::reverse(out.begin(), out.end());
  return out;
}

ResolutionGraph ResolutionGraph::induced(std::span<const std::size_t> subset) const {
  std::vector<Vertex> vs;
  std::vector<char> in(size(), 0);
  for (std::size_t i : subset) {
    vs.push_back(vertices_[i]);
    in[i] = 1;
  }
  std::vector<IdPair> es;
  for (auto [a, b] : edges_)
    if (in[a] && in[b]) es.emplace_back(id(a), id(b));
  return ResolutionGraph(std::move(vs), es);
}

IntegerMatrix intersection_matrix(const ResolutionGraph& g) {
  IntegerMatrix a(g.size(), g.size());
  for (std::size_t i = 0; i < g.size(); ++i) a(i, i) = BigInt(static_cast<long>(g.weight(i)));
  for (auto [x, y] : g.edges()) {
    a(x, y) = 1;
    a(y, x) = 1;
  }
  return a;
}

IntegerMatrix negated_intersection_matrix(const ResolutionGraph& g, std::span<const std::size_t> subset) {
  const std::size_t n = subset.size();
  IntegerMatrix m(n, n);
  for (std::size_t r = 0; r < n; ++r) {
    m(r, r) = BigInt(static_cast<long>(-g.weight(subset[r])));
    for (std::size_t c = r + 1; c < n; ++c)
      if (g.adjacent(subset[r], subset[c])) {
        m(r, c) = -1;
        m(c, r) = -1;
      }
  }
  return m;
}

bool is_negative_definite(const ResolutionGraph& g) {
  return is_positive_definite(intersection_matrix(g).negated());
}

void require_negative_definite(const ResolutionGraph& g) {
  if (!is_negative_definite(g))
    throw SpliceError(ErrorCode::not_negative_definite, "intersection matrix is not negative definite");
}

BigInt det_gamma(const ResolutionGraph& g) {
  require_negative_definite(g);
  return bareiss_determinant(intersection_matrix(g).negated());
}

BigInt subgraph_determinant(const ResolutionGraph& g, std::span<const std::size_t> subset) {
  return bareiss_determinant(negated_intersection_matrix(g, subset));
}

std::vector<VertexKind> classify_vertices(const ResolutionGraph& g) {
  std::vector<VertexKind> out;
  for (std::size_t i = 0; i < g.size(); ++i) out.push_back(g.kind(i));
  return out;
}

std::vector<std::vector<std::size_t>> strings(const ResolutionGraph& g) {
  const std::size_t n = g.size();
  std::vector<char> seen(n, 0);
  std::vector<std::vector<std::size_t>> out;
  for (std::size_t s = 0; s < n; ++s) {
    if (seen[s] || g.is_node(s)) continue;
    // collect the component of s in graph minus nodes
    std::vector<std::size_t> comp{s};
    seen[s] = 1;
    for (std::size_t h = 0; h < comp.size(); ++h)
      for (std::size_t w : g.neighbors(comp[h]))
        if (!seen[w] && !g.is_node(w)) {
          seen[w] = 1;
          comp.push_back(w);
        }
    // walk it from its smallest endpoint
    auto inner_degree = [&](std::size_t v) {
      return std::count_if(g.neighbors(v).begin(), g.neighbors(v).end(),
                           [&](std::size_t w) { return !g.is_node(w); });
    };
    std::size_t start = comp.size() == 1 ? comp[0] : n;
    for (std::size_t v : comp)
      if (inner_degree(v) <= 1 && v < start) start = v;
    std::vector<std::size_t> ordered{start};
    std::size_t prev = n, cur = start;
    for (;;) {
      std::size_t next = n;
      for (std::size_t w : g.neighbors(cur))
        if (w != prev && !g.is_node(w)) next = w;
      if (next == n) break;
      ordered.push_back(next);
      prev = cur;
      cur = next;
    }
    out.push_back(std::move(ordered));
  }
  return out;
}

bool is_quasi_minimal(const ResolutionGraph& g) {
  for (const auto& s : strings(g)) {
    bool has_minus_one = std::any_of(s.begin(), s.end(), [&](std::size_t v) { return g.weight(v) == -1; });
    if (has_minus_one && s.size() != 1) return false;
  }
  return true;
}

ResolutionGraph blow_up_edge(const ResolutionGraph& g, std::string_view a, std::string_view b, std::string new_id) {
  auto ia = g.find(a), ib = g.find(b);
  if (!ia || !ib || !g.adjacent(*ia, *ib))
    throw SpliceError(ErrorCode::unknown_edge, "no edge " + std::string(a) + "-" + std::string(b));
  if (new_id.empty()) {
    new_id = "x_" + std::string(a) + "_" + std::string(b);
    while (g.find(new_id)) new_id += "'";
  } else if (g.find(new_id)) {
    throw SpliceError(ErrorCode::validation, "vertex id '" + new_id + "' already in use");
  }
  std::vector<Vertex> vs = g.vertices();
  vs[*ia].weight -= 1;
  vs[*ib].weight -= 1;
  vs.push_back({new_id, -1});
  std::vector<IdPair> es;
  for (auto [x, y] : g.edges()) {
    if ((x == *ia && y == *ib) || (x == *ib && y == *ia)) {
      es.emplace_back(g.id(x), new_id);
      es.emplace_back(new_id, g.id(y));
    } else {
      es.emplace_back(g.id(x), g.id(y));
    }
  }
  return ResolutionGraph(std::move(vs), es);
}

}  // namespace splicekit
