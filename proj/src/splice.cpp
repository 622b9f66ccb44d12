#include "splicekit/splice.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "splicekit/error.hpp"

namespace splicekit {

// ---- WeightedTree

std::size_t WeightedTree::add_vertex(std::string id) {
  vertices_.push_back({std::move(id)});
  incident_.emplace_back();
  return vertices_.size() - 1;
}

std::size_t WeightedTree::add_edge(SpliceEdge e) {
  edges_.push_back(std::move(e));
  const std::size_t idx = edges_.size() - 1;
  incident_[edges_[idx].a].push_back(idx);
  incident_[edges_[idx].b].push_back(idx);
  return idx;
}

std::optional<std::size_t> WeightedTree::find(std::string_view id) const {
  for (std::size_t i = 0; i < vertices_.size(); ++i)
    if (vertices_[i].id == id) return i;
  return std::nullopt;
}

std::size_t WeightedTree::index_of(std::string_view id) const {
  auto i = find(id);
  if (!i) throw SpliceError(ErrorCode::unknown_vertex, "diagram has no vertex '" + std::string(id) + "'");
  return *i;
}

std::vector<std::size_t> WeightedTree::nodes() const {
  std::vector<std::size_t> out;
  for (std::size_t v = 0; v < size(); ++v)
    if (is_node(v)) out.push_back(v);
  return out;
}

std::vector<std::size_t> WeightedTree::leaves() const {
  std::vector<std::size_t> out;
  for (std::size_t v = 0; v < size(); ++v)
    if (is_leaf(v)) out.push_back(v);
  return out;
}

std::size_t WeightedTree::other_end(std::size_t e, std::size_t v) const {
  return edges_[e].a == v ? edges_[e].b : edges_[e].a;
}

std::optional<std::size_t> WeightedTree::edge_between(std::size_t v, std::size_t w) const {
  for (std::size_t e : incident_[v])
    if (other_end(e, v) == w) return e;
  return std::nullopt;
}

const std::optional<BigInt>& WeightedTree::weight_slot(std::size_t v, std::size_t e) const {
  const SpliceEdge& ed = edges_[e];
  if (ed.a == v) return ed.weight_a;
  if (ed.b == v) return ed.weight_b;
  throw std::logic_error("weight_slot: edge not incident to vertex");
}

const BigInt& WeightedTree::weight(std::size_t v, std::size_t e) const {
  const auto& slot = weight_slot(v, e);
  if (!slot) throw SpliceError(ErrorCode::leaf_edge_in_reduced_diagram, "no weight at '" + id(v) + "' on this edge");
  return *slot;
}

void WeightedTree::set_weight(std::size_t v, std::size_t e, std::optional<BigInt> w) {
  SpliceEdge& ed = edges_[e];
  if (ed.a == v)
    ed.weight_a = std::move(w);
  else if (ed.b == v)
    ed.weight_b = std::move(w);
  else
    throw std::logic_error("set_weight: edge not incident to vertex");
}

BigInt WeightedTree::weight_product(std::size_t v) const {
  BigInt p = 1;
  for (std::size_t e : incident_[v])
    if (const auto& w = weight_slot(v, e)) p *= *w;
  return p;
}

std::vector<std::size_t> WeightedTree::path_edges(std::size_t v, std::size_t w) const {
  // parent edge of each vertex in a search from v
  const std::size_t none = edges_.size();
  std::vector<std::size_t> via(size(), none);
  std::vector<char> seen(size(), 0);
  std::vector<std::size_t> queue{v};
  seen[v] = 1;
  for (std::size_t h = 0; h < queue.size(); ++h) {
    std::size_t x = queue[h];
    for (std::size_t e : incident_[x]) {
      std::size_t y = other_end(e, x);
      if (!seen[y]) {
        seen[y] = 1;
        via[y] = e;
        queue.push_back(y);
      }
    }
  }
  std::vector<std::size_t> out;
  for (std::size_t x = w; x != v; x = other_end(via[x], x)) out.push_back(via[x]);
  std::reverse(out.begin(), out.end());
  return out;
}

std::vector<std::size_t> WeightedTree::path_vertices(std::size_t v, std::size_t w) const {
  std::vector<std::size_t> out{v};
  std::size_t x = v;
  for (std::size_t e : path_edges(v, w)) {
    x = other_end(e, x);
    out.push_back(x);
  }
  return out;
}

std::vector<std::size_t> WeightedTree::side_vertices(std::size_t v, std::size_t e) const {
  std::vector<std::size_t> out;
  std::vector<std::pair<std::size_t, std::size_t>> stack{{other_end(e, v), e}};
  while (!stack.empty()) {
    auto [x, from] = stack.back();
    stack.pop_back();
    out.push_back(x);
    for (std::size_t f : incident_[x])
      if (f != from) stack.emplace_back(other_end(f, x), f);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::size_t> WeightedTree::side_leaves(std::size_t v, std::size_t e) const {
  std::vector<std::size_t> out;
  for (std::size_t x : side_vertices(v, e))
    if (is_leaf(x)) out.push_back(x);
  return out;
}

// ---- construction from a resolution graph

SpliceDiagram splice_from_resolution(const ResolutionGraph& g) {
  require_negative_definite(g);
  SpliceDiagram d;
  std::vector<std::size_t> index(g.size(), g.size());
  for (std::size_t v = 0; v < g.size(); ++v)
    if (g.valency(v) != 2) index[v] = d.add_vertex(g.id(v));

  for (std::size_t v = 0; v < g.size(); ++v) {
    if (index[v] == g.size()) continue;
    for (std::size_t first : g.neighbors(v)) {
      std::vector<std::size_t> interior;
      std::size_t prev = v, cur = first;
      while (g.valency(cur) == 2) {
        interior.push_back(cur);
        std::size_t next = g.neighbors(cur)[0] == prev ? g.neighbors(cur)[1] : g.neighbors(cur)[0];
        prev = cur;
        cur = next;
      }
      const std::size_t u = cur;
      if (u < v) continue;  // added from the other side
      SpliceEdge e;
      e.a = index[v];
      e.b = index[u];
      if (g.is_node(v)) e.weight_a = subgraph_determinant(g, g.branch(v, first));
      if (g.is_node(u)) e.weight_b = subgraph_determinant(g, g.branch(u, prev));
      std::vector<std::string> ids;
      for (std::size_t s : interior) ids.push_back(g.id(s));
      e.string = std::move(ids);
      d.add_edge(std::move(e));
    }
  }
  return d;
}

MaximalSpliceDiagram maximal_splice(const ResolutionGraph& g) {
  require_negative_definite(g);
  MaximalSpliceDiagram d;
  for (std::size_t v = 0; v < g.size(); ++v) d.add_vertex(g.id(v));
  for (auto [a, b] : g.edges()) {
    SpliceEdge e;
    e.a = a;
    e.b = b;
    e.weight_a = subgraph_determinant(g, g.branch(a, b));
    e.weight_b = subgraph_determinant(g, g.branch(b, a));
    e.string = std::vector<std::string>{};
    d.add_edge(std::move(e));
  }
  return d;
}

// ---- linking numbers

LinkingNumbers linking_numbers(const WeightedTree& t, std::size_t v, std::size_t w) {
  if (v == w) throw SpliceError(ErrorCode::same_vertex, "linking number needs two distinct vertices");
  const auto on_path = t.path_edges(v, w);
  LinkingNumbers out{1, 1};
  for (std::size_t u : t.path_vertices(v, w)) {
    for (std::size_t e : t.incident(u)) {
      if (std::find(on_path.begin(), on_path.end(), e) != on_path.end()) continue;
      const auto& slot = t.weight_slot(u, e);
      if (!slot) continue;
      out.full *= *slot;
      if (u != v && u != w) out.reduced *= *slot;
    }
  }
  return out;
}

IntegerMatrix linking_matrix(const WeightedTree& t) {
  const std::size_t n = t.size();
  IntegerMatrix l(n, n);
  for (std::size_t v = 0; v < n; ++v) {
    l(v, v) = t.weight_product(v);
    for (std::size_t w = v + 1; w < n; ++w) {
      l(v, w) = linking_numbers(t, v, w).full;
      l(w, v) = l(v, w);
    }
  }
  return l;
}

IntegerMatrix linking_matrix_from_inverse(const ResolutionGraph& g) {
  require_negative_definite(g);
  return adjugate(intersection_matrix(g).negated());
}

// ---- edge determinants

namespace {

BigInt edge_determinant_unchecked(const WeightedTree& t, std::size_t e) {
  const SpliceEdge& ed = t.edge(e);
  BigInt on = t.weight(ed.a, e) * t.weight(ed.b, e);
  BigInt adjacent = 1;
  for (std::size_t end : {ed.a, ed.b})
    for (std::size_t f : t.incident(end))
      if (f != e)
        if (const auto& w = t.weight_slot(end, f)) adjacent *= *w;
  return on - adjacent;
}

}  // namespace

BigInt edge_determinant(const SpliceDiagram& d, std::size_t e) {
  const SpliceEdge& ed = d.edge(e);
  if (!d.is_node(ed.a) || !d.is_node(ed.b))
    throw SpliceError(ErrorCode::leaf_edge_in_reduced_diagram,
                      "edge " + d.id(ed.a) + "-" + d.id(ed.b) + " does not join two nodes");
  return edge_determinant_unchecked(d, e);
}

BigInt edge_determinant(const MaximalSpliceDiagram& d, std::size_t e) { return edge_determinant_unchecked(d, e); }

std::vector<EdgeDeterminantCheck> verify_edge_det_theorem(const ResolutionGraph& g) {
  const BigInt det = det_gamma(g);
  const SpliceDiagram d = splice_from_resolution(g);
  std::vector<EdgeDeterminantCheck> out;
  for (std::size_t e = 0; e < d.edges().size(); ++e) {
    const SpliceEdge& ed = d.edge(e);
    if (!d.is_node(ed.a) || !d.is_node(ed.b)) continue;
    std::vector<std::size_t> sub;
    for (const auto& s : *ed.string) sub.push_back(g.index_of(s));
    EdgeDeterminantCheck c{d.id(ed.a), d.id(ed.b), edge_determinant(d, e), subgraph_determinant(g, sub), det, false};
    c.holds = c.edge_determinant == c.string_determinant * det;
    out.push_back(std::move(c));
  }
  return out;
}

bool same_diagram(const WeightedTree& x, const WeightedTree& y) {
  if (x.size() != y.size() || x.edges().size() != y.edges().size()) return false;
  std::vector<std::size_t> map(x.size());
  for (std::size_t v = 0; v < x.size(); ++v) {
    auto w = y.find(x.id(v));
    if (!w) return false;
    map[v] = *w;
  }
  for (std::size_t e = 0; e < x.edges().size(); ++e) {
    const SpliceEdge& ed = x.edge(e);
    auto f = y.edge_between(map[ed.a], map[ed.b]);
    if (!f) return false;
    if (x.weight_slot(ed.a, e) != y.weight_slot(map[ed.a], *f)) return false;
    if (x.weight_slot(ed.b, e) != y.weight_slot(map[ed.b], *f)) return false;
  }
  return true;
}

// ---- continued fractions

ContinuedFraction continued_fraction_of_string(const std::vector<std::int64_t>& weights) {
  // D(i) = det of the tail starting at i; D(k) = 1, D(k+1) = 0
  BigInt next = 0, cur = 1;
  for (auto it = weights.rbegin(); it != weights.rend(); ++it) {
    if (*it > -1) throw SpliceError(ErrorCode::validation, "string entries must be <= -1");
    BigInt d = BigInt(static_cast<long>(-*it)) * cur - next;
    next = cur;
    cur = d;
  }
  return {cur, next};
}

namespace {

void require_reduced(const ContinuedFraction& cf) {
  const bool ok = cf.n >= 1 && cf.p >= 0 && gcd(cf.n, cf.p) == 1 && (cf.p < cf.n || (cf.n == 1 && cf.p <= 1));
  if (!ok)
    throw SpliceError(ErrorCode::non_reduced_fraction,
                      "continued fraction " + to_string(cf.n) + "/" + to_string(cf.p) + " is not reduced");
}

}  // namespace

std::vector<std::int64_t> string_of_cf(const ContinuedFraction& cf) {
  require_reduced(cf);
  std::vector<std::int64_t> out;
  BigInt n = cf.n, p = cf.p;
  while (p != 0) {
    BigInt b = ceil_div(n, p);
    out.push_back(-b.get_si());
    BigInt np = b * p - n;
    n = p;
    p = np;
  }
  return out;
}

ContinuedFraction reverse_cf(const ContinuedFraction& cf) {
  require_reduced(cf);
  if (cf.n == 1) return cf;
  return {cf.n, *mod_inverse(cf.p, cf.n)};
}

BigInt cf_n_prime(const ContinuedFraction& cf) {
  const ContinuedFraction r = reverse_cf(cf);
  return (cf.p * r.p - 1) / cf.n;
}

// ---- ideal condition

BigInt ideal_generator(const WeightedTree& t, std::size_t v, std::size_t e) {
  const std::size_t u = t.other_end(e, v);
  if (t.valency(u) <= 1) return 1;
  BigInt g = 0;
  for (std::size_t ei : t.incident(u)) {
    if (ei == e) continue;
    BigInt term = ideal_generator(t, u, ei);
    for (std::size_t ej : t.incident(u))
      if (ej != e && ej != ei) term *= t.weight(u, ej);
    g = gcd(g, term);
  }
  return g;
}

IdealReport check_ideal_condition(const SpliceDiagram& d) {
  IdealReport r;
  for (std::size_t v : d.nodes())
    for (std::size_t e : d.incident(v)) {
      IdealCheck c{v, e, d.weight(v, e), ideal_generator(d, v, e), false};
      c.holds = divides(c.generator, c.weight);
      r.holds = r.holds && c.holds;
      r.entries.push_back(std::move(c));
    }
  return r;
}

BigInt leaf_knot_order(const ResolutionGraph& g, std::string_view leaf) {
  const BigInt det = det_gamma(g);
  const std::size_t gi = g.index_of(leaf);
  if (!g.is_leaf(gi)) throw SpliceError(ErrorCode::validation, "'" + std::string(leaf) + "' is not a leaf");
  if (g.size() == 1) return det;
  const SpliceDiagram d = splice_from_resolution(g);
  const std::size_t w = d.index_of(leaf);
  const BigInt dbar = ideal_generator(d, w, d.incident(w).front());
  if (!divides(dbar, det)) throw std::logic_error("ideal generator at a leaf does not divide det");
  return det / dbar;
}

// ---- end-node reduction

bool is_end_node(const WeightedTree& t, std::size_t v) {
  if (!t.is_node(v)) return false;
  std::size_t inner = 0;
  for (std::size_t e : t.incident(v))
    if (!t.is_leaf(t.other_end(e, v))) ++inner;
  return inner <= 1;
}

ReductionResult end_node_reduce(const SpliceDiagram& d, std::size_t v_star, const ReductionOptions& opts) {
  if (v_star >= d.size() || !is_end_node(d, v_star))
    throw SpliceError(ErrorCode::not_end_node, "'" + (v_star < d.size() ? d.id(v_star) : std::string("?")) +
                                                   "' is not an end-node");
  ReductionResult out;
  std::optional<std::size_t> central;
  for (std::size_t e : d.incident(v_star))
    if (!d.is_leaf(d.other_end(e, v_star))) central = e;
  if (!central) {
    out.degenerate = true;
    return out;
  }
  out.r = d.weight(v_star, *central);
  BigInt n_prod = 1;
  for (std::size_t e : d.incident(v_star))
    if (e != *central) n_prod *= d.weight(v_star, e);

  // vertices: everything except v*'s leaves; v* becomes the new leaf
  const std::size_t none = d.size();
  std::vector<std::size_t> map(d.size(), none);
  for (std::size_t v = 0; v < d.size(); ++v) {
    if (v == v_star) {
      map[v] = out.diagram.add_vertex(opts.new_leaf_id.empty() ? d.id(v) : opts.new_leaf_id);
      continue;
    }
    const bool dropped = d.is_leaf(v) && d.edge_between(v, v_star).has_value();
    if (!dropped) map[v] = out.diagram.add_vertex(d.id(v));
  }
  std::vector<std::size_t> new_edge(d.edges().size(), d.edges().size());
  for (std::size_t e = 0; e < d.edges().size(); ++e) {
    SpliceEdge ed = d.edge(e);
    if ((ed.a == v_star || ed.b == v_star) && e != *central) continue;
    if (e == *central) {
      (ed.a == v_star ? ed.weight_a : ed.weight_b).reset();
      ed.string.reset();
    }
    ed.a = map[ed.a];
    ed.b = map[ed.b];
    new_edge[e] = out.diagram.add_edge(std::move(ed));
  }

  for (std::size_t v : d.nodes()) {
    if (v == v_star) continue;
    const std::size_t toward = d.path_edges(v, v_star).front();
    const BigInt& a = d.weight(v, toward);
    const BigInt m_prod = d.weight_product(v) / a;
    const BigInt lp = linking_numbers(d, v, v_star).reduced;
    const BigInt raw = out.r * a - n_prod * m_prod * lp * lp;
    std::optional<BigInt> value;
    if (opts.mode == ReductionMode::raw) {
      value = raw;
    } else if (divides(opts.det, raw)) {
      value = raw / opts.det;
    } else {
      out.non_integral.push_back({d.id(v), d.id(d.other_end(toward, v)), make_rational(raw, opts.det)});
    }
    out.diagram.set_weight(map[v], new_edge[toward], value);
  }
  return out;
}

GraphReduction end_node_reduce_graph(const ResolutionGraph& g, std::string_view v_star_id) {
  const SpliceDiagram d0 = splice_from_resolution(g);
  const std::size_t vs0 = d0.index_of(v_star_id);
  if (!is_end_node(d0, vs0))
    throw SpliceError(ErrorCode::not_end_node, "'" + std::string(v_star_id) + "' is not an end-node");
  std::optional<std::size_t> central;
  for (std::size_t e : d0.incident(vs0))
    if (!d0.is_leaf(d0.other_end(e, vs0))) central = e;
  if (!central)
    throw SpliceError(ErrorCode::not_end_node, "single-node diagram: nothing remains after removing '" +
                                                   std::string(v_star_id) + "'");

  ResolutionGraph working = g;
  bool blown_up = false;
  if (d0.edge(*central).string->empty()) {
    const std::string other = d0.id(d0.other_end(*central, vs0));
    working = blow_up_edge(g, v_star_id, other);
    blown_up = true;
  }
  const SpliceDiagram d = blown_up ? splice_from_resolution(working) : d0;
  const std::size_t vs = d.index_of(v_star_id);
  std::size_t ce = 0;
  for (std::size_t e : d.incident(vs))
    if (!d.is_leaf(d.other_end(e, vs))) ce = e;
  std::vector<std::string> str = *d.edge(ce).string;
  if (d.edge(ce).b == vs) std::reverse(str.begin(), str.end());
  const std::string new_leaf = str.front();

  const std::size_t gv = working.index_of(v_star_id);
  const std::size_t first = working.index_of(new_leaf);
  const std::vector<std::size_t> keep = working.branch(gv, first);
  ResolutionGraph reduced = working.induced(keep);

  ReductionOptions opts;
  opts.mode = ReductionMode::normalized;
  opts.det = det_gamma(working);
  opts.new_leaf_id = new_leaf;
  ReductionResult formula = end_node_reduce(d, vs, opts);
  SpliceDiagram derived = splice_from_resolution(reduced);
  BigInt det_reduced = det_gamma(reduced);
  const bool r_is_det = formula.r == det_reduced;
  const bool agree = formula.non_integral.empty() && same_diagram(formula.diagram, derived);
  return GraphReduction{std::move(working), blown_up,        std::move(reduced), new_leaf, std::move(formula),
                        std::move(derived), std::move(det_reduced), r_is_det,    agree};
}

}  // namespace splicekit
