#include "splicekit/okuma.hpp"

#include <algorithm>
#include <stdexcept>

#include "splicekit/error.hpp"
#include "splicekit/knapsack.hpp"
#include "splicekit/linalg.hpp"
#include "splicekit/splice.hpp"

namespace splicekit {

namespace {

std::vector<std::size_t> sorted_branch(const ResolutionGraph& g, std::size_t i, std::size_t root) {
  auto b = g.branch(i, root);
  std::sort(b.begin(), b.end());
  return b;
}

std::size_t neighbour_or_throw(const ResolutionGraph& g, std::size_t i, std::string_view root) {
  const auto r = g.find(root);
  if (!r || !g.adjacent(i, *r))
    throw SpliceError(ErrorCode::not_a_branch, std::string(root) + " is not a neighbour of " + g.id(i));
  return *r;
}

std::vector<std::size_t> distances_from(const ResolutionGraph& g, std::size_t i) {
  std::vector<std::size_t> dist(g.size(), g.size());
  std::vector<std::size_t> queue{i};
  dist[i] = 0;
  for (std::size_t q = 0; q < queue.size(); ++q)
    for (std::size_t w : g.neighbors(queue[q]))
      if (dist[w] == g.size()) {
        dist[w] = dist[queue[q]] + 1;
        queue.push_back(w);
      }
  return dist;
}

// Coefficients of D - Ebar_i, with inv = (-A)^{-1}.
bool witness_with_inverse(const ResolutionGraph& g, const RationalMatrix& inv, std::size_t i, std::size_t root,
                          const Monomial& alpha) {
  const std::vector<std::size_t> c = sorted_branch(g, i, root);
  std::vector<std::pair<std::size_t, BigInt>> terms;
  for (const auto& [leaf, a] : alpha.exponents) {
    const auto k = g.find(leaf);
    if (!k || !g.is_leaf(*k) || !std::binary_search(c.begin(), c.end(), *k) || a < 0) return false;
    terms.emplace_back(*k, a);
  }
  for (std::size_t j = 0; j < g.size(); ++j) {
    Rational x = -inv(i, j);
    for (const auto& [k, a] : terms) x += Rational(a) * inv(k, j);
    const bool in_c = std::binary_search(c.begin(), c.end(), j);
    if (in_c ? (x < 0 || x.get_den() != 1) : x != 0) return false;
  }
  return true;
}

Condition33Entry search_witness(const ResolutionGraph& g, const IntegerMatrix& ell, std::size_t i, std::size_t root,
                                std::size_t limit) {
  const RationalMatrix inv = inverse(intersection_matrix(g).negated());
  Condition33Entry entry;
  entry.node = g.id(i);
  entry.root = g.id(root);
  entry.route = Condition33Route::search;
  std::vector<std::size_t> leaves;
  for (std::size_t k : sorted_branch(g, i, root))
    if (g.is_leaf(k)) leaves.push_back(k);
  std::vector<BigInt> gens;
  BigInt common = ell(i, i);
  for (std::size_t k : leaves) {
    gens.push_back(ell(k, i));
    common = gcd(common, ell(k, i));
  }
  for (auto& x : gens) x /= common;
  const auto stats = for_each_representation(gens, ell(i, i) / common, limit, [&](const std::vector<BigInt>& x) {
    Monomial m;
    for (std::size_t t = 0; t < leaves.size(); ++t) m.set(g.id(leaves[t]), x[t]);
    if (!witness_with_inverse(g, inv, i, root, m)) return true;
    entry.holds = true;
    entry.alpha = std::move(m);
    return false;
  });
  entry.undecided = !entry.holds && stats.limit_exceeded;
  return entry;
}

}  // namespace

bool QCycle::integral() const {
  return std::all_of(coef.begin(), coef.end(), [](const Rational& c) { return c.get_den() == 1; });
}

bool QCycle::effective() const {
  return std::all_of(coef.begin(), coef.end(), [](const Rational& c) { return c >= 0; });
}

bool QCycle::supported_on(const std::vector<std::size_t>& subset) const {
  for (std::size_t j = 0; j < coef.size(); ++j)
    if (coef[j] != 0 && std::find(subset.begin(), subset.end(), j) == subset.end()) return false;
  return true;
}

QCycle& QCycle::operator+=(const QCycle& o) {
  for (std::size_t j = 0; j < coef.size(); ++j) coef[j] += o.coef[j];
  return *this;
}

QCycle& QCycle::operator-=(const QCycle& o) {
  for (std::size_t j = 0; j < coef.size(); ++j) coef[j] -= o.coef[j];
  return *this;
}

QCycle operator*(const Rational& s, QCycle z) {
  for (auto& c : z.coef) c *= s;
  return z;
}

Rational intersect(const ResolutionGraph& g, const QCycle& z, std::size_t j) {
  Rational s = z.coef[j] * g.weight(j);
  for (std::size_t w : g.neighbors(j)) s += z.coef[w];
  return s;
}

QCycle dual_cycle(const ResolutionGraph& g, std::size_t i) {
  require_negative_definite(g);
  const RationalMatrix inv = inverse(intersection_matrix(g).negated());
  QCycle z(g.size());
  for (std::size_t j = 0; j < g.size(); ++j) z.coef[j] = inv(i, j);
  return z;
}

QCycle fundamental_cycle(const ResolutionGraph& g, const std::vector<std::size_t>& subset) {
  std::vector<std::size_t> s(subset);
  std::sort(s.begin(), s.end());
  QCycle z(g.size());
  for (std::size_t j : s) z.coef[j] = 1;
  for (;;) {
    auto it = std::find_if(s.begin(), s.end(), [&](std::size_t j) {
      Rational v = z.coef[j] * g.weight(j);
      for (std::size_t w : g.neighbors(j))
        if (std::binary_search(s.begin(), s.end(), w)) v += z.coef[w];
      return v > 0;
    });
    if (it == s.end()) return z;
    z.coef[*it] += 1;
  }
}

Condition34Report check_condition_3_4(const ResolutionGraph& g) {
  require_negative_definite(g);
  Condition34Report rep;
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (g.valency(i) < 2) continue;
    for (std::size_t root : g.neighbors(i)) {
      BranchFundamentalCycle b;
      b.vertex = g.id(i);
      b.root = g.id(root);
      b.z = fundamental_cycle(g, sorted_branch(g, i, root));
      b.z_dot_e = intersect(g, b.z, i);
      b.holds = b.z_dot_e == 1;
      if (!b.holds && !rep.offending) rep.offending = b;
      rep.holds = rep.holds && b.holds;
      rep.entries.push_back(std::move(b));
    }
  }
  return rep;
}

MonomialCycle construct_monomial_cycle(const ResolutionGraph& g, std::string_view vertex, std::string_view root) {
  require_negative_definite(g);
  const std::size_t i = g.index_of(vertex);
  const std::size_t r = neighbour_or_throw(g, i, root);
  const std::vector<std::size_t> c = sorted_branch(g, i, r);
  const std::vector<std::size_t> dist = distances_from(g, i);

  MonomialCycle out;
  out.vertex = g.id(i);
  out.root = g.id(r);
  out.d = dual_cycle(g, i);
  out.d += fundamental_cycle(g, c);

  // Each step zeroes D.E_j and only lowers values strictly farther from i,
  // so no vertex is picked twice.
  std::vector<char> processed(g.size(), 0);
  for (;;) {
    std::optional<std::size_t> pick;
    Rational alpha;
    for (std::size_t j : c) {
      if (g.is_leaf(j)) continue;
      const Rational v = intersect(g, out.d, j);
      if (v < 0 && (!pick || dist[j] < dist[*pick])) {
        pick = j;
        alpha = v;
      }
    }
    if (!pick) break;
    if (processed[*pick]) {
      std::string msg = "vertex " + g.id(*pick) + " came up twice; trace:";
      for (const auto& s : out.trace) msg += " " + s.vertex;
      throw SpliceError(ErrorCode::iteration_cap_exceeded, msg);
    }
    processed[*pick] = 1;
    // branch of j away from i with the smallest root
    std::optional<std::size_t> r2;
    for (std::size_t w : g.neighbors(*pick))
      if (dist[w] > dist[*pick]) {
        r2 = w;
        break;
      }
    if (!r2) throw std::logic_error("non-leaf vertex with no branch away from i");
    out.d -= alpha * fundamental_cycle(g, sorted_branch(g, *pick, *r2));
    out.trace.push_back({g.id(*pick), g.id(*r2), alpha});
  }

  QCycle rest = out.d;
  rest -= dual_cycle(g, i);
  if (!rest.integral() || !rest.effective() || !rest.supported_on(c)) {
    out.failure = "D - Ebar_i is not an effective integral cycle on C";
    return out;
  }
  for (std::size_t j = 0; j < g.size(); ++j) {
    const bool leaf_in_c = g.is_leaf(j) && std::binary_search(c.begin(), c.end(), j);
    const Rational v = intersect(g, out.d, j);
    if (!leaf_in_c && v != 0) {
      out.failure = "D.E_" + g.id(j) + " = " + v.get_str() + " is not zero";
      return out;
    }
    if (leaf_in_c) {
      if (v > 0 || v.get_den() != 1) {
        out.failure = "D.E_" + g.id(j) + " = " + v.get_str() + " is not a non-positive integer";
        return out;
      }
      out.alpha.set(g.id(j), -v.get_num());
    }
  }
  out.ok = true;
  return out;
}

bool is_monomial_cycle_witness(const ResolutionGraph& g, std::size_t i, std::size_t root, const Monomial& alpha) {
  require_negative_definite(g);
  return witness_with_inverse(g, inverse(intersection_matrix(g).negated()), i, root, alpha);
}

Condition33Report check_condition_3_3(const ResolutionGraph& g, std::size_t limit) {
  require_negative_definite(g);
  Condition33Report rep;
  const IntegerMatrix ell = adjugate(intersection_matrix(g).negated());
  for (std::size_t i : g.nodes()) {
    for (std::size_t root : g.neighbors(i)) {
      const MonomialCycle m = construct_monomial_cycle(g, g.id(i), g.id(root));
      Condition33Entry entry;
      if (m.ok) {
        entry.node = m.vertex;
        entry.root = m.root;
        entry.holds = true;
        entry.route = Condition33Route::constructive;
        entry.alpha = m.alpha;
        entry.trace = m.trace;
      } else {
        entry = search_witness(g, ell, i, root, limit);
        entry.construction_failure = m.failure;
        entry.trace = m.trace;
      }
      rep.holds = rep.holds && entry.holds;
      rep.decided = rep.decided && !entry.undecided;
      rep.entries.push_back(std::move(entry));
    }
  }
  return rep;
}

}  // namespace splicekit
