#include "splicekit/discriminant.hpp"

#include <algorithm>
#include <cstdint>
#include <unordered_set>

#include "splicekit/error.hpp"
#include "splicekit/splice.hpp"

namespace splicekit {

namespace {

struct VecHash {
  std::size_t operator()(const std::vector<std::int64_t>& v) const noexcept {
    std::size_t h = 1469598103934665603ull;
    for (auto x : v) h = (h ^ static_cast<std::size_t>(x)) * 1099511628211ull;
    return h;
  }
};

}  // namespace

QTuple reduce_mod_one(const std::vector<Rational>& values) {
  QTuple out;
  out.reserve(values.size());
  for (const auto& q : values) out.push_back(frac_part(q));
  return out;
}

BigInt element_order(const QTuple& e) {
  BigInt l = 1;
  for (const auto& q : e) l = lcm(l, q.get_den());
  return l;
}

RationalMatrix pairing_matrix(const ResolutionGraph& g) {
  require_negative_definite(g);
  return inverse(intersection_matrix(g));
}

DiscriminantGroup leaf_generators(const ResolutionGraph& g) {
  const RationalMatrix inv = pairing_matrix(g);
  DiscriminantGroup grp;
  grp.leaf_vertices = g.leaves();
  for (std::size_t w : grp.leaf_vertices) grp.leaves.push_back(g.id(w));
  for (std::size_t wj : grp.leaf_vertices) {
    std::vector<Rational> row;
    for (std::size_t wi : grp.leaf_vertices) row.push_back(inv(wj, wi));
    grp.generators.push_back(reduce_mod_one(row));
  }
  grp.order = bareiss_determinant(intersection_matrix(g).negated());
  return grp;
}

std::vector<QTuple> enumerate_group(const std::vector<QTuple>& gens, std::size_t tuple_size, std::size_t cap) {
  BigInt den = 1;
  for (const auto& g : gens) den = lcm(den, element_order(g));
  if (den > BigInt(static_cast<unsigned long>(cap)))
    throw SpliceError(ErrorCode::cap_exceeded, "group has an element of order " + to_string(den) +
                                                   ", above the enumeration cap " + std::to_string(cap));
  const std::int64_t d = den.get_si();
  std::vector<std::vector<std::int64_t>> steps;
  for (const auto& g : gens) {
    std::vector<std::int64_t> s;
    for (const auto& q : g) s.push_back(BigInt(q.get_num() * (den / q.get_den())).get_si());
    steps.push_back(std::move(s));
  }
  std::unordered_set<std::vector<std::int64_t>, VecHash> seen;
  std::vector<std::vector<std::int64_t>> queue{std::vector<std::int64_t>(tuple_size, 0)};
  seen.insert(queue.front());
  for (std::size_t h = 0; h < queue.size(); ++h) {
    for (const auto& s : steps) {
      std::vector<std::int64_t> next = queue[h];
      for (std::size_t i = 0; i < tuple_size; ++i) next[i] = (next[i] + s[i]) % d;
      if (seen.insert(next).second) {
        if (seen.size() > cap)
          throw SpliceError(ErrorCode::cap_exceeded, "group enumeration exceeded cap " + std::to_string(cap));
        queue.push_back(std::move(next));
      }
    }
  }
  std::sort(queue.begin(), queue.end());  // numerators over a common denominator: same order as the rationals
  std::vector<QTuple> out;
  out.reserve(queue.size());
  for (const auto& v : queue) {
    QTuple t;
    for (auto x : v) t.push_back(make_rational(BigInt(static_cast<long>(x)), den));
    out.push_back(std::move(t));
  }
  return out;
}

GroupCheck group_order_check(const ResolutionGraph& g, std::size_t cap) {
  GroupCheck c;
  c.det = det_gamma(g);
  if (c.det > BigInt(static_cast<unsigned long>(cap)))
    throw SpliceError(ErrorCode::cap_exceeded,
                      "det " + to_string(c.det) + " above enumeration cap " + std::to_string(cap));
  const DiscriminantGroup grp = leaf_generators(g);
  const std::size_t t = grp.leaves.size();
  const auto elements = enumerate_group(grp.generators, t, cap);
  c.enumerated = elements.size();
  c.order_matches = BigInt(static_cast<unsigned long>(c.enumerated)) == c.det;
  if (t < 2) {
    c.applicable = false;
    return c;
  }
  for (std::size_t j = 0; j < t; ++j) {
    std::vector<QTuple> rest;
    for (std::size_t i = 0; i < t; ++i)
      if (i != j) rest.push_back(grp.generators[i]);
    const bool ok = enumerate_group(rest, t, cap).size() == c.enumerated;
    c.drop_one.push_back(ok);
    c.t_minus_one_generate = c.t_minus_one_generate && ok;
  }
  for (const auto& e : elements) {
    const auto nonzero = std::count_if(e.begin(), e.end(), [](const Rational& q) { return q != 0; });
    if (nonzero == 1) {
      c.no_pseudo_reflections = false;
      c.pseudo_reflection = e;
      break;
    }
  }
  return c;
}

Rational character_of_monomial(const DiscriminantGroup& group, const Monomial& m, const QTuple& e) {
  Rational sum = 0;
  for (std::size_t i = 0; i < group.leaves.size(); ++i) {
    const BigInt a = m.exponent(group.leaves[i]);
    if (a != 0) sum -= e[i] * a;
  }
  return frac_part(sum);
}

Rational character_closed_form(const ResolutionGraph& g, const Monomial& m, const std::string& leaf) {
  const RationalMatrix inv = pairing_matrix(g);
  const std::size_t wp = g.index_of(leaf);
  Rational sum = -inv(wp, wp) * m.exponent(leaf);
  if (g.size() > 1) {
    const BigInt det = det_gamma(g);
    const SpliceDiagram d = splice_from_resolution(g);
    const std::size_t dwp = d.index_of(leaf);
    for (const auto& [w, a] : m.exponents) {
      if (w == leaf) continue;
      sum += make_rational(a * linking_numbers(d, d.index_of(w), dwp).full, det);
    }
  }
  return frac_part(sum);
}

}  // namespace splicekit
