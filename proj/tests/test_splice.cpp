#include <map>

#include "doctest.h"
#include "oracles.hpp"
#include "splicekit/corpus.hpp"
#include "splicekit/discriminant.hpp"
#include "splicekit/error.hpp"
#include "splicekit/splice.hpp"

using namespace splicekit;

namespace {

// weight at `node` toward the neighbour with id `toward`
BigInt w(const WeightedTree& t, const std::string& node, const std::string& toward) {
  const std::size_t v = t.index_of(node);
  return t.weight(v, *t.edge_between(v, t.index_of(toward)));
}

// for maximal diagrams: (weight at a, weight at b) on edge a-b
std::pair<BigInt, BigInt> pair_on(const WeightedTree& t, const std::string& a, const std::string& b) {
  return {w(t, a, b), w(t, b, a)};
}

}  // namespace

TEST_CASE("splice diagrams of the fixtures") {
  SUBCASE("G1") {
    SpliceDiagram d = splice_from_resolution(fixture_g1());
    CHECK(d.size() == 6);
    CHECK(d.nodes().size() == 2);
    CHECK(w(d, "L", "a1") == 2);
    CHECK(w(d, "L", "a2") == 3);
    CHECK(w(d, "L", "R") == 7);
    CHECK(w(d, "R", "L") == 11);
    CHECK(w(d, "R", "b1") == 2);
    CHECK(w(d, "R", "b3") == 5);
    const std::size_t a1 = d.index_of("a1");
    CHECK_FALSE(d.weight_slot(a1, d.incident(a1)[0]).has_value());
  }
  SUBCASE("G17 has the same diagram") {
    SpliceDiagram d17 = splice_from_resolution(fixture_g17());
    CHECK(w(d17, "L", "a1") == 2);
    CHECK(w(d17, "L", "a3") == 3);
    CHECK(w(d17, "L", "R") == 7);
    CHECK(w(d17, "R", "L") == 11);
    CHECK(w(d17, "R", "b1") == 2);
    CHECK(w(d17, "R", "b5") == 5);
  }
  SUBCASE("G90") {
    SpliceDiagram d = splice_from_resolution(fixture_g90());
    CHECK(w(d, "L", "x") == 3);
    CHECK(w(d, "L", "y") == 3);
    CHECK(w(d, "L", "R") == 3);
    CHECK(w(d, "R", "L") == 57);
    CHECK(w(d, "R", "u") == 3);
    CHECK(w(d, "R", "v") == 3);
  }
  SUBCASE("not negative definite") {
    CHECK_THROWS_AS(splice_from_resolution(ResolutionGraph({{"a", 1}}, {})), SpliceError);
  }
}

TEST_CASE("maximal splice diagrams of the fixtures") {
  SUBCASE("G1") {
    MaximalSpliceDiagram m = maximal_splice(fixture_g1());
    using P = std::pair<BigInt, BigInt>;
    CHECK(pair_on(m, "L", "a1") == P{2, 11});
    CHECK(pair_on(m, "L", "a2") == P{3, 5});
    CHECK(pair_on(m, "L", "m") == P{7, 1});
    CHECK(pair_on(m, "m", "R") == P{1, 11});
    CHECK(pair_on(m, "R", "b1") == P{2, 28});
    CHECK(pair_on(m, "R", "b2") == P{5, 9});
    CHECK(pair_on(m, "b2", "b3") == P{2, 5});
  }
  SUBCASE("G17") {
    MaximalSpliceDiagram m = maximal_splice(fixture_g17());
    using P = std::pair<BigInt, BigInt>;
    CHECK(pair_on(m, "L", "a1") == P{2, 19});
    CHECK(pair_on(m, "L", "a2") == P{3, 15});
    CHECK(pair_on(m, "a3", "a2") == P{16, 2});
    CHECK(pair_on(m, "L", "R") == P{7, 11});
    CHECK(pair_on(m, "R", "b1") == P{2, 36});
    CHECK(pair_on(m, "R", "b2") == P{5, 21});
    CHECK(pair_on(m, "b2", "b3") == P{4, 20});
    CHECK(pair_on(m, "b3", "b4") == P{3, 19});
    CHECK(pair_on(m, "b4", "b5") == P{2, 18});
    for (std::size_t e = 0; e < m.edges().size(); ++e) CHECK(edge_determinant(m, e) == 17);
  }
  SUBCASE("single vertex") {
    MaximalSpliceDiagram m = maximal_splice(ResolutionGraph({{"a", -3}}, {}));
    CHECK(m.size() == 1);
    CHECK(m.edges().empty());
  }
}

TEST_CASE("linking numbers") {
  SpliceDiagram d = splice_from_resolution(fixture_g1());
  const auto L = d.index_of("L"), a1 = d.index_of("a1"), a2 = d.index_of("a2");
  CHECK(linking_numbers(d, L, a1).reduced == 1);
  // two left leaves: weights off the path are 7 at L
  CHECK(linking_numbers(d, a1, a2).full == 7);
  CHECK_THROWS_AS(linking_numbers(d, L, L), SpliceError);

  SpliceDiagram d90 = splice_from_resolution(fixture_g90());
  CHECK(linking_numbers(d90, d90.index_of("L"), d90.index_of("u")).reduced == 3);

  // leaf-leaf values against the adjugate of -A
  for (const auto& g : {fixture_g1(), fixture_g17(), fixture_g90(), fixture_star()}) {
    SpliceDiagram sd = splice_from_resolution(g);
    IntegerMatrix adj = linking_matrix_from_inverse(g);
    for (std::size_t x : sd.leaves())
      for (std::size_t y : sd.leaves()) {
        if (x == y) continue;
        CHECK(linking_numbers(sd, x, y).full == adj(g.index_of(sd.id(x)), g.index_of(sd.id(y))));
      }
  }
}

TEST_CASE("theorem: A L = -det I with L from the maximal diagram") {
  for (const auto& [name, family, g] : standard_corpus()) {
    const BigInt det = det_gamma(g);
    const IntegerMatrix L = linking_matrix(maximal_splice(g));
    const IntegerMatrix prod = intersection_matrix(g) * L;
    bool ok = true;
    for (std::size_t i = 0; i < g.size(); ++i)
      for (std::size_t j = 0; j < g.size(); ++j) ok = ok && prod(i, j) == (i == j ? BigInt(-det) : BigInt(0));
    CHECK_MESSAGE(ok, name);
    CHECK_MESSAGE(L == linking_matrix_from_inverse(g), name);
  }
}

TEST_CASE("linking numbers against the subgraph-determinant oracle") {
  for (const auto& [name, family, g] : standard_corpus({20, 5, 5})) {
    const IntegerMatrix L = linking_matrix(maximal_splice(g));
    for (std::size_t i = 0; i < g.size(); ++i)
      for (std::size_t j = i + 1; j < g.size(); ++j) CHECK(L(i, j) == oracle::path_linking(g, i, j));
  }
}

TEST_CASE("edge determinants") {
  SpliceDiagram d1 = splice_from_resolution(fixture_g1());
  SpliceDiagram d90 = splice_from_resolution(fixture_g90());
  auto node_edge = [](const SpliceDiagram& d) {
    return *d.edge_between(d.index_of("L"), d.index_of("R"));
  };
  CHECK(edge_determinant(d1, node_edge(d1)) == 17);
  CHECK(edge_determinant(d90, node_edge(d90)) == 90);
  const std::size_t leaf_edge = d1.incident(d1.index_of("a1"))[0];
  CHECK_THROWS_AS(edge_determinant(d1, leaf_edge), SpliceError);

  for (const auto& [name, family, g] : standard_corpus()) {
    const BigInt det = det_gamma(g);
    MaximalSpliceDiagram m = maximal_splice(g);
    for (std::size_t e = 0; e < m.edges().size(); ++e) CHECK_MESSAGE(edge_determinant(m, e) == det, name);
    for (const auto& c : verify_edge_det_theorem(g)) {
      CHECK_MESSAGE(c.holds, name);
      CHECK(c.edge_determinant > 0);
    }
  }
}

TEST_CASE("edge determinant theorem on fixtures") {
  auto g1 = verify_edge_det_theorem(fixture_g1());
  REQUIRE(g1.size() == 1);
  CHECK(g1[0].edge_determinant == 17);
  CHECK(g1[0].string_determinant == 17);
  auto g17 = verify_edge_det_theorem(fixture_g17());
  REQUIRE(g17.size() == 1);
  CHECK(g17[0].string_determinant == 1);
  CHECK(g17[0].holds);
  auto g90 = verify_edge_det_theorem(fixture_g90());
  REQUIRE(g90.size() == 1);
  CHECK(g90[0].edge_determinant == 90);
}

TEST_CASE("continued fractions") {
  CHECK(continued_fraction_of_string({}) == ContinuedFraction{1, 0});
  CHECK(continued_fraction_of_string({-2, -2}) == ContinuedFraction{3, 2});
  CHECK(reverse_cf({3, 2}) == ContinuedFraction{3, 2});
  CHECK(continued_fraction_of_string({-2, -4}) == ContinuedFraction{7, 4});
  CHECK(reverse_cf({7, 4}) == ContinuedFraction{7, 2});
  CHECK(continued_fraction_of_string({-4, -2}) == ContinuedFraction{7, 2});
  CHECK(continued_fraction_of_string({-1}) == ContinuedFraction{1, 1});
  CHECK(string_of_cf({1, 0}).empty());
  CHECK(string_of_cf({1, 1}) == std::vector<std::int64_t>{-1});
  CHECK(string_of_cf({7, 4}) == std::vector<std::int64_t>{-2, -4});
  CHECK_THROWS_AS(string_of_cf({6, 4}), SpliceError);
  CHECK_THROWS_AS(string_of_cf({4, 6}), SpliceError);
  CHECK(cf_n_prime({7, 4}) == 1);  // 4*2 - 1 = 7

  // round trips over all strings with entries in [-5,-2] up to length 4
  std::vector<std::int64_t> s;
  std::function<void(std::size_t)> rec = [&](std::size_t len) {
    if (len > 0) {
      ContinuedFraction cf = continued_fraction_of_string(s);
      CHECK(string_of_cf(cf) == s);
      std::vector<std::int64_t> rs(s.rbegin(), s.rend());
      CHECK(reverse_cf(cf) == continued_fraction_of_string(rs));
      CHECK(reverse_cf(reverse_cf(cf)) == cf);
      CHECK(mod_floor(cf.p * reverse_cf(cf).p, cf.n) == (cf.n == 1 ? 0 : 1));
    }
    if (len == 4) return;
    for (std::int64_t b = 2; b <= 5; ++b) {
      s.push_back(-b);
      rec(len + 1);
      s.pop_back();
    }
  };
  rec(0);
}

TEST_CASE("ideal generators") {
  SpliceDiagram d1 = splice_from_resolution(fixture_g1());
  const auto L = d1.index_of("L"), R = d1.index_of("R");
  CHECK(ideal_generator(d1, L, *d1.edge_between(L, d1.index_of("a1"))) == 1);
  CHECK(ideal_generator(d1, L, *d1.edge_between(L, R)) == 1);
  SpliceDiagram d90 = splice_from_resolution(fixture_g90());
  CHECK(ideal_generator(d90, d90.index_of("L"), *d90.edge_between(d90.index_of("L"), d90.index_of("R"))) == 3);
  CHECK(check_ideal_condition(d1).holds);
  CHECK(check_ideal_condition(d90).holds);

  // recursion equals the gcd of the reduced linking numbers it generates
  for (const auto& [name, family, g] : standard_corpus()) {
    if (g.size() == 1) continue;
    SpliceDiagram d = splice_from_resolution(g);
    CHECK_MESSAGE(check_ideal_condition(d).holds, name);
    for (std::size_t v = 0; v < d.size(); ++v)
      for (std::size_t e : d.incident(v)) {
        BigInt direct = 0;
        for (std::size_t leaf : d.side_leaves(v, e)) direct = gcd(direct, linking_numbers(d, v, leaf).reduced);
        CHECK_MESSAGE(ideal_generator(d, v, e) == direct, name);
      }
  }
}

TEST_CASE("leaf knot orders") {
  for (const auto& leaf : {"a1", "a2", "b1", "b3"}) CHECK(leaf_knot_order(fixture_g1(), leaf) == 1);
  // orders of the leaf generators in the discriminant group
  for (const auto& g : {fixture_g17(), fixture_g90(), fixture_star()}) {
    const DiscriminantGroup grp = leaf_generators(g);
    for (std::size_t j = 0; j < grp.leaves.size(); ++j)
      CHECK(leaf_knot_order(g, grp.leaves[j]) == element_order(grp.generators[j]));
  }
  CHECK(leaf_knot_order(fixture_g90(), "u") == 30);
  CHECK(leaf_knot_order(ResolutionGraph({{"a", -5}}, {}), "a") == 5);
}

TEST_CASE("extremal-string determinant identity and leaf-end weights") {
  for (const auto& [name, family, g] : standard_corpus()) {
    if (g.nodes().empty()) continue;
    const BigInt det = det_gamma(g);
    const MaximalSpliceDiagram m = maximal_splice(g);
    for (std::size_t leaf : g.leaves()) {
      // walk to the node
      std::vector<std::size_t> str{leaf};
      std::size_t prev = leaf, cur = g.neighbors(leaf)[0];
      while (!g.is_node(cur)) {
        str.push_back(cur);
        std::size_t next = g.neighbors(cur)[0] == prev ? g.neighbors(cur)[1] : g.neighbors(cur)[0];
        prev = cur;
        cur = next;
      }
      const std::size_t v = cur;
      std::reverse(str.begin(), str.end());  // from the node outward
      std::vector<std::int64_t> ws;
      for (std::size_t s : str) ws.push_back(g.weight(s));
      const ContinuedFraction cf = continued_fraction_of_string(ws);
      std::vector<std::int64_t> short_ws(ws.begin(), ws.end() - 1);
      const BigInt p_prime = continued_fraction_of_string(short_ws).n;  // string minus the leaf
      BigInt N = 1;
      for (std::size_t nb : g.neighbors(v))
        if (nb != str.front()) N *= m.weight(v, *m.edge_between(v, nb));
      CHECK_MESSAGE(m.weight(v, *m.edge_between(v, str.front())) == cf.n, name);

      // det = n det(Gamma_0) - N p
      std::vector<std::size_t> rest;
      for (std::size_t x = 0; x < g.size(); ++x)
        if (std::find(str.begin(), str.end(), x) == str.end()) rest.push_back(x);
      CHECK_MESSAGE(det == cf.n * subgraph_determinant(g, rest) - N * cf.p, name);

      // leaf-end weight x = (p'/n) det + N/n
      const std::size_t before = str.size() == 1 ? v : str[str.size() - 2];
      const BigInt x = m.weight(leaf, *m.edge_between(leaf, before));
      CHECK_MESSAGE(x * cf.n == p_prime * det + N, name);

      // e_w.e_w = -d_v/(d_1^2 det) - p'/d_1
      const Rational ee = pairing_matrix(g)(leaf, leaf);
      const BigInt dv = N * cf.n;
      CHECK_MESSAGE(ee == -make_rational(dv, cf.n * cf.n * det) - make_rational(p_prime, cf.n), name);
    }
  }
}

TEST_CASE("end-node reduction") {
  SUBCASE("G1 at the right node") {
    const GraphReduction red = end_node_reduce_graph(fixture_g1(), "R");
    CHECK(red.formula.r == 11);
    CHECK(red.det_reduced == 11);
    CHECK(red.r_is_det);
    CHECK_FALSE(red.blown_up);
    CHECK(red.new_leaf == "m");
    const SpliceDiagram& d = red.formula.diagram;
    CHECK(w(d, "L", "a1") == 2);
    CHECK(w(d, "L", "a2") == 3);
    CHECK(w(d, "L", "m") == 17);
    CHECK(red.agree);
    CHECK(w(red.derived, "L", "m") == 17);
  }
  SUBCASE("G17 needs a blow-up first") {
    const GraphReduction red = end_node_reduce_graph(fixture_g17(), "R");
    CHECK(red.blown_up);
    CHECK(red.r_is_det);
    CHECK(red.agree);
  }
  SUBCASE("raw mode scales by det") {
    const SpliceDiagram d = splice_from_resolution(fixture_g1());
    ReductionOptions raw;
    raw.mode = ReductionMode::raw;
    const auto r = end_node_reduce(d, d.index_of("R"), raw);
    CHECK(w(r.diagram, "L", "R") == 17);  // det = 1
  }
  SUBCASE("errors and degenerate case") {
    const SpliceDiagram d = splice_from_resolution(fixture_g1());
    CHECK_THROWS_AS(end_node_reduce(d, d.index_of("a1")), SpliceError);
    const SpliceDiagram star = splice_from_resolution(fixture_star());
    const auto r = end_node_reduce(star, star.index_of("c"));
    CHECK(r.degenerate);
    CHECK(r.diagram.size() == 0);
    CHECK_THROWS_AS(end_node_reduce_graph(fixture_star(), "c"), SpliceError);
  }
}

TEST_CASE("end-node reduction across the corpus") {
  for (const auto& [name, family, g] : standard_corpus()) {
    if (g.nodes().size() < 2) continue;
    const BigInt det = det_gamma(g);
    const SpliceDiagram d = splice_from_resolution(g);
    for (std::size_t v : d.nodes()) {
      if (!is_end_node(d, v)) continue;
      const GraphReduction red = end_node_reduce_graph(g, d.id(v));
      CHECK_MESSAGE(red.r_is_det, name);
      CHECK_MESSAGE(red.agree, name);
      // a det(reduced) - a~ det = M N l'^2 at every remaining node
      BigInt n_prod = 1;
      std::size_t central = 0;
      for (std::size_t e : d.incident(v)) {
        if (d.is_leaf(d.other_end(e, v)))
          n_prod *= d.weight(v, e);
        else
          central = e;
      }
      (void)central;
      for (std::size_t u : d.nodes()) {
        if (u == v) continue;
        const std::size_t toward = d.path_edges(u, v).front();
        const BigInt a = d.weight(u, toward);
        const BigInt M = d.weight_product(u) / a;
        const std::size_t du = red.derived.index_of(d.id(u));
        const std::size_t dnb = red.derived.index_of(
            d.other_end(toward, u) == v ? red.new_leaf : d.id(d.other_end(toward, u)));
        const BigInt a_tilde = red.derived.weight(du, *red.derived.edge_between(du, dnb));
        const BigInt lp = linking_numbers(d, u, v).reduced;
        CHECK_MESSAGE(a * red.det_reduced - a_tilde * det == M * n_prod * lp * lp, name);
      }
      // raw mode: node-node edge determinants scale by r
      ReductionOptions raw;
      raw.mode = ReductionMode::raw;
      const auto rr = end_node_reduce(d, v, raw);
      for (std::size_t e = 0; e < d.edges().size(); ++e) {
        const auto& ed = d.edge(e);
        if (ed.a == v || ed.b == v || !d.is_node(ed.a) || !d.is_node(ed.b)) continue;
        const auto& nd = rr.diagram;
        const std::size_t f = *nd.edge_between(nd.index_of(d.id(ed.a)), nd.index_of(d.id(ed.b)));
        CHECK_MESSAGE(edge_determinant(nd, f) == rr.r * edge_determinant(d, e), name);
      }
    }
  }
}
