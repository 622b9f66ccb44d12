#include <doctest.h>

#include "oracles.hpp"
#include "splicekit/corpus.hpp"
#include "splicekit/discriminant.hpp"
#include "splicekit/equations.hpp"
#include "splicekit/error.hpp"

using namespace splicekit;

namespace {

Monomial mono(std::initializer_list<std::pair<const char*, long>> xs) {
  Monomial m;
  for (auto [leaf, e] : xs) m.set(leaf, BigInt(e));
  return m;
}

// (i, j) entry of adj(-A) by cofactor expansion
BigInt adjugate_entry(const ResolutionGraph& g, std::size_t i, std::size_t j) {
  const IntegerMatrix m = intersection_matrix(g).negated();
  const std::size_t n = m.rows();
  IntegerMatrix minor(n - 1, n - 1);
  for (std::size_t r = 0, rr = 0; r < n; ++r) {
    if (r == j) continue;
    for (std::size_t c = 0, cc = 0; c < n; ++c)
      if (c != i) minor(rr, cc++) = m(r, c);
    ++rr;
  }
  const BigInt d = oracle::laplace_det(minor);
  return (i + j) % 2 == 0 ? d : BigInt(-d);
}

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const SpliceError& e) {
    return e.code();
  }
  FAIL("no SpliceError thrown");
  return ErrorCode::validation;
}

}  // namespace

TEST_CASE("v-weight") {
  const ResolutionGraph g = fixture_g1();
  const SpliceDiagram d = splice_from_resolution(g);
  const auto L = d.index_of("L");
  CHECK(v_weight(d, L, Monomial{}) == 0);
  CHECK(v_weight(d, L, mono({{"b1", 1}})) == adjugate_entry(g, g.index_of("L"), g.index_of("b1")));
  CHECK(v_weight(d, L, mono({{"b1", 2}, {"a1", 1}})) ==
        2 * adjugate_entry(g, g.index_of("L"), g.index_of("b1")) + adjugate_entry(g, g.index_of("L"), g.index_of("a1")));
}

TEST_CASE("Brieskorn star") {
  const SpliceEquationSystem s = build_equations(fixture_star());
  CHECK(s.equation_count() == 1);
  REQUIRE(s.nodes.size() == 1);
  const auto& ne = s.nodes[0];
  CHECK(ne.d_v == 27);
  CHECK(ne.monomials == std::vector<Monomial>{mono({{"w1", 3}}), mono({{"w2", 3}}), mono({{"w3", 3}})});
  CHECK(ne.coefficients.rows() == 1);
  CHECK(render_equations_text(s) == "c[1]: z_w1^3 + z_w2^3 + z_w3^3 = 0\n");
  CHECK(build_equations(fixture_star(), {.equivariant = true}) == SpliceEquationSystem{s.leaves, true, s.nodes});
}

TEST_CASE("G1 has one equation per node") {
  const SpliceEquationSystem s = build_equations(fixture_g1());
  CHECK(s.leaves.size() == 4);
  CHECK(s.equation_count() == 2);
  REQUIRE(s.nodes.size() == 2);
  for (const auto& ne : s.nodes) {
    REQUIRE(ne.coefficients.rows() == 1);
    REQUIRE(ne.coefficients.cols() == 3);
    for (std::size_t j = 0; j < 3; ++j) CHECK(ne.coefficients(0, j) != 0);
  }
}

TEST_CASE("G90 has no equivariant equations") {
  CHECK(code_of([] { build_equations(fixture_g90(), {.equivariant = true}); }) == ErrorCode::congruence_fails);
  CHECK_NOTHROW(build_equations(fixture_g90()));
  CHECK(code_of([] { build_equations(splice_from_resolution(fixture_star()), {.equivariant = true}); }) == ErrorCode::validation);
}

TEST_CASE("higher terms") {
  // d_v = 27, l_{c,w} = 9, e_w.e_w = -4/9, l_{w w'} = 3, det 27
  const ResolutionGraph star = fixture_star();
  auto with = [&](bool eq, Monomial m) {
    EquationOptions o;
    o.equivariant = eq;
    o.higher_terms.push_back({"c", 0, {BigInt(5), std::move(m)}});
    return build_equations(star, o);
  };
  CHECK(code_of([&] { with(false, mono({{"w1", 3}})); }) == ErrorCode::invalid_higher_term);  // weight 27, not above
  CHECK_NOTHROW(with(false, mono({{"w1", 4}})));
  CHECK(code_of([&] { with(true, mono({{"w1", 4}})); }) == ErrorCode::invalid_higher_term);  // character 4/9 + 1/3
  CHECK(code_of([&] { with(true, mono({{"w1", 3}, {"w2", 3}})); }) == ErrorCode::invalid_higher_term);
  const SpliceEquationSystem s = with(true, mono({{"w1", 12}}));
  CHECK(render_equations_text(s) == "c[1]: z_w1^3 + z_w2^3 + z_w3^3 + 5*z_w1^12 = 0\n");
  CHECK(equations_from_json(equations_to_json(s)) == s);

  EquationOptions bad;
  bad.higher_terms.push_back({"c", 1, {BigInt(1), mono({{"w1", 9}})}});
  CHECK(code_of([&] { build_equations(star, bad); }) == ErrorCode::invalid_higher_term);
  bad.higher_terms[0] = {"nope", 0, {BigInt(1), mono({{"w1", 9}})}};
  CHECK(code_of([&] { build_equations(star, bad); }) == ErrorCode::invalid_higher_term);
  bad.higher_terms[0] = {"c", 0, {BigInt(1), mono({{"c", 9}})}};
  CHECK(code_of([&] { build_equations(star, bad); }) == ErrorCode::invalid_higher_term);
}

TEST_CASE("normal form of coefficient rows") {
  IntegerMatrix row(1, 3);
  row(0, 0) = 1, row(0, 1) = 2, row(0, 2) = 4;
  const RationalMatrix r = normalize_rows(row);
  CHECK(r == to_rational(row));

  IntegerMatrix v(2, 4);
  for (long j = 0; j < 4; ++j) v(0, j) = 1, v(1, j) = j + 1;
  // [[2,-1],[-1,1]] applied to the last two columns
  RationalMatrix expect(2, 4);
  expect(0, 0) = 1, expect(0, 2) = -1, expect(0, 3) = -2;
  expect(1, 1) = 1, expect(1, 2) = 2, expect(1, 3) = 3;
  CHECK(normalize_rows(v) == expect);

  IntegerMatrix id(2, 4);
  id(0, 0) = 1, id(0, 2) = 2, id(0, 3) = 3, id(1, 1) = 1, id(1, 2) = 5, id(1, 3) = 7;
  CHECK(normalize_rows(id) == to_rational(id));

  IntegerMatrix zero(1, 3);
  zero(0, 0) = 1, zero(0, 2) = 1;
  CHECK(code_of([&] { normalize_rows(zero); }) == ErrorCode::degenerate_matrix);
  IntegerMatrix parallel(2, 4);
  parallel(0, 0) = 1, parallel(0, 2) = 1, parallel(0, 3) = 2, parallel(1, 1) = 1, parallel(1, 2) = 2, parallel(1, 3) = 4;
  CHECK(code_of([&] { normalize_rows(parallel); }) == ErrorCode::degenerate_matrix);
}

TEST_CASE("curve component counts") {
  const SpliceDiagram star = splice_from_resolution(fixture_star());
  for (const char* w : {"w1", "w2", "w3"}) CHECK(curve_component_count(star, star.index_of(w)) == 3);

  const ResolutionGraph g1 = fixture_g1();
  const SpliceDiagram d1 = splice_from_resolution(g1);
  for (const char* w : {"a1", "a2", "b1", "b3"}) {
    BigInt expect = 0;
    for (const char* u : {"a1", "a2", "b1", "b3"})
      if (std::string(u) != w) expect = gcd(expect, adjugate_entry(g1, g1.index_of(w), g1.index_of(u)));
    CHECK(curve_component_count(d1, d1.index_of(w)) == expect);
  }

  const ResolutionGraph str({{"p", -2}, {"q", -2}}, {{"p", "q"}});
  const SpliceDiagram ds = splice_from_resolution(str);
  CHECK(curve_component_count(ds, ds.index_of("p")) == adjugate_entry(str, 0, 1));
}

TEST_CASE("generated systems across the corpus") {
  std::size_t built = 0, equivariant = 0;
  for (const auto& [name, family, g] : standard_corpus()) {
    if (g.size() > 16) continue;
    const SpliceDiagram d = splice_from_resolution(g);
    SpliceEquationSystem s;
    try {
      s = build_equations(g);
    } catch (const SpliceError& e) {
      CHECK_MESSAGE((e.code() == ErrorCode::semigroup_fails || e.code() == ErrorCode::limit_exceeded), name);
      continue;
    }
    ++built;
    const std::size_t t = d.leaves().size();
    if (t >= 2) CHECK_MESSAGE(s.equation_count() == t - 2, name);
    for (const auto& ne : s.nodes) {
      const std::size_t v = d.index_of(ne.node);
      for (const auto& m : ne.monomials) CHECK(v_weight(d, v, m) == ne.d_v);
      // every maximal minor by cofactor expansion
      const std::size_t k = ne.coefficients.rows();
      oracle::subsets(ne.coefficients.cols(), k, [&](const std::vector<std::size_t>& cols) {
        IntegerMatrix sub(k, k);
        for (std::size_t i = 0; i < k; ++i)
          for (std::size_t j = 0; j < k; ++j) sub(i, j) = ne.coefficients(i, cols[j]);
        CHECK(oracle::laplace_det(sub) != 0);
      });
    }
    CHECK_NOTHROW(normalize_coefficients(s));
    for (std::size_t v : d.nodes()) CHECK_MESSAGE(leading_form_check(d, v, s).holds, name);
    CHECK(equations_from_json(equations_to_json(s)) == s);

    if (det_gamma(g) > 5000) continue;
    try {
      const SpliceEquationSystem se = build_equations(g, {.equivariant = true});
      ++equivariant;
      const DiscriminantGroup group = leaf_generators(g);
      for (const auto& elem : enumerate_group(group.generators, group.leaves.size(), kDefaultGroupCap))
        for (const auto& ne : se.nodes)
          for (const auto& m : ne.monomials)
            CHECK(character_of_monomial(group, m, elem) == character_of_monomial(group, ne.monomials.front(), elem));
    } catch (const SpliceError& e) {
      CHECK(e.code() == ErrorCode::congruence_fails);
    }
  }
  CHECK(built > 100);
  CHECK(equivariant > 20);
}

TEST_CASE("leading forms on G1") {
  const SpliceDiagram d = splice_from_resolution(fixture_g1());
  const SpliceEquationSystem s = build_equations(fixture_g1());
  const LeadingFormReport r = leading_form_check(d, d.index_of("L"), s);
  REQUIRE(r.entries.size() == 1);
  CHECK(r.entries[0].other_node == "R");
  CHECK(r.entries[0].weights.size() == 3);
  REQUIRE(r.entries[0].toward.has_value());
  CHECK(r.holds);
  const SpliceEquationSystem star = build_equations(fixture_star());
  const SpliceDiagram ds = splice_from_resolution(fixture_star());
  CHECK(leading_form_check(ds, ds.index_of("c"), star).entries.empty());
}
