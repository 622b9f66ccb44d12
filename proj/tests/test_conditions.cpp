#include <functional>

#include "doctest.h"
#include "splicekit/conditions.hpp"
#include "splicekit/corpus.hpp"
#include "splicekit/error.hpp"
#include "splicekit/knapsack.hpp"

using namespace splicekit;

namespace {

// nested loops over 0..target/g_i
std::vector<std::vector<BigInt>> brute_representations(const std::vector<BigInt>& gens, const BigInt& target) {
  std::vector<std::vector<BigInt>> out;
  std::vector<BigInt> x(gens.size(), 0);
  std::function<void(std::size_t, BigInt)> rec = [&](std::size_t i, BigInt rem) {
    if (i == gens.size()) {
      if (rem == 0) out.push_back(x);
      return;
    }
    for (BigInt a = rem / gens[i]; a >= 0; --a) {
      x[i] = a;
      rec(i + 1, rem - a * gens[i]);
    }
    x[i] = 0;
  };
  rec(0, target);
  return out;
}

std::size_t edge_to(const SpliceDiagram& d, const std::string& a, const std::string& b) {
  return *d.edge_between(d.index_of(a), d.index_of(b));
}

}  // namespace

TEST_CASE("knapsack enumeration matches nested loops") {
  const std::vector<std::vector<long>> gen_sets{{2, 5}, {3, 3}, {4, 6, 9}, {7, 3, 5, 11}, {1, 2, 3}, {6, 10, 15}};
  for (const auto& gs : gen_sets) {
    std::vector<BigInt> gens(gs.begin(), gs.end());
    for (long t = 0; t <= 60; ++t) {
      auto expect = brute_representations(gens, t);
      bool limit = false;
      auto got = all_representations(gens, t, 1'000'000, &limit);
      CHECK_FALSE(limit);
      CHECK(got == expect);
      CHECK(representable(gens, t) == std::optional<bool>(!expect.empty()));
    }
  }
  bool limit = false;
  auto partial = all_representations({1, 1}, 10, 3, &limit);
  CHECK(limit);
  CHECK(partial.size() == 3);
  all_representations({1, 1}, 2, 3, &limit);
  CHECK_FALSE(limit);  // exactly three solutions fit the limit
}

TEST_CASE("admissible exponents") {
  const SpliceDiagram d90 = splice_from_resolution(fixture_g90());
  const auto L = d90.index_of("L");
  AdmissibleSearch s = admissible_exponents(d90, L, edge_to(d90, "L", "R"));
  REQUIRE(s.solutions.size() == 2);
  CHECK(s.solutions[0].alpha.exponent("u") == 1);
  CHECK(s.solutions[0].alpha.exponent("v") == 0);
  CHECK(s.solutions[1].alpha.exponent("u") == 0);
  CHECK(s.solutions[1].alpha.exponent("v") == 1);

  AdmissibleSearch leaf = admissible_exponents(d90, L, edge_to(d90, "L", "x"));
  REQUIRE(leaf.solutions.size() == 1);
  CHECK(leaf.solutions[0].alpha.exponent("x") == 3);

  CHECK(representable({2, 5}, 3) == std::optional<bool>(false));
}

TEST_CASE("admissible exponents agree with brute force across the corpus") {
  for (const auto& [name, family, g] : standard_corpus({40, 30, 30})) {
    if (g.size() == 1) continue;
    const SpliceDiagram d = splice_from_resolution(g);
    for (std::size_t v : d.nodes())
      for (std::size_t e : d.incident(v)) {
        const auto leaves = d.side_leaves(v, e);
        std::vector<BigInt> gens;
        for (auto w : leaves) gens.push_back(linking_numbers(d, v, w).reduced);
        if (d.weight(v, e) > 2000) continue;
        auto expect = brute_representations(gens, d.weight(v, e));
        AdmissibleSearch s = admissible_exponents(d, v, e, 1'000'000);
        REQUIRE(s.solutions.size() == expect.size());
        for (std::size_t k = 0; k < expect.size(); ++k) {
          CHECK(satisfies_admissibility(d, s.solutions[k]));
          for (std::size_t i = 0; i < leaves.size(); ++i)
            CHECK(s.solutions[k].alpha.exponent(d.id(leaves[i])) == expect[k][i]);
        }
      }
  }
}

TEST_CASE("semigroup condition on fixtures") {
  CHECK(check_semigroup(splice_from_resolution(fixture_g90())).holds);
  CHECK(check_semigroup(splice_from_resolution(fixture_g1())).holds);
  CHECK(check_semigroup(splice_from_resolution(fixture_star())).holds);
  // a single-vertex or string diagram has no nodes
  CHECK(check_semigroup(splice_from_resolution(ResolutionGraph({{"a", -2}}, {}))).entries.empty());
}

TEST_CASE("congruence on G90 fails with the mod-3 obstruction") {
  const CongruenceReport r = check_congruence(fixture_g90());
  CHECK_FALSE(r.holds);
  const SpliceDiagram d = splice_from_resolution(fixture_g90());
  const auto L = d.index_of("L");
  const CongruenceEntry* toward_r = nullptr;
  for (const auto& e : r.entries)
    if (e.node == L && e.edge == edge_to(d, "L", "R")) toward_r = &e;
  REQUIRE(toward_r != nullptr);
  CHECK(toward_r->status == CongruenceStatus::fail);
  CHECK(toward_r->candidates == 2);
  CHECK(toward_r->rejected.size() == 2);
  REQUIRE(toward_r->end_node_residues.size() == 2);
  for (const auto& req : toward_r->end_node_residues) {
    CHECK(req.residue == 2);
    CHECK(req.modulus == 3);
  }
  // no admissible pair is 2 mod 3 in both coordinates
  for (const auto& c : toward_r->rejected)
    CHECK_FALSE((mod_floor(c.exponents.exponent("u"), 3) == 2 && mod_floor(c.exponents.exponent("v"), 3) == 2));
}

TEST_CASE("congruence on G1 and the star") {
  CHECK(check_congruence(fixture_g1()).holds);
  CHECK(check_congruence(fixture_star()).holds);
  CHECK(check_congruence(fixture_g17()).holds == two_node_criterion(fixture_g17()).holds());
}

TEST_CASE("end-node criteria on fixtures") {
  const auto g1 = two_node_criterion(fixture_g1());
  CHECK(g1.first.end_node == "L");
  CHECK(g1.first.value == 1);
  CHECK(g1.second.value == 0);
  CHECK(g1.holds());

  const auto g90 = two_node_criterion(fixture_g90());
  CHECK(g90.second.end_node == "R");
  CHECK(g90.second.value == -1);
  CHECK_FALSE(g90.holds());

  CHECK_THROWS_AS(two_node_criterion(fixture_star()), SpliceError);
  CHECK_THROWS_AS(end_node_criterion(fixture_g1(), "L", "a1"), SpliceError);
}

TEST_CASE("end-node relations on G1") {
  const auto r = end_node_relations(fixture_g1(), "L");
  CHECK(r.s_formula == 11);
  CHECK(r.s_diagram == 11);
  CHECK(r.r == 7);
  CHECK(r.M == 10);
  CHECK(r.N == 6);
  CHECK(r.lhs == 17);
  CHECK(r.rhs == 17);
}

TEST_CASE("closed forms agree with the general search") {
  std::size_t two_node_graphs = 0, passing = 0;
  for (const auto& [name, family, g] : standard_corpus()) {
    // the biggest dominant trees only slow the exhaustive searches down
    if (g.size() == 1 || g.size() > 16) continue;
    const SpliceDiagram d = splice_from_resolution(g);
    const auto nodes = d.nodes();
    if (nodes.size() < 2) continue;
    const SemigroupReport sg = check_semigroup(d);
    const CongruenceReport cg = check_congruence(g);
    if (nodes.size() == 2) {
      ++two_node_graphs;
      const bool general = sg.holds && cg.holds;
      passing += general;
      CHECK_MESSAGE(two_node_criterion(g).holds() == general, name);
      for (const std::size_t vs : nodes) CHECK_MESSAGE(end_node_relations(g, d.id(vs)).holds(), name);
    }
    for (const auto& entry : cg.entries) {
      const std::size_t far = d.other_end(entry.edge, entry.node);
      if (!is_end_node(d, far)) continue;
      const auto c = end_node_criterion(g, d.id(entry.node), d.id(far));
      CHECK_MESSAGE(c.holds == (entry.status == CongruenceStatus::pass), name);
      if (entry.witness)
        for (const auto& req : c.residues) CHECK(mod_floor(entry.witness->alpha.exponent(req.leaf), req.modulus) == req.residue);
    }
  }
  CHECK(two_node_graphs >= 50);
  CHECK(passing > 0);
  CHECK(passing < two_node_graphs);
}

TEST_CASE("congruence properties") {
  for (const auto& [name, family, g] : standard_corpus({60, 60, 40})) {
    if (g.size() == 1 || g.size() > 16) continue;
    const BigInt det = det_gamma(g);
    const SemigroupReport sg = check_semigroup(splice_from_resolution(g));
    CongruenceOptions opts;
    opts.strong = det <= 2000;
    const CongruenceReport cg = check_congruence(g, opts);
    if (det == 1 && sg.holds) CHECK_MESSAGE(cg.holds, name);
    if (cg.strong_checked) CHECK_MESSAGE(cg.strong_holds, name);
    // edges to leaves never fail
    const SpliceDiagram d = splice_from_resolution(g);
    for (const auto& entry : cg.entries)
      if (d.is_leaf(d.other_end(entry.edge, entry.node))) CHECK(entry.status == CongruenceStatus::pass);
    // invariant under blowing up any edge
    if (g.size() <= 12) {
      for (auto [a, b] : g.edges()) {
        const CongruenceReport blown = check_congruence(blow_up_edge(g, g.id(a), g.id(b)));
        CHECK_MESSAGE(blown.holds == cg.holds, name);
      }
    }
  }
}
