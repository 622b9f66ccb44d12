#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "splicekit/graph.hpp"

namespace splicekit {

// Two-node example with trivial homology and its det-17 companion.
ResolutionGraph fixture_g1();
ResolutionGraph fixture_g17();
// Nodes -7 and -1, four -3 leaves: fails the congruence condition.
ResolutionGraph fixture_g90();
// -2 centre, three -3 leaves (Brieskorn (3,3,3)).
ResolutionGraph fixture_star();

struct NamedGraph {
  std::string name;
  std::string family;  // fixture | dominant | two-node | general
  ResolutionGraph graph;
};

std::vector<NamedGraph> paper_fixtures();

// Random tree, every weight <= -(valency+1): negative definite by dominance.
ResolutionGraph random_dominant_tree(std::uint64_t seed, std::size_t n);
// Exactly two nodes; weights may be -1; rejection-sampled until negative definite.
ResolutionGraph random_two_node_graph(std::uint64_t seed);
// Random tree with weights in [-4,-1]; rejection-sampled until negative definite.
ResolutionGraph random_general_tree(std::uint64_t seed, std::size_t n);

struct CorpusSizes {
  std::size_t dominant = 100;
  std::size_t two_node = 60;
  std::size_t general = 40;
};

// Fixtures first, then the seeded families. Deterministic.
std::vector<NamedGraph> standard_corpus(const CorpusSizes& sizes = {});

}  // namespace splicekit
