#include "splicekit/corpus.hpp"

#include <random>

namespace splicekit {

namespace {

// rng() % span keeps the sequence identical across standard libraries
std::int64_t draw(std::mt19937_64& rng, std::int64_t lo, std::int64_t hi) {
  return lo + static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
}

std::string vid(std::size_t i) { return "v" + std::to_string(i); }

}  // namespace

ResolutionGraph fixture_g1() {
  return ResolutionGraph({{"L", -1}, {"a1", -2}, {"a2", -3}, {"m", -17}, {"R", -1}, {"b1", -2}, {"b2", -3}, {"b3", -2}},
                         {{"L", "a1"}, {"L", "a2"}, {"L", "m"}, {"m", "R"}, {"R", "b1"}, {"R", "b2"}, {"b2", "b3"}});
}

ResolutionGraph fixture_g17() {
  return ResolutionGraph({{"L", -3},
                          {"a1", -2},
                          {"a2", -2},
                          {"a3", -2},
                          {"R", -2},
                          {"b1", -2},
                          {"b2", -2},
                          {"b3", -2},
                          {"b4", -2},
                          {"b5", -2}},
                         {{"L", "a1"},
                          {"L", "a2"},
                          {"a2", "a3"},
                          {"L", "R"},
                          {"R", "b1"},
                          {"R", "b2"},
                          {"b2", "b3"},
                          {"b3", "b4"},
                          {"b4", "b5"}});
}

ResolutionGraph fixture_g90() {
  return ResolutionGraph({{"L", -7}, {"x", -3}, {"y", -3}, {"R", -1}, {"u", -3}, {"v", -3}},
                         {{"L", "x"}, {"L", "y"}, {"L", "R"}, {"R", "u"}, {"R", "v"}});
}

ResolutionGraph fixture_star() {
  return ResolutionGraph({{"c", -2}, {"w1", -3}, {"w2", -3}, {"w3", -3}}, {{"c", "w1"}, {"c", "w2"}, {"c", "w3"}});
}

std::vector<NamedGraph> paper_fixtures() {
  return {{"g1", "fixture", fixture_g1()},
          {"g17", "fixture", fixture_g17()},
          {"g90", "fixture", fixture_g90()},
          {"star", "fixture", fixture_star()}};
}

ResolutionGraph random_dominant_tree(std::uint64_t seed, std::size_t n) {
  std::mt19937_64 rng(seed);
  std::vector<IdPair> edges;
  std::vector<std::size_t> degree(n, 0);
  for (std::size_t k = 1; k < n; ++k) {
    std::size_t parent = static_cast<std::size_t>(draw(rng, 0, static_cast<std::int64_t>(k) - 1));
    edges.emplace_back(vid(parent), vid(k));
    ++degree[parent];
    ++degree[k];
  }
  std::vector<Vertex> vs;
  for (std::size_t i = 0; i < n; ++i)
    vs.push_back({vid(i), -static_cast<std::int64_t>(degree[i] + 1) - draw(rng, 0, 2)});
  return ResolutionGraph(std::move(vs), edges);
}

ResolutionGraph random_two_node_graph(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  for (;;) {
    std::vector<Vertex> vs;
    std::vector<IdPair> edges;
    auto add = [&](std::int64_t w) {
      vs.push_back({vid(vs.size()), w});
      return vs.back().id;
    };
    const std::string a = add(-draw(rng, 1, 4));
    std::string prev = a;
    const std::int64_t central = draw(rng, 0, 2);
    for (std::int64_t i = 0; i < central; ++i) {
      std::string s = add(-draw(rng, 2, 4));
      edges.emplace_back(prev, s);
      prev = s;
    }
    const std::string b = add(-draw(rng, 1, 4));
    edges.emplace_back(prev, b);
    for (const std::string& node : {a, b}) {
      const std::int64_t arms = draw(rng, 2, 3);
      for (std::int64_t k = 0; k < arms; ++k) {
        std::string at = node;
        const std::int64_t len = draw(rng, 1, 3);
        for (std::int64_t i = 0; i < len; ++i) {
          std::string s = add(-draw(rng, 2, 5));
          edges.emplace_back(at, s);
          at = s;
        }
      }
    }
    ResolutionGraph g(std::move(vs), edges);
    if (is_negative_definite(g)) return g;
  }
}

ResolutionGraph random_general_tree(std::uint64_t seed, std::size_t n) {
  std::mt19937_64 rng(seed);
  for (;;) {
    std::vector<IdPair> edges;
    for (std::size_t k = 1; k < n; ++k)
      edges.emplace_back(vid(static_cast<std::size_t>(draw(rng, 0, static_cast<std::int64_t>(k) - 1))), vid(k));
    std::vector<Vertex> vs;
    for (std::size_t i = 0; i < n; ++i) vs.push_back({vid(i), -draw(rng, 1, 4)});
    ResolutionGraph g(std::move(vs), edges);
    if (is_negative_definite(g)) return g;
  }
}

std::vector<NamedGraph> standard_corpus(const CorpusSizes& sizes) {
  std::vector<NamedGraph> out = paper_fixtures();
  for (std::size_t i = 0; i < sizes.dominant; ++i) {
    const std::size_t n = 1 + i % 25;
    out.push_back({"dominant-" + std::to_string(i), "dominant", random_dominant_tree(1000 + i, n)});
  }
  for (std::size_t i = 0; i < sizes.two_node; ++i)
    out.push_back({"two-node-" + std::to_string(i), "two-node", random_two_node_graph(5000 + i)});
  for (std::size_t i = 0; i < sizes.general; ++i) {
    const std::size_t n = 4 + i % 9;
    out.push_back({"general-" + std::to_string(i), "general", random_general_tree(9000 + i, n)});
  }
  return out;
}

}  // namespace splicekit
