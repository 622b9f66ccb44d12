#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "splicekit/graph.hpp"
#include "splicekit/numeric.hpp"

namespace splicekit {

// On-disk graph: {"version":1,"vertices":[{"id":..,"weight":..}],"edges":[[a,b]]}
struct GraphDocument {
  int version = 1;
  std::optional<std::string> name;
  std::optional<std::string> source;
  std::vector<Vertex> vertices;
  std::vector<IdPair> edges;

  // Throws ValidationError for structural problems and non-negative weights.
  ResolutionGraph graph() const;
};

GraphDocument parse_graph_json(std::string_view text);
// Compact form, one vertex per line:  id weight [: neighbour ...]   ('#' starts a comment)
GraphDocument parse_graph_text(std::string_view text);
// JSON if the first non-blank character is '{', compact text otherwise.
GraphDocument parse_graph(std::string_view text);
GraphDocument load_graph(const std::filesystem::path& path);

GraphDocument document_of(const ResolutionGraph& g, std::optional<std::string> name = {},
                          std::optional<std::string> source = {});
nlohmann::ordered_json graph_to_json(const GraphDocument& doc);

// Integers that fit in 64 bits become JSON numbers, larger ones strings.
nlohmann::ordered_json json_integer(const BigInt& x);
nlohmann::ordered_json json_rational(const Rational& x);

void write_text_file(const std::filesystem::path& path, std::string_view contents);

}  // namespace splicekit
