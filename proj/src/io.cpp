#include "splicekit/io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "splicekit/error.hpp"

namespace splicekit {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

[[noreturn]] void parse_fail(const std::string& where, const std::string& what) {
  throw SpliceError(ErrorCode::parse, where + ": " + what);
}

std::size_t line_of(std::string_view text, std::size_t byte) {
  std::size_t line = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) line += text[i] == '\n';
  return line;
}

std::string field_string(const json& j, const char* key, const std::string& where) {
  if (!j.contains(key)) parse_fail(where, std::string("missing field '") + key + "'");
  if (!j.at(key).is_string()) parse_fail(where + "." + key, "expected a string");
  return j.at(key).get<std::string>();
}

}  // namespace

ResolutionGraph GraphDocument::graph() const {
  ResolutionGraph g(vertices, edges);
  const auto problems = g.validation_problems();
  if (!problems.empty()) throw SpliceError(ErrorCode::validation, problems.front());
  return g;
}

GraphDocument parse_graph_json(std::string_view text) {
  json j;
  try {
    j = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    parse_fail("line " + std::to_string(line_of(text, e.byte == 0 ? 0 : e.byte - 1)), e.what());
  }
  if (!j.is_object()) parse_fail("document", "expected a JSON object");
  GraphDocument doc;
  if (!j.contains("version")) parse_fail("document", "missing field 'version'");
  if (!j["version"].is_number_integer() || j["version"].get<int>() != 1) parse_fail("version", "only version 1 is supported");
  if (j.contains("name")) doc.name = field_string(j, "name", "document");
  if (j.contains("source")) doc.source = field_string(j, "source", "document");

  if (!j.contains("vertices") || !j["vertices"].is_array()) parse_fail("vertices", "expected an array");
  std::size_t k = 0;
  for (const auto& v : j["vertices"]) {
    const std::string where = "vertices[" + std::to_string(k++) + "]";
    if (!v.is_object()) parse_fail(where, "expected an object");
    const std::string id = field_string(v, "id", where);
    if (!v.contains("weight") || !v["weight"].is_number_integer()) parse_fail(where + ".weight", "expected an integer");
    doc.vertices.push_back({id, v["weight"].get<std::int64_t>()});
  }
  if (!j.contains("edges") || !j["edges"].is_array()) parse_fail("edges", "expected an array");
  k = 0;
  for (const auto& e : j["edges"]) {
    const std::string where = "edges[" + std::to_string(k++) + "]";
    if (!e.is_array() || e.size() != 2 || !e[0].is_string() || !e[1].is_string())
      parse_fail(where, "expected a pair of vertex ids");
    doc.edges.emplace_back(e[0].get<std::string>(), e[1].get<std::string>());
  }
  return doc;
}

GraphDocument parse_graph_text(std::string_view text) {
  GraphDocument doc;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t lineno = 0;
  std::vector<IdPair> listed;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string id;
    if (!(ls >> id)) continue;
    const std::string where = "line " + std::to_string(lineno);
    if (id == "name") {
      std::string rest;
      std::getline(ls >> std::ws, rest);
      doc.name = rest;
      continue;
    }
    std::string weight;
    if (!(ls >> weight)) parse_fail(where, "expected a weight after '" + id + "'");
    std::int64_t w = 0;
    try {
      std::size_t used = 0;
      w = std::stoll(weight, &used);
      if (used != weight.size()) throw std::invalid_argument(weight);
    } catch (const std::exception&) {
      parse_fail(where, "bad weight '" + weight + "'");
    }
    doc.vertices.push_back({id, w});
    std::string tok;
    if (ls >> tok) {
      if (tok != ":") parse_fail(where, "expected ':' before the neighbours");
      while (ls >> tok) listed.emplace_back(id, tok);
    }
  }
  // each edge may be listed from one or both ends
  for (const auto& [a, b] : listed) {
    const bool seen = std::any_of(doc.edges.begin(), doc.edges.end(), [&](const IdPair& e) {
      return (e.first == a && e.second == b) || (e.first == b && e.second == a);
    });
    if (!seen) doc.edges.emplace_back(a, b);
  }
  return doc;
}

GraphDocument parse_graph(std::string_view text) {
  const auto pos = text.find_first_not_of(" \t\r\n");
  if (pos != std::string_view::npos && text[pos] == '{') return parse_graph_json(text);
  return parse_graph_text(text);
}

GraphDocument load_graph(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw SpliceError(ErrorCode::io, "cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_graph(buf.str());
}

GraphDocument document_of(const ResolutionGraph& g, std::optional<std::string> name, std::optional<std::string> source) {
  GraphDocument doc;
  doc.name = std::move(name);
  doc.source = std::move(source);
  doc.vertices = g.vertices();
  for (auto [a, b] : g.edges()) doc.edges.emplace_back(g.id(a), g.id(b));
  return doc;
}

ordered_json graph_to_json(const GraphDocument& doc) {
  ordered_json j;
  j["version"] = doc.version;
  if (doc.name) j["name"] = *doc.name;
  if (doc.source) j["source"] = *doc.source;
  ordered_json vs = ordered_json::array();
  for (const auto& v : doc.vertices) vs.push_back({{"id", v.id}, {"weight", v.weight}});
  j["vertices"] = vs;
  ordered_json es = ordered_json::array();
  for (const auto& [a, b] : doc.edges) es.push_back({a, b});
  j["edges"] = es;
  return j;
}

ordered_json json_integer(const BigInt& x) {
  if (x.fits_slong_p()) return x.get_si();
  return x.get_str();
}

ordered_json json_rational(const Rational& value) {
  Rational x = value;
  x.canonicalize();
  if (x.get_den() == 1) return json_integer(x.get_num());
  return x.get_str();
}

void write_text_file(const std::filesystem::path& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw SpliceError(ErrorCode::io, "cannot write " + path.string());
  out << contents;
  if (!out) throw SpliceError(ErrorCode::io, "write failed for " + path.string());
}

}  // namespace splicekit
