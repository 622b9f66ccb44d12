#include "splicekit/cli.hpp"

#include <cstdlib>
#include <sstream>

#include "splicekit/conditions.hpp"
#include "splicekit/corpus.hpp"
#include "splicekit/discriminant.hpp"
#include "splicekit/equations.hpp"
#include "splicekit/error.hpp"
#include "splicekit/linalg.hpp"
#include "splicekit/okuma.hpp"

namespace splicekit {

namespace {

using nlohmann::ordered_json;

enum class Verdict { pass, fail, undecided };

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::pass: return "pass";
    case Verdict::fail: return "fail";
    case Verdict::undecided: return "undecided";
  }
  return "?";
}

Verdict combine(Verdict a, Verdict b) {
  if (a == Verdict::fail || b == Verdict::fail) return Verdict::fail;
  if (a == Verdict::undecided || b == Verdict::undecided) return Verdict::undecided;
  return Verdict::pass;
}

bool is_input_error(ErrorCode c) {
  switch (c) {
    case ErrorCode::semigroup_fails:
    case ErrorCode::congruence_fails:
    case ErrorCode::limit_exceeded:
    case ErrorCode::cap_exceeded:
    case ErrorCode::iteration_cap_exceeded: return false;
    default: return true;
  }
}

ordered_json error_json(const SpliceError& e) {
  return {{"code", std::string(to_string(e.code()))}, {"message", e.what()}};
}

ordered_json monomial_json(const Monomial& m) {
  ordered_json j = ordered_json::object();
  for (const auto& [leaf, e] : m.exponents) j[leaf] = json_integer(e);
  return j;
}

std::string monomial_text(const Monomial& m) {
  std::string s;
  for (const auto& [leaf, e] : m.exponents) {
    if (!s.empty()) s += "*";
    s += "z_" + leaf;
    if (e != 1) s += "^" + e.get_str();
  }
  return s.empty() ? "1" : s;
}

struct Context {
  const ResolutionGraph& g;
  std::size_t group_cap;
  std::size_t solution_limit;
  std::ostringstream text;
};

ordered_json diagram_json(const WeightedTree& d) {
  ordered_json nodes = ordered_json::array();
  for (std::size_t v : d.nodes()) {
    ordered_json ws = ordered_json::array();
    for (std::size_t e : d.incident(v))
      ws.push_back({{"toward", d.id(d.other_end(e, v))}, {"weight", json_integer(d.weight(v, e))}});
    nodes.push_back({{"node", d.id(v)}, {"d_v", json_integer(d.weight_product(v))}, {"weights", ws}});
  }
  ordered_json edges = ordered_json::array();
  for (const auto& e : d.edges()) {
    ordered_json j{{"a", d.id(e.a)}, {"b", d.id(e.b)}};
    j["weight_a"] = e.weight_a ? json_integer(*e.weight_a) : ordered_json(nullptr);
    j["weight_b"] = e.weight_b ? json_integer(*e.weight_b) : ordered_json(nullptr);
    if (e.string) j["string"] = *e.string;
    edges.push_back(j);
  }
  std::vector<std::string> leaves;
  for (std::size_t w : d.leaves()) leaves.push_back(d.id(w));
  return {{"leaves", leaves}, {"nodes", nodes}, {"edges", edges}};
}

void diagram_text(std::ostringstream& out, const WeightedTree& d) {
  for (std::size_t v : d.nodes()) {
    out << "  node " << d.id(v) << ":";
    for (std::size_t e : d.incident(v)) out << " " << d.weight(v, e) << "->" << d.id(d.other_end(e, v));
    out << "\n";
  }
}

void maximal_text(std::ostringstream& out, const WeightedTree& d) {
  for (const auto& e : d.edges()) {
    out << "  " << d.id(e.a) << " (" << (e.weight_a ? e.weight_a->get_str() : "-") << ") -- ("
        << (e.weight_b ? e.weight_b->get_str() : "-") << ") " << d.id(e.b) << "\n";
  }
}

std::string edge_name(const SpliceDiagram& d, std::size_t v, std::size_t e) {
  return d.id(v) + "->" + d.id(d.other_end(e, v));
}

ordered_json section_det(Context& c) {
  const BigInt det = det_gamma(c.g);
  c.text << "det = " << det << "\n";
  return json_integer(det);
}

ordered_json section_group(Context& c) {
  const SmithDecomposition snf = smith_normal_form(intersection_matrix(c.g).negated());
  std::vector<ordered_json> factors;
  std::string ftext;
  for (const auto& d : snf.diagonal)
    if (d != 1) {
      factors.push_back(json_integer(d));
      ftext += (ftext.empty() ? "Z/" : " + Z/") + d.get_str();
    }
  const BigInt det = det_gamma(c.g);
  ordered_json j{{"order", json_integer(det)}, {"invariant_factors", factors}};
  c.text << "group: " << (ftext.empty() ? "trivial" : ftext) << "\n";

  const DiscriminantGroup group = leaf_generators(c.g);
  ordered_json knots = ordered_json::array();
  for (const auto& leaf : group.leaves) knots.push_back({{"leaf", leaf}, {"order", json_integer(leaf_knot_order(c.g, leaf))}});
  j["leaf_orders"] = knots;

  if (det > c.group_cap) {
    j["enumeration"] = {{"skipped", "order above the enumeration cap"}};
    return j;
  }
  try {
    const GroupCheck gc = group_order_check(c.g, c.group_cap);
    j["enumeration"] = {{"enumerated", gc.enumerated},
                        {"order_matches", gc.order_matches},
                        {"applicable", gc.applicable},
                        {"t_minus_one_generate", gc.t_minus_one_generate},
                        {"no_pseudo_reflections", gc.no_pseudo_reflections}};
    c.text << "  enumerated " << gc.enumerated << " elements, leaf characters "
           << (gc.holds() ? "consistent" : "INCONSISTENT") << "\n";
  } catch (const SpliceError& e) {
    j["enumeration"] = {{"error", error_json(e)}};
  }
  return j;
}

Verdict section_semigroup(Context& c, const SpliceDiagram& d, ordered_json& out) {
  const SemigroupReport r = check_semigroup(d);
  Verdict verdict = Verdict::pass;
  ordered_json entries = ordered_json::array();
  for (const auto& e : r.entries) {
    const Verdict v = e.holds ? Verdict::pass : e.limit_exceeded ? Verdict::undecided : Verdict::fail;
    verdict = combine(verdict, v);
    ordered_json j{{"node", d.id(e.node)},
                   {"toward", d.id(d.other_end(e.edge, e.node))},
                   {"weight", json_integer(d.weight(e.node, e.edge))},
                   {"status", verdict_name(v)}};
    if (e.witness) j["witness"] = monomial_json(e.witness->alpha);
    entries.push_back(j);
    if (v != Verdict::pass) c.text << "  semigroup " << verdict_name(v) << " at " << edge_name(d, e.node, e.edge) << "\n";
  }
  out = {{"status", verdict_name(verdict)}, {"entries", entries}};
  c.text << "semigroup: " << verdict_name(verdict) << "\n";
  return verdict;
}

Verdict section_congruence(Context& c, const SpliceDiagram& d, ordered_json& out) {
  CongruenceOptions opts;
  opts.limit = c.solution_limit;
  opts.group_cap = c.group_cap;
  const CongruenceReport r = check_congruence(c.g, opts);
  Verdict verdict = Verdict::pass;
  ordered_json entries = ordered_json::array();
  for (const auto& e : r.entries) {
    Verdict v = Verdict::pass;
    if (e.status == CongruenceStatus::fail || e.status == CongruenceStatus::semigroup_fails) v = Verdict::fail;
    if (e.status == CongruenceStatus::limit_exceeded) v = Verdict::undecided;
    verdict = combine(verdict, v);
    ordered_json j{{"node", d.id(e.node)},
                   {"toward", d.id(d.other_end(e.edge, e.node))},
                   {"status", std::string(to_string(e.status))},
                   {"candidates", e.candidates}};
    if (e.witness) j["witness"] = monomial_json(e.witness->alpha);
    if (!e.end_node_residues.empty()) {
      ordered_json res = ordered_json::array();
      for (const auto& q : e.end_node_residues)
        res.push_back({{"leaf", q.leaf}, {"residue", json_integer(q.residue)}, {"modulus", json_integer(q.modulus)}});
      j["end_node_residues"] = res;
    }
    if (v == Verdict::fail && !e.rejected.empty()) {
      ordered_json rej = ordered_json::array();
      for (const auto& x : e.rejected)
        rej.push_back({{"exponents", monomial_json(x.exponents)}, {"leaf", x.leaf}, {"lhs", json_rational(x.lhs)}, {"rhs", json_rational(x.rhs)}});
      j["rejected"] = rej;
    }
    entries.push_back(j);
    if (v != Verdict::pass) {
      c.text << "  congruence " << verdict_name(v) << " at " << edge_name(d, e.node, e.edge);
      if (!e.end_node_residues.empty()) {
        c.text << ": needs";
        for (const auto& q : e.end_node_residues) c.text << " alpha_" << q.leaf << " = " << q.residue << " (mod " << q.modulus << ")";
      }
      c.text << "\n";
    }
  }
  out = {{"status", verdict_name(verdict)}, {"entries", entries}};
  c.text << "congruence: " << verdict_name(verdict) << "\n";
  return verdict;
}

Verdict section_ideal(Context& c, const SpliceDiagram& d, ordered_json& out) {
  const IdealReport r = check_ideal_condition(d);
  ordered_json entries = ordered_json::array();
  for (const auto& e : r.entries) {
    entries.push_back({{"node", d.id(e.node)},
                       {"toward", d.id(d.other_end(e.edge, e.node))},
                       {"weight", json_integer(e.weight)},
                       {"generator", json_integer(e.generator)},
                       {"holds", e.holds}});
    if (!e.holds) c.text << "  ideal fails at " << edge_name(d, e.node, e.edge) << "\n";
  }
  const Verdict v = r.holds ? Verdict::pass : Verdict::fail;
  out = {{"status", verdict_name(v)}, {"entries", entries}};
  c.text << "ideal: " << verdict_name(v) << "\n";
  return v;
}

Verdict section_okuma34(Context& c, ordered_json& out) {
  const Condition34Report r = check_condition_3_4(c.g);
  ordered_json entries = ordered_json::array();
  for (const auto& b : r.entries) {
    ordered_json z = ordered_json::object();
    for (std::size_t j = 0; j < c.g.size(); ++j)
      if (b.z.coef[j] != 0) z[c.g.id(j)] = json_rational(b.z.coef[j]);
    entries.push_back({{"vertex", b.vertex}, {"root", b.root}, {"z_dot_e", json_rational(b.z_dot_e)}, {"holds", b.holds}, {"cycle", z}});
  }
  const Verdict v = r.holds ? Verdict::pass : Verdict::fail;
  out = {{"status", verdict_name(v)}, {"entries", entries}};
  if (r.offending) {
    out["offending"] = {{"vertex", r.offending->vertex}, {"root", r.offending->root}, {"z_dot_e", json_rational(r.offending->z_dot_e)}};
    c.text << "  okuma 3.4 fails at " << r.offending->vertex << " branch " << r.offending->root
           << ": Z.E = " << r.offending->z_dot_e << "\n";
  }
  c.text << "okuma34: " << verdict_name(v) << "\n";
  return v;
}

Verdict section_okuma33(Context& c, ordered_json& out) {
  const Condition33Report r = check_condition_3_3(c.g, c.solution_limit);
  Verdict verdict = Verdict::pass;
  ordered_json entries = ordered_json::array();
  for (const auto& e : r.entries) {
    const Verdict v = e.holds ? Verdict::pass : e.undecided ? Verdict::undecided : Verdict::fail;
    verdict = combine(verdict, v);
    const char* route = e.route == Condition33Route::constructive ? "constructive" : e.route == Condition33Route::search ? "search" : "none";
    ordered_json j{{"node", e.node}, {"root", e.root}, {"status", verdict_name(v)}, {"route", route}};
    if (e.holds) j["alpha"] = monomial_json(e.alpha);
    if (!e.construction_failure.empty()) j["construction_failure"] = e.construction_failure;
    entries.push_back(j);
    if (v != Verdict::pass) c.text << "  okuma 3.3 " << verdict_name(v) << " at " << e.node << " branch " << e.root << "\n";
  }
  out = {{"status", verdict_name(verdict)}, {"entries", entries}};
  c.text << "okuma33: " << verdict_name(verdict) << "\n";
  return verdict;
}

Verdict run_checks(Context& c, const std::string& which, ordered_json& out) {
  const SpliceDiagram d = splice_from_resolution(c.g);
  const bool all = which == "all";
  Verdict v = Verdict::pass;
  ordered_json section;
  if (all || which == "semigroup") v = combine(v, section_semigroup(c, d, section)), out["semigroup"] = section;
  if (all || which == "congruence") v = combine(v, section_congruence(c, d, section)), out["congruence"] = section;
  if (all || which == "ideal") v = combine(v, section_ideal(c, d, section)), out["ideal"] = section;
  if (all || which == "okuma34") v = combine(v, section_okuma34(c, section)), out["okuma34"] = section;
  if (all || which == "okuma33") v = combine(v, section_okuma33(c, section)), out["okuma33"] = section;
  return v;
}

ordered_json section_equations(Context& c, bool equivariant, int& exit_code) {
  EquationOptions opts;
  opts.equivariant = equivariant;
  opts.limit = c.solution_limit;
  try {
    const SpliceEquationSystem s = build_equations(c.g, opts);
    const std::string text = render_equations_text(s);
    c.text << "equations" << (equivariant ? " (equivariant)" : "") << ":\n" << text;
    return {{"status", "built"}, {"system", equations_to_json(s)}, {"text", text}};
  } catch (const SpliceError& e) {
    if (is_input_error(e.code())) throw;
    exit_code = kExitConditionFails;
    c.text << "equations" << (equivariant ? " (equivariant)" : "") << ": " << to_string(e.code()) << ": " << e.what() << "\n";
    return {{"status", "failed"}, {"error", error_json(e)}};
  }
}

ordered_json section_reduce(Context& c, const RunOptions& opts) {
  const SpliceDiagram d = splice_from_resolution(c.g);
  const auto v = d.find(opts.end_node);
  if (!v) throw SpliceError(ErrorCode::unknown_vertex, "no node '" + opts.end_node + "' in the splice diagram");
  ReductionOptions ro;
  ro.mode = opts.mode;
  ro.det = det_gamma(c.g);
  const ReductionResult r = end_node_reduce(d, *v, ro);
  ordered_json j{{"end_node", opts.end_node},
                 {"mode", opts.mode == ReductionMode::raw ? "raw" : "normalized"},
                 {"r", json_integer(r.r)},
                 {"degenerate", r.degenerate},
                 {"diagram", diagram_json(r.diagram)}};
  ordered_json bad = ordered_json::array();
  for (const auto& n : r.non_integral) bad.push_back({{"node", n.node}, {"toward", n.toward}, {"value", json_rational(n.value)}});
  j["non_integral"] = bad;
  c.text << "reduced at " << opts.end_node << " (" << (opts.mode == ReductionMode::raw ? "raw" : "normalized") << "), r = " << r.r << "\n";
  diagram_text(c.text, r.diagram);
  if (opts.mode == ReductionMode::normalized && !r.degenerate) {
    const GraphReduction gr = end_node_reduce_graph(c.g, opts.end_node);
    j["graph"] = {{"blown_up", gr.blown_up},
                  {"new_leaf", gr.new_leaf},
                  {"reduced", graph_to_json(document_of(gr.reduced))},
                  {"det_reduced", json_integer(gr.det_reduced)},
                  {"r_is_det", gr.r_is_det},
                  {"agrees_with_formula", gr.agree}};
    c.text << "  reduced graph det = " << gr.det_reduced << ", splice diagram " << (gr.agree ? "agrees" : "DISAGREES")
           << " with the weight formula\n";
  }
  return j;
}

ordered_json section_validate(Context& c) {
  ordered_json kinds = ordered_json::object();
  for (std::size_t i = 0; i < c.g.size(); ++i) {
    const VertexKind k = c.g.kind(i);
    kinds[c.g.id(i)] = k == VertexKind::leaf ? "leaf" : k == VertexKind::node ? "node" : "string";
  }
  const bool nd = is_negative_definite(c.g);
  c.text << c.g.size() << " vertices, " << c.g.edges().size() << " edges, " << c.g.nodes().size() << " nodes, "
         << c.g.leaves().size() << " leaves\n"
         << "negative definite: " << (nd ? "yes" : "no") << "\n";
  return {{"vertices", c.g.size()},
          {"edges", c.g.edges().size()},
          {"negative_definite", nd},
          {"quasi_minimal", is_quasi_minimal(c.g)},
          {"kinds", kinds}};
}

RunResult invalid(ordered_json report, const SpliceError& e) {
  report["error"] = error_json(e);
  return {report, std::string(to_string(e.code())) + ": " + e.what() + "\n", kExitInvalidInput};
}

}  // namespace

std::size_t enum_cap_from_env() {
  const char* s = std::getenv("SPLICEKIT_ENUM_CAP");
  if (!s || !*s) return 0;
  char* end = nullptr;
  const unsigned long long v = std::strtoull(s, &end, 10);
  if (*end != '\0') throw SpliceError(ErrorCode::validation, "SPLICEKIT_ENUM_CAP must be a positive integer");
  return static_cast<std::size_t>(v);
}

RunResult run_command(const GraphDocument& doc, const RunOptions& opts) {
  ordered_json report;
  report["command"] = opts.command == "check" ? "check " + opts.check : opts.command;
  if (doc.name) report["graph"] = *doc.name;
  std::optional<ResolutionGraph> graph;
  try {
    graph.emplace(doc.graph());
    if (opts.command != "validate") require_negative_definite(*graph);
  } catch (const SpliceError& e) {
    return invalid(report, e);
  }
  Context c{*graph, opts.enum_cap ? opts.enum_cap : kDefaultGroupCap, opts.enum_cap ? opts.enum_cap : kDefaultSolutionLimit, {}};
  int exit_code = kExitPass;
  try {
    if (opts.command == "validate") {
      report["validate"] = section_validate(c);
      if (!report["validate"]["negative_definite"].get<bool>()) {
        report["error"] = {{"code", std::string(to_string(ErrorCode::not_negative_definite))},
                           {"message", "intersection matrix is not negative definite"}};
        exit_code = kExitInvalidInput;
      }
    } else if (opts.command == "det") {
      report["det"] = section_det(c);
    } else if (opts.command == "group") {
      report["group"] = section_group(c);
    } else if (opts.command == "splice") {
      const SpliceDiagram d = splice_from_resolution(*graph);
      c.text << "splice diagram:\n";
      diagram_text(c.text, d);
      report["splice"] = diagram_json(d);
    } else if (opts.command == "maximal") {
      const MaximalSpliceDiagram d = maximal_splice(*graph);
      c.text << "maximal splice diagram:\n";
      maximal_text(c.text, d);
      report["maximal"] = diagram_json(d);
    } else if (opts.command == "check") {
      static const std::vector<std::string> known{"semigroup", "congruence", "ideal", "okuma34", "okuma33", "all"};
      if (std::find(known.begin(), known.end(), opts.check) == known.end())
        throw SpliceError(ErrorCode::validation, "unknown check '" + opts.check + "'");
      ordered_json checks;
      const Verdict v = run_checks(c, opts.check, checks);
      report["checks"] = checks;
      report["status"] = verdict_name(v);
      if (v != Verdict::pass) exit_code = kExitConditionFails;
    } else if (opts.command == "equations") {
      report["equations"] = section_equations(c, opts.equivariant, exit_code);
    } else if (opts.command == "reduce") {
      if (opts.end_node.empty()) throw SpliceError(ErrorCode::validation, "reduce needs --end-node");
      report["reduce"] = section_reduce(c, opts);
    } else if (opts.command == "report") {
      report["det"] = section_det(c);
      report["group"] = section_group(c);
      const SpliceDiagram d = splice_from_resolution(*graph);
      c.text << "splice diagram:\n";
      diagram_text(c.text, d);
      report["splice"] = diagram_json(d);
      const MaximalSpliceDiagram m = maximal_splice(*graph);
      c.text << "maximal splice diagram:\n";
      maximal_text(c.text, m);
      report["maximal"] = diagram_json(m);
      ordered_json checks;
      const Verdict v = run_checks(c, "all", checks);
      report["checks"] = checks;
      report["status"] = verdict_name(v);
      int ignored = kExitPass;
      report["equations"] = section_equations(c, false, ignored);
      report["equivariant_equations"] = section_equations(c, true, ignored);
      if (v != Verdict::pass) exit_code = kExitConditionFails;
    } else {
      throw SpliceError(ErrorCode::validation, "unknown command '" + opts.command + "'");
    }
  } catch (const SpliceError& e) {
    if (is_input_error(e.code())) return invalid(report, e);
    report["error"] = error_json(e);
    c.text << to_string(e.code()) << ": " << e.what() << "\n";
    exit_code = kExitConditionFails;
  }
  return {report, c.text.str(), exit_code};
}

RunResult run_file(const std::filesystem::path& path, const RunOptions& opts) {
  try {
    return run_command(load_graph(path), opts);
  } catch (const SpliceError& e) {
    ordered_json report;
    report["command"] = opts.command == "check" ? "check " + opts.check : opts.command;
    return invalid(report, e);
  }
}

std::vector<std::filesystem::path> emit_fixtures(const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw SpliceError(ErrorCode::io, "cannot create " + dir.string() + ": " + ec.message());
  std::vector<std::filesystem::path> written;
  RunOptions opts;
  opts.command = "report";
  for (const auto& f : paper_fixtures()) {
    const GraphDocument doc = document_of(f.graph, f.name);
    const auto graph_path = dir / (f.name + ".json");
    write_text_file(graph_path, graph_to_json(doc).dump(2) + "\n");
    const auto report_path = dir / (f.name + ".report.json");
    write_text_file(report_path, run_command(doc, opts).report.dump(2) + "\n");
    written.push_back(graph_path);
    written.push_back(report_path);
  }
  return written;
}

}  // namespace splicekit
