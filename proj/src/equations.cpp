#include "splicekit/equations.hpp"

#include <algorithm>
#include <sstream>

#include "splicekit/discriminant.hpp"
#include "splicekit/error.hpp"
#include "splicekit/linalg.hpp"

namespace splicekit {

namespace {

using nlohmann::ordered_json;

ordered_json big_to_json(const BigInt& x) {
  if (x.fits_slong_p()) return x.get_si();
  return x.get_str();
}

BigInt big_from_json(const ordered_json& j) {
  if (j.is_number_integer()) return BigInt(static_cast<long>(j.get<std::int64_t>()));
  if (j.is_string()) {
    BigInt x;
    if (x.set_str(j.get<std::string>(), 10) != 0) throw SpliceError(ErrorCode::parse, "bad integer in equation JSON");
    return x;
  }
  throw SpliceError(ErrorCode::parse, "expected an integer in equation JSON");
}

ordered_json monomial_to_json(const Monomial& m, const std::vector<std::string>& leaves) {
  ordered_json j = ordered_json::object();
  for (const auto& leaf : leaves)
    if (const BigInt e = m.exponent(leaf); e != 0) j[leaf] = big_to_json(e);
  return j;
}

Monomial monomial_from_json(const ordered_json& j) {
  Monomial m;
  for (const auto& [leaf, e] : j.items()) m.set(leaf, big_from_json(e));
  return m;
}

std::string render_monomial(const Monomial& m, const std::vector<std::string>& leaves) {
  std::string out;
  for (const auto& leaf : leaves) {
    const BigInt e = m.exponent(leaf);
    if (e == 0) continue;
    if (!out.empty()) out += "*";
    out += "z_" + leaf;
    if (e != 1) out += "^" + e.get_str();
  }
  return out.empty() ? "1" : out;
}

void append_term(std::string& line, const BigInt& coef, const Monomial& m, const std::vector<std::string>& leaves) {
  if (coef == 0) return;
  const BigInt mag = abs(coef);
  if (line.empty())
    line += coef < 0 ? "-" : "";
  else
    line += coef < 0 ? " - " : " + ";
  const std::string mono = render_monomial(m, leaves);
  if (mag != 1)
    line += mag.get_str() + (mono == "1" ? "" : "*" + mono);
  else
    line += mono;
}

std::vector<std::vector<std::size_t>> column_subsets(std::size_t n, std::size_t k) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> cur;
  auto rec = [&](auto&& self, std::size_t start) -> void {
    if (cur.size() == k) {
      out.push_back(cur);
      return;
    }
    for (std::size_t i = start; i < n; ++i) {
      cur.push_back(i);
      self(self, i + 1);
      cur.pop_back();
    }
  };
  rec(rec, 0);
  return out;
}

IntegerMatrix vandermonde_rows(const std::vector<BigInt>& c, std::size_t rows) {
  IntegerMatrix m(rows, c.size());
  for (std::size_t j = 0; j < c.size(); ++j) {
    BigInt p = 1;
    for (std::size_t i = 0; i < rows; ++i) {
      m(i, j) = p;
      p *= c[j];
    }
  }
  return m;
}

struct Characters {
  const DiscriminantGroup* group = nullptr;
  std::vector<Rational> of(const Monomial& m) const {
    std::vector<Rational> out;
    for (const auto& gen : group->generators) out.push_back(character_of_monomial(*group, m, gen));
    return out;
  }
};

SpliceEquationSystem assemble(const SpliceDiagram& d, const std::vector<std::optional<AdmissibleExponents>>& witness_of,
                              const EquationOptions& opts, const DiscriminantGroup* group) {
  SpliceEquationSystem s;
  s.equivariant = opts.equivariant;
  for (std::size_t w : d.leaves()) s.leaves.push_back(d.id(w));
  std::vector<std::size_t> node_ids;
  for (std::size_t v : d.nodes()) {
    NodeEquations ne;
    ne.node = d.id(v);
    ne.d_v = d.weight_product(v);
    const auto& inc = d.incident(v);
    for (std::size_t e : inc) {
      ne.toward.push_back(d.id(d.other_end(e, v)));
      const auto& w = witness_of[e * 2 + (d.edge(e).a == v ? 0 : 1)];
      if (!w) throw std::logic_error("missing admissible monomial");
      if (v_weight(d, v, w->alpha) != ne.d_v) throw std::logic_error("admissible monomial has the wrong v-weight");
      ne.monomials.push_back(w->alpha);
    }
    const std::size_t delta = inc.size();
    for (std::size_t j = 0; j < delta; ++j) ne.c.push_back(BigInt(static_cast<long>(j + 1)));
    ne.coefficients = vandermonde_rows(ne.c, delta - 2);
    // Never triggers for distinct c_e; kept as a guard.
    while (!maximal_minors_nonzero(ne.coefficients)) {
      for (auto& c : ne.c) c += static_cast<long>(delta);
      ne.coefficients = vandermonde_rows(ne.c, delta - 2);
    }
    ne.higher.assign(delta - 2, {});
    s.nodes.push_back(std::move(ne));
    node_ids.push_back(v);
  }

  Characters chars{group};
  std::vector<std::vector<Rational>> shared(s.nodes.size());
  if (opts.equivariant) {
    for (std::size_t k = 0; k < s.nodes.size(); ++k) {
      shared[k] = chars.of(s.nodes[k].monomials.front());
      for (const auto& m : s.nodes[k].monomials)
        if (chars.of(m) != shared[k])
          throw SpliceError(ErrorCode::congruence_fails, "monomials at node " + s.nodes[k].node + " transform differently");
    }
  }

  for (const auto& spec : opts.higher_terms) {
    auto it = std::find_if(s.nodes.begin(), s.nodes.end(), [&](const NodeEquations& n) { return n.node == spec.node; });
    if (it == s.nodes.end()) throw SpliceError(ErrorCode::invalid_higher_term, "higher term at unknown node " + spec.node);
    const std::size_t k = static_cast<std::size_t>(it - s.nodes.begin());
    if (spec.equation >= it->higher.size())
      throw SpliceError(ErrorCode::invalid_higher_term, "node " + spec.node + " has no equation " + std::to_string(spec.equation));
    for (const auto& [leaf, e] : spec.term.monomial.exponents) {
      const auto idx = d.find(leaf);
      if (!idx || !d.is_leaf(*idx) || e < 0)
        throw SpliceError(ErrorCode::invalid_higher_term, "higher term uses a non-leaf variable or negative exponent: " + leaf);
    }
    if (spec.term.coefficient == 0) throw SpliceError(ErrorCode::invalid_higher_term, "higher term with zero coefficient");
    const BigInt w = v_weight(d, node_ids[k], spec.term.monomial);
    if (w <= it->d_v)
      throw SpliceError(ErrorCode::invalid_higher_term, "v-weight " + w.get_str() + " of higher term at " + spec.node +
                                                             " is not above d_v = " + it->d_v.get_str());
    if (opts.equivariant && chars.of(spec.term.monomial) != shared[k])
      throw SpliceError(ErrorCode::invalid_higher_term, "character of higher term at " + spec.node + " differs from the monomials'");
    it->higher[spec.equation].push_back(spec.term);
  }
  return s;
}

std::vector<std::optional<AdmissibleExponents>> semigroup_witnesses(const SpliceDiagram& d) {
  std::vector<std::optional<AdmissibleExponents>> out(d.edges().size() * 2);
  const SemigroupReport r = check_semigroup(d);
  for (const auto& entry : r.entries) {
    if (entry.limit_exceeded)
      throw SpliceError(ErrorCode::limit_exceeded, "admissible monomial search at " + d.id(entry.node) + " ran out of budget");
    if (!entry.holds)
      throw SpliceError(ErrorCode::semigroup_fails, "no admissible monomial at node " + d.id(entry.node) + " toward " +
                                                        d.id(d.other_end(entry.edge, entry.node)));
    out[entry.edge * 2 + (d.edge(entry.edge).a == entry.node ? 0 : 1)] = entry.witness;
  }
  return out;
}

}  // namespace

BigInt v_weight(const WeightedTree& d, std::size_t v, const Monomial& m) {
  BigInt total = 0;
  for (const auto& [leaf, a] : m.exponents) {
    const std::size_t w = d.index_of(leaf);
    total += a * (w == v ? d.weight_product(v) : linking_numbers(d, v, w).full);
  }
  return total;
}

std::size_t SpliceEquationSystem::equation_count() const {
  std::size_t n = 0;
  for (const auto& ne : nodes) n += ne.coefficients.rows();
  return n;
}

bool maximal_minors_nonzero(const IntegerMatrix& m) {
  const std::size_t k = std::min(m.rows(), m.cols());
  for (const auto& cols : column_subsets(m.cols(), k)) {
    IntegerMatrix sub(k, k);
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) sub(i, j) = m(i, cols[j]);
    if (bareiss_determinant(sub) == 0) return false;
  }
  return true;
}

SpliceEquationSystem build_equations(const SpliceDiagram& d, const EquationOptions& opts) {
  if (opts.equivariant)
    throw SpliceError(ErrorCode::validation, "equivariant equations need the resolution graph");
  return assemble(d, semigroup_witnesses(d), opts, nullptr);
}

SpliceEquationSystem build_equations(const ResolutionGraph& g, const EquationOptions& opts) {
  require_negative_definite(g);
  const SpliceDiagram d = splice_from_resolution(g);
  if (!opts.equivariant) return assemble(d, semigroup_witnesses(d), opts, nullptr);

  CongruenceOptions copts;
  copts.limit = opts.limit;
  const CongruenceReport r = check_congruence(g, copts);
  std::vector<std::optional<AdmissibleExponents>> w(d.edges().size() * 2);
  for (const auto& entry : r.entries) {
    const std::string where = d.id(entry.node) + " toward " + d.id(d.other_end(entry.edge, entry.node));
    switch (entry.status) {
      case CongruenceStatus::pass: break;
      case CongruenceStatus::semigroup_fails: throw SpliceError(ErrorCode::semigroup_fails, "no admissible monomial at " + where);
      case CongruenceStatus::limit_exceeded: throw SpliceError(ErrorCode::limit_exceeded, "monomial search ran out of budget at " + where);
      case CongruenceStatus::fail: throw SpliceError(ErrorCode::congruence_fails, "no equivariant admissible monomial at " + where);
    }
    w[entry.edge * 2 + (d.edge(entry.edge).a == entry.node ? 0 : 1)] = entry.witness;
  }
  const DiscriminantGroup group = leaf_generators(g);
  return assemble(d, w, opts, &group);
}

RationalMatrix normalize_rows(const IntegerMatrix& m) {
  const std::size_t k = m.rows(), n = m.cols();
  if (k == 0) return RationalMatrix(0, n);
  if (n != k + 2) throw SpliceError(ErrorCode::degenerate_matrix, "coefficient matrix must have two more columns than rows");
  RationalMatrix left(k, k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) left(i, j) = Rational(m(i, j));
  RationalMatrix inv;
  try {
    inv = inverse(left);
  } catch (const SpliceError&) {
    throw SpliceError(ErrorCode::degenerate_matrix, "leading square block is singular");
  }
  const RationalMatrix r = inv * to_rational(m);
  for (std::size_t i = 0; i < k; ++i) {
    const Rational &a = r(i, k), &b = r(i, k + 1);
    if (a == 0 || b == 0) throw SpliceError(ErrorCode::degenerate_matrix, "zero entry in the last two columns");
    for (std::size_t j = i + 1; j < k; ++j)
      if (a * r(j, k + 1) - r(j, k) * b == 0)
        throw SpliceError(ErrorCode::degenerate_matrix, "a_i b_j - a_j b_i vanishes");
  }
  return r;
}

std::vector<NormalizedNode> normalize_coefficients(const SpliceEquationSystem& s) {
  std::vector<NormalizedNode> out;
  for (const auto& ne : s.nodes) out.push_back({ne.node, normalize_rows(ne.coefficients)});
  return out;
}

LeadingFormReport leading_form_check(const SpliceDiagram& d, std::size_t v, const SpliceEquationSystem& s) {
  LeadingFormReport rep;
  rep.node = d.id(v);
  for (const auto& ne : s.nodes) {
    const std::size_t vp = d.index_of(ne.node);
    if (vp == v) continue;
    LeadingFormEntry entry;
    entry.other_node = ne.node;
    entry.expected = linking_numbers(d, v, vp).full;
    const auto path = d.path_vertices(vp, v);
    const std::string next = d.id(path.at(1));
    entry.holds = true;
    for (std::size_t j = 0; j < ne.monomials.size(); ++j) {
      const BigInt w = v_weight(d, v, ne.monomials[j]);
      entry.weights.push_back(w);
      if (ne.toward[j] == next) {
        entry.toward = j;
        entry.holds = entry.holds && w > entry.expected;
      } else {
        entry.holds = entry.holds && w == entry.expected;
      }
    }
    entry.holds = entry.holds && entry.toward.has_value();
    rep.holds = rep.holds && entry.holds;
    rep.entries.push_back(std::move(entry));
  }
  return rep;
}

BigInt curve_component_count(const WeightedTree& d, std::size_t leaf) {
  if (!d.is_leaf(leaf)) throw SpliceError(ErrorCode::validation, d.id(leaf) + " is not a leaf");
  BigInt g = 0;
  for (std::size_t w : d.leaves())
    if (w != leaf) g = gcd(g, linking_numbers(d, leaf, w).full);
  return g;
}

std::string render_equations_text(const SpliceEquationSystem& s) {
  std::ostringstream out;
  for (const auto& ne : s.nodes) {
    for (std::size_t i = 0; i < ne.coefficients.rows(); ++i) {
      std::string line;
      for (std::size_t j = 0; j < ne.monomials.size(); ++j) append_term(line, ne.coefficients(i, j), ne.monomials[j], s.leaves);
      for (const auto& h : ne.higher[i]) append_term(line, h.coefficient, h.monomial, s.leaves);
      out << ne.node << "[" << i + 1 << "]: " << line << " = 0\n";
    }
  }
  return out.str();
}

ordered_json equations_to_json(const SpliceEquationSystem& s) {
  ordered_json j;
  j["leaves"] = s.leaves;
  j["equivariant"] = s.equivariant;
  j["equation_count"] = s.equation_count();
  ordered_json nodes = ordered_json::array();
  for (const auto& ne : s.nodes) {
    ordered_json n;
    n["node"] = ne.node;
    n["d_v"] = big_to_json(ne.d_v);
    ordered_json edges = ordered_json::array();
    for (std::size_t k = 0; k < ne.toward.size(); ++k)
      edges.push_back({{"toward", ne.toward[k]}, {"c", big_to_json(ne.c[k])}, {"monomial", monomial_to_json(ne.monomials[k], s.leaves)}});
    n["edges"] = edges;
    ordered_json rows = ordered_json::array();
    for (std::size_t i = 0; i < ne.coefficients.rows(); ++i) {
      ordered_json row = ordered_json::array();
      for (std::size_t c = 0; c < ne.coefficients.cols(); ++c) row.push_back(big_to_json(ne.coefficients(i, c)));
      rows.push_back(row);
    }
    n["coefficients"] = rows;
    ordered_json higher = ordered_json::array();
    for (const auto& terms : ne.higher) {
      ordered_json list = ordered_json::array();
      for (const auto& h : terms)
        list.push_back({{"coefficient", big_to_json(h.coefficient)}, {"monomial", monomial_to_json(h.monomial, s.leaves)}});
      higher.push_back(list);
    }
    n["higher_terms"] = higher;
    nodes.push_back(n);
  }
  j["nodes"] = nodes;
  return j;
}

SpliceEquationSystem equations_from_json(const ordered_json& j) {
  try {
    SpliceEquationSystem s;
    s.leaves = j.at("leaves").get<std::vector<std::string>>();
    s.equivariant = j.at("equivariant").get<bool>();
    for (const auto& n : j.at("nodes")) {
      NodeEquations ne;
      ne.node = n.at("node").get<std::string>();
      ne.d_v = big_from_json(n.at("d_v"));
      for (const auto& e : n.at("edges")) {
        ne.toward.push_back(e.at("toward").get<std::string>());
        ne.c.push_back(big_from_json(e.at("c")));
        ne.monomials.push_back(monomial_from_json(e.at("monomial")));
      }
      const auto& rows = n.at("coefficients");
      ne.coefficients = IntegerMatrix(rows.size(), ne.toward.size());
      for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != ne.toward.size()) throw SpliceError(ErrorCode::parse, "coefficient row has the wrong length");
        for (std::size_t c = 0; c < rows[i].size(); ++c) ne.coefficients(i, c) = big_from_json(rows[i][c]);
      }
      for (const auto& terms : n.at("higher_terms")) {
        std::vector<HigherTerm> list;
        for (const auto& h : terms) list.push_back({big_from_json(h.at("coefficient")), monomial_from_json(h.at("monomial"))});
        ne.higher.push_back(std::move(list));
      }
      s.nodes.push_back(std::move(ne));
    }
    return s;
  } catch (const nlohmann::json::exception& e) {
    throw SpliceError(ErrorCode::parse, std::string("equation JSON: ") + e.what());
  }
}

}  // namespace splicekit
