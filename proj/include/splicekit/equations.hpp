#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "splicekit/conditions.hpp"
#include "splicekit/matrix.hpp"
#include "splicekit/monomial.hpp"
#include "splicekit/splice.hpp"

namespace splicekit {

// Sum of alpha_w l_vw over the leaves w.
BigInt v_weight(const WeightedTree& d, std::size_t v, const Monomial& m);

struct HigherTerm {
  BigInt coefficient;
  Monomial monomial;
  friend bool operator==(const HigherTerm&, const HigherTerm&) = default;
};

struct NodeEquations {
  std::string node;
  BigInt d_v;
  std::vector<std::string> toward;  // neighbour id across each incident edge, in diagram order
  std::vector<Monomial> monomials;  // M_ve, one per edge
  std::vector<BigInt> c;            // row i of the coefficient matrix is c_e^(i-1)
  IntegerMatrix coefficients;       // (delta - 2) x delta
  std::vector<std::vector<HigherTerm>> higher;  // per equation, may be empty
  friend bool operator==(const NodeEquations&, const NodeEquations&) = default;
};

struct SpliceEquationSystem {
  std::vector<std::string> leaves;  // variable order
  bool equivariant = false;
  std::vector<NodeEquations> nodes;
  std::size_t equation_count() const;
  friend bool operator==(const SpliceEquationSystem&, const SpliceEquationSystem&) = default;
};

struct HigherTermSpec {
  std::string node;
  std::size_t equation = 0;  // 0-based row at that node
  HigherTerm term;
};

struct EquationOptions {
  bool equivariant = false;
  std::vector<HigherTermSpec> higher_terms;
  std::size_t limit = kDefaultSolutionLimit;
};

SpliceEquationSystem build_equations(const ResolutionGraph& g, const EquationOptions& opts = {});
// No discriminant group here, so equivariant mode is rejected.
SpliceEquationSystem build_equations(const SpliceDiagram& d, const EquationOptions& opts = {});

// Every maximal minor nonzero.
bool maximal_minors_nonzero(const IntegerMatrix& m);

struct NormalizedNode {
  std::string node;
  RationalMatrix form;  // [I | a | b]
};

RationalMatrix normalize_rows(const IntegerMatrix& m);
std::vector<NormalizedNode> normalize_coefficients(const SpliceEquationSystem& s);

struct LeadingFormEntry {
  std::string other_node;
  BigInt expected;                  // l_{v v'}
  std::vector<BigInt> weights;      // v-weight of each M_{v'e}
  std::optional<std::size_t> toward;  // index of the edge at v' pointing to v
  bool holds = false;
};

struct LeadingFormReport {
  std::string node;
  std::vector<LeadingFormEntry> entries;
  bool holds = true;
};

LeadingFormReport leading_form_check(const SpliceDiagram& d, std::size_t v, const SpliceEquationSystem& s);

BigInt curve_component_count(const WeightedTree& d, std::size_t leaf);

std::string render_equations_text(const SpliceEquationSystem& s);
nlohmann::ordered_json equations_to_json(const SpliceEquationSystem& s);
SpliceEquationSystem equations_from_json(const nlohmann::ordered_json& j);

}  // namespace splicekit
