#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "splicekit/conditions.hpp"
#include "splicekit/graph.hpp"
#include "splicekit/monomial.hpp"

namespace splicekit {

// Rational combination of the E_j, indexed like the graph's vertices.
struct QCycle {
  std::vector<Rational> coef;

  QCycle() = default;
  explicit QCycle(std::size_t n) : coef(n, Rational(0)) {}

  bool integral() const;
  bool effective() const;  // all coefficients >= 0
  bool supported_on(const std::vector<std::size_t>& subset) const;
  QCycle& operator+=(const QCycle& o);
  QCycle& operator-=(const QCycle& o);
  friend QCycle operator*(const Rational& s, QCycle z);
  friend bool operator==(const QCycle&, const QCycle&) = default;
};

// Z . E_j
Rational intersect(const ResolutionGraph& g, const QCycle& z, std::size_t j);

// Ebar_i . E_j = -delta_ij
QCycle dual_cycle(const ResolutionGraph& g, std::size_t i);

// Laufer computation sequence on the connected subset S.
QCycle fundamental_cycle(const ResolutionGraph& g, const std::vector<std::size_t>& subset);

struct BranchFundamentalCycle {
  std::string vertex;
  std::string root;  // neighbour of `vertex` inside the branch
  QCycle z;
  Rational z_dot_e;  // Z_C . E_i
  bool holds = false;
};

struct Condition34Report {
  std::vector<BranchFundamentalCycle> entries;
  bool holds = true;
  std::optional<BranchFundamentalCycle> offending;  // first failure
};

Condition34Report check_condition_3_4(const ResolutionGraph& g);

struct CycleStep {
  std::string vertex;  // j with D.E_j = alpha < 0
  std::string root;    // root of the branch C_2 of j that was added
  Rational alpha;
};

struct MonomialCycle {
  std::string vertex, root;
  bool ok = false;
  std::string failure;  // post-check that failed
  QCycle d;
  Monomial alpha;  // leaf exponents, alpha_k = -D.E_k
  std::vector<CycleStep> trace;
};

// Branch C of E_i given by its root (the neighbour of i in C).
MonomialCycle construct_monomial_cycle(const ResolutionGraph& g, std::string_view vertex, std::string_view root);

enum class Condition33Route { constructive, search, none };

struct Condition33Entry {
  std::string node, root;
  bool holds = false;
  bool undecided = false;  // search budget ran out
  Condition33Route route = Condition33Route::none;
  Monomial alpha;
  std::vector<CycleStep> trace;
  std::string construction_failure;
};

struct Condition33Report {
  std::vector<Condition33Entry> entries;
  bool holds = true;
  bool decided = true;
};

// D - Ebar_i is effective, integral and supported on C, with D = sum alpha_k Ebar_k over leaves in C.
bool is_monomial_cycle_witness(const ResolutionGraph& g, std::size_t i, std::size_t root, const Monomial& alpha);

Condition33Report check_condition_3_3(const ResolutionGraph& g, std::size_t limit = kDefaultSolutionLimit);

}  // namespace splicekit
