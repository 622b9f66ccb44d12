#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "splicekit/graph.hpp"
#include "splicekit/monomial.hpp"

namespace splicekit {

// Rationals reduced mod 1 into [0,1), one per leaf.
using QTuple = std::vector<Rational>;

QTuple reduce_mod_one(const std::vector<Rational>& values);
BigInt element_order(const QTuple& e);

struct DiscriminantGroup {
  std::vector<std::string> leaves;         // input order
  std::vector<std::size_t> leaf_vertices;  // graph indices of the leaves
  std::vector<QTuple> generators;          // generator j = (e_{w_j}.e_{w_i})_i mod 1
  BigInt order;                            // det(Gamma)
};

// A(Gamma)^{-1}, entries e_v.e_w
RationalMatrix pairing_matrix(const ResolutionGraph& g);
DiscriminantGroup leaf_generators(const ResolutionGraph& g);

// Subgroup of (Q/Z)^t generated by `gens`, sorted lexicographically.
// Throws cap_exceeded once more than `cap` elements turn up.
std::vector<QTuple> enumerate_group(const std::vector<QTuple>& gens, std::size_t tuple_size, std::size_t cap);

inline constexpr std::size_t kDefaultGroupCap = 1'000'000;

struct GroupCheck {
  BigInt det;
  std::size_t enumerated = 0;
  bool order_matches = false;
  bool applicable = true;          // t >= 2; otherwise the next two are vacuous
  std::vector<bool> drop_one;      // generated without leaf j
  bool t_minus_one_generate = true;
  bool no_pseudo_reflections = true;
  std::optional<QTuple> pseudo_reflection;
  bool holds() const { return order_matches && t_minus_one_generate && no_pseudo_reflections; }
};

GroupCheck group_order_check(const ResolutionGraph& g, std::size_t cap = kDefaultGroupCap);

// -sum_w (e.e_w) alpha_w mod 1; e is indexed like group.leaves.
Rational character_of_monomial(const DiscriminantGroup& group, const Monomial& m, const QTuple& e);

// [sum_{w != w'} alpha_w l_ww'/det - alpha_w' e_w'.e_w'] from linking numbers.
Rational character_closed_form(const ResolutionGraph& g, const Monomial& m, const std::string& leaf);

}  // namespace splicekit
