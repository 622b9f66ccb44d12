#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "splicekit/discriminant.hpp"
#include "splicekit/monomial.hpp"
#include "splicekit/splice.hpp"

namespace splicekit {

inline constexpr std::size_t kDefaultSolutionLimit = 100'000;

struct AdmissibleExponents {
  std::size_t node = 0;  // diagram indices
  std::size_t edge = 0;
  Monomial alpha;
};

struct AdmissibleSearch {
  std::vector<AdmissibleExponents> solutions;
  bool limit_exceeded = false;
};

// All solutions of sum alpha_w l'_vw = d_ve over leaves w beyond e, x_1 largest first.
AdmissibleSearch admissible_exponents(const SpliceDiagram& d, std::size_t v, std::size_t e,
                                      std::size_t limit = kDefaultSolutionLimit);

// Both weighted sums (l' against d_ve and l against d_v).
bool satisfies_admissibility(const SpliceDiagram& d, const AdmissibleExponents& a);

struct SemigroupEntry {
  std::size_t node = 0, edge = 0;
  bool holds = false;
  bool limit_exceeded = false;
  std::optional<AdmissibleExponents> witness;
};

struct SemigroupReport {
  std::vector<SemigroupEntry> entries;
  bool holds = true;
};

SemigroupReport check_semigroup(const SpliceDiagram& d);

enum class CongruenceStatus { pass, fail, semigroup_fails, limit_exceeded };
std::string_view to_string(CongruenceStatus s);

// alpha_leaf must be congruent to residue modulo modulus
struct ResidueRequirement {
  std::string leaf;
  BigInt residue;
  BigInt modulus;
};

struct RejectedCandidate {
  Monomial exponents;
  std::string leaf;  // first leaf whose congruence fails
  Rational lhs, rhs;
};

struct CongruenceEntry {
  std::size_t node = 0, edge = 0;
  CongruenceStatus status = CongruenceStatus::fail;
  std::optional<AdmissibleExponents> witness;
  std::size_t candidates = 0;
  std::vector<RejectedCandidate> rejected;           // first few only
  std::vector<ResidueRequirement> end_node_residues;  // when e leads straight to an end-node
};

struct CongruenceOptions {
  std::size_t limit = kDefaultSolutionLimit;
  // Oracle: also require equal characters under every group element (det <= group_cap).
  bool strong = false;
  std::size_t group_cap = kDefaultGroupCap;
};

struct CongruenceReport {
  std::vector<CongruenceEntry> entries;
  bool holds = true;
  bool strong_checked = false;
  bool strong_holds = true;
};

CongruenceReport check_congruence(const ResolutionGraph& g, const CongruenceOptions& opts = {});

struct EndNodeCriterion {
  std::string node, end_node;
  BigInt value;
  bool holds = false;
  BigInt b;
  ContinuedFraction central;  // from v* toward v
  std::vector<std::pair<std::string, ContinuedFraction>> leaf_strings;  // from v*
  std::vector<ResidueRequirement> residues;
};

EndNodeCriterion end_node_criterion(const ResolutionGraph& g, std::string_view node, std::string_view end_node);

struct TwoNodeCriterion {
  EndNodeCriterion first;   // v* = first node in input order
  EndNodeCriterion second;  // v* = second node
  bool holds() const { return first.holds && second.holds; }
};

TwoNodeCriterion two_node_criterion(const ResolutionGraph& g);

// s = N n (b - sum p_i/n_i - p/n) and r s - M N = det n for end-node v*.
struct EndNodeRelations {
  BigInt s_formula, s_diagram;
  BigInt r, M, N, n;
  BigInt lhs, rhs;  // r s - M N and det n
  bool holds() const { return s_formula == s_diagram && lhs == rhs; }
};

EndNodeRelations end_node_relations(const ResolutionGraph& g, std::string_view end_node);

}  // namespace splicekit
