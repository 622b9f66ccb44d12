#include "splicekit/conditions.hpp"

#include <algorithm>
#include <stdexcept>

#include "splicekit/error.hpp"
#include "splicekit/knapsack.hpp"

namespace splicekit {

namespace {

constexpr std::size_t kStoredRejections = 16;

// Leaf string seen from the node: interior vertices then the far end.
std::vector<std::string> string_from(const SpliceDiagram& d, std::size_t v, std::size_t e, bool include_far_end) {
  const SpliceEdge& ed = d.edge(e);
  std::vector<std::string> s = ed.string.value_or(std::vector<std::string>{});
  if (ed.b == v) std::reverse(s.begin(), s.end());
  if (include_far_end) s.push_back(d.id(d.other_end(e, v)));
  return s;
}

ContinuedFraction cf_of_ids(const ResolutionGraph& g, const std::vector<std::string>& ids) {
  std::vector<std::int64_t> ws;
  for (const auto& id : ids) ws.push_back(g.weight(g.index_of(id)));
  return continued_fraction_of_string(ws);
}

struct EndNodeData {
  std::size_t v = 0, v_star = 0, central = 0;
  BigInt b;
  ContinuedFraction central_cf;
  std::vector<std::pair<std::string, ContinuedFraction>> leaves;
};

EndNodeData end_node_data(const ResolutionGraph& g, const SpliceDiagram& d, std::size_t v_star) {
  EndNodeData out;
  out.v_star = v_star;
  bool found = false;
  for (std::size_t e : d.incident(v_star)) {
    const std::size_t far = d.other_end(e, v_star);
    if (d.is_leaf(far)) {
      out.leaves.emplace_back(d.id(far), cf_of_ids(g, string_from(d, v_star, e, true)));
    } else {
      out.central = e;
      out.v = far;
      found = true;
    }
  }
  if (!found || !is_end_node(d, v_star))
    throw SpliceError(ErrorCode::not_end_node, "'" + d.id(v_star) + "' is not an end-node of a multi-node diagram");
  out.b = -g.weight(g.index_of(d.id(v_star)));
  out.central_cf = cf_of_ids(g, string_from(d, v_star, out.central, false));
  return out;
}

std::vector<ResidueRequirement> end_node_residues(const EndNodeData& data) {
  std::vector<ResidueRequirement> out;
  for (const auto& [leaf, cf] : data.leaves)
    out.push_back({leaf, mod_floor(-data.central_cf.n * cf.p, cf.n), cf.n});
  return out;
}

Monomial to_monomial(const SpliceDiagram& d, const std::vector<std::size_t>& leaves, const std::vector<BigInt>& x) {
  Monomial m;
  for (std::size_t i = 0; i < leaves.size(); ++i) m.set(d.id(leaves[i]), x[i]);
  return m;
}

}  // namespace

std::string_view to_string(CongruenceStatus s) {
  switch (s) {
    case CongruenceStatus::pass: return "pass";
    case CongruenceStatus::fail: return "fail";
    case CongruenceStatus::semigroup_fails: return "semigroup-fails";
    case CongruenceStatus::limit_exceeded: return "limit-exceeded";
  }
  return "?";
}

AdmissibleSearch admissible_exponents(const SpliceDiagram& d, std::size_t v, std::size_t e, std::size_t limit) {
  const std::vector<std::size_t> leaves = d.side_leaves(v, e);
  std::vector<BigInt> gens;
  for (std::size_t w : leaves) gens.push_back(linking_numbers(d, v, w).reduced);
  AdmissibleSearch out;
  const auto stats = for_each_representation(gens, d.weight(v, e), limit, [&](const std::vector<BigInt>& x) {
    AdmissibleExponents a{v, e, to_monomial(d, leaves, x)};
    if (!satisfies_admissibility(d, a)) throw std::logic_error("admissible exponents violate the v-weight identity");
    out.solutions.push_back(std::move(a));
    return true;
  });
  out.limit_exceeded = stats.limit_exceeded;
  return out;
}

bool satisfies_admissibility(const SpliceDiagram& d, const AdmissibleExponents& a) {
  BigInt reduced = 0, full = 0;
  for (const auto& [leaf, alpha] : a.alpha.exponents) {
    const auto ln = linking_numbers(d, a.node, d.index_of(leaf));
    reduced += alpha * ln.reduced;
    full += alpha * ln.full;
  }
  return reduced == d.weight(a.node, a.edge) && full == d.weight_product(a.node);
}

SemigroupReport check_semigroup(const SpliceDiagram& d) {
  SemigroupReport r;
  for (std::size_t v : d.nodes())
    for (std::size_t e : d.incident(v)) {
      SemigroupEntry entry{v, e};
      const std::vector<std::size_t> leaves = d.side_leaves(v, e);
      std::vector<BigInt> gens;
      for (std::size_t w : leaves) gens.push_back(linking_numbers(d, v, w).reduced);
      const auto stats = for_each_representation(gens, d.weight(v, e), 1, [&](const std::vector<BigInt>& x) {
        entry.witness = AdmissibleExponents{v, e, to_monomial(d, leaves, x)};
        return false;
      });
      entry.holds = entry.witness.has_value();
      // budget ran out before anything was found: undecided
      entry.limit_exceeded = stats.limit_exceeded && !entry.holds;
      r.holds = r.holds && entry.holds;
      r.entries.push_back(std::move(entry));
    }
  return r;
}

CongruenceReport check_congruence(const ResolutionGraph& g, const CongruenceOptions& opts) {
  CongruenceReport report;
  const SpliceDiagram d = splice_from_resolution(g);
  if (d.nodes().empty()) return report;
  const BigInt det = det_gamma(g);
  const RationalMatrix pairing = pairing_matrix(g);
  const IntegerMatrix adj = linking_matrix_from_inverse(g);

  for (std::size_t v : d.nodes())
    for (std::size_t e : d.incident(v)) {
      CongruenceEntry entry{v, e};
      const std::vector<std::size_t> leaves = d.side_leaves(v, e);
      std::vector<std::size_t> gv;  // graph indices
      for (std::size_t w : leaves) gv.push_back(g.index_of(d.id(w)));
      std::vector<BigInt> gens;
      for (std::size_t w : leaves) gens.push_back(linking_numbers(d, v, w).reduced);

      // coefficient of alpha_w in the congruence for leaf w', both routes
      const std::size_t k = leaves.size();
      std::vector<std::vector<Rational>> coef_q(k, std::vector<Rational>(k));
      std::vector<std::vector<BigInt>> coef_m(k, std::vector<BigInt>(k));
      std::vector<Rational> rhs_q(k);
      std::vector<BigInt> rhs_m(k);
      for (std::size_t j = 0; j < k; ++j) {
        const BigInt lv = linking_numbers(d, v, leaves[j]).full;
        rhs_q[j] = frac_part(make_rational(lv, det));
        rhs_m[j] = mod_floor(lv, det);
        for (std::size_t i = 0; i < k; ++i) {
          coef_q[j][i] = i == j ? Rational(-pairing(gv[j], gv[j]))
                                : make_rational(linking_numbers(d, leaves[i], leaves[j]).full, det);
          coef_m[j][i] = adj(gv[i], gv[j]);
        }
      }

      const auto stats = for_each_representation(gens, d.weight(v, e), opts.limit, [&](const std::vector<BigInt>& x) {
        ++entry.candidates;
        for (std::size_t j = 0; j < k; ++j) {
          Rational lq = 0;
          BigInt lm = 0;
          for (std::size_t i = 0; i < k; ++i) {
            if (x[i] == 0) continue;
            lq += coef_q[j][i] * x[i];
            lm += coef_m[j][i] * x[i];
          }
          lq = frac_part(lq);
          const bool ok_q = lq == rhs_q[j];
          const bool ok_m = mod_floor(lm, det) == rhs_m[j];
          if (ok_q != ok_m) throw std::logic_error("congruence routes disagree");
          if (!ok_q) {
            if (entry.rejected.size() < kStoredRejections)
              entry.rejected.push_back({to_monomial(d, leaves, x), d.id(leaves[j]), lq, rhs_q[j]});
            return true;
          }
        }
        entry.witness = AdmissibleExponents{v, e, to_monomial(d, leaves, x)};
        return false;
      });

      if (entry.witness)
        entry.status = CongruenceStatus::pass;
      else if (stats.limit_exceeded)
        entry.status = CongruenceStatus::limit_exceeded;
      else if (entry.candidates == 0)
        entry.status = CongruenceStatus::semigroup_fails;
      else
        entry.status = CongruenceStatus::fail;

      const std::size_t far = d.other_end(e, v);
      if (entry.status != CongruenceStatus::pass && is_end_node(d, far) && d.nodes().size() >= 2)
        entry.end_node_residues = end_node_residues(end_node_data(g, d, far));

      report.holds = report.holds && entry.status == CongruenceStatus::pass;
      report.entries.push_back(std::move(entry));
    }

  if (opts.strong && report.holds && det <= BigInt(static_cast<unsigned long>(opts.group_cap))) {
    report.strong_checked = true;
    const DiscriminantGroup grp = leaf_generators(g);
    const auto elements = enumerate_group(grp.generators, grp.leaves.size(), opts.group_cap);
    for (std::size_t v : d.nodes()) {
      std::vector<const Monomial*> ms;
      for (const auto& entry : report.entries)
        if (entry.node == v) ms.push_back(&entry.witness->alpha);
      for (const auto& el : elements) {
        const Rational c0 = character_of_monomial(grp, *ms.front(), el);
        for (const Monomial* m : ms)
          if (character_of_monomial(grp, *m, el) != c0) report.strong_holds = false;
      }
    }
  }
  return report;
}

EndNodeCriterion end_node_criterion(const ResolutionGraph& g, std::string_view node, std::string_view end_node) {
  const SpliceDiagram d = splice_from_resolution(g);
  const auto v = d.find(node), vs = d.find(end_node);
  if (!v || !vs || !d.edge_between(*v, *vs) || !is_end_node(d, *vs) || !d.is_node(*v))
    throw SpliceError(ErrorCode::not_end_node_edge, "no edge from node '" + std::string(node) + "' to end-node '" +
                                                        std::string(end_node) + "'");
  const EndNodeData data = end_node_data(g, d, *vs);
  EndNodeCriterion c;
  c.node = std::string(node);
  c.end_node = std::string(end_node);
  c.b = data.b;
  c.central = data.central_cf;
  c.leaf_strings = data.leaves;
  c.residues = end_node_residues(data);
  const BigInt& n = data.central_cf.n;
  c.value = n * data.b - data.central_cf.p;
  for (const auto& [leaf, cf] : data.leaves) c.value -= ceil_div(n * cf.p, cf.n);
  c.holds = c.value >= 0;
  return c;
}

TwoNodeCriterion two_node_criterion(const ResolutionGraph& g) {
  const SpliceDiagram d = splice_from_resolution(g);
  const auto nodes = d.nodes();
  if (nodes.size() != 2)
    throw SpliceError(ErrorCode::not_two_node, "diagram has " + std::to_string(nodes.size()) + " nodes, not 2");
  return {end_node_criterion(g, d.id(nodes[1]), d.id(nodes[0])), end_node_criterion(g, d.id(nodes[0]), d.id(nodes[1]))};
}

EndNodeRelations end_node_relations(const ResolutionGraph& g, std::string_view end_node) {
  const SpliceDiagram d = splice_from_resolution(g);
  const std::size_t vs = d.index_of(end_node);
  const EndNodeData data = end_node_data(g, d, vs);
  EndNodeRelations r;
  r.n = data.central_cf.n;
  r.N = 1;
  for (const auto& [leaf, cf] : data.leaves) r.N *= cf.n;
  // N n (b - sum p_i/n_i - p/n), all terms integral after expanding
  r.s_formula = r.N * (r.n * data.b - data.central_cf.p);
  for (const auto& [leaf, cf] : data.leaves) r.s_formula -= (r.N / cf.n) * r.n * cf.p;
  r.s_diagram = d.weight(data.v, data.central);
  r.r = d.weight(vs, data.central);
  r.M = d.weight_product(data.v) / r.s_diagram;
  r.lhs = r.r * r.s_diagram - r.M * r.N;
  r.rhs = det_gamma(g) * r.n;
  return r;
}

}  // namespace splicekit
