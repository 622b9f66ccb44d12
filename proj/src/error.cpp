#include "splicekit/error.hpp"

namespace splicekit {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::validation: return "ValidationError";
    case ErrorCode::parse: return "ParseError";
    case ErrorCode::not_negative_definite: return "NotNegativeDefinite";
    case ErrorCode::unknown_vertex: return "UnknownVertex";
    case ErrorCode::unknown_edge: return "UnknownEdge";
    case ErrorCode::same_vertex: return "SameVertex";
    case ErrorCode::leaf_edge_in_reduced_diagram: return "LeafEdgeInReducedDiagram";
    case ErrorCode::non_reduced_fraction: return "NonReducedFraction";
    case ErrorCode::not_end_node: return "NotEndNode";
    case ErrorCode::not_end_node_edge: return "NotEndNodeEdge";
    case ErrorCode::not_two_node: return "NotTwoNode";
    case ErrorCode::non_integral_weight: return "NonIntegralWeight";
    case ErrorCode::cap_exceeded: return "CapExceeded";
    case ErrorCode::limit_exceeded: return "LimitExceeded";
    case ErrorCode::semigroup_fails: return "SemigroupFails";
    case ErrorCode::congruence_fails: return "CongruenceFails";
    case ErrorCode::invalid_higher_term: return "InvalidHigherTerm";
    case ErrorCode::degenerate_matrix: return "DegenerateMatrix";
    case ErrorCode::iteration_cap_exceeded: return "IterationCapExceeded";
    case ErrorCode::not_a_branch: return "NotABranch";
    case ErrorCode::io: return "IOError";
  }
  return "Unknown";
}

}  // namespace splicekit
