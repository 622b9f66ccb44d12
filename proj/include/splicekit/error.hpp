#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace splicekit {

enum class ErrorCode {
  validation,
  parse,
  not_negative_definite,
  unknown_vertex,
  unknown_edge,
  same_vertex,
  leaf_edge_in_reduced_diagram,
  non_reduced_fraction,
  not_end_node,
  not_end_node_edge,
  not_two_node,
  non_integral_weight,
  cap_exceeded,
  limit_exceeded,
  semigroup_fails,
  congruence_fails,
  invalid_higher_term,
  degenerate_matrix,
  iteration_cap_exceeded,
  not_a_branch,
  io,
};

std::string_view to_string(ErrorCode code);

class SpliceError : public std::runtime_error {
 public:
  SpliceError(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace splicekit
