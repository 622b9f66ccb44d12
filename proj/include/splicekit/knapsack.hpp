#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

#include "splicekit/numeric.hpp"

namespace splicekit {

struct KnapsackStats {
  std::size_t solutions = 0;
  bool limit_exceeded = false;  // more than `limit` solutions, or search budget hit
  bool stopped = false;         // callback asked to stop
};

// Enumerates non-negative x with sum x_i g_i = target (all g_i > 0) in
// descending lexicographic order: x_1 as large as possible first.
// The callback returns false to stop. At most `limit` solutions are visited.
KnapsackStats for_each_representation(const std::vector<BigInt>& gens, const BigInt& target, std::size_t limit,
                                      const std::function<bool(const std::vector<BigInt>&)>& visit);

std::vector<std::vector<BigInt>> all_representations(const std::vector<BigInt>& gens, const BigInt& target,
                                                     std::size_t limit, bool* limit_exceeded = nullptr);

// nullopt when the search budget ran out before deciding
std::optional<bool> representable(const std::vector<BigInt>& gens, const BigInt& target);

}  // namespace splicekit
