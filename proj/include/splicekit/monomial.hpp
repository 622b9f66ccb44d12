#pragma once

#include <map>
#include <string>

#include "splicekit/numeric.hpp"

namespace splicekit {

// Exponents on leaf variables z_<leaf id>. Zero exponents are not stored.
struct Monomial {
  std::map<std::string, BigInt> exponents;

  BigInt exponent(const std::string& leaf) const {
    auto it = exponents.find(leaf);
    return it == exponents.end() ? BigInt(0) : it->second;
  }
  void set(const std::string& leaf, const BigInt& e) {
    if (e == 0)
      exponents.erase(leaf);
    else
      exponents[leaf] = e;
  }
  bool empty() const { return exponents.empty(); }
  friend bool operator==(const Monomial&, const Monomial&) = default;
};

}  // namespace splicekit
