#include "splicekit/knapsack.hpp"

#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <stdexcept>

namespace splicekit {

namespace {

constexpr std::int64_t kTableModulusCap = 1'000'000;
constexpr std::size_t kNodeBudget = 5'000'000;
constexpr std::int64_t kInf = std::numeric_limits<std::int64_t>::max();

// Is rem = a g1 + b g2 with a, b >= 0?
bool two_generator_member(const BigInt& g1, const BigInt& g2, const BigInt& rem) {
  const BigInt d = gcd(g1, g2);
  if (!divides(d, rem)) return false;
  const BigInt a1 = g1 / d, a2 = g2 / d, r = rem / d;
  if (a2 == 1) return true;
  const BigInt a0 = mod_floor(r * *mod_inverse(mod_floor(a1, a2), a2), a2);
  return a0 * a1 <= r;
}

// Smallest element of <gens> in each residue class modulo the smallest
// generator (round-robin algorithm). Exact membership test.
class ResidueTable {
 public:
  static std::optional<ResidueTable> build(const std::vector<BigInt>& gens) {
    BigInt lo = gens.front(), hi = gens.front();
    for (const auto& g : gens) {
      lo = std::min(lo, g);
      hi = std::max(hi, g);
    }
    if (lo > kTableModulusCap || hi * lo > BigInt("2000000000000000000")) return std::nullopt;
    ResidueTable t;
    t.modulus_ = lo.get_si();
    t.dist_.assign(static_cast<std::size_t>(t.modulus_), kInf);
    t.dist_[0] = 0;
    for (const auto& g : gens) t.add(g.get_si());
    return t;
  }

  bool member(const BigInt& value) const {
    const BigInt r = mod_floor(value, BigInt(static_cast<long>(modulus_)));
    const std::int64_t m = dist_[r.get_si()];
    return m != kInf && BigInt(static_cast<long>(m)) <= value;
  }

 private:
  void add(std::int64_t g) {
    const std::int64_t a = modulus_;
    if (g % a == 0) return;
    const std::int64_t d = std::gcd(a, g);
    for (std::int64_t p = 0; p < d; ++p) {
      std::int64_t best = kInf;
      for (std::int64_t r = p; r < a; r += d) best = std::min(best, dist_[r]);
      if (best == kInf) continue;
      for (std::int64_t i = 0; i < a / d; ++i) {
        best += g;
        const std::int64_t r = best % a;
        best = std::min(best, dist_[r]);
        dist_[r] = best;
      }
    }
  }

  std::int64_t modulus_ = 0;
  std::vector<std::int64_t> dist_;
};

// Membership oracle for each suffix gens[i..]; exact where possible.
class SuffixOracle {
 public:
  explicit SuffixOracle(const std::vector<BigInt>& gens) : gens_(gens), tables_(gens.size()), built_(gens.size(), 0) {
    suffix_gcd_.assign(gens.size() + 1, 0);
    for (std::size_t i = gens.size(); i-- > 0;) suffix_gcd_[i] = gcd(suffix_gcd_[i + 1], gens[i]);
  }

  // false means "certainly not representable"
  bool feasible(std::size_t i, const BigInt& rem) {
    const std::size_t k = gens_.size();
    if (rem < 0) return false;
    if (i == k) return rem == 0;
    if (!divides(suffix_gcd_[i], rem)) return false;
    if (i + 1 == k) return true;  // divisibility suffices
    if (i + 2 == k) return two_generator_member(gens_[i], gens_[i + 1], rem);
    if (!built_[i]) {
      built_[i] = 1;
      tables_[i] = ResidueTable::build(std::vector<BigInt>(gens_.begin() + static_cast<std::ptrdiff_t>(i), gens_.end()));
    }
    return !tables_[i] || tables_[i]->member(rem);
  }

  bool exact(std::size_t i) const { return i + 2 >= gens_.size() || (built_[i] && tables_[i].has_value()); }

 private:
  const std::vector<BigInt>& gens_;
  std::vector<BigInt> suffix_gcd_;
  std::vector<std::optional<ResidueTable>> tables_;
  std::vector<char> built_;
};

}  // namespace

KnapsackStats for_each_representation(const std::vector<BigInt>& gens, const BigInt& target, std::size_t limit,
                                      const std::function<bool(const std::vector<BigInt>&)>& visit) {
  for (const auto& g : gens)
    if (g <= 0) throw std::invalid_argument("knapsack generators must be positive");
  KnapsackStats stats;
  if (target < 0) return stats;
  const std::size_t k = gens.size();
  SuffixOracle oracle(gens);
  if (!oracle.feasible(0, target)) return stats;
  if (k == 0) {  // target == 0 here
    if (limit == 0) {
      stats.limit_exceeded = true;
    } else {
      stats.solutions = 1;
      stats.stopped = !visit({});
    }
    return stats;
  }

  std::vector<BigInt> x(k, 0);
  std::size_t budget = kNodeBudget;
  bool halt = false;
  std::function<void(std::size_t, const BigInt&)> rec = [&](std::size_t i, const BigInt& rem) {
    if (i + 1 == k) {
      x[i] = rem / gens[i];
      if (stats.solutions == limit) {
        stats.limit_exceeded = true;
        halt = true;
        return;
      }
      ++stats.solutions;
      if (!visit(x)) {
        stats.stopped = true;
        halt = true;
      }
      return;
    }
    for (BigInt a = rem / gens[i]; a >= 0 && !halt; --a) {
      if (budget-- == 0) {
        stats.limit_exceeded = true;
        halt = true;
        return;
      }
      const BigInt next = rem - a * gens[i];
      if (!oracle.feasible(i + 1, next)) continue;
      x[i] = a;
      rec(i + 1, next);
    }
    x[i] = 0;
  };
  rec(0, target);
  return stats;
}

std::vector<std::vector<BigInt>> all_representations(const std::vector<BigInt>& gens, const BigInt& target,
                                                     std::size_t limit, bool* limit_exceeded) {
  std::vector<std::vector<BigInt>> out;
  auto stats = for_each_representation(gens, target, limit, [&](const std::vector<BigInt>& x) {
    out.push_back(x);
    return true;
  });
  if (limit_exceeded) *limit_exceeded = stats.limit_exceeded;
  return out;
}

std::optional<bool> representable(const std::vector<BigInt>& gens, const BigInt& target) {
  bool found = false;
  const auto stats = for_each_representation(gens, target, 1, [&](const std::vector<BigInt>&) {
    found = true;
    return false;
  });
  if (found) return true;
  if (stats.limit_exceeded) return std::nullopt;
  return false;
}

}  // namespace splicekit
