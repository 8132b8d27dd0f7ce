#pragma once

#include <cstddef>
#include <map>
#include <numeric>
#include <ostream>
#include <string>
#include <vector>

#include "count.hpp"
#include "error.hpp"

namespace cminor {

/// Unreduced omega-permanent: counts[k] is the weight of permutations whose
/// decrement is congruent to k modulo m. No relation 1 + w + ... + w^{m-1} = 0
/// is ever applied, so every coefficient stays an individual count.
struct ClassVector {
  std::size_t modulus = 1;
  std::vector<Count> counts;

  static ClassVector zero(std::size_t m) {
    if (m == 0) throw precondition_error("modulus must be at least 1");
    return ClassVector{m, std::vector<Count>(m, 0)};
  }

  Count total() const { return std::accumulate(counts.begin(), counts.end(), Count(0)); }

  /// this += weight * w^shift * other
  void add_shifted(const ClassVector& other, const Count& weight, std::size_t shift) {
    for (std::size_t k = 0; k < modulus; ++k)
      counts[(k + shift) % modulus] += weight * other.counts[k];
  }

  friend bool operator==(const ClassVector&, const ClassVector&) = default;
};

/// counts[k-1] = S(A; n, k), the weight of permutations with exactly k cycles.
struct StirlingVector {
  std::vector<Count> counts;

  static StirlingVector zero(std::size_t n) { return StirlingVector{std::vector<Count>(n, 0)}; }

  std::size_t order() const noexcept { return counts.size(); }
  /// 1-based: cycles(k) for k in 1..n.
  const Count& cycles(std::size_t k) const { return counts.at(k - 1); }
  Count total() const { return std::accumulate(counts.begin(), counts.end(), Count(0)); }

  friend bool operator==(const StirlingVector&, const StirlingVector&) = default;
};

/// Exponent vector (k_1..k_n): k_i cycles of length i.
using CycleType = std::vector<std::size_t>;

inline std::size_t weighted_size(const CycleType& k) {
  std::size_t s = 0;
  for (std::size_t i = 0; i < k.size(); ++i) s += (i + 1) * k[i];
  return s;
}

/// Sparse polynomial sum of nu(k) t_1^{k_1} ... t_n^{k_n}. Terms are kept in
/// lexicographic order of the exponent vector and zero coefficients are
/// never stored.
class CycleIndicator {
 public:
  CycleIndicator() = default;
  explicit CycleIndicator(std::size_t order) : order_(order) {}

  std::size_t order() const noexcept { return order_; }
  const std::map<CycleType, Count>& terms() const noexcept { return terms_; }
  bool empty() const noexcept { return terms_.empty(); }

  void add(const CycleType& exponents, const Count& coefficient) {
    if (exponents.size() != order_ || weighted_size(exponents) != order_)
      throw Error(ErrorCategory::invariant_violation,
                  "cycle type does not describe a permutation of order " + std::to_string(order_));
    if (coefficient == 0) return;
    terms_[exponents] += coefficient;
  }

  void add(const CycleIndicator& other, const Count& weight = 1) {
    if (weight == 0) return;
    for (const auto& [k, c] : other.terms_) add(k, weight * c);
  }

  Count coefficient(const CycleType& exponents) const {
    auto it = terms_.find(exponents);
    return it == terms_.end() ? Count(0) : it->second;
  }

  friend bool operator==(const CycleIndicator&, const CycleIndicator&) = default;

 private:
  std::size_t order_ = 0;
  std::map<CycleType, Count> terms_;
};

/// Human-readable form such as "2*t3 + 3*t1*t2 + t1^3", terms in
/// lexicographic exponent order; "0" for the empty polynomial.
inline std::string to_string(const CycleIndicator& c) {
  if (c.empty()) return "0";
  std::string out;
  for (const auto& [k, coef] : c.terms()) {
    if (!out.empty()) out += " + ";
    std::string mono;
    for (std::size_t i = 0; i < k.size(); ++i) {
      if (k[i] == 0) continue;
      if (!mono.empty()) mono += '*';
      mono += "t" + std::to_string(i + 1);
      if (k[i] > 1) mono += "^" + std::to_string(k[i]);
    }
    if (mono.empty()) mono = "1";
    out += coef == 1 ? mono : to_decimal(coef) + "*" + mono;
  }
  return out;
}

inline std::ostream& operator<<(std::ostream& os, const CycleIndicator& c) { return os << to_string(c); }

}  // namespace cminor
