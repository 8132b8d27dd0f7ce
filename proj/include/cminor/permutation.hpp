#pragma once

#include <cstddef>
#include <ostream>
#include <string>
#include <vector>

#include "error.hpp"

namespace cminor {

/// Permutation of {1..n} in one-line notation: image(i) = s(i).
class Permutation {
 public:
  explicit Permutation(std::vector<std::size_t> images) : images_(std::move(images)) {
    std::vector<bool> seen(images_.size(), false);
    for (auto v : images_) {
      if (v < 1 || v > images_.size() || seen[v - 1])
        throw precondition_error("not a permutation of 1.." + std::to_string(images_.size()));
      seen[v - 1] = true;
    }
  }

  static Permutation identity(std::size_t n) {
    std::vector<std::size_t> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = i + 1;
    return Permutation(std::move(v));
  }

  std::size_t size() const noexcept { return images_.size(); }
  std::size_t operator()(std::size_t i) const { return images_.at(i - 1); }
  const std::vector<std::size_t>& images() const noexcept { return images_; }

  friend bool operator==(const Permutation&, const Permutation&) = default;
  friend auto operator<=>(const Permutation&, const Permutation&) = default;

 private:
  std::vector<std::size_t> images_;
};

inline std::ostream& operator<<(std::ostream& os, const Permutation& p) {
  os << '(';
  for (std::size_t i = 1; i <= p.size(); ++i) os << (i == 1 ? "" : ",") << p(i);
  return os << ')';
}

struct CycleStats {
  std::size_t gamma = 0;      // number of cycles, fixed points included
  std::size_t decrement = 0;  // n - gamma
  /// structure[i-1] = k_i, the number of cycles of length i.
  std::vector<std::size_t> structure;
};

inline CycleStats cycle_stats(const Permutation& p) {
  const auto n = p.size();
  CycleStats stats;
  stats.structure.assign(n, 0);
  std::vector<bool> seen(n, false);
  for (std::size_t start = 1; start <= n; ++start) {
    if (seen[start - 1]) continue;
    std::size_t length = 0;
    for (auto x = start; !seen[x - 1]; x = p(x)) {
      seen[x - 1] = true;
      ++length;
    }
    ++stats.structure[length - 1];
    ++stats.gamma;
  }
  stats.decrement = n - stats.gamma;
  return stats;
}

/// The contraction p -> p* of size n-1 for a permutation with p(j) = 1, j >= 2.
///
/// First shifts p(2..j-1) one place left and moves p(1) to position j-1,
/// then deletes position j and decrements every value. The result has the
/// same number of cycles as p; the cycle through j loses one element.
inline Permutation lemma1_map(const Permutation& p, std::size_t j) {
  const auto n = p.size();
  if (n < 2) throw precondition_error("contraction needs n >= 2");
  if (j < 2 || j > n) throw precondition_error("contraction position must satisfy 2 <= j <= n");
  if (p(j) != 1) throw precondition_error("contraction requires p(j) = 1");

  std::vector<std::size_t> sigma(n);
  for (std::size_t i = 1; i + 1 < j; ++i) sigma[i - 1] = p(i + 1);
  sigma[j - 2] = p(1);
  for (std::size_t i = j; i <= n; ++i) sigma[i - 1] = p(i);

  std::vector<std::size_t> star(n - 1);
  for (std::size_t i = 1; i <= n - 1; ++i) star[i - 1] = (i <= j - 1 ? sigma[i - 1] : sigma[i]) - 1;
  return Permutation(std::move(star));
}

}  // namespace cminor
