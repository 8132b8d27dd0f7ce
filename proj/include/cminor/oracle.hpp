#pragma once

#include <cstddef>
#include <vector>

#include "count.hpp"
#include "error.hpp"
#include "matrix.hpp"
#include "permutation.hpp"
#include "results.hpp"

namespace cminor {

/// Definitional ground truth: walks every permutation whose diagonal avoids
/// the zero entries of the matrix. Cost is factorial, so callers are capped.
inline constexpr std::size_t default_oracle_limit = 9;

/// Calls visit(permutation, weight) for every s with all a_{i,s(i)} > 0,
/// weight = prod a_{i,s(i)}. Branches where a row has no remaining positive
/// column are cut.
template <class Visitor>
void for_each_restricted(const SquareMatrix& a, Visitor&& visit) {
  const auto n = a.order();
  const auto e = a.row_major();
  std::vector<std::size_t> images(n, 0);
  std::vector<bool> used(n, false);
  std::vector<Count> partial(n + 1, 1);

  auto recurse = [&](auto& self, std::size_t row) -> void {
    if (row == n) {
      visit(Permutation(images), partial[n]);
      return;
    }
    for (std::size_t col = 0; col < n; ++col) {
      if (used[col] || e[row * n + col] == 0) continue;
      used[col] = true;
      images[row] = col + 1;
      partial[row + 1] = partial[row] * e[row * n + col];
      self(self, row + 1);
      used[col] = false;
    }
  };
  recurse(recurse, 0);
}

struct RestrictedPermutation {
  Permutation permutation;
  Count weight;
};

inline std::vector<RestrictedPermutation> enumerate_restricted(const SquareMatrix& a) {
  std::vector<RestrictedPermutation> out;
  for_each_restricted(a, [&](const Permutation& p, const Count& w) { out.push_back({p, w}); });
  return out;
}

struct OracleResult {
  Count permanent = 0;
  ClassVector classes;
  Count full_cycles = 0;
  StirlingVector stirling;
  CycleIndicator indicator;
};

/// Evaluates every matrix function by definition in a single pass.
inline OracleResult oracle_all_functions(const SquareMatrix& a, std::size_t modulus,
                                         std::size_t limit = default_oracle_limit) {
  const auto n = a.order();
  if (n > limit)
    throw guard_error("oracle refuses order " + std::to_string(n) + " (limit " + std::to_string(limit) + ")");
  OracleResult r{0, ClassVector::zero(modulus), 0, StirlingVector::zero(n), CycleIndicator(n)};
  for_each_restricted(a, [&](const Permutation& p, const Count& w) {
    const auto stats = cycle_stats(p);
    r.permanent += w;
    r.classes.counts[stats.decrement % modulus] += w;
    if (stats.gamma == 1) r.full_cycles += w;
    r.stirling.counts[stats.gamma - 1] += w;
    r.indicator.add(stats.structure, w);
  });
  return r;
}

}  // namespace cminor
