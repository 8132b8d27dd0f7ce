#pragma once

// Divisor-graph instances. The divisors of n are joined when their ratio is
// a prime (or its reciprocal); a Hamiltonian cycle of that graph is a cyclic
// Gray-code-style ordering of the divisors, and a Hamiltonian path from n is
// an ordering d_1 = n, d_2, ... in which consecutive ratios are prime.
// For squarefree n with k prime factors the graph is the k-cube.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "count.hpp"
#include "error.hpp"
#include "expansions.hpp"
#include "matrix.hpp"

namespace cminor {

struct PrimePower {
  std::uint64_t prime = 0;
  std::size_t exponent = 0;
};

inline bool is_prime(std::uint64_t p) {
  if (p < 2) return false;
  for (std::uint64_t d = 2; d <= p / d; ++d)
    if (p % d == 0) return false;
  return true;
}

struct DivisorInstance {
  Count n;
  std::vector<PrimePower> factorization;
  /// delta_1 = n, then the remaining divisors in descending order.
  std::vector<Count> divisors;
  /// b_{ij} = 1 iff delta_i / delta_j is a prime or the reciprocal of one.
  SquareMatrix matrix_b;
  /// matrix_b with column 1 replaced by ones.
  SquareMatrix matrix_a;
};

inline DivisorInstance build_divisor_instance(std::vector<PrimePower> factorization) {
  if (factorization.empty()) throw precondition_error("factorization must contain at least one prime");
  for (std::size_t i = 0; i < factorization.size(); ++i) {
    const auto& f = factorization[i];
    if (!is_prime(f.prime)) throw precondition_error(std::to_string(f.prime) + " is not prime");
    if (f.exponent < 1) throw precondition_error("exponents must be at least 1");
    for (std::size_t k = 0; k < i; ++k)
      if (factorization[k].prime == f.prime)
        throw precondition_error("prime " + std::to_string(f.prime) + " listed twice");
  }

  // Every divisor as an exponent vector; its value is only used for ordering.
  std::vector<std::pair<Count, std::vector<std::size_t>>> divs{{Count(1), {}}};
  for (const auto& f : factorization) {
    std::vector<std::pair<Count, std::vector<std::size_t>>> next;
    for (const auto& [value, exps] : divs) {
      Count v = value;
      for (std::size_t e = 0; e <= f.exponent; ++e) {
        auto x = exps;
        x.push_back(e);
        next.emplace_back(v, std::move(x));
        v *= f.prime;
      }
    }
    divs = std::move(next);
  }
  std::sort(divs.begin(), divs.end(), [](const auto& l, const auto& r) { return l.first > r.first; });

  const auto tau = divs.size();
  std::vector<Count> b(tau * tau, 0);
  for (std::size_t i = 0; i < tau; ++i)
    for (std::size_t j = 0; j < tau; ++j) {
      std::size_t distance = 0;
      for (std::size_t c = 0; c < factorization.size(); ++c) {
        const auto x = divs[i].second[c], y = divs[j].second[c];
        distance += x > y ? x - y : y - x;
      }
      b[i * tau + j] = distance == 1 ? 1 : 0;
    }
  auto a = b;
  for (std::size_t i = 0; i < tau; ++i) a[i * tau] = 1;

  std::vector<Count> values;
  for (const auto& d : divs) values.push_back(d.first);
  Count n = values.front();
  return DivisorInstance{std::move(n), std::move(factorization), std::move(values),
                         SquareMatrix(tau, std::move(b)), SquareMatrix(tau, std::move(a))};
}

/// Cyclic orderings of the divisors (directed Hamiltonian cycles).
inline Count gray_cycle_count(const DivisorInstance& inst, const Evaluator& eval = Evaluator()) {
  return eval.full_cycle_count(inst.matrix_b);
}

/// Orderings d_1 = n, ..., d_tau with consecutive ratios prime or 1/prime.
inline Count gray_path_count(const DivisorInstance& inst, const Evaluator& eval = Evaluator()) {
  return eval.full_cycle_count(inst.matrix_a);
}

inline constexpr std::size_t default_hypercube_limit = 4;

inline std::vector<std::uint64_t> first_primes(std::size_t k) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t p = 2; out.size() < k; ++p)
    if (is_prime(p)) out.push_back(p);
  return out;
}

/// Divisor instance of the product of the first k primes; its graph is the
/// k-cube with n at the all-ones corner.
inline DivisorInstance hypercube_instance(std::size_t k, std::size_t limit = default_hypercube_limit) {
  if (k < 1) throw precondition_error("hypercube dimension must be at least 1");
  if (k > limit)
    throw guard_error("hypercube dimension " + std::to_string(k) + " exceeds the limit " + std::to_string(limit));
  std::vector<PrimePower> f;
  for (auto p : first_primes(k)) f.push_back({p, 1});
  return build_divisor_instance(std::move(f));
}

}  // namespace cminor
