#pragma once

// First-row expansions over combinatorial minors.
//
// Every function here is a sum over the permutations s in B(A). Fixing
// s(1) = j and passing to the combinatorial minor \bar A_{1j} maps s to a
// permutation s* of order n-1:
//   j = 1   the fixed point 1 is removed: one cycle fewer, same decrement;
//   j >= 2  the arc 1 -> j is contracted: same number of cycles, decrement
//           one lower, and the cycle through 1 loses one element. In
//           \bar A_{1j} that cycle passes through diagonal position j-1.
// The recursions below are direct consequences; none of them cancels terms,
// so each coefficient stays an exact count.

#include <cstddef>
#include <functional>
#include <future>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "count.hpp"
#include "error.hpp"
#include "matrix.hpp"
#include "memo.hpp"
#include "results.hpp"

namespace cminor {

enum class Strategy { naive, memoized };

inline const char* strategy_name(Strategy s) { return s == Strategy::naive ? "naive" : "memo"; }

struct EvalOptions {
  Strategy strategy = Strategy::memoized;
  /// Worker threads for the top-level first-row branches; 1 = sequential.
  std::size_t threads = 1;
  /// Order guard for permanent, classes, determinant, cycles and Stirling.
  std::size_t max_order = 20;
  /// Order guard for the cycle indicator.
  std::size_t max_indicator_order = 12;
  /// Entry cap per memo table.
  std::size_t cache_capacity = std::size_t{1} << 20;
};

struct EvenOdd {
  Count even = 0;
  Count odd = 0;

  Count determinant() const { return even - odd; }
  friend bool operator==(const EvenOdd&, const EvenOdd&) = default;
};

/// Evaluates the matrix functions by recursive first-row expansion.
///
/// An Evaluator owns its memo tables; it is safe to call from several
/// threads at once. Naive and memoized strategies return identical values.
class Evaluator {
 public:
  explicit Evaluator(EvalOptions options = {})
      : options_(options),
        classes_(options.cache_capacity),
        cycles_(options.cache_capacity),
        stirling_(options.cache_capacity),
        partials_(options.cache_capacity) {
    if (options_.threads == 0) options_.threads = 1;
  }

  const EvalOptions& options() const noexcept { return options_; }

  /// counts[k] = weight of s in B(A) with n - cycles(s) = k (mod m).
  ClassVector class_counts(const SquareMatrix& a, std::size_t m) const {
    if (m == 0) throw precondition_error("modulus must be at least 1");
    guard(a, options_.max_order, "classes");
    return classes_rec(a, m, 0);
  }

  Count permanent(const SquareMatrix& a) const { return class_counts(a, 1).counts[0]; }

  EvenOdd even_odd_counts(const SquareMatrix& a) const {
    auto v = class_counts(a, 2);
    return {v.counts[0], v.counts[1]};
  }

  Count determinant(const SquareMatrix& a) const { return even_odd_counts(a).determinant(); }

  /// Weight of the full cycles (single n-cycles) in B(A).
  Count full_cycle_count(const SquareMatrix& a) const {
    guard(a, options_.max_order, "cycles");
    return cycles_rec(a, 0);
  }

  StirlingVector stirling_function(const SquareMatrix& a) const {
    guard(a, options_.max_order, "stirling");
    return stirling_rec(a, 0);
  }

  /// Partial indicators C^{(r)} for r = 1..n (element r-1 of the result):
  /// the part of the cycle indicator whose cycle through 1 has length r.
  std::vector<CycleIndicator> partial_indicators(const SquareMatrix& a) const {
    guard(a, options_.max_indicator_order, "indicator");
    return partials_rec(a, 0);
  }

  CycleIndicator cycle_indicator(const SquareMatrix& a) const {
    guard(a, options_.max_indicator_order, "indicator");
    return sum_partials(a.order(), partials_rec(a, 0));
  }

  CacheStats cache_stats() const {
    CacheStats total;
    for (auto s : {classes_.stats(), cycles_.stats(), stirling_.stats(), partials_.stats()}) {
      total.hits += s.hits;
      total.misses += s.misses;
      total.entries += s.entries;
    }
    return total;
  }

 private:
  static void guard(const SquareMatrix& a, std::size_t limit, const char* what) {
    if (a.order() > limit)
      throw guard_error(std::string(what) + ": order " + std::to_string(a.order()) +
                        " exceeds the configured limit " + std::to_string(limit));
  }

  bool memoized() const noexcept { return options_.strategy == Strategy::memoized; }

  // Runs branch(j) for every j with a_{1j} != 0, in parallel at depth 0 when
  // threads > 1. Results are returned indexed by j - 1, so folding them in
  // index order is independent of scheduling.
  template <class Sub, class Branch>
  std::vector<std::optional<Sub>> branches(const SquareMatrix& a, std::size_t first_j, std::size_t depth,
                                           Branch&& branch) const {
    const auto n = a.order();
    std::vector<std::optional<Sub>> out(n);
    std::vector<std::size_t> live;
    for (std::size_t j = first_j; j <= n; ++j)
      if (a.at(1, j) != 0) live.push_back(j);

    if (depth > 0 || options_.threads <= 1 || live.size() <= 1) {
      for (auto j : live) out[j - 1] = branch(j);
      return out;
    }
    const auto workers = std::min(options_.threads, live.size());
    std::vector<std::future<void>> tasks;
    for (std::size_t w = 0; w < workers; ++w) {
      tasks.push_back(std::async(std::launch::async, [&, w] {
        for (std::size_t t = w; t < live.size(); t += workers) out[live[t] - 1] = branch(live[t]);
      }));
    }
    for (auto& t : tasks) t.get();
    return out;
  }

  template <class Value, class Compute>
  Value cached(MemoTable<Value>& table, const std::string& key, Compute&& compute) const {
    if (!memoized()) return compute();
    return table.get_or_compute(key, std::forward<Compute>(compute));
  }

  ClassVector classes_rec(const SquareMatrix& a, std::size_t m, std::size_t depth) const {
    const auto n = a.order();
    if (n == 1) {
      auto v = ClassVector::zero(m);
      v.counts[0] = a.at(1, 1);
      return v;
    }
    return cached(classes_, std::to_string(m) + ':' + canonical_key(a), [&] {
      auto subs = branches<ClassVector>(a, 1, depth, [&](std::size_t j) {
        return classes_rec(combinatorial_minor(a, 1, j), m, depth + 1);
      });
      auto v = ClassVector::zero(m);
      for (std::size_t j = 1; j <= n; ++j)
        if (subs[j - 1]) v.add_shifted(*subs[j - 1], a.at(1, j), j == 1 ? 0 : 1 % m);
      return v;
    });
  }

  // a_{11} never lies on a full cycle once n > 1.
  Count cycles_rec(const SquareMatrix& a, std::size_t depth) const {
    const auto n = a.order();
    if (n == 1) return a.at(1, 1);
    return cached(cycles_, canonical_key(a), [&] {
      auto subs = branches<Count>(a, 2, depth, [&](std::size_t j) {
        return cycles_rec(combinatorial_minor(a, 1, j), depth + 1);
      });
      Count total = 0;
      for (std::size_t j = 2; j <= n; ++j)
        if (subs[j - 1]) total += a.at(1, j) * *subs[j - 1];
      return total;
    });
  }

  StirlingVector stirling_rec(const SquareMatrix& a, std::size_t depth) const {
    const auto n = a.order();
    if (n == 1) return StirlingVector{{a.at(1, 1)}};
    return cached(stirling_, canonical_key(a), [&] {
      auto subs = branches<StirlingVector>(a, 1, depth, [&](std::size_t j) {
        return stirling_rec(combinatorial_minor(a, 1, j), depth + 1);
      });
      auto v = StirlingVector::zero(n);
      for (std::size_t j = 1; j <= n; ++j) {
        if (!subs[j - 1]) continue;
        const auto& w = a.at(1, j);
        const std::size_t offset = j == 1 ? 1 : 0;  // the fixed point 1 is one extra cycle
        for (std::size_t k = 0; k < n - 1; ++k) v.counts[k + offset] += w * subs[j - 1]->counts[k];
      }
      return v;
    });
  }

  static CycleIndicator sum_partials(std::size_t n, const std::vector<CycleIndicator>& partials) {
    CycleIndicator c(n);
    for (const auto& p : partials) c.add(p);
    return c;
  }

  std::vector<CycleIndicator> partials_rec(const SquareMatrix& a, std::size_t depth) const {
    const auto n = a.order();
    if (n == 1) {
      std::vector<CycleIndicator> p(1, CycleIndicator(1));
      p[0].add(CycleType{1}, a.at(1, 1));
      return p;
    }
    return cached(partials_, canonical_key(a), [&] {
      // Branch j >= 2 tracks the shortened cycle, which sits at position j-1
      // of the combinatorial minor; relabel it to position 1.
      auto subs = branches<std::vector<CycleIndicator>>(a, 1, depth, [&](std::size_t j) {
        auto minor = combinatorial_minor(a, 1, j);
        return partials_rec(j == 1 ? minor : bring_to_front(minor, j - 1), depth + 1);
      });
      std::vector<CycleIndicator> p(n, CycleIndicator(n));
      CycleType k(n);
      for (std::size_t j = 1; j <= n; ++j) {
        if (!subs[j - 1]) continue;
        const auto& w = a.at(1, j);
        const auto& sub = *subs[j - 1];
        for (std::size_t r = 1; r <= n - 1; ++r) {
          for (const auto& [sk, coef] : sub[r - 1].terms()) {
            std::copy(sk.begin(), sk.end(), k.begin());
            k[n - 1] = 0;
            if (j == 1) {
              // C^{(1)}: a fixed point at 1 times the indicator of A_{11}.
              ++k[0];
              p[0].add(k, w * coef);
            } else {
              // t_{r+1} / t_r: the tracked cycle regains the contracted element.
              if (k[r - 1] == 0)
                throw Error(ErrorCategory::invariant_violation, "partial indicator lacks its tracked cycle");
              --k[r - 1];
              ++k[r];
              p[r].add(k, w * coef);
            }
          }
        }
      }
      return p;
    });
  }

  EvalOptions options_;
  mutable MemoTable<ClassVector> classes_;
  mutable MemoTable<Count> cycles_;
  mutable MemoTable<StirlingVector> stirling_;
  mutable MemoTable<std::vector<CycleIndicator>> partials_;
};

// Convenience wrappers with a fresh memoized evaluator per call.

inline ClassVector class_counts(const SquareMatrix& a, std::size_t m) { return Evaluator().class_counts(a, m); }
inline Count permanent(const SquareMatrix& a) { return Evaluator().permanent(a); }
inline EvenOdd even_odd_counts(const SquareMatrix& a) { return Evaluator().even_odd_counts(a); }
inline Count determinant(const SquareMatrix& a) { return Evaluator().determinant(a); }
inline Count full_cycle_count(const SquareMatrix& a) { return Evaluator().full_cycle_count(a); }
inline StirlingVector stirling_function(const SquareMatrix& a) { return Evaluator().stirling_function(a); }
inline CycleIndicator cycle_indicator(const SquareMatrix& a) { return Evaluator().cycle_indicator(a); }

// Reading the other functions off a single indicator. The decrement of a
// cycle type is sum (i-1) k_i and its cycle count is sum k_i, so each
// specialization is exact integer bucketing.

inline Count indicator_permanent(const CycleIndicator& c) {
  Count total = 0;
  for (const auto& [k, coef] : c.terms()) total += coef;
  return total;
}

inline StirlingVector indicator_stirling(const CycleIndicator& c) {
  auto v = StirlingVector::zero(c.order());
  for (const auto& [k, coef] : c.terms()) {
    if (weighted_size(k) != c.order()) throw Error(ErrorCategory::invariant_violation, "malformed cycle type");
    std::size_t gamma = 0;
    for (auto ki : k) gamma += ki;
    v.counts[gamma - 1] += coef;
  }
  return v;
}

inline ClassVector indicator_classes(const CycleIndicator& c, std::size_t m) {
  auto v = ClassVector::zero(m);
  for (const auto& [k, coef] : c.terms()) {
    if (weighted_size(k) != c.order()) throw Error(ErrorCategory::invariant_violation, "malformed cycle type");
    std::size_t decrement = 0;
    for (std::size_t i = 0; i < k.size(); ++i) decrement += i * k[i];
    v.counts[decrement % m] += coef;
  }
  return v;
}

}  // namespace cminor
