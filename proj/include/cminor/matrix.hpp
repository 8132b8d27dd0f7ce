#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <numeric>
#include <ostream>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "count.hpp"
#include "error.hpp"

namespace cminor {

/// Dense square matrix of nonnegative exact integers.
///
/// All public indexing is 1-based (row i, column j in 1..n). Values are
/// immutable once constructed, so a matrix may be shared freely between
/// concurrent evaluations.
class SquareMatrix {
 public:
  SquareMatrix(std::size_t order, std::vector<Count> row_major)
      : order_(order), entries_(std::move(row_major)) {
    if (order_ == 0) throw precondition_error("matrix order must be at least 1");
    if (entries_.size() != order_ * order_)
      throw precondition_error("matrix of order " + std::to_string(order_) + " needs " +
                               std::to_string(order_ * order_) + " entries, got " +
                               std::to_string(entries_.size()));
    for (const auto& e : entries_)
      if (e < 0) throw precondition_error("matrix entries must be nonnegative");
  }

  static SquareMatrix from_rows(const std::vector<std::vector<Count>>& rows) {
    std::vector<Count> flat;
    flat.reserve(rows.size() * rows.size());
    for (const auto& row : rows) {
      if (row.size() != rows.size())
        throw precondition_error("matrix rows must all have length " + std::to_string(rows.size()));
      flat.insert(flat.end(), row.begin(), row.end());
    }
    return SquareMatrix(rows.size(), std::move(flat));
  }

  static SquareMatrix from_rows(std::initializer_list<std::initializer_list<long long>> rows) {
    std::vector<std::vector<Count>> converted;
    for (const auto& row : rows) converted.emplace_back(row.begin(), row.end());
    return from_rows(converted);
  }

  /// All-ones matrix J_n.
  static SquareMatrix ones(std::size_t n) { return SquareMatrix(n, std::vector<Count>(n * n, 1)); }

  static SquareMatrix identity(std::size_t n) {
    std::vector<Count> e(n * n, 0);
    for (std::size_t i = 0; i < n; ++i) e[i * n + i] = 1;
    return SquareMatrix(n, std::move(e));
  }

  /// J_n - I_n: every position allowed except the diagonal.
  static SquareMatrix derangement_board(std::size_t n) {
    std::vector<Count> e(n * n, 1);
    for (std::size_t i = 0; i < n; ++i) e[i * n + i] = 0;
    return SquareMatrix(n, std::move(e));
  }

  std::size_t order() const noexcept { return order_; }

  /// Entry a_{ij}, 1-based.
  const Count& at(std::size_t i, std::size_t j) const {
    check_index(i, j);
    return entries_[(i - 1) * order_ + (j - 1)];
  }

  std::span<const Count> row_major() const noexcept { return entries_; }

  /// Copy with a_{ij} replaced.
  SquareMatrix with_entry(std::size_t i, std::size_t j, Count value) const {
    check_index(i, j);
    auto e = entries_;
    e[(i - 1) * order_ + (j - 1)] = std::move(value);
    return SquareMatrix(order_, std::move(e));
  }

  bool is_zero_one() const {
    for (const auto& e : entries_)
      if (e != 0 && e != 1) return false;
    return true;
  }

  friend bool operator==(const SquareMatrix&, const SquareMatrix&) = default;

 private:
  void check_index(std::size_t i, std::size_t j) const {
    if (i < 1 || i > order_ || j < 1 || j > order_)
      throw precondition_error("index (" + std::to_string(i) + "," + std::to_string(j) +
                               ") out of range for order " + std::to_string(order_));
  }

  std::size_t order_;
  std::vector<Count> entries_;
};

inline std::ostream& operator<<(std::ostream& os, const SquareMatrix& a) {
  const auto n = a.order();
  os << '[';
  for (std::size_t i = 1; i <= n; ++i) {
    os << (i == 1 ? "[" : ",[");
    for (std::size_t j = 1; j <= n; ++j) os << (j == 1 ? "" : ",") << a.at(i, j);
    os << ']';
  }
  return os << ']';
}

namespace detail {

inline void check_minor_args(const SquareMatrix& a, std::size_t i, std::size_t j) {
  if (a.order() < 2) throw precondition_error("minor requires order at least 2");
  if (i < 1 || i > a.order() || j < 1 || j > a.order())
    throw precondition_error("minor index (" + std::to_string(i) + "," + std::to_string(j) +
                             ") out of range for order " + std::to_string(a.order()));
}

// Submatrix built from 0-based source rows and columns, in the given order.
inline SquareMatrix select(const SquareMatrix& a, std::span<const std::size_t> rows,
                           std::span<const std::size_t> cols) {
  const auto n = a.order();
  const auto src = a.row_major();
  std::vector<Count> e;
  e.reserve(rows.size() * cols.size());
  for (auto r : rows)
    for (auto c : cols) e.push_back(src[r * n + c]);
  return SquareMatrix(rows.size(), std::move(e));
}

inline std::vector<std::size_t> all_but(std::size_t n, std::size_t skipped) {
  std::vector<std::size_t> v;
  v.reserve(n - 1);
  for (std::size_t k = 0; k < n; ++k)
    if (k != skipped) v.push_back(k);
  return v;
}

}  // namespace detail

/// A_{ij}: delete row i and column j, keeping columns c_1..c_{j-1}, c_{j+1}..c_n.
inline SquareMatrix classical_minor(const SquareMatrix& a, std::size_t i, std::size_t j) {
  detail::check_minor_args(a, i, j);
  const auto rows = detail::all_but(a.order(), i - 1);
  const auto cols = detail::all_but(a.order(), j - 1);
  return detail::select(a, rows, cols);
}

/// \bar A_{ij}: the classical minor with its first j-1 columns rotated left by
/// one, giving column order c_2, ..., c_{j-1}, c_1, c_{j+1}, ..., c_n.
///
/// For j = 1 and j = 2 this is the classical minor. When i = 1 the diagonal
/// position j-1 of the result holds a_{j1}, the entry that closes the cycle
/// through 1 once the arc 1 -> j is contracted.
inline SquareMatrix combinatorial_minor(const SquareMatrix& a, std::size_t i, std::size_t j) {
  detail::check_minor_args(a, i, j);
  const auto rows = detail::all_but(a.order(), i - 1);
  auto cols = detail::all_but(a.order(), j - 1);
  if (j >= 3) std::rotate(cols.begin(), cols.begin() + 1, cols.begin() + static_cast<long>(j - 1));
  return detail::select(a, rows, cols);
}

/// Simultaneous row/column permutation: result(p, q) = a(order[p], order[q]),
/// with `order` a 1-based permutation of 1..n.
inline SquareMatrix relabel(const SquareMatrix& a, std::span<const std::size_t> order) {
  const auto n = a.order();
  if (order.size() != n) throw precondition_error("relabeling must list every index once");
  std::vector<std::size_t> idx(n);
  std::vector<bool> seen(n, false);
  for (std::size_t p = 0; p < n; ++p) {
    if (order[p] < 1 || order[p] > n || seen[order[p] - 1])
      throw precondition_error("relabeling is not a permutation of 1..n");
    seen[order[p] - 1] = true;
    idx[p] = order[p] - 1;
  }
  return detail::select(a, idx, idx);
}

/// Relabel so that index e becomes index 1 and 1..e-1 move up by one.
inline SquareMatrix bring_to_front(const SquareMatrix& a, std::size_t e) {
  const auto n = a.order();
  if (e < 1 || e > n) throw precondition_error("index out of range");
  if (e == 1) return a;
  std::vector<std::size_t> order;
  order.reserve(n);
  order.push_back(e);
  for (std::size_t k = 1; k <= n; ++k)
    if (k != e) order.push_back(k);
  return relabel(a, order);
}

/// Canonical byte serialization (order, then entries row-major) used as a
/// memo key. Two matrices share a key iff they are equal.
inline std::string canonical_key(const SquareMatrix& a) {
  std::string key;
  const auto n = static_cast<std::uint32_t>(a.order());
  key.reserve(4 + a.row_major().size());
  for (int shift = 0; shift < 32; shift += 8) key.push_back(static_cast<char>((n >> shift) & 0xFF));
  for (const auto& e : a.row_major()) {
    if (e < 0xFF) {
      key.push_back(static_cast<char>(e.convert_to<unsigned>()));
    } else {
      key.push_back(static_cast<char>(0xFF));
      key += e.str();
      key.push_back(';');
    }
  }
  return key;
}

}  // namespace cminor
