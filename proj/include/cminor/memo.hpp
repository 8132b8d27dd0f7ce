#pragma once

#include <atomic>
#include <cstddef>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>
#include <unordered_map>

namespace cminor {

struct CacheStats {
  std::size_t hits = 0;
  std::size_t misses = 0;
  std::size_t entries = 0;
};

/// Thread-safe string-keyed memo table with a hard entry cap. Once full it
/// stops inserting; lookups keep working and callers simply recompute.
template <class Value>
class MemoTable {
 public:
  explicit MemoTable(std::size_t capacity) : capacity_(capacity) {}

  std::optional<Value> find(const std::string& key) const {
    std::shared_lock lock(mutex_);
    auto it = map_.find(key);
    if (it == map_.end()) {
      misses_.fetch_add(1, std::memory_order_relaxed);
      return std::nullopt;
    }
    hits_.fetch_add(1, std::memory_order_relaxed);
    return it->second;
  }

  // First writer wins; values for equal keys are equal, so a lost race only
  // costs the duplicate computation.
  void insert(const std::string& key, const Value& value) {
    std::unique_lock lock(mutex_);
    if (map_.size() >= capacity_) return;
    map_.emplace(key, value);
  }

  template <class Compute>
  Value get_or_compute(const std::string& key, Compute&& compute) {
    if (auto hit = find(key)) return *std::move(hit);
    Value v = compute();
    insert(key, v);
    return v;
  }

  CacheStats stats() const {
    std::shared_lock lock(mutex_);
    return {hits_.load(), misses_.load(), map_.size()};
  }

  void clear() {
    std::unique_lock lock(mutex_);
    map_.clear();
  }

 private:
  std::size_t capacity_;
  mutable std::shared_mutex mutex_;
  std::unordered_map<std::string, Value> map_;
  mutable std::atomic<std::size_t> hits_{0};
  mutable std::atomic<std::size_t> misses_{0};
};

}  // namespace cminor
