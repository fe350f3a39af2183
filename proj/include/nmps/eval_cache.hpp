#pragma once

#include <cstddef>
#include <cstdint>
#include <deque>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

namespace nmps {

/// Memory of evaluated points keyed on exact coordinate bit patterns, with
/// insertion-order eviction once `capacity` entries are stored. Capacity 0
/// disables it.
class EvalCache {
 public:
  explicit EvalCache(std::size_t capacity = 100000) : capacity_(capacity) {}

  std::optional<double> lookup(std::span<const double> x) const;
  void insert(std::span<const double> x, double f);

  std::size_t size() const { return values_.size(); }
  std::size_t capacity() const { return capacity_; }

 private:
  using Key = std::vector<std::uint64_t>;
  struct KeyHash {
    std::size_t operator()(const Key& key) const noexcept;
  };

  static Key make_key(std::span<const double> x);

  std::size_t capacity_;
  std::unordered_map<Key, double, KeyHash> values_;
  std::deque<Key> order_;
};

inline std::optional<double> cache_lookup(const EvalCache& cache, std::span<const double> x) {
  return cache.lookup(x);
}

inline void cache_insert(EvalCache& cache, std::span<const double> x, double f) {
  cache.insert(x, f);
}

}  // namespace nmps
