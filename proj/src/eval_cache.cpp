#include "nmps/eval_cache.hpp"

#include <bit>

namespace nmps {

std::size_t EvalCache::KeyHash::operator()(const Key& key) const noexcept {
  // FNV-1a over the 64-bit words.
  std::uint64_t h = 1469598103934665603ull;
  for (std::uint64_t word : key) {
    for (int shift = 0; shift < 64; shift += 8) {
      h ^= (word >> shift) & 0xffu;
      h *= 1099511628211ull;
    }
  }
  return static_cast<std::size_t>(h);
}

EvalCache::Key EvalCache::make_key(std::span<const double> x) {
  Key key(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) key[i] = std::bit_cast<std::uint64_t>(x[i]);
  return key;
}

std::optional<double> EvalCache::lookup(std::span<const double> x) const {
  if (capacity_ == 0) return std::nullopt;
  const auto it = values_.find(make_key(x));
  if (it == values_.end()) return std::nullopt;
  return it->second;
}

void EvalCache::insert(std::span<const double> x, double f) {
  if (capacity_ == 0) return;
  auto key = make_key(x);
  const auto [it, inserted] = values_.try_emplace(key, f);
  if (!inserted) {
    it->second = f;
    return;
  }
  order_.push_back(std::move(key));
  while (values_.size() > capacity_) {
    values_.erase(order_.front());
    order_.pop_front();
  }
}

}  // namespace nmps
