#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <unordered_map>
#include <vector>

namespace symdyn::detail {

inline constexpr std::uint32_t kNoId = std::numeric_limits<std::uint32_t>::max();
inline constexpr std::size_t kNoNext = std::numeric_limits<std::size_t>::max();

/// Interns chains of unit ids. The length-1 chain at i is `unit[i]`; the
/// length-n chain at i is the pair (chain_{n-1}(i), unit[next^{n-1}(i)]).
/// Two positions get the same level-n id iff their n-chains agree unit by
/// unit. For plain factors `next(i) = i+1`; for speedup patterns `next` is
/// the landing map.
///
/// `levels[n-1][i]` is kNoId where the chain leaves the defined range.
class ChainIds {
 public:
  ChainIds(std::span<const std::uint32_t> unit, std::span<const std::size_t> next,
           std::size_t n_max) {
    const std::size_t size = unit.size();
    levels_.reserve(n_max);
    distinct_.reserve(n_max);
    levels_.emplace_back(unit.begin(), unit.end());
    {
      std::unordered_map<std::uint32_t, bool> seen;
      for (auto id : levels_.back())
        if (id != kNoId) seen.emplace(id, true);
      distinct_.push_back(seen.size());
    }
    // tail[i] = next^{n-1}(i)
    std::vector<std::size_t> tail(size);
    for (std::size_t i = 0; i < size; ++i) tail[i] = unit[i] == kNoId ? kNoNext : next[i];

    for (std::size_t n = 2; n <= n_max; ++n) {
      const auto& prev = levels_.back();
      std::vector<std::uint32_t> cur(size, kNoId);
      std::unordered_map<std::uint64_t, std::uint32_t> table;
      table.reserve(size / 4 + 16);
      for (std::size_t i = 0; i < size; ++i) {
        const std::size_t t = tail[i];
        if (prev[i] == kNoId || t == kNoNext || t >= size || unit[t] == kNoId) {
          tail[i] = kNoNext;
          continue;
        }
        const std::uint64_t key = (std::uint64_t{prev[i]} << 32) | unit[t];
        auto [it, inserted] = table.try_emplace(key, static_cast<std::uint32_t>(table.size()));
        cur[i] = it->second;
        tail[i] = next[t];
      }
      distinct_.push_back(table.size());
      levels_.push_back(std::move(cur));
    }
  }

  std::size_t n_max() const noexcept { return levels_.size(); }
  std::uint32_t id(std::size_t n, std::size_t i) const { return levels_[n - 1][i]; }
  std::span<const std::uint32_t> level(std::size_t n) const { return levels_[n - 1]; }
  std::size_t distinct(std::size_t n) const { return distinct_[n - 1]; }

 private:
  std::vector<std::vector<std::uint32_t>> levels_;
  std::vector<std::size_t> distinct_;
};

}  // namespace symdyn::detail
