#pragma once

// Independent oracles for the unit tests. Everything here works on plain
// std::string and explicit loops; nothing calls the scanning code under test.

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "symdyn/error.hpp"
#include "symdyn/permutation.hpp"
#include "symdyn/speedup.hpp"
#include "symdyn/words.hpp"

namespace oracle {

/// Kind of the symdyn::Error thrown by f, or nullopt when f returns.
template <class F>
std::optional<symdyn::ErrorKind> error_kind(F&& f) {
  try {
    f();
  } catch (const symdyn::Error& e) {
    return e.kind();
  }
  return std::nullopt;
}

/// splitmix64; seeded, portable, and independent of <random>.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }
  /// Uniform in [lo, hi].
  std::int64_t between(std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(next() % static_cast<std::uint64_t>(hi - lo + 1));
  }
  std::string word(std::size_t len, const std::string& letters) {
    std::string s;
    for (std::size_t i = 0; i < len; ++i) s.push_back(letters[next() % letters.size()]);
    return s;
  }

 private:
  std::uint64_t state_;
};

inline std::string substitute(std::string x, const std::map<char, std::string>& rules, std::size_t len) {
  while (x.size() < len) {
    std::string y;
    for (char c : x) y += rules.at(c);
    x = std::move(y);
  }
  return x.substr(0, len);
}

inline std::string fibonacci(std::size_t len) { return substitute("0", {{'0', "01"}, {'1', "0"}}, len); }
inline std::string thue_morse(std::size_t len) { return substitute("0", {{'0', "01"}, {'1', "10"}}, len); }

inline std::vector<std::size_t> occurrences(const std::string& x, const std::string& w) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i + w.size() <= x.size(); ++i) {
    bool match = true;
    for (std::size_t k = 0; k < w.size() && match; ++k) match = x[i + k] == w[k];
    if (match) out.push_back(i);
  }
  return out;
}

inline std::set<std::string> factors(const std::string& x, std::size_t n) {
  std::set<std::string> out;
  for (std::size_t i = 0; i + n <= x.size(); ++i) out.insert(x.substr(i, n));
  return out;
}

/// Largest distance between consecutive occurrences of any length-n factor.
inline std::size_t max_gap(const std::string& x, std::size_t n) {
  std::size_t gap = 0;
  for (const auto& u : factors(x, n)) {
    const auto occ = occurrences(x, u);
    for (std::size_t k = 1; k < occ.size(); ++k) gap = std::max(gap, occ[k] - occ[k - 1]);
  }
  return gap;
}

/// Jump at index i read straight from the table with a string key.
inline std::uint32_t jump_at(const std::string& x, const std::map<std::string, std::uint32_t>& table, std::size_t k,
                             std::size_t i) {
  return table.at(x.substr(i - k, 2 * k + 1));
}

/// S-orbit classes by explicit forward and backward orbit following (no
/// union-find). Returns a class id per interior index, -1 elsewhere; ids are
/// arbitrary but consistent.
inline std::vector<int> orbit_classes(const std::string& x, const std::map<std::string, std::uint32_t>& table,
                                      std::size_t k) {
  const std::size_t n = x.size();
  std::vector<int> cls(n, -1);
  std::vector<std::size_t> to(n, SIZE_MAX);
  std::vector<std::vector<std::size_t>> from(n);
  for (std::size_t i = k; i + k < n; ++i) {
    const auto j = i + jump_at(x, table, k, i);
    to[i] = j;
    if (j + k < n) from[j].push_back(i);
  }
  int next = 0;
  for (std::size_t s = k; s + k < n; ++s) {
    if (cls[s] != -1) continue;
    std::vector<std::size_t> stack{s};
    cls[s] = next;
    while (!stack.empty()) {
      const auto i = stack.back();
      stack.pop_back();
      std::vector<std::size_t> nbrs = from[i];
      if (to[i] != SIZE_MAX && to[i] + k < n) nbrs.push_back(to[i]);
      for (auto j : nbrs)
        if (cls[j] == -1) {
          cls[j] = next;
          stack.push_back(j);
        }
    }
    ++next;
  }
  return cls;
}

inline std::map<std::string, std::uint32_t> constant_table(const std::string& x, std::uint32_t p) {
  std::map<std::string, std::uint32_t> t;
  for (const auto& f : factors(x, 1)) t[f] = p;
  return t;
}

/// Permutations as image vectors composed left to right: (a*b)(x) = b(a(x)).
using Perm = std::vector<std::uint32_t>;

inline Perm compose(const Perm& a, const Perm& b) {
  Perm out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = b[a[i]];
  return out;
}

inline Perm identity(std::size_t n) {
  Perm p(n);
  std::iota(p.begin(), p.end(), 0);
  return p;
}

inline Perm images(const symdyn::Permutation& p) { return p.images(); }

}  // namespace oracle
