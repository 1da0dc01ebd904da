#pragma once

// Jump functions and the speedup S = sigma^p on orbit windows.
//
// A jump function is constant on centered (2K+1)-cylinders, so on a window
// the jump at index i is read from letters [i-K, i+K]. Indices with margin K
// on both sides are "interior"; only they carry a jump.

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "symdyn/rational.hpp"
#include "symdyn/shiftspaces.hpp"
#include "symdyn/words.hpp"

namespace symdyn {

class JumpFunction {
 public:
  using Table = std::map<std::vector<Symbol>, std::uint32_t>;

  /// p == k everywhere; radius 0, no table.
  static JumpFunction constant(std::uint32_t k);
  /// Throws InvalidArgument on a zero value or a key of the wrong length.
  static JumpFunction table(Alphabet alphabet, std::size_t radius, Table values);

  /// First line `K <int>` or `constant <int>`, then `<(2K+1)-word> <int>` lines.
  /// `#` starts a comment.
  static JumpFunction parse(std::string_view text, const Alphabet& alphabet);
  std::string str() const;

  std::size_t radius() const noexcept { return radius_; }
  bool is_constant() const noexcept { return constant_.has_value(); }
  /// Largest value in the table (or the constant).
  std::uint32_t max_value() const noexcept;
  const Table& entries() const noexcept { return table_; }

  /// Jump for the centered word `window` (length 2K+1); nullopt when the
  /// table has no entry.
  std::optional<std::uint32_t> lookup(std::span<const Symbol> window) const;

  /// Jump at index i of the window. Throws InsufficientMargin when i has no
  /// K-margin and TotalityFailure (naming the word) on a missing entry.
  std::uint32_t at(const OrbitSegment& segment, std::size_t i) const;

 private:
  JumpFunction() = default;
  std::size_t radius_ = 0;
  std::optional<std::uint32_t> constant_;
  std::optional<Alphabet> alphabet_;
  Table table_;
};

/// The partition {[a] : a in A} first-return jump: p(x) = min{k >= 1 : x_k = x_0}.
/// Built as a radius-K table from the (2K+1)-factors of the window; throws
/// InvalidArgument when some factor has no return within K letters.
JumpFunction first_return_jump(const OrbitSegment& segment, std::size_t radius);

/// Landing map of a jump on one window.
struct LandingMap {
  std::size_t radius = 0;
  std::size_t size = 0;
  /// jump[i] for interior i, 0 elsewhere.
  std::vector<std::uint32_t> jump;
  std::uint32_t p_max = 0;

  bool interior(std::size_t i) const noexcept { return i >= radius && i + radius < size; }
  /// i + p_i; only meaningful for interior i.
  std::size_t landing(std::size_t i) const noexcept { return i + jump[i]; }
  /// The landing leaves the interior of the window.
  bool exits(std::size_t i) const noexcept { return !interior(landing(i)); }
};

/// Evaluates the jump at every interior index. Throws TotalityFailure naming
/// the first centered word without a table entry.
LandingMap landing_map(const OrbitSegment& segment, const JumpFunction& jump);

struct Collision {
  std::size_t first = 0;
  std::size_t second = 0;
  std::size_t target = 0;
};

struct WindowCheck {
  std::size_t window = 0;
  bool injective = true;
  bool surjective = true;
  std::optional<Collision> collision;
  /// First checked index that is the landing of no interior index.
  std::optional<std::size_t> uncovered;
};

struct JumpValidation {
  bool total = true;
  std::uint32_t p_max = 0;
  /// Prefix of half length, then the whole window.
  std::vector<WindowCheck> windows;

  bool injective() const noexcept;
  bool surjective() const noexcept;
  bool homeomorphic() const noexcept { return total && injective() && surjective(); }
  std::string report() const;
};

/// Totality, p_max, injectivity and surjectivity of i -> i + p_i, certified on
/// the half window and the full window. The (2K+1)-factor set must already be
/// stable on the half window (WindowTooShort otherwise). A missing table entry
/// is a hard error (TotalityFailure naming the word).
JumpValidation validate_jump(const JumpFunction& jump, const OrbitSegment& segment);

/// Landing indices start, start + p, ... while the current index is interior.
/// Throws InsufficientMargin when start itself is not interior.
std::vector<std::size_t> s_orbit(const OrbitSegment& segment, const JumpFunction& jump, std::size_t start);

/// Partition of interior indices into S-orbit classes. Classes meeting the
/// central window [size/4, 3size/4) are numbered 1..count in order of their
/// first index there; every other index has label 0.
struct OrbitColoring {
  std::vector<std::uint32_t> label;
  std::uint32_t count = 0;
  std::size_t central_begin = 0;
  std::size_t central_end = 0;
};

OrbitColoring orbit_coloring(const LandingMap& map);

/// Orbit number c of a bijective jump, computed on the half and the full
/// window. Throws NotBijective when validation fails and WindowTooShort when
/// the two windows disagree.
std::uint32_t orbit_number(const OrbitSegment& segment, const JumpFunction& jump);

/// The sigma-word spanned by n consecutive S-steps, with K letters of margin
/// on both sides, and the n landing offsets inside it (offsets[0] == K).
struct SPattern {
  Word spanned;
  std::vector<std::size_t> offsets;

  friend bool operator==(const SPattern&, const SPattern&) = default;
  friend std::strong_ordering operator<=>(const SPattern& a, const SPattern& b) {
    if (auto c = a.spanned <=> b.spanned; c != 0) return c;
    return std::lexicographical_compare_three_way(a.offsets.begin(), a.offsets.end(), b.offsets.begin(),
                                                  b.offsets.end());
  }
  std::string str() const;
};

/// The length-n S-pattern starting at interior index `start`; nullopt when
/// the pattern does not fit in the window.
std::optional<SPattern> spattern_at(const OrbitSegment& segment, const LandingMap& map, std::size_t start,
                                    std::size_t n);

/// Interned S-pattern ids for all start indices and n = 1..n_max.
class SPatternIds {
 public:
  SPatternIds(const OrbitSegment& segment, const LandingMap& map, std::size_t n_max);
  ~SPatternIds();
  SPatternIds(SPatternIds&&) noexcept;
  SPatternIds& operator=(SPatternIds&&) noexcept;

  std::size_t n_max() const noexcept;
  /// detail::kNoId when the pattern does not fit.
  std::uint32_t id(std::size_t n, std::size_t start) const;
  std::size_t distinct(std::size_t n) const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

struct BoundRow {
  std::size_t n = 0;
  std::size_t speedup_count = 0;
  std::size_t base_count = 0;  // p_sigma(p_max * n)
  bool holds = false;
};

struct SpeedupComplexity {
  ComplexityProfile profile;
  std::uint32_t p_max = 0;
  std::size_t radius = 0;
  /// K' = |A|^(2K) * p_max
  std::uint64_t constant = 0;
  std::vector<BoundRow> rows;

  bool bound_holds() const noexcept;
  std::string report() const;
};

/// Distinct S-patterns of each length n <= n_max, stabilized on the half
/// window, together with the check p_S(n) <= K' p_sigma(p_max n).
/// Throws NotBijective or WindowTooShort.
SpeedupComplexity speedup_complexity(const OrbitSegment& segment, const JumpFunction& jump, std::size_t n_max);

}  // namespace symdyn
