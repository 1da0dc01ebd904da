#pragma once

// Generators for the shift families used by the workbench: substitution
// fixed points, mechanical (Sturmian) words, and factor complexity.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <boost/rational.hpp>

#include "symdyn/words.hpp"

namespace symdyn {

/// Substitution rule set; image(a) is a non-empty word for every symbol a.
class Substitution {
 public:
  /// `images[a]` is the image of symbol a. Throws InvalidArgument on a size or
  /// alphabet mismatch.
  Substitution(Alphabet alphabet, std::vector<Word> images);

  /// Rule-file format: one `symbol -> image` per line, `#` starts a comment.
  /// The alphabet is the set of left-hand symbols in file order. The default
  /// seed is the first rule whose image starts with its own symbol.
  static Substitution parse(std::string_view text);
  std::string str() const;

  static Substitution fibonacci();   // 0->01, 1->0
  static Substitution thue_morse();  // 0->01, 1->10

  const Alphabet& alphabet() const noexcept { return alphabet_; }
  const Word& image(Symbol a) const { return images_.at(a); }
  const std::optional<Symbol>& default_seed() const noexcept { return default_seed_; }

  /// incidence[i][j] = number of letters i in image(j).
  std::vector<std::vector<std::uint64_t>> incidence() const;

 private:
  Alphabet alphabet_;
  std::vector<Word> images_;
  std::optional<Symbol> default_seed_;
};

/// First `length` letters of the one-sided fixed point lim sub^k(seed).
/// Throws NotSelfProlongable when image(seed) does not start with seed or the
/// iteration stops growing before `length` letters.
OrbitSegment fixed_point_prefix(const Substitution& sub, Symbol seed, std::size_t length);

struct PrimitivityResult {
  bool primitive = false;
  /// Smallest k with incidence^k entrywise positive, when primitive.
  std::optional<std::size_t> power;
};

/// Checks powers up to (|A|-1)^2 + 1, which is sufficient for primitivity.
PrimitivityResult primitivity_check(const Substitution& sub);

/// Rotation alpha = [0; a1, a2, ..., ak] given by its partial quotients and an
/// intercept beta in [0, 1). Both are kept exact.
struct SturmianSpec {
  std::vector<std::uint64_t> partial_quotients;
  boost::rational<std::int64_t> intercept{0};

  /// Throws InvalidArgument on empty or non-positive quotients or an
  /// intercept outside [0, 1).
  void validate() const;

  /// `q1,q2,...[@num/den]`, e.g. `1,1,1,1,1@0/1`.
  static SturmianSpec parse(std::string_view text);
  std::string str() const;
};

/// s_n = floor((n+1) alpha + beta) - floor(n alpha + beta) for 0 <= n < length,
/// over the alphabet {0, 1}, using the convergent value of alpha exactly.
OrbitSegment mechanical_prefix(const SturmianSpec& spec, std::size_t length);

/// counts[n-1] = number of distinct length-n factors.
struct ComplexityProfile {
  std::vector<std::size_t> counts;

  std::size_t n_max() const noexcept { return counts.size(); }
  std::size_t at(std::size_t n) const { return counts.at(n - 1); }
};

/// Raw factor counts of the window for n = 1..n_max, no stabilization check.
std::vector<std::size_t> factor_counts(std::span<const Symbol> letters, std::size_t n_max);

/// Factor counts of the underlying shift for n <= n_max. The counts are
/// accepted only when the first half of the window already shows the same
/// counts as the whole window; otherwise throws WindowTooShort naming the
/// first offending n.
ComplexityProfile complexity(const OrbitSegment& segment, std::size_t n_max);

}  // namespace symdyn
