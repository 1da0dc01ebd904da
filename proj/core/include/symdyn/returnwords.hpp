#pragma once

// Return words and derived sequences.

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "symdyn/rational.hpp"
#include "symdyn/words.hpp"

namespace symdyn {

/// Return words of a base word w on one window.
///
/// `returns` lists the distinct words found between consecutive occurrence
/// starts of w, numbered 1..N in order of first occurrence. `derived[i]` is
/// the 1-based number of the i-th complete return, so that concatenating
/// returns[derived[0]-1], returns[derived[1]-1], ... reproduces the window
/// from the first to the last occurrence of w. A trailing incomplete return
/// is dropped.
struct ReturnWordSystem {
  Word base;
  std::vector<Word> returns;
  std::vector<std::size_t> derived;
  /// Occurrence starts of w in the source window.
  std::vector<std::size_t> starts;

  std::size_t count() const noexcept { return returns.size(); }
  std::size_t max_return_length() const noexcept;
  /// 1-based number of a return word, 0 when it is not one.
  std::size_t index_of(const Word& r) const;

  /// Base word line, one return word per line, then the derived indices
  /// separated by spaces.
  std::string str() const;
  static ReturnWordSystem parse(std::string_view text, const Alphabet& alphabet);
};

/// Throws WindowTooShort when w occurs fewer than 3 times.
ReturnWordSystem return_words(const OrbitSegment& segment, const Word& w);

struct ReturnBoundVerdict {
  Rational l_hat;
  std::size_t count = 0;
  Rational count_bound;  // L(L+1)^2
  std::size_t max_length = 0;
  Rational length_bound;  // L|w|
  bool count_ok = false;
  bool length_ok = false;

  bool holds() const noexcept { return count_ok && length_ok; }
  std::string report() const;
};

/// N <= L(L+1)^2 and max |R_j| <= L |w| for an empirical constant L.
ReturnBoundVerdict return_bound_check(const ReturnWordSystem& system, const Rational& l_hat);

/// The derived sequence as a window over the alphabet {1..N}.
OrbitSegment derived_segment(const ReturnWordSystem& system);

/// Largest number of derived letters before some return word reoccurs,
/// over complete gaps in the window. An empirical proxy for L'.
std::size_t derived_gap_max(const ReturnWordSystem& system);

}  // namespace symdyn
