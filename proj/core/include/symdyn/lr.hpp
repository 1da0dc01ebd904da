#pragma once

// Empirical linear-recurrence profiles of a shift and of its speedup.
//
// Every constant here is a window statistic: exact on the data, but only a
// proxy for the recurrence constant of the infinite system.

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "symdyn/rational.hpp"
#include "symdyn/speedup.hpp"
#include "symdyn/words.hpp"

namespace symdyn {

struct RecurrenceEntry {
  std::size_t n = 0;
  /// Largest distance between consecutive occurrences of one length-n word
  /// (shifts for sigma, S-iterates for a speedup).
  std::size_t max_gap = 0;
  Rational ratio{0};  // max_gap / n
};

struct RecurrenceProfile {
  std::size_t window = 0;
  std::vector<RecurrenceEntry> entries;

  const RecurrenceEntry& at(std::size_t n) const { return entries.at(n - 1); }
  /// Largest ratio over n_from <= n <= n_max.
  Rational max_ratio(std::size_t n_from = 1) const;
  /// `n,max_gap,ratio_num,ratio_den` with a header line.
  std::string csv() const;
};

/// Max-gap ratios over the window for n = 1..n_max. Gaps run between
/// occurrences only, so the stretches before the first and after the last
/// occurrence are never counted. Throws WindowTooShort unless the factor sets
/// are stable on the half window.
RecurrenceProfile recurrence_profile(const OrbitSegment& segment, std::size_t n_max);

/// Gaps in S-iterates between reoccurrences of each S-pattern inside one
/// S-orbit class, maximized over patterns and classes. Throws NotBijective or
/// WindowTooShort.
RecurrenceProfile speedup_recurrence_profile(const OrbitSegment& segment, const JumpFunction& jump, std::size_t n_max);

/// Sub-window length, in S-steps per unit of n, that each class must use to
/// exhibit every observed S-pattern.
inline constexpr std::size_t kMinimalityWindowFactor = 64;

struct MinimalityVerdict {
  bool minimal = false;
  std::size_t n = 0;
  std::size_t patterns = 0;   // distinct length-n S-patterns in the window
  std::size_t sub_window = 0;  // S-steps scanned per class
  /// Patterns absent from each class's sub-window, by class label 1..c.
  std::vector<std::size_t> missing;

  std::string report() const;
};

/// True iff every length-n S-pattern of the window appears within the first
/// kMinimalityWindowFactor * n steps of every S-orbit class, starting in the
/// central window. Throws WindowTooShort when a class has fewer steps left.
MinimalityVerdict minimality_probe(const OrbitSegment& segment, const JumpFunction& jump, std::size_t n);

struct ProofBoundRow {
  std::size_t n = 0;
  std::size_t max_gap = 0;
  Rational bound{0};
  bool holds = false;
};

/// gap(v) <= 2 L* L p_max |v| for every n of a speedup profile.
struct ProofBoundCheck {
  Rational l_base{0};
  Rational l_star{0};
  std::uint32_t p_max = 0;
  std::vector<ProofBoundRow> rows;

  bool holds() const noexcept;
  std::string report() const;
};

ProofBoundCheck proof_bound_check(const RecurrenceProfile& speedup_profile, const Rational& l_base,
                                  const Rational& l_star, std::uint32_t p_max);

}  // namespace symdyn
