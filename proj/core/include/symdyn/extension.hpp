#pragma once

// Group extension of the derived shift by orbit-entry permutations.
//
// For a bijective jump the sigma-orbit through a window splits into c S-orbit
// classes. At every occurrence of a base word w each class lands somewhere in
// an entry block of p_max consecutive indices; ordering the first landings in
// that block by position numbers the classes 1..c locally. Following the
// classes from one occurrence of w to the next gives a permutation of
// {1..c}, which depends only on the return word in between.

#include <cstddef>
#include <cstdint>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "symdyn/permutation.hpp"
#include "symdyn/rational.hpp"
#include "symdyn/returnwords.hpp"
#include "symdyn/speedup.hpp"
#include "symdyn/words.hpp"

namespace symdyn {

enum class EntryMode {
  /// Requires |w| >= p_max + 4K + 2; entry block is in-word offsets
  /// [2K+1, 2K+1+p_max).
  strict,
  /// Any length; entry block is in-word offsets [K, K+p_max).
  relaxed,
};

struct EntryProfile {
  Word word;
  /// Start of the occurrence of w the profile was read from.
  std::size_t occurrence = 0;
  /// 1-based in-word positions of the entries, increasing.
  std::vector<std::size_t> positions;
  /// Global orbit-class label of each entry.
  std::vector<std::uint32_t> classes;

  std::size_t degree() const noexcept { return positions.size(); }
  std::string str() const;
};

/// Skew-product orbit of (derived sequence, identity) along consecutive
/// occurrences of w. perms[i] carries occurrence i to occurrence i+1 and
/// cumulative[i+1] = cumulative[i] * perms[i], cumulative[0] = e.
struct ExtensionTrace {
  std::size_t degree = 1;
  Word base;
  std::vector<std::size_t> starts;   // one more than perms
  std::vector<std::size_t> derived;  // return-word number of each step
  std::vector<Word> steps;           // return word of each step
  std::vector<Permutation> perms;
  std::vector<Permutation> cumulative;
  /// Trace position that plays the role of time 0 for cocycle().
  std::size_t origin = 0;

  std::size_t length() const noexcept { return perms.size(); }
  /// Same trace with time 0 moved by m steps. Throws OutOfRange.
  ExtensionTrace shifted(std::ptrdiff_t m) const;
  /// `occurrence,start,return_word,step,cumulative` rows; `cumulative` is the
  /// running product after the step.
  std::string csv() const;
};

/// Cocycle over n steps from the trace origin:
///   n > 0: perms[o] * ... * perms[o+n-1]
///   n = 0: e
///   n < 0: (perms[o+n] * ... * perms[o-1])^-1
/// Throws OutOfRange when the steps leave the trace.
Permutation cocycle(const ExtensionTrace& trace, std::ptrdiff_t n);

struct LoopGenerator {
  Permutation perm;
  std::size_t from = 0;  // anchor occurrence start
  std::size_t to = 0;
};

/// Lower estimate of a local group: the subgroup generated by cocycles along
/// loops from the first occurrence of an anchor word to each later one.
struct SubgroupEstimate {
  std::size_t degree = 1;
  std::vector<LoopGenerator> generators;
  std::set<Permutation> elements;
  std::size_t window = 0;
  std::size_t loops = 0;

  std::string str() const;
};

struct ElementGap {
  Permutation element;
  std::size_t visits = 0;
  /// Largest gaps between consecutive visits, in derived steps and in shifts.
  std::size_t max_derived_gap = 0;
  std::size_t max_shift_gap = 0;

  bool observed() const noexcept { return visits > 0; }
};

struct GapScan {
  std::size_t word_length = 0;
  std::vector<ElementGap> elements;
  /// max over elements of max_shift_gap / |w|: the empirical L* proxy.
  Rational ratio{0};

  bool all_observed() const noexcept;
  std::string report() const;
};

/// Everything the extension operations share for one (window, jump, w).
class GroupExtension {
 public:
  /// Throws NotBijective, WindowTooShort, WordTooShort (strict mode) or
  /// OutOfWindow when no occurrence of w has a complete entry block.
  GroupExtension(const OrbitSegment& segment, const JumpFunction& jump, const Word& w, EntryMode mode);

  std::uint32_t orbit_number() const noexcept { return degree_; }
  std::uint32_t p_max() const noexcept { return map_.p_max; }
  const ReturnWordSystem& returns() const noexcept { return returns_; }
  const OrbitColoring& coloring() const noexcept { return coloring_; }
  const LandingMap& landing() const noexcept { return map_; }
  std::size_t block_offset() const noexcept { return block_offset_; }
  /// Occurrence starts that have a complete entry block, consecutive in the
  /// occurrence list.
  const std::vector<std::size_t>& starts() const noexcept { return trace_.starts; }

  /// Entry profile at the k-th usable occurrence.
  EntryProfile entry_profile(std::size_t k = 0) const;
  /// Permutation carrying usable occurrence k to k+1.
  const Permutation& transition(std::size_t k) const { return trace_.perms.at(k); }
  const ExtensionTrace& trace() const noexcept { return trace_; }

  SubgroupEstimate local_group(const Word& anchor) const;
  GapScan gap_scan() const;

 private:
  std::vector<std::size_t> slots_at(std::size_t start) const;

  OrbitSegment segment_;
  Word word_;
  LandingMap map_;
  OrbitColoring coloring_;
  ReturnWordSystem returns_;
  std::uint32_t degree_ = 0;
  std::size_t block_offset_ = 0;
  ExtensionTrace trace_;
};

EntryProfile entry_positions(const OrbitSegment& segment, const JumpFunction& jump, const Word& w, EntryMode mode);

/// Permutation between consecutive occurrence starts i < j of w. Throws
/// InvalidArgument unless i, j are consecutive occurrences and OutOfWindow
/// when the orbits leave the window before occurrence j.
Permutation transition_permutation(const OrbitSegment& segment, const JumpFunction& jump, const Word& w,
                                   std::size_t i, std::size_t j, EntryMode mode = EntryMode::relaxed);

SubgroupEstimate local_group(const OrbitSegment& segment, const JumpFunction& jump, const Word& w,
                             const Word& anchor, EntryMode mode = EntryMode::relaxed);

/// Some g with b = g a g^-1, or nullopt. Throws DegreeMismatch.
std::optional<Permutation> conjugacy_check(const SubgroupEstimate& a, const SubgroupEstimate& b);

GapScan extension_gap_scan(const OrbitSegment& segment, const JumpFunction& jump, const Word& w,
                           EntryMode mode = EntryMode::relaxed);

}  // namespace symdyn
