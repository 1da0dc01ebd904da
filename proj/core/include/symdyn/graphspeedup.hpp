#pragma once

// Graph presentations of SFTs and sofic shifts, higher-block recoding, and
// the speedup construction on presentations.
//
// Speedup presentations are coded by blocks: an S-orbit point is recorded as
// the sequence of M-blocks centered at its consecutive landings, with
// M = 2 max(p_max, K) + 1. Words of such presentations are Words over
// block_alphabet(A, M).

#include <compare>
#include <cstddef>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "symdyn/speedup.hpp"
#include "symdyn/words.hpp"

namespace symdyn {

/// Vertex-labeled graph. Labels are distinct words over `alphabet`, all of
/// the same length (1 for a plain SFT, M after block recoding).
struct SftPresentation {
  Alphabet alphabet;
  std::vector<Word> vertices;
  std::set<std::pair<std::size_t, std::size_t>> edges;

  std::size_t block_length() const;
  friend bool operator==(const SftPresentation&, const SftPresentation&) = default;
};

struct SoficEdge {
  std::size_t from = 0;
  std::size_t to = 0;
  Word label;

  friend bool operator==(const SoficEdge&, const SoficEdge&) = default;
  friend std::strong_ordering operator<=>(const SoficEdge& a, const SoficEdge& b) {
    if (auto c = a.from <=> b.from; c != 0) return c;
    if (auto c = a.to <=> b.to; c != 0) return c;
    return a.label <=> b.label;
  }
};

/// Edge-labeled graph; vertices carry names only, labels may repeat.
struct SoficPresentation {
  Alphabet alphabet;
  std::vector<std::string> vertices;
  std::set<SoficEdge> edges;

  std::size_t label_length() const;
  friend bool operator==(const SoficPresentation&, const SoficPresentation&) = default;
};

using Presentation = std::variant<SftPresentation, SoficPresentation>;

/// Text format:
///   alphabet <sym> <sym> ...   (optional; otherwise symbols in order of appearance)
///   vertex <label-or-name>
///   edge <from> <to> [label]
/// A file whose edges carry labels is sofic; otherwise it is an SFT whose
/// vertex tokens are their labels. `#` starts a comment.
Presentation parse_presentation(std::string_view text);
std::string print(const SftPresentation& p);
std::string print(const SoficPresentation& p);
std::string to_dot(const SftPresentation& p);
std::string to_dot(const SoficPresentation& p);

/// Removes vertices without an incoming or an outgoing edge until none are
/// left; surviving vertices keep their relative order.
SftPresentation prune(const SftPresentation& p);
SoficPresentation prune(const SoficPresentation& p);

/// The sofic presentation of an SFT: edge u -> v labeled by label(u).
/// Requires single-letter vertex labels.
SoficPresentation as_sofic(const SftPresentation& p);

/// All blocks of length m over `base` in lexicographic order of letter
/// indices. Symbols are the block texts (joined with '.' when base symbols
/// are longer than one character). Throws DegenerateInput beyond 2^20 blocks.
Alphabet block_alphabet(const Alphabet& base, std::size_t m);

/// Admissible M-blocks as vertices, overlap-compatible pairs as edges.
/// Requires single-letter vertex labels; M = 1 returns the pruned input.
/// Throws DegenerateInput when no admissible M-block exists.
SftPresentation block_presentation(const SftPresentation& sft, std::size_t m);

/// Block length used by the speedup construction: 2 max(p_max, K) + 1, where
/// p_max is taken over the (2K+1)-words of the presentation's language.
/// Throws TotalityFailure when the jump misses such a word.
std::size_t speedup_block_length(const Presentation& p, const JumpFunction& jump);

/// Vertices are the M-blocks; from each block v one edge per admissible path
/// of length p(v), to the block reached after p(v) shifts. Parallel edges
/// collapse. Pruned before and after.
SftPresentation speedup_sft(const SftPresentation& sft, const JumpFunction& jump);

/// Vertices are edge-paths of length M; from each path one edge per label
/// path of length p to the path reached after p steps, labeled with the
/// source block. Pruned before and after.
SoficPresentation speedup_sofic(const SoficPresentation& sofic, const JumpFunction& jump);

/// Label words of the paths of n vertices (SFT) or n edges (sofic). Words
/// over the presentation alphabet for single-letter labels, otherwise over
/// block_alphabet(alphabet, label length).
std::set<Word> language_of_presentation(const SftPresentation& p, std::size_t n);
std::set<Word> language_of_presentation(const SoficPresentation& p, std::size_t n);
std::set<Word> language_of_presentation(const Presentation& p, std::size_t n);

/// Oracle side: runs the speedup on every admissible word of the base
/// presentation long enough for n landings and collects the block codings
/// of n consecutive landings.
std::set<Word> brute_force_speedup_language(const Presentation& base, const JumpFunction& jump, std::size_t n);

/// Oracle side: the length-n S-patterns of every admissible word of the base
/// presentation long enough to contain them.
std::set<SPattern> brute_force_spatterns(const Presentation& base, const JumpFunction& jump, std::size_t n);

/// The length-n S-patterns read off paths of n+1 block labels in a speedup
/// presentation produced by speedup_sft or speedup_sofic.
std::set<SPattern> spatterns_of_presentation(const Presentation& sped, const JumpFunction& jump, std::size_t n);

}  // namespace symdyn
