#pragma once

// Alphabets, finite words and windows of bi-infinite sequences.
//
// Symbols are interned to small integer indices when an Alphabet is built;
// every scan in the library runs on index sequences.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace symdyn {

using Symbol = std::uint32_t;

/// Ordered finite set of distinct symbol tokens. Copies share storage.
class Alphabet {
 public:
  /// Throws InvalidArgument on an empty list, duplicates or empty tokens.
  explicit Alphabet(std::vector<std::string> symbols);

  /// One symbol per character, e.g. `Alphabet::of_chars("01")`.
  static Alphabet of_chars(std::string_view chars);

  std::size_t size() const noexcept;
  const std::string& symbol(Symbol s) const;
  const std::vector<std::string>& symbols() const noexcept;
  std::optional<Symbol> find(std::string_view token) const;
  /// Like find() but throws ParseError naming the token.
  Symbol index_of(std::string_view token) const;
  /// True when every symbol is a single character, so words print unseparated.
  bool single_char() const noexcept;

  friend bool operator==(const Alphabet& a, const Alphabet& b);

 private:
  struct Data;
  std::shared_ptr<const Data> data_;
};

/// Non-empty finite word over an alphabet.
class Word {
 public:
  /// Throws InvalidArgument when `letters` is empty or holds an invalid index.
  Word(Alphabet alphabet, std::vector<Symbol> letters);

  /// Parses plain symbol text. Text containing ',' is split on commas,
  /// otherwise each character is one symbol.
  static Word parse(const Alphabet& alphabet, std::string_view text);

  const Alphabet& alphabet() const noexcept { return alphabet_; }
  std::span<const Symbol> letters() const noexcept { return letters_; }
  std::size_t size() const noexcept { return letters_.size(); }
  Symbol operator[](std::size_t i) const { return letters_[i]; }

  /// Throws OutOfRange when [pos, pos+len) leaves the word or len == 0.
  Word subword(std::size_t pos, std::size_t len) const;
  /// Throws AlphabetMismatch.
  Word operator+(const Word& rhs) const;

  std::string str() const;

  friend bool operator==(const Word& a, const Word& b);
  /// Orders by letter indices only; callers keep alphabets consistent.
  friend std::strong_ordering operator<=>(const Word& a, const Word& b);

 private:
  Alphabet alphabet_;
  std::vector<Symbol> letters_;
};

/// Prints a symbol sequence the same way Word::str() does.
std::string render(const Alphabet& alphabet, std::span<const Symbol> letters);

/// Finite window of a point of a subshift. Position 0 of the window sits at
/// `origin` in the ambient bi-infinite sequence. Windows never wrap.
class OrbitSegment {
 public:
  explicit OrbitSegment(Word word, std::int64_t origin = 0)
      : word_(std::move(word)), origin_(origin) {}

  const Word& word() const noexcept { return word_; }
  const Alphabet& alphabet() const noexcept { return word_.alphabet(); }
  std::span<const Symbol> letters() const noexcept { return word_.letters(); }
  std::size_t size() const noexcept { return word_.size(); }
  std::int64_t origin() const noexcept { return origin_; }

  /// Throws OutOfWindow.
  Symbol at(std::size_t i) const;
  /// Throws OutOfWindow when the slice leaves the window.
  Word slice(std::size_t pos, std::size_t len) const;
  /// First `len` letters; throws OutOfWindow when len exceeds the window.
  OrbitSegment prefix(std::size_t len) const;

 private:
  Word word_;
  std::int64_t origin_;
};

/// Every start index of `w` in the window, overlaps included, increasing.
/// Throws AlphabetMismatch.
std::vector<std::size_t> occurrences(const OrbitSegment& segment, const Word& w);

/// Distinct length-n factors lying fully inside the window.
/// Throws OutOfRange unless 1 <= n <= |segment|.
std::set<Word> subwords(const OrbitSegment& segment, std::size_t n);

}  // namespace symdyn
