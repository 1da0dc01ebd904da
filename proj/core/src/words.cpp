#include "symdyn/words.hpp"

#include <algorithm>
#include <unordered_map>
#include <unordered_set>

#include "symdyn/error.hpp"

namespace symdyn {

struct Alphabet::Data {
  std::vector<std::string> symbols;
  std::unordered_map<std::string, Symbol> index;
  bool single_char = true;
};

Alphabet::Alphabet(std::vector<std::string> symbols) {
  if (symbols.empty()) fail(ErrorKind::InvalidArgument, "alphabet must not be empty");
  auto data = std::make_shared<Data>();
  for (std::size_t i = 0; i < symbols.size(); ++i) {
    const auto& s = symbols[i];
    if (s.empty()) fail(ErrorKind::InvalidArgument, "alphabet symbols must be non-empty");
    if (s.find_first_of(", \t\r\n") != std::string::npos)
      fail(ErrorKind::InvalidArgument, "alphabet symbol '" + s + "' contains a separator");
    if (!data->index.emplace(s, static_cast<Symbol>(i)).second)
      fail(ErrorKind::InvalidArgument, "duplicate alphabet symbol '" + s + "'");
    if (s.size() != 1) data->single_char = false;
  }
  data->symbols = std::move(symbols);
  data_ = std::move(data);
}

Alphabet Alphabet::of_chars(std::string_view chars) {
  std::vector<std::string> symbols;
  symbols.reserve(chars.size());
  for (char c : chars) symbols.emplace_back(1, c);
  return Alphabet(std::move(symbols));
}

std::size_t Alphabet::size() const noexcept { return data_->symbols.size(); }

const std::string& Alphabet::symbol(Symbol s) const {
  if (s >= data_->symbols.size())
    fail(ErrorKind::OutOfRange, "symbol index " + std::to_string(s) + " outside alphabet");
  return data_->symbols[s];
}

const std::vector<std::string>& Alphabet::symbols() const noexcept { return data_->symbols; }

std::optional<Symbol> Alphabet::find(std::string_view token) const {
  auto it = data_->index.find(std::string(token));
  if (it == data_->index.end()) return std::nullopt;
  return it->second;
}

Symbol Alphabet::index_of(std::string_view token) const {
  if (auto s = find(token)) return *s;
  fail(ErrorKind::ParseError, "unknown symbol '" + std::string(token) + "'");
}

bool Alphabet::single_char() const noexcept { return data_->single_char; }

bool operator==(const Alphabet& a, const Alphabet& b) {
  return a.data_ == b.data_ || a.data_->symbols == b.data_->symbols;
}

Word::Word(Alphabet alphabet, std::vector<Symbol> letters)
    : alphabet_(std::move(alphabet)), letters_(std::move(letters)) {
  if (letters_.empty()) fail(ErrorKind::InvalidArgument, "words must be non-empty");
  const auto n = alphabet_.size();
  for (Symbol s : letters_)
    if (s >= n) fail(ErrorKind::InvalidArgument, "letter index " + std::to_string(s) + " outside alphabet");
}

Word Word::parse(const Alphabet& alphabet, std::string_view text) {
  std::vector<Symbol> letters;
  if (text.find(',') != std::string_view::npos) {
    std::size_t start = 0;
    while (start <= text.size()) {
      auto comma = text.find(',', start);
      if (comma == std::string_view::npos) comma = text.size();
      letters.push_back(alphabet.index_of(text.substr(start, comma - start)));
      start = comma + 1;
    }
  } else {
    if (!alphabet.single_char() && !text.empty()) {
      // a lone multi-character symbol
      if (auto s = alphabet.find(text)) return Word(alphabet, {*s});
    }
    for (char c : text) letters.push_back(alphabet.index_of(std::string_view(&c, 1)));
  }
  if (letters.empty()) fail(ErrorKind::ParseError, "empty word");
  return Word(alphabet, std::move(letters));
}

Word Word::subword(std::size_t pos, std::size_t len) const {
  if (len == 0 || pos > letters_.size() || len > letters_.size() - pos)
    fail(ErrorKind::OutOfRange, "subword [" + std::to_string(pos) + ", +" + std::to_string(len) +
                                    ") outside word of length " + std::to_string(letters_.size()));
  return Word(alphabet_, std::vector<Symbol>(letters_.begin() + pos, letters_.begin() + pos + len));
}

Word Word::operator+(const Word& rhs) const {
  if (!(alphabet_ == rhs.alphabet_)) fail(ErrorKind::AlphabetMismatch, "cannot concatenate words over different alphabets");
  std::vector<Symbol> out(letters_);
  out.insert(out.end(), rhs.letters_.begin(), rhs.letters_.end());
  return Word(alphabet_, std::move(out));
}

std::string render(const Alphabet& alphabet, std::span<const Symbol> letters) {
  std::string out;
  const bool sep = !alphabet.single_char();
  for (std::size_t i = 0; i < letters.size(); ++i) {
    if (sep && i > 0) out.push_back(',');
    out += alphabet.symbol(letters[i]);
  }
  return out;
}

std::string Word::str() const { return render(alphabet_, letters_); }

bool operator==(const Word& a, const Word& b) {
  return a.letters_ == b.letters_ && a.alphabet_ == b.alphabet_;
}

std::strong_ordering operator<=>(const Word& a, const Word& b) {
  return std::lexicographical_compare_three_way(a.letters_.begin(), a.letters_.end(),
                                                b.letters_.begin(), b.letters_.end());
}

Symbol OrbitSegment::at(std::size_t i) const {
  if (i >= size())
    fail(ErrorKind::OutOfWindow, "index " + std::to_string(i) + " outside window of length " + std::to_string(size()));
  return word_[i];
}

Word OrbitSegment::slice(std::size_t pos, std::size_t len) const {
  if (len == 0 || pos > size() || len > size() - pos)
    fail(ErrorKind::OutOfWindow, "slice [" + std::to_string(pos) + ", +" + std::to_string(len) +
                                     ") outside window of length " + std::to_string(size()));
  return word_.subword(pos, len);
}

OrbitSegment OrbitSegment::prefix(std::size_t len) const {
  return OrbitSegment(slice(0, len), origin_);
}

std::vector<std::size_t> occurrences(const OrbitSegment& segment, const Word& w) {
  if (!(segment.alphabet() == w.alphabet()))
    fail(ErrorKind::AlphabetMismatch, "word and window use different alphabets");
  std::vector<std::size_t> out;
  const auto hay = segment.letters();
  const auto needle = w.letters();
  if (needle.size() > hay.size()) return out;
  for (std::size_t i = 0; i + needle.size() <= hay.size(); ++i)
    if (std::equal(needle.begin(), needle.end(), hay.begin() + i)) out.push_back(i);
  return out;
}

std::set<Word> subwords(const OrbitSegment& segment, std::size_t n) {
  if (n == 0 || n > segment.size())
    fail(ErrorKind::OutOfRange, "factor length " + std::to_string(n) + " outside [1, " +
                                    std::to_string(segment.size()) + "]");
  std::set<Word> out;
  const auto letters = segment.letters();
  std::set<std::vector<Symbol>> seen;
  for (std::size_t i = 0; i + n <= letters.size(); ++i) {
    std::vector<Symbol> f(letters.begin() + i, letters.begin() + i + n);
    if (seen.insert(f).second) out.emplace(segment.alphabet(), std::move(f));
  }
  return out;
}

}  // namespace symdyn
