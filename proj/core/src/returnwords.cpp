#include "symdyn/returnwords.hpp"

#include <algorithm>
#include <sstream>

#include "symdyn/error.hpp"

namespace symdyn {

std::size_t ReturnWordSystem::max_return_length() const noexcept {
  std::size_t m = 0;
  for (const auto& r : returns) m = std::max(m, r.size());
  return m;
}

std::size_t ReturnWordSystem::index_of(const Word& r) const {
  for (std::size_t j = 0; j < returns.size(); ++j)
    if (returns[j] == r) return j + 1;
  return 0;
}

std::string ReturnWordSystem::str() const {
  std::string out = base.str() + "\n";
  for (const auto& r : returns) out += r.str() + "\n";
  for (std::size_t i = 0; i < derived.size(); ++i) {
    if (i) out += ' ';
    out += std::to_string(derived[i]);
  }
  out += "\n";
  return out;
}

ReturnWordSystem ReturnWordSystem::parse(std::string_view text, const Alphabet& alphabet) {
  std::istringstream in{std::string(text)};
  std::vector<std::string> lines;
  for (std::string line; std::getline(in, line);)
    if (!line.empty()) lines.push_back(line);
  if (lines.size() < 3) fail(ErrorKind::ParseError, "return-word system needs a base, returns and a derived line");
  ReturnWordSystem sys{Word::parse(alphabet, lines.front()), {}, {}, {}};
  for (std::size_t i = 1; i + 1 < lines.size(); ++i) sys.returns.push_back(Word::parse(alphabet, lines[i]));
  std::istringstream derived(lines.back());
  for (std::string tok; derived >> tok;) {
    std::size_t idx = 0;
    try {
      idx = std::stoul(tok);
    } catch (const std::logic_error&) {
      fail(ErrorKind::ParseError, "bad derived index '" + tok + "'");
    }
    if (idx == 0 || idx > sys.returns.size()) fail(ErrorKind::ParseError, "derived index " + tok + " out of range");
    sys.derived.push_back(idx);
  }
  return sys;
}

ReturnWordSystem return_words(const OrbitSegment& segment, const Word& w) {
  auto starts = occurrences(segment, w);
  if (starts.size() < 3)
    fail(ErrorKind::WindowTooShort, "window too short: '" + w.str() + "' occurs " + std::to_string(starts.size()) +
                                        " times, need 3");
  ReturnWordSystem sys{w, {}, {}, std::move(starts)};
  for (std::size_t i = 0; i + 1 < sys.starts.size(); ++i) {
    Word r = segment.slice(sys.starts[i], sys.starts[i + 1] - sys.starts[i]);
    std::size_t idx = sys.index_of(r);
    if (idx == 0) {
      sys.returns.push_back(std::move(r));
      idx = sys.returns.size();
    }
    sys.derived.push_back(idx);
  }
  return sys;
}

std::string ReturnBoundVerdict::report() const {
  std::ostringstream out;
  out << "L: " << to_string(l_hat) << "\n";
  out << "return words: " << count << " <= " << to_string(count_bound) << " : " << (count_ok ? "yes" : "no") << "\n";
  out << "max return length: " << max_length << " <= " << to_string(length_bound) << " : "
      << (length_ok ? "yes" : "no") << "\n";
  return out.str();
}

ReturnBoundVerdict return_bound_check(const ReturnWordSystem& system, const Rational& l_hat) {
  ReturnBoundVerdict v;
  v.l_hat = l_hat;
  v.count = system.count();
  v.count_bound = l_hat * (l_hat + 1) * (l_hat + 1);
  v.max_length = system.max_return_length();
  v.length_bound = l_hat * static_cast<std::int64_t>(system.base.size());
  v.count_ok = Rational(static_cast<std::int64_t>(v.count)) <= v.count_bound;
  v.length_ok = Rational(static_cast<std::int64_t>(v.max_length)) <= v.length_bound;
  return v;
}

OrbitSegment derived_segment(const ReturnWordSystem& system) {
  if (system.derived.empty()) fail(ErrorKind::InvalidArgument, "empty derived sequence");
  std::vector<std::string> names;
  for (std::size_t j = 1; j <= system.count(); ++j) names.push_back(std::to_string(j));
  Alphabet ab(std::move(names));
  std::vector<Symbol> letters;
  letters.reserve(system.derived.size());
  for (auto d : system.derived) letters.push_back(static_cast<Symbol>(d - 1));
  return OrbitSegment(Word(ab, std::move(letters)));
}

std::size_t derived_gap_max(const ReturnWordSystem& system) {
  std::vector<std::size_t> last(system.count() + 1, 0);
  std::vector<bool> seen(system.count() + 1, false);
  std::size_t gap = 0;
  for (std::size_t i = 0; i < system.derived.size(); ++i) {
    const auto d = system.derived[i];
    if (seen[d]) gap = std::max(gap, i - last[d]);
    seen[d] = true;
    last[d] = i;
  }
  return gap;
}

}  // namespace symdyn
