#include "symdyn/shiftspaces.hpp"

#include <algorithm>
#include <sstream>

#include <boost/multiprecision/cpp_int.hpp>

#include "symdyn/detail/chain_ids.hpp"
#include "symdyn/error.hpp"

namespace symdyn {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

}  // namespace

Substitution::Substitution(Alphabet alphabet, std::vector<Word> images)
    : alphabet_(std::move(alphabet)), images_(std::move(images)) {
  if (images_.size() != alphabet_.size())
    fail(ErrorKind::InvalidArgument, "substitution needs exactly one image per symbol");
  for (Symbol a = 0; a < images_.size(); ++a) {
    if (!(images_[a].alphabet() == alphabet_))
      fail(ErrorKind::AlphabetMismatch, "image of '" + alphabet_.symbol(a) + "' uses another alphabet");
    if (!default_seed_ && images_[a][0] == a) default_seed_ = a;
  }
}

Substitution Substitution::parse(std::string_view text) {
  std::vector<std::pair<std::string, std::string>> rules;
  std::size_t line_no = 0;
  std::istringstream in{std::string(text)};
  std::string raw;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = raw;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    auto arrow = line.find("->");
    if (arrow == std::string_view::npos)
      fail(ErrorKind::ParseError, "line " + std::to_string(line_no) + ": expected 'symbol -> image'");
    auto lhs = trim(line.substr(0, arrow));
    auto rhs = trim(line.substr(arrow + 2));
    if (lhs.empty() || rhs.empty())
      fail(ErrorKind::ParseError, "line " + std::to_string(line_no) + ": empty symbol or image");
    for (const auto& r : rules)
      if (r.first == lhs) fail(ErrorKind::ParseError, "line " + std::to_string(line_no) + ": duplicate rule for '" + std::string(lhs) + "'");
    rules.emplace_back(std::string(lhs), std::string(rhs));
  }
  if (rules.empty()) fail(ErrorKind::ParseError, "substitution file has no rules");
  std::vector<std::string> symbols;
  for (const auto& r : rules) symbols.push_back(r.first);
  Alphabet alphabet(std::move(symbols));
  std::vector<Word> images;
  for (const auto& r : rules) images.push_back(Word::parse(alphabet, r.second));
  return Substitution(alphabet, std::move(images));
}

std::string Substitution::str() const {
  std::string out;
  for (Symbol a = 0; a < images_.size(); ++a)
    out += alphabet_.symbol(a) + " -> " + images_[a].str() + "\n";
  return out;
}

Substitution Substitution::fibonacci() {
  auto ab = Alphabet::of_chars("01");
  return Substitution(ab, {Word::parse(ab, "01"), Word::parse(ab, "0")});
}

Substitution Substitution::thue_morse() {
  auto ab = Alphabet::of_chars("01");
  return Substitution(ab, {Word::parse(ab, "01"), Word::parse(ab, "10")});
}

std::vector<std::vector<std::uint64_t>> Substitution::incidence() const {
  const auto d = alphabet_.size();
  std::vector<std::vector<std::uint64_t>> m(d, std::vector<std::uint64_t>(d, 0));
  for (Symbol j = 0; j < d; ++j)
    for (Symbol i : images_[j].letters()) ++m[i][j];
  return m;
}

OrbitSegment fixed_point_prefix(const Substitution& sub, Symbol seed, std::size_t length) {
  if (length == 0) fail(ErrorKind::InvalidArgument, "prefix length must be positive");
  const auto& first = sub.image(seed);
  if (first[0] != seed)
    fail(ErrorKind::NotSelfProlongable, "image of seed '" + sub.alphabet().symbol(seed) + "' does not start with it");
  std::vector<Symbol> out(first.letters().begin(), first.letters().end());
  // invariant: out == sub(out[0..pos))
  std::size_t pos = 1;
  while (out.size() < length) {
    if (pos >= out.size())
      fail(ErrorKind::NotSelfProlongable,
           "fixed point of '" + sub.alphabet().symbol(seed) + "' is finite (length " + std::to_string(out.size()) + ")");
    const auto img = sub.image(out[pos++]).letters();
    out.insert(out.end(), img.begin(), img.end());
  }
  out.resize(length);
  return OrbitSegment(Word(sub.alphabet(), std::move(out)));
}

PrimitivityResult primitivity_check(const Substitution& sub) {
  const auto d = sub.alphabet().size();
  std::vector<std::vector<bool>> base(d, std::vector<bool>(d));
  const auto inc = sub.incidence();
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) base[i][j] = inc[i][j] > 0;

  auto positive = [](const std::vector<std::vector<bool>>& m) {
    return std::all_of(m.begin(), m.end(), [](const auto& row) {
      return std::all_of(row.begin(), row.end(), [](bool b) { return b; });
    });
  };

  auto power = base;
  const std::size_t limit = (d - 1) * (d - 1) + 1;
  for (std::size_t k = 1; k <= limit; ++k) {
    if (positive(power)) return {true, k};
    std::vector<std::vector<bool>> next(d, std::vector<bool>(d, false));
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t l = 0; l < d; ++l)
        if (power[i][l])
          for (std::size_t j = 0; j < d; ++j)
            if (base[l][j]) next[i][j] = true;
    power = std::move(next);
  }
  return {false, std::nullopt};
}

void SturmianSpec::validate() const {
  if (partial_quotients.empty())
    fail(ErrorKind::InvalidArgument, "rotation needs at least one partial quotient");
  for (auto q : partial_quotients)
    if (q == 0) fail(ErrorKind::InvalidArgument, "partial quotients must be positive");
  if (intercept < 0 || intercept >= 1)
    fail(ErrorKind::InvalidArgument, "intercept must lie in [0, 1)");
}

SturmianSpec SturmianSpec::parse(std::string_view text) {
  SturmianSpec spec;
  auto at = text.find('@');
  auto quotients = text.substr(0, at);
  std::size_t start = 0;
  try {
    while (start <= quotients.size()) {
      auto comma = quotients.find(',', start);
      if (comma == std::string_view::npos) comma = quotients.size();
      auto tok = trim(quotients.substr(start, comma - start));
      if (tok.empty() || tok.front() == '-') fail(ErrorKind::ParseError, "bad partial quotient in '" + std::string(text) + "'");
      spec.partial_quotients.push_back(std::stoull(std::string(tok)));
      start = comma + 1;
    }
    if (at != std::string_view::npos) {
      auto frac = trim(text.substr(at + 1));
      auto slash = frac.find('/');
      std::int64_t num = std::stoll(std::string(frac.substr(0, slash)));
      std::int64_t den = slash == std::string_view::npos ? 1 : std::stoll(std::string(frac.substr(slash + 1)));
      if (den == 0) fail(ErrorKind::ParseError, "zero denominator in intercept");
      spec.intercept = boost::rational<std::int64_t>(num, den);
    }
  } catch (const std::logic_error&) {
    fail(ErrorKind::ParseError, "cannot parse sturmian description '" + std::string(text) + "'");
  }
  spec.validate();
  return spec;
}

std::string SturmianSpec::str() const {
  std::string out;
  for (std::size_t i = 0; i < partial_quotients.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(partial_quotients[i]);
  }
  out += '@' + std::to_string(intercept.numerator()) + '/' + std::to_string(intercept.denominator());
  return out;
}

OrbitSegment mechanical_prefix(const SturmianSpec& spec, std::size_t length) {
  using boost::multiprecision::cpp_int;
  spec.validate();
  if (length == 0) fail(ErrorKind::InvalidArgument, "prefix length must be positive");

  // alpha = p/q from the continued fraction [0; a1, ..., ak], evaluated bottom-up.
  cpp_int p = 0, q = 1;
  for (auto it = spec.partial_quotients.rbegin(); it != spec.partial_quotients.rend(); ++it) {
    // x <- 1 / (a + x)
    cpp_int np = q;
    cpp_int nq = cpp_int(*it) * q + p;
    p = np;
    q = nq;
  }
  // floor(n alpha + beta) = floor((n p t + r q) / (q t)) with beta = r/t
  const cpp_int r = spec.intercept.numerator();
  const cpp_int t = spec.intercept.denominator();
  const cpp_int den = q * t;
  auto floor_at = [&](std::size_t n) -> cpp_int {
    cpp_int num = cpp_int(n) * p * t + r * q;
    return num / den;  // num >= 0
  };

  auto ab = Alphabet::of_chars("01");
  std::vector<Symbol> out(length);
  cpp_int prev = floor_at(0);
  for (std::size_t n = 0; n < length; ++n) {
    cpp_int cur = floor_at(n + 1);
    out[n] = static_cast<Symbol>(cur - prev);
    prev = std::move(cur);
  }
  return OrbitSegment(Word(ab, std::move(out)));
}

std::vector<std::size_t> factor_counts(std::span<const Symbol> letters, std::size_t n_max) {
  std::vector<std::uint32_t> unit(letters.begin(), letters.end());
  std::vector<std::size_t> next(letters.size());
  for (std::size_t i = 0; i < next.size(); ++i) next[i] = i + 1;
  detail::ChainIds ids(unit, next, n_max);
  std::vector<std::size_t> counts(n_max);
  for (std::size_t n = 1; n <= n_max; ++n) counts[n - 1] = ids.distinct(n);
  return counts;
}

ComplexityProfile complexity(const OrbitSegment& segment, std::size_t n_max) {
  if (n_max == 0) fail(ErrorKind::InvalidArgument, "n_max must be positive");
  const auto letters = segment.letters();
  const std::size_t half = letters.size() / 2;
  if (half < n_max)
    fail(ErrorKind::WindowTooShort, "window of length " + std::to_string(letters.size()) +
                                        " too short for n = " + std::to_string(n_max));
  auto full = factor_counts(letters, n_max);
  auto part = factor_counts(letters.first(half), n_max);
  for (std::size_t n = 1; n <= n_max; ++n)
    if (full[n - 1] != part[n - 1])
      fail(ErrorKind::WindowTooShort, "window too short: factor count for n = " + std::to_string(n) +
                                          " not stabilized (" + std::to_string(part[n - 1]) + " vs " +
                                          std::to_string(full[n - 1]) + ")");
  return ComplexityProfile{std::move(full)};
}

}  // namespace symdyn
