#include "symdyn/speedup.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

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

std::uint32_t parse_positive(std::string_view tok, std::size_t line_no) {
  std::uint64_t v = 0;
  if (tok.empty()) fail(ErrorKind::ParseError, "line " + std::to_string(line_no) + ": missing integer");
  for (char c : tok) {
    if (c < '0' || c > '9')
      fail(ErrorKind::ParseError, "line " + std::to_string(line_no) + ": '" + std::string(tok) + "' is not a non-negative integer");
    v = v * 10 + static_cast<std::uint64_t>(c - '0');
    if (v > 0xffffffffULL) fail(ErrorKind::ParseError, "line " + std::to_string(line_no) + ": integer too large");
  }
  return static_cast<std::uint32_t>(v);
}

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), std::size_t{0}); }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent_[std::max(a, b)] = std::min(a, b);
  }

 private:
  std::vector<std::size_t> parent_;
};

WindowCheck check_window(const LandingMap& map, std::size_t window) {
  WindowCheck out;
  out.window = window;
  const auto k = map.radius;
  std::vector<std::uint32_t> count(window, 0);
  std::vector<std::size_t> first_pred(window, 0);
  for (std::size_t i = k; i + k < window; ++i) {
    const auto t = map.landing(i);
    if (t >= window) continue;
    if (count[t] == 0) first_pred[t] = i;
    ++count[t];
  }
  // Targets whose possible predecessors [j - p_max, j) all lie in the interior.
  for (std::size_t j = k + map.p_max; j + k < window; ++j) {
    if (count[j] >= 2 && !out.collision) {
      std::size_t second = first_pred[j] + 1;
      while (second < j && !(map.landing(second) == j)) ++second;
      out.collision = Collision{first_pred[j], second, j};
      out.injective = false;
    }
    if (count[j] == 0 && !out.uncovered) {
      out.uncovered = j;
      out.surjective = false;
    }
  }
  return out;
}

}  // namespace

JumpFunction JumpFunction::constant(std::uint32_t k) {
  if (k == 0) fail(ErrorKind::InvalidArgument, "jump values must be positive");
  JumpFunction f;
  f.constant_ = k;
  return f;
}

JumpFunction JumpFunction::table(Alphabet alphabet, std::size_t radius, Table values) {
  if (values.empty()) fail(ErrorKind::InvalidArgument, "jump table is empty");
  for (const auto& [key, v] : values) {
    if (key.size() != 2 * radius + 1)
      fail(ErrorKind::InvalidArgument, "jump table key '" + render(alphabet, key) + "' does not have length 2K+1 = " +
                                           std::to_string(2 * radius + 1));
    for (auto s : key)
      if (s >= alphabet.size()) fail(ErrorKind::InvalidArgument, "jump table key uses a symbol outside the alphabet");
    if (v == 0) fail(ErrorKind::InvalidArgument, "jump values must be positive");
  }
  JumpFunction f;
  f.radius_ = radius;
  f.alphabet_ = std::move(alphabet);
  f.table_ = std::move(values);
  return f;
}

JumpFunction JumpFunction::parse(std::string_view text, const Alphabet& alphabet) {
  std::istringstream in{std::string(text)};
  std::string raw;
  std::size_t line_no = 0;
  std::optional<std::size_t> radius;
  Table values;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = raw;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto space = line.find_first_of(" \t");
    if (space == std::string_view::npos)
      fail(ErrorKind::ParseError, "line " + std::to_string(line_no) + ": expected two fields");
    const auto head = line.substr(0, space);
    const auto tail = trim(line.substr(space));
    if (!radius) {
      if (head == "constant") {
        const auto k = parse_positive(tail, line_no);
        if (k == 0) fail(ErrorKind::ParseError, "line " + std::to_string(line_no) + ": constant jump must be positive");
        // trailing content after a constant header is rejected
        while (std::getline(in, raw)) {
          ++line_no;
          std::string_view rest = raw;
          if (auto hash = rest.find('#'); hash != std::string_view::npos) rest = rest.substr(0, hash);
          if (!trim(rest).empty())
            fail(ErrorKind::ParseError, "line " + std::to_string(line_no) + ": constant jump takes no table");
        }
        return constant(k);
      }
      if (head != "K") fail(ErrorKind::ParseError, "line " + std::to_string(line_no) + ": expected 'K <int>' or 'constant <int>'");
      radius = parse_positive(tail, line_no);
      continue;
    }
    Word key = Word::parse(alphabet, head);
    if (key.size() != 2 * *radius + 1)
      fail(ErrorKind::ParseError, "line " + std::to_string(line_no) + ": word '" + std::string(head) +
                                      "' does not have length 2K+1 = " + std::to_string(2 * *radius + 1));
    const auto v = parse_positive(tail, line_no);
    if (v == 0) fail(ErrorKind::ParseError, "line " + std::to_string(line_no) + ": jump values must be positive");
    std::vector<Symbol> letters(key.letters().begin(), key.letters().end());
    if (!values.emplace(std::move(letters), v).second)
      fail(ErrorKind::ParseError, "line " + std::to_string(line_no) + ": duplicate entry for '" + std::string(head) + "'");
  }
  if (!radius) fail(ErrorKind::ParseError, "jump file is empty");
  return table(alphabet, *radius, std::move(values));
}

std::string JumpFunction::str() const {
  if (constant_) return "constant " + std::to_string(*constant_) + "\n";
  std::string out = "K " + std::to_string(radius_) + "\n";
  for (const auto& [key, v] : table_) out += render(*alphabet_, key) + " " + std::to_string(v) + "\n";
  return out;
}

std::uint32_t JumpFunction::max_value() const noexcept {
  if (constant_) return *constant_;
  std::uint32_t m = 0;
  for (const auto& [key, v] : table_) m = std::max(m, v);
  return m;
}

std::optional<std::uint32_t> JumpFunction::lookup(std::span<const Symbol> window) const {
  if (constant_) return *constant_;
  auto it = table_.find(std::vector<Symbol>(window.begin(), window.end()));
  if (it == table_.end()) return std::nullopt;
  return it->second;
}

std::uint32_t JumpFunction::at(const OrbitSegment& segment, std::size_t i) const {
  if (i < radius_ || i + radius_ >= segment.size())
    fail(ErrorKind::InsufficientMargin, "index " + std::to_string(i) + " has no margin of " + std::to_string(radius_));
  if (constant_) return *constant_;
  if (alphabet_ && !(*alphabet_ == segment.alphabet()))
    fail(ErrorKind::AlphabetMismatch, "jump table and window use different alphabets");
  const auto window = segment.letters().subspan(i - radius_, 2 * radius_ + 1);
  if (auto v = lookup(window)) return *v;
  fail(ErrorKind::TotalityFailure, "jump undefined on centered word '" + render(segment.alphabet(), window) + "'");
}

JumpFunction first_return_jump(const OrbitSegment& segment, std::size_t radius) {
  if (radius == 0) fail(ErrorKind::InvalidArgument, "first-return jump needs a positive radius");
  const std::size_t len = 2 * radius + 1;
  if (segment.size() < len) fail(ErrorKind::WindowTooShort, "window shorter than 2K+1");
  JumpFunction::Table table;
  const auto letters = segment.letters();
  for (std::size_t i = 0; i + len <= letters.size(); ++i) {
    auto window = letters.subspan(i, len);
    std::vector<Symbol> key(window.begin(), window.end());
    if (table.count(key)) continue;
    std::uint32_t value = 0;
    for (std::size_t k = 1; k <= radius; ++k)
      if (key[radius + k] == key[radius]) {
        value = static_cast<std::uint32_t>(k);
        break;
      }
    if (value == 0)
      fail(ErrorKind::InvalidArgument, "no return to the center letter within " + std::to_string(radius) + " in '" +
                                           render(segment.alphabet(), key) + "'");
    table.emplace(std::move(key), value);
  }
  return JumpFunction::table(segment.alphabet(), radius, std::move(table));
}

LandingMap landing_map(const OrbitSegment& segment, const JumpFunction& jump) {
  LandingMap map;
  map.radius = jump.radius();
  map.size = segment.size();
  map.jump.assign(map.size, 0);
  for (std::size_t i = map.radius; i + map.radius < map.size; ++i) {
    map.jump[i] = jump.at(segment, i);
    map.p_max = std::max(map.p_max, map.jump[i]);
  }
  return map;
}

bool JumpValidation::injective() const noexcept {
  return std::all_of(windows.begin(), windows.end(), [](const WindowCheck& w) { return w.injective; });
}

bool JumpValidation::surjective() const noexcept {
  return std::all_of(windows.begin(), windows.end(), [](const WindowCheck& w) { return w.surjective; });
}

std::string JumpValidation::report() const {
  std::ostringstream out;
  out << "total: " << (total ? "yes" : "no") << "\n";
  out << "p_max: " << p_max << "\n";
  for (const auto& w : windows) {
    out << "window " << w.window << ": injective " << (w.injective ? "yes" : "no") << ", surjective "
        << (w.surjective ? "yes" : "no");
    if (w.collision)
      out << "; indices " << w.collision->first << " and " << w.collision->second << " both land on "
          << w.collision->target;
    if (w.uncovered) out << "; index " << *w.uncovered << " has no predecessor";
    out << "\n";
  }
  out << "homeomorphic speedup (window certificate only): " << (homeomorphic() ? "yes" : "no") << "\n";
  return out.str();
}

JumpValidation validate_jump(const JumpFunction& jump, const OrbitSegment& segment) {
  const std::size_t len = 2 * jump.radius() + 1;
  const std::size_t half = segment.size() / 2;
  if (half < len + 1) fail(ErrorKind::WindowTooShort, "window too short to validate a radius-" + std::to_string(jump.radius()) + " jump");
  const auto full_counts = factor_counts(segment.letters(), len);
  const auto half_counts = factor_counts(segment.letters().first(half), len);
  if (full_counts.back() != half_counts.back())
    fail(ErrorKind::WindowTooShort, "window too short: (2K+1)-factors not stabilized");

  JumpValidation out;
  const auto map = landing_map(segment, jump);  // throws TotalityFailure
  out.p_max = map.p_max;
  out.windows.push_back(check_window(map, half));
  out.windows.push_back(check_window(map, map.size));
  return out;
}

std::vector<std::size_t> s_orbit(const OrbitSegment& segment, const JumpFunction& jump, std::size_t start) {
  const auto k = jump.radius();
  if (start < k || start + k >= segment.size())
    fail(ErrorKind::InsufficientMargin, "start " + std::to_string(start) + " has no margin of " + std::to_string(k));
  std::vector<std::size_t> out;
  for (std::size_t i = start; i >= k && i + k < segment.size(); i += jump.at(segment, i)) out.push_back(i);
  return out;
}

OrbitColoring orbit_coloring(const LandingMap& map) {
  OrbitColoring out;
  out.label.assign(map.size, 0);
  out.central_begin = map.size / 4;
  out.central_end = map.size - map.size / 4;
  UnionFind uf(map.size);
  for (std::size_t i = map.radius; i + map.radius < map.size; ++i)
    if (!map.exits(i)) uf.unite(i, map.landing(i));

  std::vector<std::uint32_t> root_label(map.size, 0);
  for (std::size_t i = std::max(out.central_begin, map.radius); i < out.central_end && i + map.radius < map.size; ++i) {
    auto r = uf.find(i);
    if (root_label[r] == 0) root_label[r] = ++out.count;
  }
  for (std::size_t i = map.radius; i + map.radius < map.size; ++i) out.label[i] = root_label[uf.find(i)];
  return out;
}

std::uint32_t orbit_number(const OrbitSegment& segment, const JumpFunction& jump) {
  const auto validation = validate_jump(jump, segment);
  if (!validation.homeomorphic())
    fail(ErrorKind::NotBijective, "jump is not bijective on the window:\n" + validation.report());
  const auto full = orbit_coloring(landing_map(segment, jump));
  const auto half = orbit_coloring(landing_map(segment.prefix(segment.size() / 2), jump));
  if (full.count != half.count)
    fail(ErrorKind::WindowTooShort, "orbit number not stabilized (" + std::to_string(half.count) + " vs " +
                                        std::to_string(full.count) + ")");
  return full.count;
}

std::string SPattern::str() const {
  std::string out = spanned.str() + "|";
  for (std::size_t i = 0; i < offsets.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(offsets[i]);
  }
  return out;
}

std::optional<SPattern> spattern_at(const OrbitSegment& segment, const LandingMap& map, std::size_t start,
                                    std::size_t n) {
  if (n == 0 || !map.interior(start)) return std::nullopt;
  std::vector<std::size_t> offsets;
  std::size_t i = start;
  for (std::size_t step = 0; step < n; ++step) {
    if (!map.interior(i)) return std::nullopt;
    offsets.push_back(i - start + map.radius);
    i = map.landing(i);
  }
  // i is the (n+1)-st landing; the pattern spans [start-K, i+K)
  if (i + map.radius > map.size) return std::nullopt;
  return SPattern{segment.slice(start - map.radius, i + 2 * map.radius - start), std::move(offsets)};
}

struct SPatternIds::Impl {
  std::optional<detail::ChainIds> ids;
};

SPatternIds::SPatternIds(const OrbitSegment& segment, const LandingMap& map, std::size_t n_max)
    : impl_(std::make_unique<Impl>()) {
  if (n_max == 0) fail(ErrorKind::InvalidArgument, "n_max must be positive");
  const auto letters = segment.letters();
  const auto k = map.radius;
  std::vector<std::uint32_t> unit(map.size, detail::kNoId);
  std::vector<std::size_t> next(map.size, detail::kNoNext);
  std::map<std::vector<Symbol>, std::uint32_t> table;
  for (std::size_t i = k; i + k < map.size; ++i) {
    const auto end = map.landing(i) + k;
    if (end > map.size) continue;
    std::vector<Symbol> span(letters.begin() + (i - k), letters.begin() + end);
    auto [it, inserted] = table.try_emplace(std::move(span), static_cast<std::uint32_t>(table.size()));
    unit[i] = it->second;
    next[i] = map.landing(i);
  }
  impl_->ids.emplace(unit, next, n_max);
}

SPatternIds::~SPatternIds() = default;
SPatternIds::SPatternIds(SPatternIds&&) noexcept = default;
SPatternIds& SPatternIds::operator=(SPatternIds&&) noexcept = default;

std::size_t SPatternIds::n_max() const noexcept { return impl_->ids->n_max(); }
std::uint32_t SPatternIds::id(std::size_t n, std::size_t start) const { return impl_->ids->id(n, start); }
std::size_t SPatternIds::distinct(std::size_t n) const { return impl_->ids->distinct(n); }

bool SpeedupComplexity::bound_holds() const noexcept {
  return std::all_of(rows.begin(), rows.end(), [](const BoundRow& r) { return r.holds; });
}

std::string SpeedupComplexity::report() const {
  std::ostringstream out;
  out << "p_max: " << p_max << "\nK: " << radius << "\nK': " << constant << "\n";
  out << "n,p_S(n),p_sigma(p_max*n),bound,holds\n";
  for (const auto& r : rows)
    out << r.n << "," << r.speedup_count << "," << r.base_count << "," << constant * r.base_count << ","
        << (r.holds ? "yes" : "no") << "\n";
  out << "verdict: " << (bound_holds() ? "PASS" : "FAIL") << "\n";
  return out.str();
}

SpeedupComplexity speedup_complexity(const OrbitSegment& segment, const JumpFunction& jump, std::size_t n_max) {
  if (n_max == 0) fail(ErrorKind::InvalidArgument, "n_max must be positive");
  const auto validation = validate_jump(jump, segment);
  if (!validation.homeomorphic())
    fail(ErrorKind::NotBijective, "jump is not bijective on the window:\n" + validation.report());

  const auto map = landing_map(segment, jump);
  const auto half_segment = segment.prefix(segment.size() / 2);
  const auto half_map = landing_map(half_segment, jump);
  SPatternIds full(segment, map, n_max);
  SPatternIds half(half_segment, half_map, n_max);

  SpeedupComplexity out;
  out.p_max = map.p_max;
  out.radius = jump.radius();
  for (std::size_t n = 1; n <= n_max; ++n) {
    if (full.distinct(n) != half.distinct(n))
      fail(ErrorKind::WindowTooShort, "window too short: S-pattern count for n = " + std::to_string(n) +
                                          " not stabilized (" + std::to_string(half.distinct(n)) + " vs " +
                                          std::to_string(full.distinct(n)) + ")");
    out.profile.counts.push_back(full.distinct(n));
  }

  std::uint64_t k_prime = out.p_max;
  const auto a = segment.alphabet().size();
  for (std::size_t e = 0; e < 2 * out.radius; ++e) {
    if (k_prime > std::numeric_limits<std::uint64_t>::max() / a) {
      k_prime = std::numeric_limits<std::uint64_t>::max();
      break;
    }
    k_prime *= a;
  }
  out.constant = k_prime;

  const auto base = complexity(segment, out.p_max * n_max);
  for (std::size_t n = 1; n <= n_max; ++n) {
    BoundRow row;
    row.n = n;
    row.speedup_count = out.profile.at(n);
    row.base_count = base.at(out.p_max * n);
    const auto rhs = k_prime > 0 && row.base_count > std::numeric_limits<std::uint64_t>::max() / k_prime
                         ? std::numeric_limits<std::uint64_t>::max()
                         : k_prime * row.base_count;
    row.holds = row.speedup_count <= rhs;
    out.rows.push_back(row);
  }
  return out;
}

}  // namespace symdyn
