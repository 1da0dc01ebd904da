#include "symdyn/lr.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

#include "symdyn/detail/chain_ids.hpp"
#include "symdyn/error.hpp"
#include "symdyn/shiftspaces.hpp"

namespace symdyn {

namespace {

constexpr std::size_t kNever = std::numeric_limits<std::size_t>::max();

void require_bijective(const OrbitSegment& segment, const JumpFunction& jump) {
  const auto v = validate_jump(jump, segment);
  if (!v.homeomorphic()) fail(ErrorKind::NotBijective, "jump is not bijective on the window:\n" + v.report());
}

/// Landing sequence of every labeled class, starting at its first interior index.
std::vector<std::vector<std::size_t>> class_orbits(const LandingMap& map, const OrbitColoring& coloring,
                                                   std::size_t from) {
  std::vector<std::vector<std::size_t>> orbits(coloring.count);
  std::vector<bool> started(coloring.count + 1, false);
  std::uint32_t pending = coloring.count;
  for (std::size_t i = std::max(from, map.radius); pending > 0 && map.interior(i); ++i) {
    const auto c = coloring.label[i];
    if (c == 0 || started[c]) continue;
    started[c] = true;
    --pending;
    auto& orbit = orbits[c - 1];
    for (std::size_t j = i; map.interior(j); j = map.landing(j)) orbit.push_back(j);
  }
  return orbits;
}

}  // namespace

Rational RecurrenceProfile::max_ratio(std::size_t n_from) const {
  Rational m{0};
  for (const auto& e : entries)
    if (e.n >= n_from && e.ratio > m) m = e.ratio;
  return m;
}

std::string RecurrenceProfile::csv() const {
  std::string out = "n,max_gap,ratio_num,ratio_den\n";
  for (const auto& e : entries)
    out += std::to_string(e.n) + "," + std::to_string(e.max_gap) + "," + std::to_string(e.ratio.numerator()) + "," +
           std::to_string(e.ratio.denominator()) + "\n";
  return out;
}

RecurrenceProfile recurrence_profile(const OrbitSegment& segment, std::size_t n_max) {
  complexity(segment, n_max);  // stabilization check

  const auto letters = segment.letters();
  std::vector<std::uint32_t> unit(letters.begin(), letters.end());
  std::vector<std::size_t> next(letters.size());
  for (std::size_t i = 0; i < next.size(); ++i) next[i] = i + 1;
  detail::ChainIds ids(unit, next, n_max);

  RecurrenceProfile profile;
  profile.window = segment.size();
  for (std::size_t n = 1; n <= n_max; ++n) {
    const auto level = ids.level(n);
    std::vector<std::size_t> last(std::max<std::size_t>(ids.distinct(n), segment.alphabet().size()), kNever);
    std::size_t gap = 0;
    for (std::size_t i = 0; i < level.size(); ++i) {
      const auto id = level[i];
      if (id == detail::kNoId) continue;
      if (last[id] != kNever) gap = std::max(gap, i - last[id]);
      last[id] = i;
    }
    profile.entries.push_back({n, gap, Rational(static_cast<std::int64_t>(gap), static_cast<std::int64_t>(n))});
  }
  return profile;
}

RecurrenceProfile speedup_recurrence_profile(const OrbitSegment& segment, const JumpFunction& jump,
                                             std::size_t n_max) {
  if (n_max == 0) fail(ErrorKind::InvalidArgument, "n_max must be positive");
  require_bijective(segment, jump);

  const auto map = landing_map(segment, jump);
  const auto half_segment = segment.prefix(segment.size() / 2);
  SPatternIds ids(segment, map, n_max);
  SPatternIds half(half_segment, landing_map(half_segment, jump), n_max);
  for (std::size_t n = 1; n <= n_max; ++n)
    if (ids.distinct(n) != half.distinct(n))
      fail(ErrorKind::WindowTooShort, "window too short: S-pattern set for n = " + std::to_string(n) +
                                          " not stabilized");

  const auto coloring = orbit_coloring(map);
  const auto orbits = class_orbits(map, coloring, 0);

  RecurrenceProfile profile;
  profile.window = segment.size();
  for (std::size_t n = 1; n <= n_max; ++n) {
    std::vector<std::size_t> last(ids.distinct(n), kNever);
    std::size_t gap = 0;
    for (const auto& orbit : orbits) {
      std::fill(last.begin(), last.end(), kNever);
      for (std::size_t t = 0; t < orbit.size(); ++t) {
        const auto id = ids.id(n, orbit[t]);
        if (id == detail::kNoId) continue;
        if (last[id] != kNever) gap = std::max(gap, t - last[id]);
        last[id] = t;
      }
    }
    profile.entries.push_back({n, gap, Rational(static_cast<std::int64_t>(gap), static_cast<std::int64_t>(n))});
  }
  return profile;
}

std::string MinimalityVerdict::report() const {
  std::ostringstream out;
  out << "n: " << n << "\npatterns: " << patterns << "\nsub-window (S-steps per class): " << sub_window << "\n";
  for (std::size_t c = 0; c < missing.size(); ++c) out << "class " << c + 1 << " misses " << missing[c] << "\n";
  out << "minimal: " << (minimal ? "yes" : "no") << "\n";
  return out.str();
}

MinimalityVerdict minimality_probe(const OrbitSegment& segment, const JumpFunction& jump, std::size_t n) {
  if (n == 0) fail(ErrorKind::InvalidArgument, "n must be positive");
  require_bijective(segment, jump);
  const auto map = landing_map(segment, jump);
  const auto coloring = orbit_coloring(map);
  SPatternIds ids(segment, map, n);

  MinimalityVerdict v;
  v.n = n;
  v.patterns = ids.distinct(n);
  v.sub_window = kMinimalityWindowFactor * n;
  const auto orbits = class_orbits(map, coloring, coloring.central_begin);
  v.minimal = true;
  for (std::size_t c = 0; c < orbits.size(); ++c) {
    const auto& orbit = orbits[c];
    std::vector<bool> seen(v.patterns, false);
    std::size_t count = 0;
    std::size_t steps = 0;
    for (std::size_t t = 0; t < orbit.size() && steps < v.sub_window; ++t) {
      const auto id = ids.id(n, orbit[t]);
      if (id == detail::kNoId) break;
      ++steps;
      if (!seen[id]) {
        seen[id] = true;
        ++count;
      }
    }
    if (steps < v.sub_window)
      fail(ErrorKind::WindowTooShort, "window too short: class " + std::to_string(c + 1) + " has only " +
                                          std::to_string(steps) + " of " + std::to_string(v.sub_window) +
                                          " S-steps after the central window start");
    v.missing.push_back(v.patterns - count);
    if (count != v.patterns) v.minimal = false;
  }
  return v;
}

bool ProofBoundCheck::holds() const noexcept {
  return std::all_of(rows.begin(), rows.end(), [](const ProofBoundRow& r) { return r.holds; });
}

std::string ProofBoundCheck::report() const {
  std::ostringstream out;
  out << "L: " << to_string(l_base) << "\nL*: " << to_string(l_star) << "\np_max: " << p_max << "\n";
  out << "n,max_gap,bound,holds\n";
  for (const auto& r : rows)
    out << r.n << "," << r.max_gap << "," << to_string(r.bound) << "," << (r.holds ? "yes" : "no") << "\n";
  out << "verdict: " << (holds() ? "PASS" : "FAIL") << "\n";
  return out.str();
}

ProofBoundCheck proof_bound_check(const RecurrenceProfile& speedup_profile, const Rational& l_base,
                                  const Rational& l_star, std::uint32_t p_max) {
  ProofBoundCheck check{l_base, l_star, p_max, {}};
  for (const auto& e : speedup_profile.entries) {
    ProofBoundRow row;
    row.n = e.n;
    row.max_gap = e.max_gap;
    row.bound = Rational(2) * l_star * l_base * static_cast<std::int64_t>(p_max) * static_cast<std::int64_t>(e.n);
    row.holds = Rational(static_cast<std::int64_t>(e.max_gap)) <= row.bound;
    check.rows.push_back(row);
  }
  return check;
}

}  // namespace symdyn
