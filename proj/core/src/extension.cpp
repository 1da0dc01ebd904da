#include "symdyn/extension.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "symdyn/error.hpp"

namespace symdyn {

std::string EntryProfile::str() const {
  std::ostringstream out;
  out << "word " << word.str() << " at " << occurrence << ":";
  for (std::size_t j = 0; j < positions.size(); ++j) out << " " << positions[j] << "[class " << classes[j] << "]";
  return out.str();
}

ExtensionTrace ExtensionTrace::shifted(std::ptrdiff_t m) const {
  const auto o = static_cast<std::ptrdiff_t>(origin) + m;
  if (o < 0 || o > static_cast<std::ptrdiff_t>(perms.size()))
    fail(ErrorKind::OutOfRange, "shift " + std::to_string(m) + " leaves the trace");
  ExtensionTrace out = *this;
  out.origin = static_cast<std::size_t>(o);
  return out;
}

std::string ExtensionTrace::csv() const {
  std::string out = "occurrence,start,return_word,step,cumulative\n";
  for (std::size_t i = 0; i < perms.size(); ++i)
    out += std::to_string(i) + "," + std::to_string(starts[i]) + "," + steps[i].str() + "," + perms[i].str() + "," +
           cumulative[i + 1].str() + "\n";
  return out;
}

Permutation cocycle(const ExtensionTrace& trace, std::ptrdiff_t n) {
  const auto o = static_cast<std::ptrdiff_t>(trace.origin);
  const auto len = static_cast<std::ptrdiff_t>(trace.perms.size());
  if (o + n < 0 || o + n > len)
    fail(ErrorKind::OutOfRange, "cocycle of " + std::to_string(n) + " steps leaves the trace (origin " +
                                    std::to_string(o) + ", length " + std::to_string(len) + ")");
  auto product = Permutation::identity(trace.degree);
  if (n > 0) {
    for (auto i = o; i < o + n; ++i) product = product * trace.perms[static_cast<std::size_t>(i)];
    return product;
  }
  if (n == 0) return product;
  for (auto i = o + n; i < o; ++i) product = product * trace.perms[static_cast<std::size_t>(i)];
  return product.inverse();
}

std::string SubgroupEstimate::str() const {
  std::ostringstream out;
  out << "order " << elements.size() << " in S" << degree << " (estimate from " << loops << " loops, window "
      << window << ")\n";
  out << "elements:";
  for (const auto& e : elements) out << " " << e.str();
  out << "\ngenerators:";
  for (const auto& g : generators) out << " " << g.perm.str() << "@" << g.from << "->" << g.to;
  out << "\n";
  return out.str();
}

bool GapScan::all_observed() const noexcept {
  return std::all_of(elements.begin(), elements.end(), [](const ElementGap& e) { return e.observed(); });
}

std::string GapScan::report() const {
  std::ostringstream out;
  out << "element,visits,max_derived_gap,max_shift_gap\n";
  for (const auto& e : elements) {
    out << e.element.str() << ",";
    if (e.observed())
      out << e.visits << "," << e.max_derived_gap << "," << e.max_shift_gap << "\n";
    else
      out << "unobserved,,\n";
  }
  out << "L* proxy (max shift gap / |w|): " << to_string(ratio) << "\n";
  return out.str();
}

GroupExtension::GroupExtension(const OrbitSegment& segment, const JumpFunction& jump, const Word& w,
                               EntryMode mode)
    : segment_(segment), word_(w), map_(), coloring_(), returns_{w, {}, {}, {}}, trace_{1, w, {}, {}, {}, {}, {}, 0} {
  degree_ = symdyn::orbit_number(segment, jump);
  map_ = landing_map(segment, jump);
  coloring_ = orbit_coloring(map_);
  if (coloring_.count != degree_) fail(ErrorKind::WindowTooShort, "orbit coloring disagrees with orbit number");

  const auto k = map_.radius;
  if (mode == EntryMode::strict) {
    const std::size_t need = map_.p_max + 4 * k + 2;
    if (w.size() < need)
      fail(ErrorKind::WordTooShort, "strict mode needs |w| >= p_max + 4K + 2 = " + std::to_string(need) + ", got " +
                                        std::to_string(w.size()));
    block_offset_ = 2 * k + 1;
  } else {
    block_offset_ = k;
  }

  returns_ = return_words(segment, w);

  // Longest run of consecutive occurrences with complete entry blocks.
  const auto& all = returns_.starts;
  std::vector<std::vector<std::size_t>> slots(all.size());
  std::size_t best_begin = 0, best_len = 0, run_begin = 0, run_len = 0;
  for (std::size_t i = 0; i < all.size(); ++i) {
    slots[i] = slots_at(all[i]);
    if (slots[i].empty()) {
      run_len = 0;
      continue;
    }
    if (run_len == 0) run_begin = i;
    ++run_len;
    if (run_len > best_len) {
      best_len = run_len;
      best_begin = run_begin;
    }
  }
  if (best_len < 2)
    fail(ErrorKind::OutOfWindow, "orbits leave the window: fewer than two occurrences of '" + w.str() +
                                     "' have a complete entry block");

  trace_.degree = degree_;
  trace_.base = w;
  trace_.cumulative.push_back(Permutation::identity(degree_));
  for (std::size_t i = best_begin; i < best_begin + best_len; ++i) {
    trace_.starts.push_back(all[i]);
    if (i + 1 == best_begin + best_len) break;
    const auto& here = slots[i];
    const auto& there = slots[i + 1];
    std::map<std::uint32_t, std::uint32_t> slot_of_class;
    for (std::uint32_t j = 0; j < there.size(); ++j) slot_of_class[coloring_.label[there[j]]] = j;
    std::vector<std::uint32_t> images(degree_);
    for (std::uint32_t j = 0; j < here.size(); ++j) images[j] = slot_of_class.at(coloring_.label[here[j]]);
    auto psi = Permutation::from_images(std::move(images));
    trace_.derived.push_back(returns_.derived[i]);
    trace_.steps.push_back(returns_.returns[returns_.derived[i] - 1]);
    trace_.cumulative.push_back(trace_.cumulative.back() * psi);
    trace_.perms.push_back(std::move(psi));
  }
  trace_.origin = trace_.perms.size() / 2;
}

std::vector<std::size_t> GroupExtension::slots_at(std::size_t start) const {
  const std::size_t begin = start + block_offset_;
  const std::size_t end = begin + map_.p_max;
  std::vector<std::size_t> out;
  std::vector<bool> seen(degree_ + 1, false);
  for (std::size_t i = begin; i < end; ++i) {
    if (!map_.interior(i) || coloring_.label[i] == 0) return {};
    const auto c = coloring_.label[i];
    if (!seen[c]) {
      seen[c] = true;
      out.push_back(i);
    }
  }
  if (out.size() != degree_)
    fail(ErrorKind::AmbiguousEntry, "entry block at " + std::to_string(start) + " meets " + std::to_string(out.size()) +
                                        " of " + std::to_string(degree_) + " orbit classes");
  return out;
}

EntryProfile GroupExtension::entry_profile(std::size_t k) const {
  if (k >= trace_.starts.size()) fail(ErrorKind::OutOfRange, "no usable occurrence number " + std::to_string(k));
  const auto start = trace_.starts[k];
  EntryProfile p{word_, start, {}, {}};
  for (auto i : slots_at(start)) {
    p.positions.push_back(i - start + 1);
    p.classes.push_back(coloring_.label[i]);
  }
  return p;
}

SubgroupEstimate GroupExtension::local_group(const Word& anchor) const {
  const auto inner = occurrences(OrbitSegment(anchor), word_);
  if (inner.empty())
    fail(ErrorKind::InvalidArgument, "anchor '" + anchor.str() + "' does not contain '" + word_.str() + "'");
  const auto offset = inner.front();
  const auto anchors = occurrences(segment_, anchor);
  if (anchors.size() < 3)
    fail(ErrorKind::WindowTooShort, "window too short: anchor '" + anchor.str() + "' occurs " +
                                        std::to_string(anchors.size()) + " times, need 3");
  std::map<std::size_t, std::size_t> position;  // occurrence start -> trace index
  for (std::size_t i = 0; i < trace_.starts.size(); ++i) position[trace_.starts[i]] = i;

  SubgroupEstimate est;
  est.degree = degree_;
  est.window = segment_.size();
  std::optional<std::pair<std::size_t, std::size_t>> first;  // (anchor start, trace index)
  std::set<Permutation> seen;
  for (auto q : anchors) {
    auto it = position.find(q + offset);
    if (it == position.end()) continue;
    if (!first) {
      first.emplace(q, it->second);
      continue;
    }
    ++est.loops;
    auto g = trace_.cumulative[first->second].inverse() * trace_.cumulative[it->second];
    if (seen.insert(g).second) est.generators.push_back({std::move(g), first->first, q});
  }
  if (est.loops == 0)
    fail(ErrorKind::WindowTooShort, "window too short: no complete loop for anchor '" + anchor.str() + "'");
  std::vector<Permutation> gens;
  for (const auto& g : est.generators) gens.push_back(g.perm);
  est.elements = generate_subgroup(gens, degree_);
  return est;
}

GapScan GroupExtension::gap_scan() const {
  GapScan scan;
  scan.word_length = word_.size();
  const auto group = generate_subgroup(trace_.perms, degree_);
  for (const auto& s : group) {
    ElementGap g{s};
    std::optional<std::size_t> last;
    for (std::size_t k = 0; k < trace_.cumulative.size(); ++k) {
      if (!(trace_.cumulative[k] == s)) continue;
      ++g.visits;
      if (last) {
        g.max_derived_gap = std::max(g.max_derived_gap, k - *last);
        g.max_shift_gap = std::max(g.max_shift_gap, trace_.starts[k] - trace_.starts[*last]);
      }
      last = k;
    }
    const Rational r(static_cast<std::int64_t>(g.max_shift_gap), static_cast<std::int64_t>(word_.size()));
    if (r > scan.ratio) scan.ratio = r;
    scan.elements.push_back(std::move(g));
  }
  return scan;
}

EntryProfile entry_positions(const OrbitSegment& segment, const JumpFunction& jump, const Word& w, EntryMode mode) {
  return GroupExtension(segment, jump, w, mode).entry_profile(0);
}

Permutation transition_permutation(const OrbitSegment& segment, const JumpFunction& jump, const Word& w,
                                   std::size_t i, std::size_t j, EntryMode mode) {
  GroupExtension ext(segment, jump, w, mode);
  const auto& all = ext.returns().starts;
  auto it = std::find(all.begin(), all.end(), i);
  if (it == all.end() || std::next(it) == all.end() || *std::next(it) != j)
    fail(ErrorKind::InvalidArgument, std::to_string(i) + " and " + std::to_string(j) +
                                         " are not consecutive occurrences of '" + w.str() + "'");
  const auto& usable = ext.starts();
  auto u = std::find(usable.begin(), usable.end(), i);
  if (u == usable.end() || std::next(u) == usable.end())
    fail(ErrorKind::OutOfWindow, "orbits leave the window between occurrences " + std::to_string(i) + " and " +
                                     std::to_string(j));
  return ext.transition(static_cast<std::size_t>(u - usable.begin()));
}

SubgroupEstimate local_group(const OrbitSegment& segment, const JumpFunction& jump, const Word& w, const Word& anchor,
                             EntryMode mode) {
  return GroupExtension(segment, jump, w, mode).local_group(anchor);
}

std::optional<Permutation> conjugacy_check(const SubgroupEstimate& a, const SubgroupEstimate& b) {
  if (a.degree != b.degree)
    fail(ErrorKind::DegreeMismatch, "subgroups of S" + std::to_string(a.degree) + " and S" + std::to_string(b.degree));
  return find_conjugator(a.elements, b.elements, a.degree);
}

GapScan extension_gap_scan(const OrbitSegment& segment, const JumpFunction& jump, const Word& w, EntryMode mode) {
  return GroupExtension(segment, jump, w, mode).gap_scan();
}

}  // namespace symdyn
