#include <doctest.h>

#include "support.hpp"
#include "symdyn/extension.hpp"

using namespace symdyn;
using oracle::error_kind;

namespace {

const Alphabet kBits = Alphabet::of_chars("01");
const Word k1001 = Word::parse(kBits, "1001");

OrbitSegment fib(std::size_t len) { return OrbitSegment(Word::parse(kBits, oracle::fibonacci(len))); }

JumpFunction table_jump(std::size_t k, const std::map<std::string, std::uint32_t>& t) {
  JumpFunction::Table table;
  for (const auto& [w, v] : t) {
    std::vector<Symbol> key;
    for (char c : w) key.push_back(static_cast<Symbol>(c - '0'));
    table[key] = v;
  }
  return JumpFunction::table(kBits, k, table);
}

/// Transition permutations by walking each entry's S-orbit from one
/// occurrence to the next. Entry block at in-word offset `offset`, width p_max.
struct OracleTrace {
  std::vector<std::size_t> starts;
  std::vector<oracle::Perm> perms;
};

OracleTrace follow_orbits(const std::string& x, const std::map<std::string, std::uint32_t>& table, std::size_t k,
                          const std::string& w, std::size_t offset) {
  std::uint32_t p_max = 0;
  for (const auto& kv : table) p_max = std::max(p_max, kv.second);
  const auto cls = oracle::orbit_classes(x, table, k);
  auto slots = [&](std::size_t s) {
    std::vector<std::size_t> out;
    std::set<int> seen;
    for (auto i = s + offset; i < s + offset + p_max; ++i)
      if (seen.insert(cls[i]).second) out.push_back(i);
    return out;
  };
  OracleTrace t;
  const auto occ = oracle::occurrences(x, w);
  for (std::size_t m = 0; m + 1 < occ.size(); ++m) {
    const auto a = occ[m], b = occ[m + 1];
    if (b + offset + p_max + k > x.size()) break;  // entry block must be interior
    const auto here = slots(a), there = slots(b);
    oracle::Perm psi(here.size());
    for (std::size_t j = 0; j < here.size(); ++j) {
      auto i = here[j];
      while (i < b + offset) i += oracle::jump_at(x, table, k, i);
      REQUIRE(i < b + offset + p_max);
      const auto it = std::find_if(there.begin(), there.end(), [&](std::size_t q) { return cls[q] == cls[i]; });
      REQUIRE(it != there.end());
      psi[j] = static_cast<std::uint32_t>(it - there.begin());
    }
    t.starts.push_back(a);
    t.perms.push_back(psi);
  }
  return t;
}

std::set<oracle::Perm> closure(const std::vector<oracle::Perm>& gens, std::size_t n) {
  std::set<oracle::Perm> out{oracle::identity(n)};
  std::vector<oracle::Perm> todo{oracle::identity(n)};
  while (!todo.empty()) {
    const auto g = todo.back();
    todo.pop_back();
    for (const auto& h : gens) {
      auto gh = oracle::compose(g, h);
      if (out.insert(gh).second) todo.push_back(gh);
    }
  }
  return out;
}

std::set<oracle::Perm> as_images(const std::set<Permutation>& ps) {
  std::set<oracle::Perm> out;
  for (const auto& p : ps) out.insert(p.images());
  return out;
}

ExtensionTrace manual_trace(std::vector<Permutation> perms, std::size_t origin) {
  ExtensionTrace t{perms.front().degree(), k1001, {}, {}, {}, std::move(perms), {}, origin};
  return t;
}

}  // namespace

TEST_CASE("entry positions 1 and 2 for the constant jump 2") {
  const auto p = entry_positions(fib(10000), JumpFunction::constant(2), k1001, EntryMode::relaxed);
  CHECK(p.positions == std::vector<std::size_t>{1, 2});
  CHECK(p.degree() == 2);
  CHECK(p.classes[0] != p.classes[1]);
}

TEST_CASE("entry positions for constant jumps 1 and 3") {
  const auto one = entry_positions(fib(10000), JumpFunction::constant(1), k1001, EntryMode::relaxed);
  CHECK(one.positions == std::vector<std::size_t>{1});
  const auto three = entry_positions(fib(10000), JumpFunction::constant(3), k1001, EntryMode::relaxed);
  CHECK(three.positions == std::vector<std::size_t>{1, 2, 3});
  std::set<std::uint32_t> labels(three.classes.begin(), three.classes.end());
  CHECK(labels == std::set<std::uint32_t>{1, 2, 3});
}

TEST_CASE("strict mode needs a long enough word") {
  const auto s = fib(10000);
  CHECK(error_kind([&] { entry_positions(s, JumpFunction::constant(3), k1001, EntryMode::strict); }) ==
        ErrorKind::WordTooShort);
  const auto p = entry_positions(s, JumpFunction::constant(2), k1001, EntryMode::strict);
  CHECK(p.positions == std::vector<std::size_t>{2, 3});
  const auto long_w = Word::parse(kBits, "10010");
  const auto q = entry_positions(s, JumpFunction::constant(3), long_w, EntryMode::strict);
  CHECK(q.positions == std::vector<std::size_t>{2, 3, 4});
}

TEST_CASE("every transition for p = 2 flips the two entries") {
  GroupExtension ext(fib(10000), JumpFunction::constant(2), k1001, EntryMode::relaxed);
  REQUIRE(ext.trace().length() > 1000);
  for (const auto& psi : ext.trace().perms) CHECK(psi.str() == "(12)");
}

TEST_CASE("transitions for p = 3 depend on the return word") {
  GroupExtension ext(fib(10000), JumpFunction::constant(3), k1001, EntryMode::relaxed);
  const auto& t = ext.trace();
  for (std::size_t k = 0; k < t.length(); ++k) {
    if (t.steps[k].str() == "100")
      CHECK(t.perms[k].is_identity());
    else
      CHECK(t.perms[k].str() == "(123)");
  }
  const auto s = fib(10000);
  // first occurrences: 1, 6, 9; 1 -> 6 spans R' = 10010, 6 -> 9 spans R = 100
  CHECK(transition_permutation(s, JumpFunction::constant(3), k1001, 1, 6, EntryMode::relaxed).str() == "(123)");
  CHECK(transition_permutation(s, JumpFunction::constant(3), k1001, 6, 9, EntryMode::relaxed).is_identity());
  CHECK(error_kind([&] { transition_permutation(s, JumpFunction::constant(3), k1001, 1, 9, EntryMode::relaxed); }) ==
        ErrorKind::InvalidArgument);
}

TEST_CASE("transitions match explicit orbit following") {
  const auto x = oracle::fibonacci(10000);
  const auto s = OrbitSegment(Word::parse(kBits, x));
  for (std::uint32_t p : {1u, 2u, 3u}) {
    GroupExtension ext(s, JumpFunction::constant(p), k1001, EntryMode::relaxed);
    const auto o = follow_orbits(x, oracle::constant_table(x, p), 0, "1001", 0);
    const auto first = std::find(o.starts.begin(), o.starts.end(), ext.trace().starts.front()) - o.starts.begin();
    REQUIRE(static_cast<std::size_t>(first) + ext.trace().length() <= o.perms.size());
    for (std::size_t k = 0; k < ext.trace().length(); ++k)
      CHECK(ext.trace().perms[k].images() == o.perms[static_cast<std::size_t>(first) + k]);
  }
}

TEST_CASE("transitions of a non-constant jump match explicit orbit following") {
  // K = 1; bijective on the Fibonacci language with orbit number 2
  const std::map<std::string, std::uint32_t> t{{"001", 1}, {"010", 2}, {"100", 3}, {"101", 2}};
  const auto x = oracle::fibonacci(20000);
  const auto s = OrbitSegment(Word::parse(kBits, x));
  const auto j = table_jump(1, t);
  REQUIRE(validate_jump(j, s).homeomorphic());
  const auto w = Word::parse(kBits, "10010");
  GroupExtension ext(s, j, w, EntryMode::relaxed);
  const auto o = follow_orbits(x, t, 1, "10010", 1);
  const auto first = std::find(o.starts.begin(), o.starts.end(), ext.trace().starts.front()) - o.starts.begin();
  REQUIRE(ext.trace().length() > 100);
  REQUIRE(static_cast<std::size_t>(first) + ext.trace().length() <= o.perms.size());
  for (std::size_t k = 0; k < ext.trace().length(); ++k) {
    CAPTURE(k);
    CHECK(ext.trace().perms[k].images() == o.perms[static_cast<std::size_t>(first) + k]);
  }
}

TEST_CASE("cumulative products compose the transitions") {
  GroupExtension ext(fib(10000), JumpFunction::constant(3), k1001, EntryMode::relaxed);
  const auto& t = ext.trace();
  oracle::Perm running = oracle::identity(3);
  CHECK(t.cumulative.front().is_identity());
  for (std::size_t k = 0; k < t.length(); ++k) {
    running = oracle::compose(running, ext.transition(k).images());
    CHECK(t.cumulative[k + 1].images() == running);
  }
}

TEST_CASE("cocycle values by the three-case formula") {
  const auto t = manual_trace({Permutation::parse("(12)", 2), Permutation::parse("(12)", 2)}, 0);
  CHECK(cocycle(t, 0).is_identity());
  CHECK(cocycle(t, 1).str() == "(12)");
  CHECK(cocycle(t, 2).is_identity());
  CHECK(error_kind([&] { cocycle(t, 3); }) == ErrorKind::OutOfRange);
  CHECK(error_kind([&] { cocycle(t, -1); }) == ErrorKind::OutOfRange);

  const auto u = manual_trace({Permutation::parse("(12)", 3), Permutation::parse("(123)", 3)}, 2);
  CHECK(cocycle(u, -1).str() == "(132)");
  // n = -2: (psi_{-2} psi_{-1})^-1 = ((12)(123))^-1
  CHECK(cocycle(u, -2) == (Permutation::parse("(12)", 3) * Permutation::parse("(123)", 3)).inverse());
}

TEST_CASE("property: cocycle additivity on 1000 seeded pairs") {
  GroupExtension ext(fib(10000), JumpFunction::constant(3), k1001, EntryMode::relaxed);
  const auto& t = ext.trace();
  const auto o = static_cast<std::int64_t>(t.origin);
  const auto len = static_cast<std::int64_t>(t.length());
  oracle::Rng rng(1000);
  std::size_t negative = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const auto m = rng.between(-o, len - o);
    const auto n = rng.between(-(o + m), len - o - m);
    negative += (m < 0 || n < 0);
    CHECK(cocycle(t, m + n) == cocycle(t, m) * cocycle(t.shifted(m), n));
  }
  CHECK(negative > 100);
}

TEST_CASE("trace CSV") {
  GroupExtension ext(fib(200), JumpFunction::constant(2), k1001, EntryMode::relaxed);
  const auto csv = ext.trace().csv();
  CHECK(csv.rfind("occurrence,start,return_word,step,cumulative\n0,1,10010,(12),(12)\n1,6,100,(12),e\n", 0) == 0);
}

TEST_CASE("local groups for constant jumps") {
  const auto s = fib(10000);
  const auto anchor = Word::parse(kBits, "100100");
  const auto two = local_group(s, JumpFunction::constant(2), k1001, anchor, EntryMode::relaxed);
  CHECK(as_images(two.elements) == std::set<oracle::Perm>{{0, 1}, {1, 0}});
  const auto one = local_group(s, JumpFunction::constant(1), k1001, anchor, EntryMode::relaxed);
  CHECK(one.elements.size() == 1);
  CHECK(error_kind([&] { local_group(s, JumpFunction::constant(2), k1001, Word::parse(kBits, "0110"), EntryMode::relaxed); }) ==
        ErrorKind::InvalidArgument);
}

TEST_CASE("local group for p = 3 matches loop products from orbit following") {
  const auto x = oracle::fibonacci(10000);
  const auto s = OrbitSegment(Word::parse(kBits, x));
  GroupExtension ext(s, JumpFunction::constant(3), k1001, EntryMode::relaxed);
  const auto o = follow_orbits(x, oracle::constant_table(x, 3), 0, "1001", 0);
  for (const std::string a : {"10010", "1001010", "100100101", "10010010100"}) {
    const auto est = ext.local_group(Word::parse(kBits, a));
    const auto anchors = oracle::occurrences(x, a);
    // loops from the first anchor occurrence to every later one
    std::vector<oracle::Perm> loops;
    std::optional<std::size_t> from;
    for (auto q : anchors) {
      const auto it = std::find(o.starts.begin(), o.starts.end(), q);
      if (it == o.starts.end()) continue;
      const auto idx = static_cast<std::size_t>(it - o.starts.begin());
      if (!from) {
        from = idx;
        continue;
      }
      oracle::Perm g = oracle::identity(3);
      for (auto k = *from; k < idx; ++k) g = oracle::compose(g, o.perms[k]);
      loops.push_back(g);
    }
    CHECK(as_images(est.elements) == closure(loops, 3));
  }
}

TEST_CASE("local groups at nested anchors agree and distinct anchors are conjugate") {
  const auto x = oracle::fibonacci(10000);
  const auto s = OrbitSegment(Word::parse(kBits, x));
  GroupExtension ext(s, JumpFunction::constant(3), k1001, EntryMode::relaxed);
  const auto start = ext.trace().starts[ext.trace().length() / 2];
  std::vector<SubgroupEstimate> nested;
  for (std::size_t extra = 6; extra <= 10; ++extra) nested.push_back(ext.local_group(s.slice(start, 4 + extra)));
  for (const auto& e : nested) CHECK(e.elements == nested.front().elements);
  for (const auto& a : nested)
    for (const auto& b : nested) CHECK(conjugacy_check(a, b).has_value());
  const auto two = local_group(s, JumpFunction::constant(2), k1001, Word::parse(kBits, "10010"), EntryMode::relaxed);
  CHECK(error_kind([&] { conjugacy_check(two, nested.front()); }) == ErrorKind::DegreeMismatch);
}

TEST_CASE("gap scans observe every element with bounded gaps") {
  const auto s = fib(100000);
  for (std::uint32_t p : {2u, 3u}) {
    const auto scan = extension_gap_scan(s, JumpFunction::constant(p), k1001, EntryMode::relaxed);
    CHECK(scan.all_observed());
    CHECK(scan.elements.size() == p);
    for (const auto& e : scan.elements) CHECK(e.max_shift_gap <= 30);
  }
  const auto one = extension_gap_scan(s, JumpFunction::constant(1), k1001, EntryMode::relaxed);
  REQUIRE(one.elements.size() == 1);
  CHECK(one.elements.front().max_derived_gap == 1);
  const auto occ = oracle::occurrences(oracle::fibonacci(100000), "1001");
  std::size_t gap = 0;
  for (std::size_t k = 1; k < occ.size(); ++k) gap = std::max(gap, occ[k] - occ[k - 1]);
  CHECK(one.elements.front().max_shift_gap == gap);
}
