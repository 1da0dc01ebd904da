#include <doctest.h>

#include <fstream>
#include <functional>
#include <sstream>

#include "support.hpp"
#include "symdyn/graphspeedup.hpp"

using namespace symdyn;
using oracle::error_kind;

namespace {

std::string read_data(const std::string& name) {
  std::ifstream in(std::string(SYMDYN_TEST_DATA_DIR) + "/" + name);
  REQUIRE(in);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

SftPresentation sft_file(const std::string& name) { return std::get<SftPresentation>(parse_presentation(read_data(name))); }

std::set<std::string> strs(const std::set<Word>& ws) {
  std::set<std::string> out;
  for (const auto& w : ws) out.insert(w.str());
  return out;
}

/// Admissible words, by walking an explicit successor relation on letters
/// (SFT) or on (state, letter) edges (sofic).
using Edges = std::vector<std::tuple<char, char, char>>;  // from, to, label

std::set<std::string> sofic_words(const Edges& edges, std::size_t n) {
  std::set<char> states;
  for (auto [u, v, l] : edges) states.insert(u), states.insert(v);
  std::set<std::string> out;
  std::function<void(char, std::string)> walk = [&](char s, std::string w) {
    if (w.size() == n) {
      out.insert(w);
      return;
    }
    for (auto [u, v, l] : edges)
      if (u == s) walk(v, w + l);
  };
  for (char s : states) walk(s, "");
  return out;
}

Edges sft_edges(const std::vector<std::pair<char, char>>& allowed) {
  Edges e;
  for (auto [a, b] : allowed) e.emplace_back(a, b, a);
  return e;
}

/// Block codings of n landings for every admissible base word: blocks of
/// length 2h+1 around h, h+p(.), ... joined with ','.
std::set<std::string> speedup_words_oracle(const std::set<std::string>& base_words,
                                           const std::map<std::string, std::uint32_t>& table, std::size_t k,
                                           std::size_t h, std::size_t n) {
  std::set<std::string> out;
  for (const auto& w : base_words) {
    std::string coded;
    std::size_t i = h;
    for (std::size_t q = 0; q < n; ++q) {
      if (q) coded += h ? "," : "";
      coded += w.substr(i - h, 2 * h + 1);
      if (q + 1 < n) i += oracle::jump_at(w, table, k, i);
    }
    out.insert(coded);
  }
  return out;
}

const std::vector<std::pair<char, char>> kGolden{{'0', '0'}, {'0', '1'}, {'1', '0'}};
const std::vector<std::pair<char, char>> kFull{{'0', '0'}, {'0', '1'}, {'1', '0'}, {'1', '1'}};

}  // namespace

TEST_CASE("parsing the sample presentations") {
  const auto g = sft_file("golden_mean.txt");
  CHECK(g.vertices.size() == 2);
  CHECK(g.edges.size() == 3);
  CHECK(g.block_length() == 1);
  const auto e = std::get<SoficPresentation>(parse_presentation(read_data("even_shift.txt")));
  CHECK(e.vertices == std::vector<std::string>{"a", "b"});
  CHECK(e.edges.size() == 3);
  CHECK(e.label_length() == 1);
}

TEST_CASE("malformed presentations") {
  CHECK(error_kind([] { parse_presentation("vertex a\nvertex b\nedge a b 0\nedge b a\n"); }) == ErrorKind::ParseError);
  CHECK(error_kind([] { parse_presentation("vertex 0\nedge 0 1\n"); }) == ErrorKind::ParseError);
  CHECK(error_kind([] { parse_presentation("node 0\n"); }) == ErrorKind::ParseError);
  CHECK(error_kind([] { parse_presentation("vertex 0\nvertex 0\n"); }) == ErrorKind::ParseError);
  CHECK(error_kind([] { parse_presentation("vertex 0\nvertex 01\nedge 0 01\n"); }) == ErrorKind::ParseError);
}

TEST_CASE("print and parse round trip, DOT output") {
  for (const auto* name : {"golden_mean.txt", "even_shift.txt", "full2.txt"}) {
    const auto p = parse_presentation(read_data(name));
    std::visit(
        [](const auto& pres) {
          const auto again = parse_presentation(print(pres));
          CHECK(std::get<std::decay_t<decltype(pres)>>(again) == pres);
          const auto dot = to_dot(pres);
          CHECK(dot.rfind("digraph", 0) == 0);
          CHECK(dot.find("->") != std::string::npos);
        },
        p);
  }
  const auto dot = to_dot(std::get<SoficPresentation>(parse_presentation(read_data("even_shift.txt"))));
  CHECK(dot.find("v0 -> v1 [label=\"1\"];") != std::string::npos);
}

TEST_CASE("languages of small presentations") {
  const auto g = sft_file("golden_mean.txt");
  CHECK(strs(language_of_presentation(g, 3)) == std::set<std::string>{"000", "001", "010", "100", "101"});
  const auto full = sft_file("full2.txt");
  for (std::size_t n = 1; n <= 10; ++n) CHECK(language_of_presentation(full, n).size() == (1u << n));
  const auto even = parse_presentation(read_data("even_shift.txt"));
  const Edges even_edges{{'a', 'a', '0'}, {'a', 'b', '1'}, {'b', 'a', '1'}};
  for (std::size_t n = 1; n <= 9; ++n) CHECK(strs(language_of_presentation(even, n)) == sofic_words(even_edges, n));
  for (std::size_t n = 1; n <= 9; ++n)
    CHECK(strs(language_of_presentation(g, n)) == sofic_words(sft_edges(kGolden), n));
  CHECK(error_kind([&] { language_of_presentation(g, 0); }) == ErrorKind::InvalidArgument);
}

TEST_CASE("pruning removes stranded vertices and is idempotent") {
  const auto p = std::get<SftPresentation>(
      parse_presentation("vertex 0\nvertex 1\nvertex 2\nvertex 3\nedge 0 0\nedge 0 1\nedge 1 0\nedge 2 0\nedge 1 3\n"));
  const auto q = prune(p);
  CHECK(q.vertices.size() == 2);
  CHECK(q.edges.size() == 3);
  CHECK(prune(q) == q);
  const auto s = as_sofic(p);
  CHECK(prune(prune(s)) == prune(s));
  CHECK(prune(s).vertices == std::vector<std::string>{"0", "1"});
}

TEST_CASE("block presentations") {
  const auto full = sft_file("full2.txt");
  const auto b2 = block_presentation(full, 2);
  CHECK(b2.vertices.size() == 4);
  CHECK(b2.edges.size() == 8);
  const auto g2 = block_presentation(sft_file("golden_mean.txt"), 2);
  CHECK(strs(std::set<Word>(g2.vertices.begin(), g2.vertices.end())) == std::set<std::string>{"00", "01", "10"});
  CHECK(block_presentation(sft_file("golden_mean.txt"), 1) == sft_file("golden_mean.txt"));
  CHECK(block_alphabet(full.alphabet, 3).size() == 8);
  CHECK(block_alphabet(full.alphabet, 3).symbol(5) == "101");
  CHECK(error_kind([&] { block_alphabet(full.alphabet, 21); }) == ErrorKind::DegenerateInput);
}

TEST_CASE("property: block recoding preserves word counts") {
  const auto g = sft_file("golden_mean.txt");
  for (std::size_t m = 1; m <= 4; ++m) {
    const auto b = block_presentation(g, m);
    for (std::size_t n = 1; n <= 6; ++n)
      CHECK(language_of_presentation(b, n).size() == sofic_words(sft_edges(kGolden), n + m - 1).size());
  }
}

TEST_CASE("speedup of the full 2-shift by a constant jump") {
  const auto full = sft_file("full2.txt");
  const auto jump = JumpFunction::constant(2);
  CHECK(speedup_block_length(full, jump) == 5);
  const auto sped = speedup_sft(full, jump);
  CHECK(sped.vertices.size() == 32);
  for (std::size_t n = 1; n <= 3; ++n) {
    const auto lang = language_of_presentation(sped, n);
    CHECK(lang.size() == (32u << (2 * (n - 1))));
    CHECK(lang == brute_force_speedup_language(full, jump, n));
    CHECK(strs(lang) ==
          speedup_words_oracle(sofic_words(sft_edges(kFull), 4 + 2 * (n - 1) + 1),
                               oracle::constant_table("01", 2), 0, 2, n));
  }
}

TEST_CASE("golden mean speedups agree with the brute force and the string oracle") {
  const auto g = sft_file("golden_mean.txt");
  for (std::uint32_t p : {1u, 2u, 3u}) {
    const auto jump = JumpFunction::constant(p);
    const auto sped = speedup_sft(g, jump);
    for (std::size_t n = 1; n <= (p == 1 ? 6u : 4u); ++n) {
      const auto lang = language_of_presentation(sped, n);
      CHECK(lang == brute_force_speedup_language(g, jump, n));
      CHECK(strs(lang) == speedup_words_oracle(sofic_words(sft_edges(kGolden), 2 * p + (n - 1) * p + 1),
                                               oracle::constant_table("01", p), 0, p, n));
      CHECK(spatterns_of_presentation(sped, jump, n) == brute_force_spatterns(g, jump, n));
    }
  }
  // p = 1 keeps the counts of the base shift
  const auto sped1 = speedup_sft(g, JumpFunction::constant(1));
  for (std::size_t n = 1; n <= 6; ++n)
    CHECK(language_of_presentation(sped1, n).size() == sofic_words(sft_edges(kGolden), n + 2).size());
}

TEST_CASE("golden mean speedup by a non-constant bijective jump") {
  // 1 on a 1, 3 just before a 1, 2 elsewhere: each 1 swaps the two classes
  const std::map<std::string, std::uint32_t> t{{"000", 2}, {"001", 3}, {"010", 1}, {"100", 2}, {"101", 3}};
  JumpFunction::Table table;
  for (const auto& [w, v] : t) {
    std::vector<Symbol> key;
    for (char c : w) key.push_back(static_cast<Symbol>(c - '0'));
    table[key] = v;
  }
  const auto g = sft_file("golden_mean.txt");
  const auto jump = JumpFunction::table(g.alphabet, 1, table);
  CHECK(speedup_block_length(g, jump) == 7);
  const auto sped = speedup_sft(g, jump);
  for (std::size_t n = 1; n <= 4; ++n) {
    const auto lang = language_of_presentation(sped, n);
    CHECK(lang == brute_force_speedup_language(g, jump, n));
    CHECK(strs(lang) == speedup_words_oracle(sofic_words(sft_edges(kGolden), 6 + (n - 1) * 3 + 1), t, 1, 3, n));
    CHECK(spatterns_of_presentation(sped, jump, n) == brute_force_spatterns(g, jump, n));
  }
  // a non-surjective jump loses the blocks nothing lands on
  auto lossy = table;
  lossy[{0, 0, 1}] = 2;
  lossy[{1, 0, 1}] = 2;
  const auto one_sided = brute_force_speedup_language(g, JumpFunction::table(g.alphabet, 1, lossy), 1);
  const auto two_sided = language_of_presentation(speedup_sft(g, JumpFunction::table(g.alphabet, 1, lossy)), 1);
  CHECK(two_sided.size() < one_sided.size());
  CHECK(std::includes(one_sided.begin(), one_sided.end(), two_sided.begin(), two_sided.end()));

  auto partial = table;
  partial.erase(partial.begin());
  CHECK(error_kind([&] { speedup_sft(g, JumpFunction::table(g.alphabet, 1, partial)); }) ==
        ErrorKind::TotalityFailure);
}

TEST_CASE("sofic speedup of the even shift") {
  const auto even = parse_presentation(read_data("even_shift.txt"));
  const Edges even_edges{{'a', 'a', '0'}, {'a', 'b', '1'}, {'b', 'a', '1'}};
  const auto jump = JumpFunction::constant(2);
  const auto sped = speedup_sofic(std::get<SoficPresentation>(even), jump);
  CHECK(sped.label_length() == 5);
  for (std::size_t n = 1; n <= 4; ++n) {
    const auto lang = language_of_presentation(sped, n);
    CHECK(lang == brute_force_speedup_language(even, jump, n));
    CHECK(strs(lang) == speedup_words_oracle(sofic_words(even_edges, 4 + 2 * (n - 1) + 1),
                                             oracle::constant_table("01", 2), 0, 2, n));
    CHECK(spatterns_of_presentation(sped, jump, n) == brute_force_spatterns(even, jump, n));
  }
}

TEST_CASE("the sofic route through an SFT agrees with the SFT route") {
  const auto g = sft_file("golden_mean.txt");
  for (std::uint32_t p : {1u, 2u}) {
    const auto jump = JumpFunction::constant(p);
    const auto a = speedup_sft(g, jump);
    const auto b = speedup_sofic(as_sofic(g), jump);
    for (std::size_t n = 1; n <= 4; ++n) {
      CHECK(language_of_presentation(a, n) == language_of_presentation(b, n));
      CHECK(spatterns_of_presentation(a, jump, n) == spatterns_of_presentation(b, jump, n));
    }
  }
}
