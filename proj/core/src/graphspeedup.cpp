#include "symdyn/graphspeedup.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <sstream>

#include "symdyn/error.hpp"

namespace symdyn {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string> split_ws(std::string_view s) {
  std::vector<std::string> out;
  std::istringstream in{std::string(s)};
  for (std::string tok; in >> tok;) out.push_back(tok);
  return out;
}

std::vector<std::string> tokens_of_word_text(std::string_view text) {
  std::vector<std::string> out;
  if (text.find(',') != std::string_view::npos) {
    std::size_t start = 0;
    while (start <= text.size()) {
      auto comma = text.find(',', start);
      if (comma == std::string_view::npos) comma = text.size();
      out.emplace_back(text.substr(start, comma - start));
      start = comma + 1;
    }
  } else {
    for (char c : text) out.emplace_back(1, c);
  }
  return out;
}

std::string alphabet_line(const Alphabet& a) {
  std::string out = "alphabet";
  for (const auto& s : a.symbols()) out += " " + s;
  return out + "\n";
}

std::string dot_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  return out;
}

/// Remove vertices with zero in- or out-degree until stable; returns the kept
/// indices in order.
std::vector<std::size_t> essential_vertices(std::size_t count,
                                            const std::vector<std::pair<std::size_t, std::size_t>>& arcs) {
  std::vector<bool> alive(count, true);
  bool changed = true;
  while (changed) {
    changed = false;
    std::vector<std::size_t> in(count, 0), out(count, 0);
    for (auto [u, v] : arcs)
      if (alive[u] && alive[v]) {
        ++out[u];
        ++in[v];
      }
    for (std::size_t v = 0; v < count; ++v)
      if (alive[v] && (in[v] == 0 || out[v] == 0)) {
        alive[v] = false;
        changed = true;
      }
  }
  std::vector<std::size_t> kept;
  for (std::size_t v = 0; v < count; ++v)
    if (alive[v]) kept.push_back(v);
  return kept;
}

/// Index of a block among all |A|^m blocks in lexicographic order.
Symbol block_index(std::span<const Symbol> letters, std::size_t base) {
  std::uint64_t idx = 0;
  for (auto s : letters) idx = idx * base + s;
  return static_cast<Symbol>(idx);
}

Word join_labels(const Alphabet& base, const std::vector<const Word*>& labels) {
  const auto m = labels.front()->size();
  if (m == 1) {
    std::vector<Symbol> letters;
    for (const auto* w : labels) letters.push_back((*w)[0]);
    return Word(base, std::move(letters));
  }
  auto blocks = block_alphabet(base, m);
  std::vector<Symbol> letters;
  for (const auto* w : labels) letters.push_back(block_index(w->letters(), base.size()));
  return Word(blocks, std::move(letters));
}

/// Label words of length n of either presentation kind.
std::set<Word> admissible_words(const Presentation& p, std::size_t n) {
  return std::visit([n](const auto& g) { return language_of_presentation(g, n); }, p);
}

const Alphabet& alphabet_of(const Presentation& p) {
  return std::visit([](const auto& g) -> const Alphabet& { return g.alphabet; }, p);
}

/// p_max over the (2K+1)-words of the language, with a totality check.
std::uint32_t language_p_max(const Presentation& p, const JumpFunction& jump) {
  const auto words = admissible_words(p, 2 * jump.radius() + 1);
  if (words.empty()) fail(ErrorKind::DegenerateInput, "presentation has an empty language");
  std::uint32_t p_max = 0;
  for (const auto& w : words) {
    auto v = jump.lookup(w.letters());
    if (!v) fail(ErrorKind::TotalityFailure, "jump undefined on centered word '" + w.str() + "'");
    p_max = std::max(p_max, *v);
  }
  return p_max;
}

std::uint32_t jump_at_center(const JumpFunction& jump, const Word& block) {
  const auto h = block.size() / 2;
  const auto k = jump.radius();
  auto v = jump.lookup(block.letters().subspan(h - k, 2 * k + 1));
  if (!v) fail(ErrorKind::TotalityFailure, "jump undefined at the center of block '" + block.str() + "'");
  return *v;
}

}  // namespace

std::size_t SftPresentation::block_length() const { return vertices.empty() ? 0 : vertices.front().size(); }

std::size_t SoficPresentation::label_length() const { return edges.empty() ? 0 : edges.begin()->label.size(); }

Presentation parse_presentation(std::string_view text) {
  struct Line {
    std::size_t no;
    std::vector<std::string> fields;
  };
  std::vector<Line> lines;
  std::optional<std::vector<std::string>> declared;
  std::istringstream in{std::string(text)};
  std::size_t no = 0;
  for (std::string raw; std::getline(in, raw);) {
    ++no;
    std::string_view line = raw;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    auto fields = split_ws(line);
    if (fields[0] == "alphabet") {
      if (declared) fail(ErrorKind::ParseError, "line " + std::to_string(no) + ": second alphabet line");
      declared.emplace(fields.begin() + 1, fields.end());
      continue;
    }
    if (fields[0] == "vertex") {
      if (fields.size() != 2) fail(ErrorKind::ParseError, "line " + std::to_string(no) + ": expected 'vertex <label>'");
    } else if (fields[0] == "edge") {
      if (fields.size() != 3 && fields.size() != 4)
        fail(ErrorKind::ParseError, "line " + std::to_string(no) + ": expected 'edge <from> <to> [label]'");
    } else {
      fail(ErrorKind::ParseError, "line " + std::to_string(no) + ": unknown directive '" + fields[0] + "'");
    }
    lines.push_back({no, std::move(fields)});
  }

  std::size_t labeled = 0, unlabeled = 0;
  for (const auto& l : lines)
    if (l.fields[0] == "edge") (l.fields.size() == 4 ? labeled : unlabeled)++;
  if (labeled && unlabeled) fail(ErrorKind::ParseError, "mixes labeled and unlabeled edges");
  const bool sofic = labeled > 0;

  // Alphabet: declared, or symbols of the labels in order of appearance.
  std::vector<std::string> symbols;
  if (declared) {
    symbols = *declared;
  } else {
    auto add = [&](std::string_view word) {
      for (auto& tok : tokens_of_word_text(word))
        if (std::find(symbols.begin(), symbols.end(), tok) == symbols.end()) symbols.push_back(tok);
    };
    for (const auto& l : lines) {
      if (!sofic && l.fields[0] == "vertex") add(l.fields[1]);
      if (sofic && l.fields[0] == "edge") add(l.fields[3]);
    }
  }
  if (symbols.empty()) fail(ErrorKind::ParseError, "presentation has no labels");
  Alphabet alphabet(std::move(symbols));

  std::map<std::string, std::size_t> index;
  std::vector<std::string> names;
  for (const auto& l : lines)
    if (l.fields[0] == "vertex") {
      if (!index.emplace(l.fields[1], names.size()).second)
        fail(ErrorKind::ParseError, "line " + std::to_string(l.no) + ": duplicate vertex '" + l.fields[1] + "'");
      names.push_back(l.fields[1]);
    }
  auto vertex = [&](const Line& l, const std::string& name) {
    auto it = index.find(name);
    if (it == index.end()) fail(ErrorKind::ParseError, "line " + std::to_string(l.no) + ": unknown vertex '" + name + "'");
    return it->second;
  };

  if (sofic) {
    SoficPresentation p{alphabet, names, {}};
    for (const auto& l : lines)
      if (l.fields[0] == "edge")
        p.edges.insert({vertex(l, l.fields[1]), vertex(l, l.fields[2]), Word::parse(alphabet, l.fields[3])});
    return p;
  }
  SftPresentation p{alphabet, {}, {}};
  for (const auto& name : names) p.vertices.push_back(Word::parse(alphabet, name));
  for (const auto& v : p.vertices)
    if (v.size() != p.vertices.front().size()) fail(ErrorKind::ParseError, "vertex labels differ in length");
  for (const auto& l : lines)
    if (l.fields[0] == "edge") p.edges.emplace(vertex(l, l.fields[1]), vertex(l, l.fields[2]));
  return p;
}

std::string print(const SftPresentation& p) {
  std::string out = alphabet_line(p.alphabet);
  for (const auto& v : p.vertices) out += "vertex " + v.str() + "\n";
  for (auto [u, v] : p.edges) out += "edge " + p.vertices[u].str() + " " + p.vertices[v].str() + "\n";
  return out;
}

std::string print(const SoficPresentation& p) {
  std::string out = alphabet_line(p.alphabet);
  for (const auto& v : p.vertices) out += "vertex " + v + "\n";
  for (const auto& e : p.edges)
    out += "edge " + p.vertices[e.from] + " " + p.vertices[e.to] + " " + e.label.str() + "\n";
  return out;
}

std::string to_dot(const SftPresentation& p) {
  std::ostringstream out;
  out << "digraph sft {\n";
  for (std::size_t v = 0; v < p.vertices.size(); ++v)
    out << "  v" << v << " [label=\"" << dot_escape(p.vertices[v].str()) << "\"];\n";
  for (auto [u, v] : p.edges) out << "  v" << u << " -> v" << v << ";\n";
  out << "}\n";
  return out.str();
}

std::string to_dot(const SoficPresentation& p) {
  std::ostringstream out;
  out << "digraph sofic {\n";
  for (std::size_t v = 0; v < p.vertices.size(); ++v)
    out << "  v" << v << " [label=\"" << dot_escape(p.vertices[v]) << "\"];\n";
  for (const auto& e : p.edges)
    out << "  v" << e.from << " -> v" << e.to << " [label=\"" << dot_escape(e.label.str()) << "\"];\n";
  out << "}\n";
  return out.str();
}

SftPresentation prune(const SftPresentation& p) {
  std::vector<std::pair<std::size_t, std::size_t>> arcs(p.edges.begin(), p.edges.end());
  const auto kept = essential_vertices(p.vertices.size(), arcs);
  std::vector<std::size_t> renumber(p.vertices.size(), SIZE_MAX);
  SftPresentation out{p.alphabet, {}, {}};
  for (auto v : kept) {
    renumber[v] = out.vertices.size();
    out.vertices.push_back(p.vertices[v]);
  }
  for (auto [u, v] : p.edges)
    if (renumber[u] != SIZE_MAX && renumber[v] != SIZE_MAX) out.edges.emplace(renumber[u], renumber[v]);
  return out;
}

SoficPresentation prune(const SoficPresentation& p) {
  std::vector<std::pair<std::size_t, std::size_t>> arcs;
  for (const auto& e : p.edges) arcs.emplace_back(e.from, e.to);
  const auto kept = essential_vertices(p.vertices.size(), arcs);
  std::vector<std::size_t> renumber(p.vertices.size(), SIZE_MAX);
  SoficPresentation out{p.alphabet, {}, {}};
  for (auto v : kept) {
    renumber[v] = out.vertices.size();
    out.vertices.push_back(p.vertices[v]);
  }
  for (const auto& e : p.edges)
    if (renumber[e.from] != SIZE_MAX && renumber[e.to] != SIZE_MAX)
      out.edges.insert({renumber[e.from], renumber[e.to], e.label});
  return out;
}

SoficPresentation as_sofic(const SftPresentation& p) {
  if (p.block_length() != 1) fail(ErrorKind::InvalidArgument, "as_sofic needs single-letter vertex labels");
  SoficPresentation out{p.alphabet, {}, {}};
  for (const auto& v : p.vertices) out.vertices.push_back(v.str());
  for (auto [u, v] : p.edges) out.edges.insert({u, v, p.vertices[u]});
  return out;
}

Alphabet block_alphabet(const Alphabet& base, std::size_t m) {
  if (m == 0) fail(ErrorKind::InvalidArgument, "block length must be positive");
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < m; ++i) {
    total *= base.size();
    if (total > (1u << 20)) fail(ErrorKind::DegenerateInput, "block alphabet too large");
  }
  std::vector<std::string> symbols;
  symbols.reserve(total);
  std::vector<Symbol> digits(m, 0);
  for (std::uint64_t idx = 0; idx < total; ++idx) {
    std::string s;
    for (std::size_t i = 0; i < m; ++i) {
      if (!base.single_char() && i) s += '.';
      s += base.symbol(digits[i]);
    }
    symbols.push_back(std::move(s));
    for (std::size_t i = m; i-- > 0;) {
      if (++digits[i] < base.size()) break;
      digits[i] = 0;
    }
  }
  return Alphabet(std::move(symbols));
}

SftPresentation block_presentation(const SftPresentation& sft, std::size_t m) {
  if (m == 0) fail(ErrorKind::InvalidArgument, "block length must be positive");
  if (sft.block_length() != 1) fail(ErrorKind::InvalidArgument, "block recoding needs single-letter vertex labels");
  const auto base = prune(sft);
  if (m == 1) return base;

  std::vector<std::vector<std::size_t>> succ(base.vertices.size());
  for (auto [u, v] : base.edges) succ[u].push_back(v);

  std::vector<Word> blocks;
  std::vector<std::size_t> path;
  std::function<void(std::size_t)> extend = [&](std::size_t v) {
    path.push_back(v);
    if (path.size() == m) {
      std::vector<Symbol> letters;
      for (auto x : path) letters.push_back(base.vertices[x][0]);
      blocks.emplace_back(base.alphabet, std::move(letters));
    } else {
      for (auto w : succ[v]) extend(w);
    }
    path.pop_back();
  };
  for (std::size_t v = 0; v < base.vertices.size(); ++v) extend(v);
  if (blocks.empty()) fail(ErrorKind::DegenerateInput, "no admissible block of length " + std::to_string(m));
  std::sort(blocks.begin(), blocks.end());
  blocks.erase(std::unique(blocks.begin(), blocks.end()), blocks.end());

  SftPresentation out{base.alphabet, blocks, {}};
  std::map<std::vector<Symbol>, std::vector<std::size_t>> by_prefix;  // (m-1)-prefix -> blocks
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    auto l = blocks[i].letters();
    by_prefix[std::vector<Symbol>(l.begin(), l.end() - 1)].push_back(i);
  }
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    auto l = blocks[i].letters();
    auto it = by_prefix.find(std::vector<Symbol>(l.begin() + 1, l.end()));
    if (it == by_prefix.end()) continue;
    for (auto j : it->second) out.edges.emplace(i, j);
  }
  return prune(out);
}

std::size_t speedup_block_length(const Presentation& p, const JumpFunction& jump) {
  const auto p_max = language_p_max(p, jump);
  return 2 * std::max<std::size_t>(p_max, jump.radius()) + 1;
}

SftPresentation speedup_sft(const SftPresentation& sft, const JumpFunction& jump) {
  const auto base = prune(sft);
  const auto m = speedup_block_length(Presentation{base}, jump);
  auto blocks = block_presentation(base, m);

  std::vector<std::vector<std::size_t>> succ(blocks.vertices.size());
  for (auto [u, v] : blocks.edges) succ[u].push_back(v);

  SftPresentation out{blocks.alphabet, blocks.vertices, {}};
  for (std::size_t v = 0; v < blocks.vertices.size(); ++v) {
    const auto p = jump_at_center(jump, blocks.vertices[v]);
    std::set<std::size_t> frontier{v};
    for (std::uint32_t step = 0; step < p; ++step) {
      std::set<std::size_t> next;
      for (auto u : frontier) next.insert(succ[u].begin(), succ[u].end());
      frontier = std::move(next);
    }
    for (auto u : frontier) out.edges.emplace(v, u);
  }
  return prune(out);
}

SoficPresentation speedup_sofic(const SoficPresentation& sofic, const JumpFunction& jump) {
  const auto base = prune(sofic);
  if (base.edges.empty()) fail(ErrorKind::DegenerateInput, "sofic presentation has no essential edges");
  if (base.label_length() != 1) fail(ErrorKind::InvalidArgument, "speedup_sofic needs single-letter edge labels");
  const auto m = speedup_block_length(Presentation{base}, jump);

  std::vector<const SoficEdge*> edges;
  for (const auto& e : base.edges) edges.push_back(&e);
  std::vector<std::vector<std::size_t>> out_edges(base.vertices.size());
  for (std::size_t i = 0; i < edges.size(); ++i) out_edges[edges[i]->from].push_back(i);

  // Vertices of the result: edge paths of length m.
  std::vector<std::vector<std::size_t>> paths;
  std::vector<std::size_t> path;
  std::function<void(std::size_t)> extend = [&](std::size_t e) {
    path.push_back(e);
    if (path.size() == m)
      paths.push_back(path);
    else
      for (auto f : out_edges[edges[e]->to]) extend(f);
    path.pop_back();
  };
  for (std::size_t e = 0; e < edges.size(); ++e) extend(e);
  if (paths.empty()) fail(ErrorKind::DegenerateInput, "no edge path of length " + std::to_string(m));

  std::map<std::vector<std::size_t>, std::size_t> path_index;
  SoficPresentation out{base.alphabet, {}, {}};
  for (std::size_t i = 0; i < paths.size(); ++i) {
    path_index.emplace(paths[i], i);
    out.vertices.push_back("p" + std::to_string(i));
  }

  for (std::size_t i = 0; i < paths.size(); ++i) {
    std::vector<Symbol> letters;
    for (auto e : paths[i]) letters.push_back(edges[e]->label[0]);
    Word block(base.alphabet, std::move(letters));
    const auto p = jump_at_center(jump, block);
    // all continuations of p edges
    std::vector<std::vector<std::size_t>> frontier{paths[i]};
    for (std::uint32_t step = 0; step < p; ++step) {
      std::vector<std::vector<std::size_t>> next;
      for (const auto& q : frontier)
        for (auto f : out_edges[edges[q.back()]->to]) {
          auto r = q;
          r.push_back(f);
          next.push_back(std::move(r));
        }
      frontier = std::move(next);
    }
    for (const auto& q : frontier) {
      std::vector<std::size_t> tail(q.end() - static_cast<std::ptrdiff_t>(m), q.end());
      out.edges.insert({i, path_index.at(tail), block});
    }
  }
  return prune(out);
}

std::set<Word> language_of_presentation(const SftPresentation& p, std::size_t n) {
  if (n == 0) fail(ErrorKind::InvalidArgument, "word length must be positive");
  std::vector<std::vector<std::size_t>> succ(p.vertices.size());
  for (auto [u, v] : p.edges) succ[u].push_back(v);
  std::set<Word> out;
  std::vector<const Word*> labels;
  std::function<void(std::size_t)> walk = [&](std::size_t v) {
    labels.push_back(&p.vertices[v]);
    if (labels.size() == n)
      out.insert(join_labels(p.alphabet, labels));
    else
      for (auto w : succ[v]) walk(w);
    labels.pop_back();
  };
  for (std::size_t v = 0; v < p.vertices.size(); ++v) walk(v);
  return out;
}

std::set<Word> language_of_presentation(const SoficPresentation& p, std::size_t n) {
  if (n == 0) fail(ErrorKind::InvalidArgument, "word length must be positive");
  std::vector<std::vector<const SoficEdge*>> out_edges(p.vertices.size());
  for (const auto& e : p.edges) out_edges[e.from].push_back(&e);
  std::set<Word> out;
  std::function<void(std::vector<const Word*>&, std::size_t)> walk = [&](std::vector<const Word*>& labels,
                                                                         std::size_t v) {
    if (labels.size() == n) {
      out.insert(join_labels(p.alphabet, labels));
      return;
    }
    for (const auto* e : out_edges[v]) {
      labels.push_back(&e->label);
      walk(labels, e->to);
      labels.pop_back();
    }
  };
  std::vector<const Word*> labels;
  for (std::size_t v = 0; v < p.vertices.size(); ++v) walk(labels, v);
  return out;
}

std::set<Word> language_of_presentation(const Presentation& p, std::size_t n) { return admissible_words(p, n); }

std::set<Word> brute_force_speedup_language(const Presentation& base, const JumpFunction& jump, std::size_t n) {
  if (n == 0) fail(ErrorKind::InvalidArgument, "word length must be positive");
  const auto p_max = language_p_max(base, jump);
  const std::size_t h = std::max<std::size_t>(p_max, jump.radius());
  const std::size_t m = 2 * h + 1;
  const std::size_t length = 2 * h + (n - 1) * p_max + 1;
  const auto& alphabet = alphabet_of(base);
  std::set<Word> out;
  for (const auto& w : admissible_words(base, length)) {
    OrbitSegment seg(w);
    const auto orbit = s_orbit(seg, jump, h);
    std::vector<Word> blocks;
    for (std::size_t k = 0; k < n; ++k) blocks.push_back(seg.slice(orbit.at(k) - h, m));
    std::vector<const Word*> labels;
    for (const auto& b : blocks) labels.push_back(&b);
    out.insert(join_labels(alphabet, labels));
  }
  return out;
}

std::set<SPattern> brute_force_spatterns(const Presentation& base, const JumpFunction& jump, std::size_t n) {
  if (n == 0) fail(ErrorKind::InvalidArgument, "pattern length must be positive");
  const auto p_max = language_p_max(base, jump);
  const auto k = jump.radius();
  const std::size_t length = 2 * k + n * p_max + 1;
  std::set<SPattern> out;
  for (const auto& w : admissible_words(base, length)) {
    OrbitSegment seg(w);
    const auto map = landing_map(seg, jump);
    if (auto pat = spattern_at(seg, map, k, n)) out.insert(std::move(*pat));
  }
  return out;
}

std::set<SPattern> spatterns_of_presentation(const Presentation& sped, const JumpFunction& jump, std::size_t n) {
  if (n == 0) fail(ErrorKind::InvalidArgument, "pattern length must be positive");
  // Paths of n+1 block labels, gathered per presentation kind.
  std::vector<std::vector<Word>> paths;
  if (const auto* sft = std::get_if<SftPresentation>(&sped)) {
    std::vector<std::vector<std::size_t>> succ(sft->vertices.size());
    for (auto [u, v] : sft->edges) succ[u].push_back(v);
    std::vector<Word> cur;
    std::function<void(std::size_t)> walk = [&](std::size_t v) {
      cur.push_back(sft->vertices[v]);
      if (cur.size() == n + 1)
        paths.push_back(cur);
      else
        for (auto w : succ[v]) walk(w);
      cur.pop_back();
    };
    for (std::size_t v = 0; v < sft->vertices.size(); ++v) walk(v);
  } else {
    const auto& sofic = std::get<SoficPresentation>(sped);
    std::vector<std::vector<const SoficEdge*>> out_edges(sofic.vertices.size());
    for (const auto& e : sofic.edges) out_edges[e.from].push_back(&e);
    std::vector<Word> cur;
    std::function<void(std::size_t)> walk = [&](std::size_t v) {
      if (cur.size() == n + 1) {
        paths.push_back(cur);
        return;
      }
      for (const auto* e : out_edges[v]) {
        cur.push_back(e->label);
        walk(e->to);
        cur.pop_back();
      }
    };
    for (std::size_t v = 0; v < sofic.vertices.size(); ++v) walk(v);
  }

  std::set<SPattern> out;
  for (const auto& blocks : paths) {
    const auto h = blocks.front().size() / 2;
    // Rebuild the sigma-word: the first block, then the fresh letters each
    // landing contributes.
    std::vector<Symbol> letters(blocks.front().letters().begin(), blocks.front().letters().end());
    for (std::size_t i = 1; i < blocks.size(); ++i) {
      const auto p = jump_at_center(jump, blocks[i - 1]);
      const auto b = blocks[i].letters();
      letters.insert(letters.end(), b.end() - p, b.end());
    }
    OrbitSegment seg(Word(blocks.front().alphabet(), std::move(letters)));
    const auto map = landing_map(seg, jump);
    auto pat = spattern_at(seg, map, h, n);
    if (!pat) fail(ErrorKind::DegenerateInput, "speedup path too short for an S-pattern");
    out.insert(std::move(*pat));
  }
  return out;
}

}  // namespace symdyn
