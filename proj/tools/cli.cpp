#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <sstream>

#include "symdyn/error.hpp"
#include "symdyn/extension.hpp"
#include "symdyn/graphspeedup.hpp"
#include "symdyn/lr.hpp"
#include "symdyn/returnwords.hpp"
#include "symdyn/shiftspaces.hpp"
#include "symdyn/speedup.hpp"

namespace symdyn::cli {

namespace {

struct Options {
  std::string shift = "fibonacci";
  std::string jump = "constant:2";
  bool jump_given = false;
  std::string word;
  std::size_t window = 10000;
  std::size_t nmax = 10;
  std::size_t base_nmax = 20;
  std::size_t tail_from = 10;
  std::uint64_t seed = 1;
  std::size_t pairs = 1000;
  std::size_t anchor_count = 10;
  std::vector<std::string> anchors;
  std::string out;
  std::string golden;
  bool strict = false;
  bool relaxed = false;
};

struct Result {
  std::string text;
  std::vector<std::pair<std::string, std::string>> artifacts;
  bool pass = true;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::IoError, "cannot read '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << text)) fail(ErrorKind::IoError, "cannot write '" + path.string() + "'");
}

std::string one_line(std::string s) {
  while (!s.empty() && s.back() == '\n') s.pop_back();
  std::string out;
  for (char c : s) {
    if (c == '\n')
      out += "; ";
    else
      out.push_back(c);
  }
  return out;
}

Rational parse_rational(const std::string& text) {
  try {
    std::size_t used = 0;
    const auto slash = text.find('/');
    const auto num = std::stoll(text.substr(0, slash), &used);
    if (slash == std::string::npos) {
      if (used != text.size()) throw std::invalid_argument(text);
      return Rational(num);
    }
    const auto den_text = text.substr(slash + 1);
    const auto den = std::stoll(den_text, &used);
    if (used != den_text.size() || den == 0) throw std::invalid_argument(text);
    return Rational(num, den);
  } catch (const std::logic_error&) {
    fail(ErrorKind::ParseError, "bad rational '" + text + "'");
  }
}

// ---- inputs ---------------------------------------------------------------

struct Shift {
  std::string name;
  std::optional<Substitution> substitution;
  std::optional<SturmianSpec> sturmian;
  std::optional<Presentation> presentation;
};

Shift load_shift(const std::string& spec) {
  Shift s{spec, {}, {}, {}};
  if (spec == "fibonacci") {
    s.substitution = Substitution::fibonacci();
  } else if (spec == "thue-morse") {
    s.substitution = Substitution::thue_morse();
  } else if (spec.rfind("sturmian:", 0) == 0) {
    s.sturmian = SturmianSpec::parse(spec.substr(9));
  } else {
    const auto text = read_file(spec);
    if (text.find("->") != std::string::npos)
      s.substitution = Substitution::parse(text);
    else
      s.presentation = parse_presentation(text);
  }
  return s;
}

OrbitSegment sequence(const Shift& shift, std::size_t window) {
  if (window == 0) fail(ErrorKind::InvalidArgument, "window must be positive");
  if (shift.substitution) {
    const auto& seed = shift.substitution->default_seed();
    if (!seed) fail(ErrorKind::NotSelfProlongable, "substitution has no self-prolongable letter");
    return fixed_point_prefix(*shift.substitution, *seed, window);
  }
  if (shift.sturmian) return mechanical_prefix(*shift.sturmian, window);
  fail(ErrorKind::InvalidArgument, "'" + shift.name + "' is a graph presentation; this command needs a sequence");
}

const Presentation& presentation(const Shift& shift) {
  if (!shift.presentation) fail(ErrorKind::InvalidArgument, "'" + shift.name + "' is not a graph presentation");
  return *shift.presentation;
}

JumpFunction load_jump(const std::string& spec, const Alphabet& alphabet, const OrbitSegment* segment) {
  auto number = [&](const std::string& text) -> std::uint32_t {
    try {
      std::size_t used = 0;
      const auto v = std::stoul(text, &used);
      if (used != text.size()) throw std::invalid_argument(text);
      return static_cast<std::uint32_t>(v);
    } catch (const std::logic_error&) {
      fail(ErrorKind::ParseError, "bad jump spec '" + spec + "'");
    }
  };
  if (spec.rfind("constant:", 0) == 0) {
    const auto k = number(spec.substr(9));
    if (k == 0) fail(ErrorKind::InvalidArgument, "constant jump must be positive");
    return JumpFunction::constant(k);
  }
  if (spec.rfind("first-return:", 0) == 0) {
    if (!segment) fail(ErrorKind::InvalidArgument, "first-return jumps need a sequence shift");
    return first_return_jump(*segment, number(spec.substr(13)));
  }
  return JumpFunction::parse(read_file(spec), alphabet);
}

EntryMode entry_mode(const Options& o) {
  if (o.strict && o.relaxed) fail(ErrorKind::InvalidArgument, "--strict and --relaxed are exclusive");
  return o.strict ? EntryMode::strict : EntryMode::relaxed;
}

void require_window(const Options& o, const JumpFunction& jump, std::size_t n_max) {
  const std::size_t need = 4 * n_max * jump.max_value();
  if (o.window < need)
    fail(ErrorKind::WindowTooShort, "window " + std::to_string(o.window) + " below the floor 4 n_max p_max = " +
                                        std::to_string(need));
}

/// The explicit --word, or the first length-4 factor (longer in strict mode).
Word pick_word(const Options& o, const OrbitSegment& seg, const JumpFunction& jump) {
  if (!o.word.empty()) return Word::parse(seg.alphabet(), o.word);
  std::size_t len = 4;
  if (entry_mode(o) == EntryMode::strict) len = std::max<std::size_t>(len, jump.max_value() + 4 * jump.radius() + 2);
  return seg.slice(seg.size() / 2, len);
}

Word require_word(const Options& o, const OrbitSegment& seg) {
  if (o.word.empty()) fail(ErrorKind::InvalidArgument, "--word is required");
  return Word::parse(seg.alphabet(), o.word);
}

// ---- shared analyses ------------------------------------------------------

struct PsiTables {
  std::map<Word, std::set<Permutation>> by_word;
  std::map<std::pair<Word, Word>, std::set<Permutation>> by_pair;

  bool consistent() const {
    return std::all_of(by_word.begin(), by_word.end(), [](const auto& kv) { return kv.second.size() == 1; });
  }
};

PsiTables psi_tables(const ExtensionTrace& t) {
  PsiTables tables;
  for (std::size_t k = 0; k < t.perms.size(); ++k) {
    tables.by_word[t.steps[k]].insert(t.perms[k]);
    if (k + 1 < t.perms.size()) tables.by_pair[{t.steps[k], t.steps[k + 1]}].insert(t.perms[k]);
  }
  return tables;
}

std::string perm_list(const std::set<Permutation>& ps) {
  std::string out;
  for (const auto& p : ps) out += (out.empty() ? "" : " ") + p.str();
  return out;
}

struct Additivity {
  std::size_t pairs = 0;
  std::size_t failures = 0;
  std::optional<std::pair<std::ptrdiff_t, std::ptrdiff_t>> first_failure;
};

/// cocycle(m+n) == cocycle(m) * cocycle_{shifted by m}(n) on seeded pairs
/// that stay inside the trace.
Additivity cocycle_additivity(const ExtensionTrace& t, std::size_t pairs, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const auto o = static_cast<std::ptrdiff_t>(t.origin);
  const auto len = static_cast<std::ptrdiff_t>(t.length());
  std::uniform_int_distribution<std::ptrdiff_t> pick_m(-o, len - o);
  Additivity a;
  for (std::size_t i = 0; i < pairs; ++i) {
    const auto m = pick_m(rng);
    std::uniform_int_distribution<std::ptrdiff_t> pick_n(-(o + m), len - o - m);
    const auto n = pick_n(rng);
    ++a.pairs;
    if (!(cocycle(t, m + n) == cocycle(t, m) * cocycle(t.shifted(m), n))) {
      ++a.failures;
      if (!a.first_failure) a.first_failure.emplace(m, n);
    }
  }
  return a;
}

struct AnchorScan {
  std::vector<Word> anchors;
  std::vector<SubgroupEstimate> estimates;
  std::vector<std::vector<std::optional<Permutation>>> conjugators;

  bool all_conjugate() const {
    for (const auto& row : conjugators)
      for (const auto& c : row)
        if (!c) return false;
    return true;
  }
};

/// Explicit anchors, or extensions w u of growing length read at the usable
/// occurrences of w until `count` of them yield a loop.
AnchorScan scan_anchors(const GroupExtension& ext, const OrbitSegment& seg, const Options& o, const Word& w) {
  AnchorScan scan;
  auto try_anchor = [&](const Word& a) {
    try {
      scan.estimates.push_back(ext.local_group(a));
      scan.anchors.push_back(a);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::WindowTooShort) throw;
    }
  };
  if (!o.anchors.empty()) {
    for (const auto& text : o.anchors) {
      const auto before = scan.anchors.size();
      auto a = Word::parse(seg.alphabet(), text);
      try_anchor(a);
      if (scan.anchors.size() == before)
        fail(ErrorKind::WindowTooShort, "window too short: no loop for anchor '" + a.str() + "'");
    }
  } else {
    std::set<Word> tried;
    for (std::size_t extra = 1; extra <= 4 * w.size() && scan.anchors.size() < o.anchor_count; ++extra)
      for (auto s : ext.starts()) {
        if (scan.anchors.size() >= o.anchor_count) break;
        if (s + w.size() + extra > seg.size()) continue;
        auto a = seg.slice(s, w.size() + extra);
        if (tried.insert(a).second) try_anchor(a);
      }
    if (scan.anchors.size() < 2) fail(ErrorKind::WindowTooShort, "window too short: fewer than two usable anchors");
  }
  for (const auto& a : scan.estimates) {
    auto& row = scan.conjugators.emplace_back();
    for (const auto& b : scan.estimates) row.push_back(conjugacy_check(a, b));
  }
  return scan;
}

std::string anchor_report(const AnchorScan& scan) {
  std::ostringstream out;
  for (std::size_t i = 0; i < scan.anchors.size(); ++i)
    out << "anchor " << i + 1 << ": " << scan.anchors[i].str() << "\n" << scan.estimates[i].str();
  out << "conjugacy matrix (y: conjugate in S" << (scan.estimates.empty() ? 0 : scan.estimates[0].degree) << "):\n";
  for (const auto& row : scan.conjugators) {
    for (std::size_t j = 0; j < row.size(); ++j) out << (j ? " " : "") << (row[j] ? "y" : "n");
    out << "\n";
  }
  return out.str();
}

struct LrScan {
  RecurrenceProfile base;
  RecurrenceProfile speedup;
  GapScan gaps;
  ProofBoundCheck bound;
};

LrScan lr_scan(const OrbitSegment& seg, const JumpFunction& jump, const Word& w, const Options& o) {
  LrScan s;
  s.base = recurrence_profile(seg, o.base_nmax);
  s.speedup = speedup_recurrence_profile(seg, jump, o.nmax);
  GroupExtension ext(seg, jump, w, entry_mode(o));
  s.gaps = ext.gap_scan();
  s.bound = proof_bound_check(s.speedup, s.base.max_ratio(), s.gaps.ratio, ext.p_max());
  return s;
}

// ---- commands -------------------------------------------------------------

Result cmd_gen(const Options& o) {
  const auto seg = sequence(load_shift(o.shift), o.window);
  Result r;
  r.text = seg.word().str() + "\n";
  r.artifacts.emplace_back("prefix.txt", r.text);
  return r;
}

Result cmd_lang(const Options& o) {
  const auto shift = load_shift(o.shift);
  const auto words = shift.presentation ? language_of_presentation(*shift.presentation, o.nmax)
                                        : subwords(sequence(shift, o.window), o.nmax);
  Result r;
  for (const auto& w : words) r.text += w.str() + "\n";
  r.artifacts.emplace_back("lang_" + std::to_string(o.nmax) + ".txt", r.text);
  return r;
}

Result cmd_complexity(const Options& o) {
  const auto shift = load_shift(o.shift);
  Result r;
  std::string csv = "n,count\n";
  if (shift.presentation) {
    for (std::size_t n = 1; n <= o.nmax; ++n)
      csv += std::to_string(n) + "," + std::to_string(language_of_presentation(*shift.presentation, n).size()) + "\n";
    r.text = csv;
    r.artifacts.emplace_back("complexity.csv", csv);
    return r;
  }
  const auto seg = sequence(shift, o.window);
  const auto profile = complexity(seg, o.nmax);
  for (std::size_t n = 1; n <= o.nmax; ++n) csv += std::to_string(n) + "," + std::to_string(profile.at(n)) + "\n";
  r.text = csv;
  r.artifacts.emplace_back("complexity.csv", csv);
  if (o.jump_given) {
    const auto jump = load_jump(o.jump, seg.alphabet(), &seg);
    require_window(o, jump, o.nmax);
    const auto sc = speedup_complexity(seg, jump, o.nmax);
    r.text += sc.report();
    r.artifacts.emplace_back("speedup_complexity.txt", sc.report());
    r.pass = sc.bound_holds();
  }
  return r;
}

Result cmd_validate_jump(const Options& o) {
  const auto seg = sequence(load_shift(o.shift), o.window);
  const auto jump = load_jump(o.jump, seg.alphabet(), &seg);
  const auto v = validate_jump(jump, seg);
  Result r;
  r.text = v.report() + "verdict: " + (v.homeomorphic() ? "PASS" : "FAIL") + "\n";
  r.artifacts.emplace_back("validation.txt", r.text);
  r.pass = v.homeomorphic();
  return r;
}

Result cmd_orbits(const Options& o) {
  const auto seg = sequence(load_shift(o.shift), o.window);
  const auto jump = load_jump(o.jump, seg.alphabet(), &seg);
  require_window(o, jump, o.nmax);
  const auto c = orbit_number(seg, jump);
  const auto map = landing_map(seg, jump);
  const auto coloring = orbit_coloring(map);
  std::ostringstream text;
  text << "orbit number: " << c << "\np_max: " << map.p_max << "\ncentral window: [" << coloring.central_begin << ", "
       << coloring.central_end << ")\n";
  std::vector<std::size_t> sizes(c + 1, 0);
  for (auto l : coloring.label) ++sizes[l];
  for (std::uint32_t k = 1; k <= c; ++k) text << "class " << k << ": " << sizes[k] << " indices\n";
  const auto show = std::min<std::size_t>(60, coloring.central_end - coloring.central_begin);
  text << "letters: " << seg.slice(coloring.central_begin, show).str() << "\nclasses: ";
  for (std::size_t i = 0; i < show; ++i) text << coloring.label[coloring.central_begin + i];
  text << "\n";
  std::string csv = "index,letter,jump,class\n";
  for (std::size_t i = 0; i < seg.size(); ++i)
    if (map.interior(i))
      csv += std::to_string(i) + "," + seg.alphabet().symbol(seg.at(i)) + "," + std::to_string(map.jump[i]) + "," +
             std::to_string(coloring.label[i]) + "\n";
  Result r;
  r.text = text.str();
  r.artifacts.emplace_back("orbits.txt", r.text);
  r.artifacts.emplace_back("coloring.csv", csv);
  r.pass = c <= map.p_max;
  return r;
}

Result cmd_returns(const Options& o) {
  const auto seg = sequence(load_shift(o.shift), o.window);
  const auto w = require_word(o, seg);
  const auto sys = return_words(seg, w);
  const auto l_hat = recurrence_profile(seg, o.base_nmax).max_ratio();
  const auto verdict = return_bound_check(sys, l_hat);
  Result r;
  std::ostringstream text;
  text << "return words of " << w.str() << ":\n";
  for (std::size_t j = 0; j < sys.count(); ++j) text << "  " << j + 1 << " " << sys.returns[j].str() << "\n";
  text << "derived sequence (first 40):";
  for (std::size_t i = 0; i < std::min<std::size_t>(40, sys.derived.size()); ++i) text << " " << sys.derived[i];
  text << "\nmax derived gap: " << derived_gap_max(sys) << "\n" << verdict.report();
  r.text = text.str();
  r.artifacts.emplace_back("returns.txt", sys.str());
  r.artifacts.emplace_back("return_bound.txt", verdict.report());
  r.pass = verdict.holds();
  return r;
}

Result cmd_perms(const Options& o) {
  const auto seg = sequence(load_shift(o.shift), o.window);
  const auto jump = load_jump(o.jump, seg.alphabet(), &seg);
  require_window(o, jump, o.nmax);
  const auto w = require_word(o, seg);
  const auto mode = entry_mode(o);
  GroupExtension ext(seg, jump, w, mode);
  const auto tables = psi_tables(ext.trace());
  std::ostringstream text;
  text << "word " << w.str() << ", orbit number " << ext.orbit_number() << ", "
       << (mode == EntryMode::strict ? "strict" : "relaxed") << " entry block\n";
  text << "entry positions: " << ext.entry_profile(0).str() << "\n";
  text << "psi by return word:\n";
  for (const auto& [r, ps] : tables.by_word) text << "  " << r.str() << " " << perm_list(ps) << "\n";
  text << "psi by consecutive pair:\n";
  std::string csv = "return_word,next_return_word,psi\n";
  for (const auto& [pair, ps] : tables.by_pair) {
    text << "  " << pair.first.str() << " " << pair.second.str() << " " << perm_list(ps) << "\n";
    for (const auto& p : ps) csv += pair.first.str() + "," + pair.second.str() + "," + p.str() + "\n";
  }
  text << "steps traced: " << ext.trace().length() << "\n";
  text << "verdict: " << (tables.consistent() ? "PASS" : "FAIL") << " (one permutation per return word)\n";
  Result r;
  r.text = text.str();
  r.artifacts.emplace_back("psi.csv", csv);
  r.artifacts.emplace_back("trace.csv", ext.trace().csv());
  r.pass = tables.consistent();
  return r;
}

Result cmd_cocycle(const Options& o) {
  const auto seg = sequence(load_shift(o.shift), o.window);
  const auto jump = load_jump(o.jump, seg.alphabet(), &seg);
  require_window(o, jump, o.nmax);
  const auto w = require_word(o, seg);
  GroupExtension ext(seg, jump, w, entry_mode(o));
  const auto& t = ext.trace();
  std::ostringstream text;
  text << "trace length " << t.length() << ", origin " << t.origin << "\n";
  std::string csv = "n,cocycle\n";
  const auto n_max = static_cast<std::ptrdiff_t>(o.nmax);
  for (auto n = -n_max; n <= n_max; ++n) {
    const auto c = cocycle(t, n);
    text << "  phi^" << n << " = " << c.str() << "\n";
    csv += std::to_string(n) + "," + c.str() + "\n";
  }
  const auto a = cocycle_additivity(t, o.pairs, o.seed);
  text << "additivity on " << a.pairs << " pairs (seed " << o.seed << "): " << a.failures << " failures";
  if (a.first_failure) text << ", first at m=" << a.first_failure->first << " n=" << a.first_failure->second;
  text << "\nverdict: " << (a.failures == 0 ? "PASS" : "FAIL") << "\n";
  Result r;
  r.text = text.str();
  r.artifacts.emplace_back("cocycle.csv", csv);
  r.pass = a.failures == 0;
  return r;
}

Result cmd_localgroup(const Options& o) {
  const auto seg = sequence(load_shift(o.shift), o.window);
  const auto jump = load_jump(o.jump, seg.alphabet(), &seg);
  require_window(o, jump, o.nmax);
  const auto w = require_word(o, seg);
  GroupExtension ext(seg, jump, w, entry_mode(o));
  const auto scan = scan_anchors(ext, seg, o, w);
  Result r;
  r.text = anchor_report(scan) + "verdict: " + (scan.all_conjugate() ? "PASS" : "FAIL") + "\n";
  r.artifacts.emplace_back("localgroup.txt", r.text);
  r.pass = scan.all_conjugate();
  return r;
}

bool lr_applicable(const Shift& shift) {
  return !shift.substitution || primitivity_check(*shift.substitution).primitive;
}

Result cmd_lrscan(const Options& o) {
  const auto shift = load_shift(o.shift);
  if (!lr_applicable(shift)) {
    Result r;
    r.text = "LR claims: not applicable (substitution is not primitive)\nverdict: FAIL\n";
    r.artifacts.emplace_back("lrscan.txt", r.text);
    r.pass = false;
    return r;
  }
  const auto seg = sequence(shift, o.window);
  const auto jump = load_jump(o.jump, seg.alphabet(), &seg);
  require_window(o, jump, std::max(o.nmax, o.base_nmax));
  const auto w = pick_word(o, seg, jump);
  const auto s = lr_scan(seg, jump, w, o);

  std::map<std::string, std::string> observed{
      {"base_max_ratio", to_string(s.base.max_ratio())},
      {"speedup_max_ratio", to_string(s.speedup.max_ratio())},
      {"speedup_tail_max_ratio", to_string(s.speedup.max_ratio(o.tail_from))},
      {"l_star", to_string(s.gaps.ratio)},
  };
  std::ostringstream text;
  text << "word: " << w.str() << "\n";
  text << "base profile (n <= " << o.base_nmax << "): max ratio " << observed["base_max_ratio"] << "\n";
  text << "speedup profile (n <= " << o.nmax << "): max ratio " << observed["speedup_max_ratio"] << ", for n >= "
       << o.tail_from << ": " << observed["speedup_tail_max_ratio"] << "\n";
  text << "L* proxy: " << observed["l_star"] << "\n";
  text << "proof bound gap <= 2 L* L p_max n: " << (s.bound.holds() ? "PASS" : "FAIL") << "\n";
  bool pass = s.bound.holds();

  if (!o.golden.empty()) {
    std::istringstream in(read_file(o.golden));
    std::map<std::string, std::string> golden;
    for (std::string line; std::getline(in, line);) {
      if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
      std::istringstream fields(line);
      std::string key, value;
      if (!(fields >> key)) continue;
      if (!(fields >> value)) fail(ErrorKind::ParseError, "golden line '" + line + "' has no value");
      golden[key] = value;
    }
    const std::map<std::string, std::string> config{{"window", std::to_string(o.window)},
                                                    {"nmax", std::to_string(o.nmax)},
                                                    {"base_nmax", std::to_string(o.base_nmax)},
                                                    {"tail_from", std::to_string(o.tail_from)},
                                                    {"word", w.str()}};
    for (const auto& [key, value] : config)
      if (auto it = golden.find(key); it != golden.end() && it->second != value)
        fail(ErrorKind::InvalidArgument,
             "golden was frozen with " + key + " " + it->second + ", this run uses " + value);
    for (const auto& [key, value] : observed) {
      auto it = golden.find(key);
      if (it == golden.end()) continue;
      const bool same = parse_rational(it->second) == parse_rational(value);
      text << "golden " << key << ": " << value << (same ? " == " : " != ") << it->second << "\n";
      pass = pass && same;
    }
  }
  text << "verdict: " << (pass ? "PASS" : "FAIL") << "\n";

  Result r;
  r.text = text.str();
  r.artifacts.emplace_back("base_profile.csv", s.base.csv());
  r.artifacts.emplace_back("speedup_profile.csv", s.speedup.csv());
  r.artifacts.emplace_back("gap_scan.txt", s.gaps.report());
  r.artifacts.emplace_back("proof_bound.txt", s.bound.report());
  r.artifacts.emplace_back("lrscan.txt", r.text);
  r.pass = pass;
  return r;
}

Result cmd_speedup_graph(const Options& o) {
  const auto shift = load_shift(o.shift);
  const auto& base = presentation(shift);
  const auto jump = load_jump(o.jump, std::visit([](const auto& p) { return p.alphabet; }, base), nullptr);
  const Presentation sped = std::visit(
      [&](const auto& p) -> Presentation {
        if constexpr (std::is_same_v<std::decay_t<decltype(p)>, SftPresentation>)
          return speedup_sft(p, jump);
        else
          return speedup_sofic(p, jump);
      },
      base);
  const auto printed = std::visit([](const auto& p) { return print(p); }, sped);
  const auto dot = std::visit([](const auto& p) { return to_dot(p); }, sped);

  std::ostringstream text;
  text << "block length M = " << speedup_block_length(base, jump) << "\n" << printed;
  bool pass = true;
  for (std::size_t n = 1; n <= o.nmax; ++n) {
    const bool lang = language_of_presentation(sped, n) == brute_force_speedup_language(base, jump, n);
    const bool pats = spatterns_of_presentation(sped, jump, n) == brute_force_spatterns(base, jump, n);
    text << "n=" << n << " block language " << (lang ? "equal" : "DIFFERENT") << ", S-patterns "
         << (pats ? "equal" : "DIFFERENT") << "\n";
    pass = pass && lang && pats;
  }
  text << "verdict: " << (pass ? "PASS" : "FAIL") << "\n";
  Result r;
  r.text = text.str();
  r.artifacts.emplace_back("speedup.txt", printed);
  r.artifacts.emplace_back("speedup.dot", dot);
  r.pass = pass;
  return r;
}

Result cmd_check(const Options& o) {
  const auto shift = load_shift(o.shift);
  const auto seg = sequence(shift, o.window);
  const auto jump = load_jump(o.jump, seg.alphabet(), &seg);
  require_window(o, jump, std::max(o.nmax, o.base_nmax));
  const auto w = pick_word(o, seg, jump);
  const auto mode = entry_mode(o);

  std::ostringstream text;
  bool pass = true;
  auto item = [&](const std::string& name, const std::function<std::string()>& body) {
    std::string detail;
    bool ok = false;
    try {
      detail = body();
      ok = detail.rfind("ok", 0) == 0;
    } catch (const Error& e) {
      detail = std::string("error ") + std::string(symdyn::name(e.kind())) + ": " + one_line(e.what());
    }
    text << (ok ? "PASS " : "FAIL ") << name << ": " << detail << "\n";
    pass = pass && ok;
  };
  auto verdict = [](bool ok, const std::string& detail) { return (ok ? "ok, " : "violated, ") + detail; };

  text << "shift " << o.shift << ", jump " << one_line(jump.str()) << ", word " << w.str() << ", window " << o.window << "\n";
  if (shift.substitution)
    item("primitive", [&] {
      const auto p = primitivity_check(*shift.substitution);
      return verdict(p.primitive, p.power ? "power " + std::to_string(*p.power) : "no positive power");
    });
  item("complexity-stable", [&] {
    const auto c = complexity(seg, o.base_nmax);
    return verdict(true, "p(" + std::to_string(o.base_nmax) + ") = " + std::to_string(c.at(o.base_nmax)));
  });
  item("jump-homeomorphic", [&] {
    const auto v = validate_jump(jump, seg);
    return verdict(v.homeomorphic(), "p_max " + std::to_string(v.p_max));
  });
  item("orbit-number", [&] {
    const auto c = orbit_number(seg, jump);
    const auto p = landing_map(seg, jump).p_max;
    return verdict(c <= p, "c = " + std::to_string(c) + " <= p_max = " + std::to_string(p));
  });
  // LR claims only make sense for a primitive substitution
  const bool lr = lr_applicable(shift);
  auto lr_item = [&](const std::string& name, const std::function<std::string()>& body) {
    if (lr)
      item(name, body);
    else
      text << "N/A " << name << ": not applicable, substitution is not primitive\n";
  };
  lr_item("return-bound", [&] {
    const auto l_hat = recurrence_profile(seg, o.base_nmax).max_ratio();
    const auto v = return_bound_check(return_words(seg, w), l_hat);
    return verdict(v.holds(), one_line(v.report()));
  });
  std::optional<GroupExtension> ext;
  item("entry-profile", [&] {
    ext.emplace(seg, jump, w, mode);
    const auto p = ext->entry_profile(0);
    return verdict(p.degree() == ext->orbit_number(), p.str());
  });
  item("cocycle-additivity", [&] {
    if (!ext) fail(ErrorKind::InvalidArgument, "no extension trace");
    const auto a = cocycle_additivity(ext->trace(), o.pairs, o.seed);
    return verdict(a.failures == 0, std::to_string(a.failures) + " failures in " + std::to_string(a.pairs) + " pairs");
  });
  item("local-group-conjugacy", [&] {
    if (!ext) fail(ErrorKind::InvalidArgument, "no extension trace");
    const auto scan = scan_anchors(*ext, seg, o, w);
    return verdict(scan.all_conjugate(), std::to_string(scan.anchors.size()) + " anchors");
  });
  item("speedup-complexity-bound", [&] {
    const auto sc = speedup_complexity(seg, jump, o.nmax);
    return verdict(sc.bound_holds(), "K' = " + std::to_string(sc.constant));
  });
  lr_item("proof-bound", [&] {
    const auto s = lr_scan(seg, jump, w, o);
    return verdict(s.bound.holds(), "L = " + to_string(s.bound.l_base) + ", L* = " + to_string(s.bound.l_star));
  });
  text << "verdict: " << (pass ? "PASS" : "FAIL") << "\n";
  Result r;
  r.text = text.str();
  r.artifacts.emplace_back("check.txt", r.text);
  r.pass = pass;
  return r;
}

void add_common(CLI::App& cmd, Options& o) {
  cmd.add_option("--shift", o.shift,
                 "fibonacci, thue-morse, sturmian:q1,...@num/den, or a substitution/presentation file")
      ->capture_default_str();
  cmd.add_option("--window", o.window, "Window length")->capture_default_str();
  cmd.add_option("--nmax", o.nmax, "Largest word or pattern length")->capture_default_str();
  cmd.add_option("--out", o.out, "Directory for artifacts");
}

void add_jump(CLI::App& cmd, Options& o) {
  cmd.add_option_function<std::string>(
         "--jump",
         [&o](const std::string& v) {
           o.jump = v;
           o.jump_given = true;
         },
         "constant:k, first-return:K, or a jump file")
      ->default_str(o.jump);
}

void add_word(CLI::App& cmd, Options& o) {
  cmd.add_option("--word", o.word, "Base word w");
  auto* strict = cmd.add_flag("--strict", o.strict, "Entry block at offset 2K+1 (needs |w| >= p_max+4K+2)");
  cmd.add_flag("--relaxed", o.relaxed, "Entry block at offset K (default)")->excludes(strict);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Symbolic dynamics toolkit: subshifts, speedups and their group extensions", "symdyn"};
  app.require_subcommand(1);

  using Command = Result (*)(const Options&);
  std::vector<std::pair<CLI::App*, Command>> commands;
  auto add = [&](const char* name, const char* help, Command fn) {
    auto* cmd = app.add_subcommand(name, help);
    add_common(*cmd, o);
    commands.emplace_back(cmd, fn);
    return cmd;
  };

  add("gen", "Emit a prefix of the shift's point", cmd_gen);
  add("lang", "List the words of length --nmax", cmd_lang);
  add_jump(*add("complexity", "Complexity profile; with --jump also the speedup bound", cmd_complexity), o);
  add_jump(*add("validate-jump", "Totality and bijectivity of a jump", cmd_validate_jump), o);
  add_jump(*add("orbits", "Orbit number and orbit coloring", cmd_orbits), o);
  {
    auto* c = add("returns", "Return words, derived sequence and size bounds", cmd_returns);
    c->add_option("--word", o.word, "Base word w")->required();
    c->add_option("--base-nmax", o.base_nmax, "Word lengths used for the recurrence constant")->capture_default_str();
  }
  for (auto [name, help, fn] : {std::tuple{"perms", "Entry positions and transition permutations", cmd_perms},
                                std::tuple{"cocycle", "Cocycle values and additivity", cmd_cocycle},
                                std::tuple{"localgroup", "Local group estimates and conjugacy", cmd_localgroup}}) {
    auto* c = add(name, help, fn);
    add_jump(*c, o);
    add_word(*c, o);
    c->get_option("--word")->required();
    if (fn == cmd_cocycle) {
      c->add_option("--seed", o.seed, "Seed for the random pairs")->capture_default_str();
      c->add_option("--pairs", o.pairs, "Number of random pairs")->capture_default_str();
    }
    if (fn == cmd_localgroup) {
      c->add_option("--anchor", o.anchors, "Anchor word (repeatable); default: extensions of w");
      c->add_option("--anchors", o.anchor_count, "Number of automatic anchors")->capture_default_str();
    }
  }
  for (auto [name, help, fn] :
       {std::tuple{"lrscan", "Recurrence profiles and the proof bound", cmd_lrscan},
        std::tuple{"check", "Run every invariant on the configured inputs", cmd_check}}) {
    auto* c = add(name, help, fn);
    add_jump(*c, o);
    add_word(*c, o);
    c->add_option("--base-nmax", o.base_nmax, "Word lengths for the base profile")->capture_default_str();
    c->add_option("--tail-from", o.tail_from, "Smallest n of the tail ratio")->capture_default_str();
    if (fn == cmd_lrscan) c->add_option("--golden", o.golden, "Frozen golden values to compare against");
    if (fn == cmd_check) {
      c->add_option("--seed", o.seed, "Seed for randomized properties")->capture_default_str();
      c->add_option("--pairs", o.pairs, "Cocycle pairs")->capture_default_str();
      c->add_option("--anchors", o.anchor_count, "Number of automatic anchors")->capture_default_str();
    }
  }
  add_jump(*add("speedup-graph", "Speedup presentation of an SFT or sofic shift, with oracle check",
                cmd_speedup_graph),
           o);

  std::vector<const char*> argv{"symdyn"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitPass;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitPass;
  } catch (const CLI::ParseError& e) {
    err << "error: InvalidArgument: " << one_line(e.what()) << "\n";
    return kExitError;
  }

  try {
    for (const auto& [cmd, fn] : commands) {
      if (!cmd->parsed()) continue;
      const auto result = fn(o);
      if (o.out.empty()) {
        out << result.text;
      } else {
        const std::filesystem::path dir(o.out);
        std::error_code ec;
        std::filesystem::create_directories(dir, ec);
        if (ec) fail(ErrorKind::IoError, "cannot create '" + o.out + "': " + ec.message());
        for (const auto& [file, body] : result.artifacts) write_file(dir / file, body);
        out << result.text;
      }
      return result.pass ? kExitPass : kExitFail;
    }
  } catch (const Error& e) {
    err << "error: " << name(e.kind()) << ": " << one_line(e.what()) << "\n";
    return kExitError;
  } catch (const std::exception& e) {
    err << "error: Internal: " << one_line(e.what()) << "\n";
    return kExitError;
  }
  return kExitError;
}

}  // namespace symdyn::cli
