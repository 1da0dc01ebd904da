#include "symdyn/permutation.hpp"

#include <algorithm>
#include <numeric>

#include "symdyn/error.hpp"

namespace symdyn {

Permutation Permutation::identity(std::size_t degree) {
  if (degree == 0) fail(ErrorKind::InvalidArgument, "permutation degree must be positive");
  std::vector<std::uint32_t> images(degree);
  std::iota(images.begin(), images.end(), 0u);
  return Permutation(std::move(images));
}

Permutation Permutation::from_images(std::vector<std::uint32_t> images) {
  if (images.empty()) fail(ErrorKind::InvalidArgument, "permutation degree must be positive");
  std::vector<bool> hit(images.size(), false);
  for (auto x : images) {
    if (x >= images.size() || hit[x]) fail(ErrorKind::InvalidArgument, "images do not form a bijection");
    hit[x] = true;
  }
  return Permutation(std::move(images));
}

Permutation Permutation::parse(std::string_view text, std::size_t degree) {
  auto images = identity(degree).images_;
  std::vector<bool> used(degree, false);
  std::size_t pos = 0;
  auto skip_space = [&] {
    while (pos < text.size() && text[pos] == ' ') ++pos;
  };
  skip_space();
  if (text.substr(pos) == "e" || pos == text.size()) return Permutation(std::move(images));
  while (pos < text.size()) {
    if (text[pos] != '(') fail(ErrorKind::ParseError, "expected '(' in '" + std::string(text) + "'");
    auto close = text.find(')', pos);
    if (close == std::string_view::npos) fail(ErrorKind::ParseError, "unclosed cycle in '" + std::string(text) + "'");
    auto body = text.substr(pos + 1, close - pos - 1);
    std::vector<std::uint32_t> cycle;
    if (body.find(',') != std::string_view::npos) {
      std::size_t s = 0;
      while (s <= body.size()) {
        auto c = body.find(',', s);
        if (c == std::string_view::npos) c = body.size();
        auto tok = body.substr(s, c - s);
        std::uint32_t v = 0;
        if (tok.empty()) fail(ErrorKind::ParseError, "empty cycle entry");
        for (char ch : tok) {
          if (ch < '0' || ch > '9') fail(ErrorKind::ParseError, "bad cycle entry '" + std::string(tok) + "'");
          v = v * 10 + static_cast<std::uint32_t>(ch - '0');
        }
        cycle.push_back(v);
        s = c + 1;
      }
    } else {
      for (char ch : body) {
        if (ch < '1' || ch > '9') fail(ErrorKind::ParseError, "bad cycle entry '" + std::string(1, ch) + "'");
        cycle.push_back(static_cast<std::uint32_t>(ch - '0'));
      }
    }
    for (auto v : cycle) {
      if (v == 0 || v > degree) fail(ErrorKind::ParseError, "cycle entry " + std::to_string(v) + " outside 1.." + std::to_string(degree));
      if (used[v - 1]) fail(ErrorKind::ParseError, "entry " + std::to_string(v) + " repeated");
      used[v - 1] = true;
    }
    for (std::size_t i = 0; i < cycle.size(); ++i) images[cycle[i] - 1] = cycle[(i + 1) % cycle.size()] - 1;
    pos = close + 1;
    skip_space();
  }
  return Permutation(std::move(images));
}

bool Permutation::is_identity() const noexcept {
  for (std::uint32_t i = 0; i < images_.size(); ++i)
    if (images_[i] != i) return false;
  return true;
}

Permutation Permutation::inverse() const {
  std::vector<std::uint32_t> inv(images_.size());
  for (std::uint32_t i = 0; i < images_.size(); ++i) inv[images_[i]] = i;
  return Permutation(std::move(inv));
}

Permutation operator*(const Permutation& a, const Permutation& b) {
  if (a.degree() != b.degree())
    fail(ErrorKind::DegreeMismatch, "cannot compose permutations of degree " + std::to_string(a.degree()) + " and " +
                                        std::to_string(b.degree()));
  std::vector<std::uint32_t> out(a.degree());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = b.images_[a.images_[i]];
  return Permutation(std::move(out));
}

std::string Permutation::str() const {
  if (is_identity()) return "e";
  const bool commas = images_.size() > 9;
  std::string out;
  std::vector<bool> done(images_.size(), false);
  for (std::uint32_t i = 0; i < images_.size(); ++i) {
    if (done[i] || images_[i] == i) continue;
    out += '(';
    std::uint32_t x = i;
    bool first = true;
    while (!done[x]) {
      if (commas && !first) out += ',';
      out += std::to_string(x + 1);
      done[x] = true;
      x = images_[x];
      first = false;
    }
    out += ')';
  }
  return out;
}

std::set<Permutation> generate_subgroup(const std::vector<Permutation>& generators, std::size_t degree) {
  std::set<Permutation> group{Permutation::identity(degree)};
  std::vector<Permutation> frontier{Permutation::identity(degree)};
  for (const auto& g : generators)
    if (g.degree() != degree) fail(ErrorKind::DegreeMismatch, "generator degree differs from group degree");
  while (!frontier.empty()) {
    std::vector<Permutation> next;
    for (const auto& h : frontier)
      for (const auto& g : generators) {
        auto p = h * g;
        if (group.insert(p).second) next.push_back(std::move(p));
      }
    frontier = std::move(next);
  }
  return group;
}

std::optional<Permutation> find_conjugator(const std::set<Permutation>& a, const std::set<Permutation>& b,
                                           std::size_t degree) {
  for (const auto& h : a)
    if (h.degree() != degree) fail(ErrorKind::DegreeMismatch, "subgroup elements differ in degree");
  for (const auto& h : b)
    if (h.degree() != degree) fail(ErrorKind::DegreeMismatch, "subgroup elements differ in degree");
  if (a.size() != b.size()) return std::nullopt;
  auto images = Permutation::identity(degree).images();
  do {
    auto g = Permutation::from_images(images);
    auto g_inv = g.inverse();
    bool ok = true;
    for (const auto& h : a)
      if (!b.count(g * h * g_inv)) {
        ok = false;
        break;
      }
    if (ok) return g;
  } while (std::next_permutation(images.begin(), images.end()));
  return std::nullopt;
}

}  // namespace symdyn
