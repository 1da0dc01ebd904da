#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace symdyn {

/// Bijection of {1..c}, stored 0-based.
///
/// Products read left to right: (a * b)(x) = b(a(x)), i.e. apply a first.
/// With this convention a running product s * psi follows orbit entries
/// forward across consecutive return words.
class Permutation {
 public:
  static Permutation identity(std::size_t degree);
  /// 0-based images; throws InvalidArgument unless a bijection.
  static Permutation from_images(std::vector<std::uint32_t> images);
  /// Cycle notation over {1..degree}: `e`, `(12)`, `(123)(45)`, or with
  /// commas for degree > 9: `(1,10)`.
  static Permutation parse(std::string_view text, std::size_t degree);

  std::size_t degree() const noexcept { return images_.size(); }
  std::uint32_t operator()(std::uint32_t x) const { return images_.at(x); }
  const std::vector<std::uint32_t>& images() const noexcept { return images_; }

  bool is_identity() const noexcept;
  Permutation inverse() const;
  /// Throws DegreeMismatch.
  friend Permutation operator*(const Permutation& a, const Permutation& b);

  std::string str() const;

  friend bool operator==(const Permutation&, const Permutation&) = default;
  friend auto operator<=>(const Permutation&, const Permutation&) = default;

 private:
  explicit Permutation(std::vector<std::uint32_t> images) : images_(std::move(images)) {}
  std::vector<std::uint32_t> images_;
};

/// Subgroup of S_degree generated by `generators`: closed under products,
/// contains the identity.
std::set<Permutation> generate_subgroup(const std::vector<Permutation>& generators, std::size_t degree);

/// Some g with {g h g^-1 : h in a} == b, searching S_c exhaustively in
/// lexicographic order of images; nullopt when not conjugate.
/// Throws DegreeMismatch.
std::optional<Permutation> find_conjugator(const std::set<Permutation>& a, const std::set<Permutation>& b,
                                           std::size_t degree);

}  // namespace symdyn
