#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "wzs/groups.hpp"

namespace wzs {

/// Finite multiset over G, stored as an exponent table indexed by ElemId.
class Sequence {
 public:
  explicit Sequence(FiniteAbelianGroup group);

  static Sequence from_elements(const FiniteAbelianGroup& group, std::span<const ElemId> elems);
  static Sequence from_elements(const FiniteAbelianGroup& group, std::initializer_list<ElemId> elems) {
    std::vector<ElemId> v(elems);
    return from_elements(group, std::span<const ElemId>(v));
  }
  /// Literal grammar: `[(1),(1),(2,3)^2]`; coordinates are reduced modulo the
  /// invariant factors. Throws ParseError with the failing column.
  static Sequence parse(const FiniteAbelianGroup& group, std::string_view literal);

  const FiniteAbelianGroup& group() const { return group_; }
  std::uint32_t multiplicity(ElemId g) const { return exps_[g]; }
  const std::vector<std::uint32_t>& exponents() const { return exps_; }
  std::size_t length() const { return length_; }
  bool empty() const { return length_ == 0; }

  void add(ElemId g, std::uint32_t k = 1);
  /// Removes one occurrence; throws NotASubsequence if absent.
  void remove(ElemId g, std::uint32_t k = 1);

  std::vector<ElemId> support() const;
  /// Elements with repetition in increasing index order.
  std::vector<ElemId> elements() const;

  Sequence operator*(const Sequence& other) const;
  Sequence power(std::uint32_t k) const;
  /// Multiset containment T | S in F(G).
  bool divides(const Sequence& other) const;

  /// Canonical `[(1)^2,(2)]` form.
  std::string to_string() const;

  friend bool operator==(const Sequence& a, const Sequence& b) {
    return a.group_ == b.group_ && a.exps_ == b.exps_;
  }
  /// Canonical order: by length, then lexicographically by element list.
  friend std::strong_ordering operator<=>(const Sequence& a, const Sequence& b);

 private:
  FiniteAbelianGroup group_;
  std::vector<std::uint32_t> exps_;
  std::size_t length_ = 0;
};

/// A + B.
GSubset sumset(const FiniteAbelianGroup& group, const GSubset& a, const GSubset& b);
/// A + {x : x in list}.
GSubset sumset(const FiniteAbelianGroup& group, const GSubset& a, std::span<const ElemId> b);

ElemId sigma(const Sequence& s);
GSubset sigma_gamma(const Sequence& s, const WeightSet& weights);
bool is_wzs(const Sequence& s, const WeightSet& weights);
GSubset big_sigma_gamma(const Sequence& s, const WeightSet& weights);
bool is_wzs_free(const Sequence& s, const WeightSet& weights);

/// U | B inside B_Gamma: both members, U | B in F(G) and B U^-1 a member.
bool divides_in_monoid(const Sequence& u, const Sequence& b, const WeightSet& weights);
/// Multiset difference B U^-1.
Sequence quotient(const Sequence& u, const Sequence& b);

}  // namespace wzs
