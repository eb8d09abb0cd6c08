#pragma once

#include <bitset>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "wzs/error.hpp"

namespace wzs {

/// Hard upper bound on |G| for any group the library will build. The
/// configurable cap in GroupLimits must not exceed it.
inline constexpr std::size_t kMaxGroupOrder = 256;

/// Dense element index (mixed-radix rank of the coordinate tuple; the zero
/// element is always 0 and index order equals lexicographic coordinate order).
using ElemId = std::uint32_t;

struct GroupLimits {
  std::size_t order_cap = 64;
  std::size_t aut_cap = 64;
};

/// Characteristic set over the element indices of a fixed group.
class GSubset {
 public:
  GSubset() = default;

  static GSubset singleton(ElemId g) {
    GSubset s;
    s.insert(g);
    return s;
  }

  void insert(ElemId g) { bits_.set(g); }
  void erase(ElemId g) { bits_.reset(g); }
  bool contains(ElemId g) const { return bits_.test(g); }
  bool empty() const { return bits_.none(); }
  std::size_t size() const { return bits_.count(); }

  GSubset& operator|=(const GSubset& o) {
    bits_ |= o.bits_;
    return *this;
  }
  friend GSubset operator|(GSubset a, const GSubset& b) { return a |= b; }
  friend GSubset operator&(GSubset a, const GSubset& b) {
    a.bits_ &= b.bits_;
    return a;
  }
  friend bool operator==(const GSubset&, const GSubset&) = default;

  bool is_subset_of(const GSubset& o) const { return (bits_ & ~o.bits_).none(); }

  /// Elements in increasing index order; `order` is |G|.
  std::vector<ElemId> elements(std::size_t order) const;

  const std::bitset<kMaxGroupOrder>& bits() const { return bits_; }

 private:
  std::bitset<kMaxGroupOrder> bits_;
};

/// Canonical order on value sets: by cardinality, then by sorted element list.
bool gsubset_less(const GSubset& a, const GSubset& b, std::size_t order);

class FiniteAbelianGroup;

/// Finite abelian group C_{n1} + ... + C_{nr} with n1 | ... | nr, stored with
/// full addition and negation tables. Cheap to copy (shared immutable state).
class FiniteAbelianGroup {
 public:
  /// Normalizes any list of factors >= 2 to its invariant-factor chain.
  static FiniteAbelianGroup make(std::span<const long long> factors, GroupLimits limits = {});
  static FiniteAbelianGroup make(std::initializer_list<long long> factors, GroupLimits limits = {}) {
    std::vector<long long> f(factors);
    return make(std::span<const long long>(f), limits);
  }
  /// Parses "2,4" style specs; the empty string denotes the trivial group.
  static FiniteAbelianGroup parse(std::string_view spec, GroupLimits limits = {});

  const std::vector<int>& invariant_factors() const { return impl_->factors; }
  std::size_t order() const { return impl_->order; }
  int exponent() const { return impl_->exponent; }
  int rank() const { return static_cast<int>(impl_->factors.size()); }

  ElemId zero() const { return 0; }
  ElemId add(ElemId a, ElemId b) const { return impl_->add[a * impl_->order + b]; }
  ElemId neg(ElemId a) const { return impl_->neg[a]; }
  ElemId sub(ElemId a, ElemId b) const { return add(a, neg(b)); }
  ElemId scale(long long k, ElemId a) const;
  int element_order(ElemId a) const { return impl_->elem_order[a]; }

  std::span<const int> coords(ElemId a) const {
    return {impl_->coords.data() + static_cast<std::size_t>(a) * impl_->factors.size(),
            impl_->factors.size()};
  }
  /// Reduces each coordinate modulo its factor (negative values allowed).
  ElemId index_of(std::span<const long long> coords) const;
  ElemId basis(int i) const;

  std::string format(ElemId a) const;
  std::string spec() const;

  /// Element sets

  std::vector<ElemId> elements() const;
  std::vector<ElemId> two_g() const;
  std::vector<ElemId> subgroup_generated(std::span<const ElemId> gens) const;
  bool is_elementary_2() const { return exponent() <= 2; }
  bool is_subgroup(const GSubset& s) const;
  GSubset full_set() const;

  /// Davenport lower bound 1 + sum (n_i - 1).
  int davenport_star() const;

  friend bool operator==(const FiniteAbelianGroup& a, const FiniteAbelianGroup& b) {
    return a.impl_ == b.impl_ || a.impl_->factors == b.impl_->factors;
  }

 private:
  struct Impl {
    std::vector<int> factors;
    std::size_t order = 1;
    int exponent = 1;
    std::vector<std::size_t> strides;
    std::vector<int> coords;
    std::vector<ElemId> add;
    std::vector<ElemId> neg;
    std::vector<int> elem_order;
  };
  explicit FiniteAbelianGroup(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}

  std::shared_ptr<const Impl> impl_;
};

/// Value-type element carrying its group; the free functions below check
/// that operands share a group.
struct GroupElement {
  FiniteAbelianGroup group;
  ElemId id = 0;

  std::span<const int> coordinates() const { return group.coords(id); }
  friend bool operator==(const GroupElement& a, const GroupElement& b) {
    return a.group == b.group && a.id == b.id;
  }
};

GroupElement make_element(const FiniteAbelianGroup& g, std::initializer_list<long long> coords);
GroupElement elem_add(const GroupElement& g, const GroupElement& h);
GroupElement elem_neg(const GroupElement& g);
GroupElement elem_scale(long long k, const GroupElement& g);
int element_order(const GroupElement& g);

/// Additive map G -> G given by the images of the canonical basis.
class Endomorphism {
 public:
  Endomorphism(const FiniteAbelianGroup& group, std::vector<ElemId> basis_images);

  static Endomorphism identity(const FiniteAbelianGroup& group);
  static Endomorphism negation(const FiniteAbelianGroup& group);

  ElemId apply(ElemId g) const { return table_[g]; }
  const std::vector<ElemId>& basis_images() const { return basis_images_; }
  const std::vector<ElemId>& table() const { return table_; }
  bool is_bijective() const;
  /// (this o other)(g) = this(other(g)).
  Endomorphism compose(const Endomorphism& other) const;

  friend bool operator==(const Endomorphism& a, const Endomorphism& b) {
    return a.table_ == b.table_;
  }
  friend bool operator<(const Endomorphism& a, const Endomorphism& b) {
    return a.basis_images_ < b.basis_images_;
  }

 private:
  Endomorphism(std::vector<ElemId> basis_images, std::vector<ElemId> table)
      : basis_images_(std::move(basis_images)), table_(std::move(table)) {}

  std::vector<ElemId> basis_images_;
  std::vector<ElemId> table_;
};

enum class WeightKind { Identity, PlusMinus, FullAut, Custom };

std::string_view weight_kind_name(WeightKind k);

/// A nonempty, duplicate-free set of endomorphisms with per-element orbit sets.
class WeightSet {
 public:
  static WeightSet identity(const FiniteAbelianGroup& group);
  static WeightSet plus_minus(const FiniteAbelianGroup& group);
  static WeightSet full_aut(const FiniteAbelianGroup& group, GroupLimits limits = {});
  static WeightSet custom(const FiniteAbelianGroup& group, std::vector<Endomorphism> endos);
  /// "id" | "pm" | "aut".
  static WeightSet parse(std::string_view spec, const FiniteAbelianGroup& group,
                         GroupLimits limits = {});

  const FiniteAbelianGroup& group() const { return group_; }
  const std::vector<Endomorphism>& endos() const { return endos_; }
  std::size_t size() const { return endos_.size(); }
  WeightKind kind() const { return kind_; }
  bool is_group() const { return is_group_; }
  std::string spec() const;

  /// {gamma(g) : gamma in Gamma}
  const GSubset& orbit(ElemId g) const { return orbit_sets_[g]; }
  const std::vector<ElemId>& orbit_list(ElemId g) const { return orbit_lists_[g]; }

  bool contains(const Endomorphism& e) const;
  bool contains_plus_minus() const;
  bool all_bijective() const;

 private:
  WeightSet(FiniteAbelianGroup group, std::vector<Endomorphism> endos, WeightKind kind,
            bool known_group = false);
  friend WeightSet enumerate_automorphisms(const FiniteAbelianGroup& group, GroupLimits limits);

  FiniteAbelianGroup group_;
  std::vector<Endomorphism> endos_;
  WeightKind kind_;
  bool is_group_ = false;
  std::vector<GSubset> orbit_sets_;
  std::vector<std::vector<ElemId>> orbit_lists_;
};

/// All automorphisms, in lexicographic order of their basis-image tuples.
WeightSet enumerate_automorphisms(const FiniteAbelianGroup& group, GroupLimits limits = {});

}  // namespace wzs
