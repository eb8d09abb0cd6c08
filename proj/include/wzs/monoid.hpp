#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "wzs/groups.hpp"
#include "wzs/sequences.hpp"

namespace wzs {

/// Sorted, duplicate-free set of factorization lengths.
using LengthSet = std::vector<int>;

/// A computed invariant together with whether a certificate makes it exact.
struct BoundedValue {
  int value = 0;
  bool exact = false;
  friend bool operator==(const BoundedValue&, const BoundedValue&) = default;
};

struct Interval {
  int lo = 0;
  int hi = 0;
  friend bool operator==(const Interval&, const Interval&) = default;
};

/// B_Gamma(G0). Copies share state; the atom list is computed once on first
/// use and is immutable afterwards.
class MonoidHandle {
 public:
  /// G0 = all of G.
  explicit MonoidHandle(WeightSet weights);
  MonoidHandle(WeightSet weights, std::vector<ElemId> support);

  const FiniteAbelianGroup& group() const;
  const WeightSet& weights() const;
  /// G0 in increasing index order.
  const std::vector<ElemId>& support() const;
  bool full_support() const;

  /// Atoms sorted canonically (length, then element list).
  const std::vector<Sequence>& atoms() const;
  /// Index into atoms(), if `s` is an atom.
  std::optional<std::size_t> atom_index(const Sequence& s) const;

  /// supp(s) within G0 and 0 in sigma_Gamma(s).
  bool contains(const Sequence& s) const;
  bool same_handle(const MonoidHandle& other) const { return state_ == other.state_; }

 private:
  struct State;
  std::shared_ptr<State> state_;
};

/// Multiset of atom indices, sorted non-decreasingly.
class Factorization {
 public:
  Factorization(const MonoidHandle& handle, std::vector<std::uint32_t> atom_indices);

  const std::vector<std::uint32_t>& atom_indices() const { return atoms_; }
  std::size_t length() const { return atoms_.size(); }
  const MonoidHandle& handle() const { return handle_; }
  /// Product of the referenced atoms.
  Sequence product() const;

  friend bool operator==(const Factorization& a, const Factorization& b) {
    return a.handle_.same_handle(b.handle_) && a.atoms_ == b.atoms_;
  }

 private:
  MonoidHandle handle_;
  std::vector<std::uint32_t> atoms_;
};

const std::vector<Sequence>& atoms(const MonoidHandle& h);
int davenport_large(const MonoidHandle& h);
/// Longest Gamma-weighted zero-sum free sequence over G0.
int davenport_small(const MonoidHandle& h);

/// Z(b), each multiset once, in lexicographic order of atom-index lists.
std::vector<Factorization> factorizations(const MonoidHandle& h, const Sequence& b);
LengthSet set_of_lengths(const MonoidHandle& h, const Sequence& b);
int distance(const Factorization& z, const Factorization& w);
int catenary_of_element(const MonoidHandle& h, const Sequence& b);

/// Max of c(b) over members with |b| <= bound.
BoundedValue catenary_degree(const MonoidHandle& h, int total_length_bound);
/// Largest minimal atom multiset (size <= cap) whose product u divides.
BoundedValue omega_of_atom(const MonoidHandle& h, const Sequence& u, int cap);
/// Max over all atoms of omega_of_atom.
BoundedValue omega(const MonoidHandle& h, int cap);

/// G prime cyclic of order p >= 3, Gamma = +-id, and every sequence over
/// G\{0} of length p-1 has full weighted-sum set. Verified exhaustively.
bool prime_cyclic_certificate(const MonoidHandle& h);

/// Length masks for every element of F(G0) with |b| <= bound: bit l of the
/// mask is set iff l is in L(b); non-members have mask 0.
class LengthTable {
 public:
  /// Bounds above 63 do not fit the mask (BoundTooLarge), nor do tables with
  /// more than `max_states` entries.
  static LengthTable build(const MonoidHandle& h, int bound, std::size_t max_states = 40'000'000);

  int bound() const { return bound_; }
  std::size_t size() const { return masks_.size(); }
  std::uint64_t mask(std::size_t rank) const { return masks_[rank]; }
  /// Rank of an exponent vector over the support positions.
  std::size_t rank(const std::vector<std::uint32_t>& v) const;
  std::uint64_t mask_of(const Sequence& s) const;

  /// Calls fn(exponents_over_support, mask) for every state in rank order.
  template <class Fn>
  void for_each(Fn&& fn) const {
    std::vector<std::uint32_t> v(positions_, 0);
    for (std::size_t r = 0; r < masks_.size(); ++r) {
      fn(static_cast<const std::vector<std::uint32_t>&>(v), masks_[r]);
      advance(v);
    }
  }

 private:
  LengthTable(const MonoidHandle& h, int bound);
  void advance(std::vector<std::uint32_t>& v) const;
  std::size_t count(std::size_t dims, int budget) const;

  MonoidHandle handle_;
  int bound_;
  std::size_t positions_;
  std::vector<std::vector<std::size_t>> binom_;
  std::vector<std::uint64_t> masks_;
};

LengthSet mask_to_lengths(std::uint64_t mask);

/// Union of successive differences of L(b) over |b| <= bound.
std::vector<int> delta_set(const MonoidHandle& h, int total_length_bound);
std::vector<int> delta_set(const LengthTable& table);

struct UnionResult {
  std::vector<int> values;
  /// False when bound < k * D, i.e. elements beyond the bound may contribute.
  bool exact = false;
};
UnionResult unions_Uk(const MonoidHandle& h, int k, int total_length_bound);
UnionResult unions_Uk(const LengthTable& table, int k, int davenport);
BoundedValue rho_k(const MonoidHandle& h, int k, int total_length_bound);
BoundedValue lambda_k(const MonoidHandle& h, int k, int total_length_bound);

/// Predicted U_k(B_pm(G)) for |G| odd with D(G) = D*(G) >= 3.
Interval predicted_union_interval(const FiniteAbelianGroup& g, int k);
/// Same formula from D(G) directly, no hypothesis check.
Interval union_interval_formula(int davenport, int k);

/// b = g^n * g^(n-k) (kg) in C_n with k = n - j + 1, and L(b) in B_pm(C_n).
std::pair<Sequence, LengthSet> two_length_witness(int n, int j);

}  // namespace wzs
