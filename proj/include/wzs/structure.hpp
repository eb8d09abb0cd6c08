#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "wzs/groups.hpp"
#include "wzs/sequences.hpp"

namespace wzs {

/// S^m in B_Gamma(G) for some odd m <= 2|G| + 1. The odd-power value sets
/// increase along m (0 is in sigma_Gamma(S^2)), so the cap loses nothing.
/// Requires +-id in Gamma (WeightSetLacksPM).
bool seminormalization_member(const Sequence& s, const WeightSet& weights);
/// Same test with an explicit odd-power cap.
bool seminormalization_member(const Sequence& s, const WeightSet& weights, int max_odd_power);

struct StructureReport {
  /// Search result: no witness in B' \ B up to length_bound means true.
  bool seminormal = true;
  /// Prediction from the group shape; empty when no characterization applies.
  std::optional<bool> seminormal_predicted;
  int length_bound = 0;
  std::optional<Sequence> witness;

  /// Root closed, Krull, transfer Krull and weakly Krull are equivalent for
  /// +-id in Gamma in Aut(G); all four hold iff G is elementary 2 and Gamma = +-id.
  bool krull_expected = false;
  bool root_closed_expected = false;
  bool weakly_krull_expected = false;
  bool transfer_krull_expected = false;
  /// Which non-weakly-Krull witness family was checked (0 = none) and its result.
  int witness_case = 0;
  bool witness_verified = false;
  /// Every orbit is a singleton, so B_Gamma(G) = B(G).
  bool acts_trivially = false;
};

StructureReport is_seminormal(const WeightSet& weights, int length_bound);

/// d_i values use kInfinity for coordinates where every element is 0.
struct ValuationLevel {
  static constexpr int kInfinity = std::numeric_limits<int>::max();
  std::vector<int> d_coord;
  int d = kInfinity;
  int m = -1;  // 0-based coordinate
  std::vector<std::size_t> n_set;  // positions in the element list
  std::vector<int> i_set;          // 0-based coordinates, increasing
};

struct ValuationTrace {
  std::vector<ValuationLevel> levels;
  /// Number of levels until I becomes empty; 0 for 0^l.
  int t = 0;
};

/// Parity recursion deciding membership in B_Aut(G) for
/// G = C_{2^t1} + ... + C_{2^tr} with t1 < ... < tr.
bool valuation_membership(const Sequence& s, ValuationTrace* trace = nullptr);

/// Complete integral closure membership from the group-shape
/// characterizations: pm with exp | 4 gives sigma(S) in 2G, aut on a 2-group
/// with distinct factors gives an even count of maximal-order letters.
bool cic_member(const Sequence& s, const WeightSet& weights);
/// Bounded search: some c in B with |c| <= c_len_cap and c S^k in B for all
/// k in [1, k_max]. The square of the order-4 (pm) or top-order (aut) basis
/// letters is tried first.
bool cic_member_bruteforce(const Sequence& s, const WeightSet& weights, int c_len_cap, int k_max);

struct ClassSemigroup {
  FiniteAbelianGroup group;
  /// Value sets in canonical order (gsubset_less); {0} is the identity.
  std::vector<GSubset> elements;
  /// table[i][j] = index of elements[i] + elements[j].
  std::vector<std::vector<std::uint32_t>> table;
  std::size_t identity = 0;
  std::vector<std::size_t> idempotents;
  /// Cover pairs (e, f) of the Rees order e < f, where e <= f iff e + f = e.
  std::vector<std::pair<std::size_t, std::size_t>> rees_edges;
  /// constituent[k] is the maximal subgroup at idempotents[k].
  std::vector<std::vector<std::size_t>> constituent;
  bool clifford = false;

  std::optional<std::size_t> index_of(const GSubset& s) const;
};

/// Classes are the sigma_Gamma value sets; requires Gamma to be a group
/// (WeightSetNotGroup).
ClassSemigroup class_semigroup(const WeightSet& weights, std::size_t max_elements = 4096);

/// Height-one primes p_h = {members containing h}, listed by h.
std::vector<ElemId> height_one_primes(const std::vector<ElemId>& support);
bool in_prime(ElemId h, const Sequence& s, const WeightSet& weights);
/// Every subset of G0, ordered by bitmask over the positions of G0.
std::vector<std::vector<ElemId>> divisor_closed_submonoids(const std::vector<ElemId>& support);

/// x = a / s with a, s in B written out as sequences (a = x s in F(G)).
struct Fraction {
  Sequence numerator;
  Sequence denominator;
};

struct NonKrullWitness {
  int case_tag = 0;
  Sequence x;
  std::vector<Fraction> representations;
};

/// Case 1: x = g with ord(g) odd >= 3; case 2: x = 2g with ord(g) even >= 4;
/// case 3: x = e + tau(e) in an elementary 2-group with tau(e) != e.
/// HypothesisNotMet if G has no such element (or Gamma no such tau).
NonKrullWitness nonweakly_krull_witness(const WeightSet& weights, int case_tag);
/// x not in B, every representation is valid, and for each h in G some
/// denominator avoids h.
bool verify_nonweakly_krull_witness(const WeightSet& weights, int case_tag);

/// Requires +-id in Gamma and Gamma in Aut(G) (HypothesisNotMet). Negative
/// verdicts carry the applicable witness check.
StructureReport krull_characterization(const WeightSet& weights);

}  // namespace wzs
