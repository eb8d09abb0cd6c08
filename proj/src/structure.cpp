#include "wzs/structure.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <unordered_map>

namespace wzs {

namespace {

void require_pm(const WeightSet& weights) {
  if (!weights.contains_plus_minus()) fail(ErrorCode::WeightSetLacksPM, weights.spec());
}

bool is_power_of_two(long long n) { return n >= 1 && (n & (n - 1)) == 0; }

/// G = C_{2^t1} + ... + C_{2^tr} with t1 < ... < tr (the trivial group included).
bool distinct_two_factors(const FiniteAbelianGroup& g) {
  const auto& f = g.invariant_factors();
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (!is_power_of_two(f[i])) return false;
    if (i > 0 && f[i] == f[i - 1]) return false;
  }
  return true;
}

int log2_exact(int n) {
  int t = 0;
  while ((1 << t) < n) ++t;
  return t;
}

/// Calls fn(seq) for every multiset of exactly `len` elements of `pool`, in
/// lexicographic order of the sorted element lists. Stops when fn returns true.
bool for_each_multiset(const FiniteAbelianGroup& g, const std::vector<ElemId>& pool, int len,
                       const std::function<bool(const Sequence&)>& fn) {
  Sequence cur(g);
  std::function<bool(std::size_t, int)> rec = [&](std::size_t from, int left) -> bool {
    if (left == 0) return fn(cur);
    for (std::size_t i = from; i < pool.size(); ++i) {
      cur.add(pool[i]);
      const bool stop = rec(i, left - 1);
      cur.remove(pool[i]);
      if (stop) return true;
    }
    return false;
  };
  return rec(0, len);
}

bool is_plus_minus_only(const WeightSet& weights) {
  const auto& g = weights.group();
  const auto id = Endomorphism::identity(g);
  const auto neg = Endomorphism::negation(g);
  for (const auto& e : weights.endos()) {
    if (!(e == id) && !(e == neg)) return false;
  }
  return true;
}

}  // namespace

bool seminormalization_member(const Sequence& s, const WeightSet& weights, int max_odd_power) {
  require_pm(weights);
  const auto& g = s.group();
  const GSubset once = sigma_gamma(s, weights);
  const GSubset twice = sumset(g, once, once);
  GSubset cur = once;
  for (int m = 1; m <= max_odd_power; m += 2) {
    if (cur.contains(g.zero())) return true;
    cur = sumset(g, cur, twice);
  }
  return false;
}

bool seminormalization_member(const Sequence& s, const WeightSet& weights) {
  return seminormalization_member(s, weights, 2 * static_cast<int>(s.group().order()) + 1);
}

StructureReport is_seminormal(const WeightSet& weights, int length_bound) {
  require_pm(weights);
  const auto& g = weights.group();
  StructureReport report;
  report.length_bound = length_bound;

  if (!is_power_of_two(g.exponent())) {
    report.seminormal_predicted = false;
  } else if (is_plus_minus_only(weights)) {
    report.seminormal_predicted = 4 % g.exponent() == 0;
  } else if (weights.kind() == WeightKind::FullAut) {
    report.seminormal_predicted = distinct_two_factors(g);
  }

  const auto pool = g.elements();
  for (int len = 1; len <= length_bound && !report.witness; ++len) {
    for_each_multiset(g, pool, len, [&](const Sequence& cand) {
      if (is_wzs(cand, weights) || !seminormalization_member(cand, weights)) return false;
      report.witness = cand;
      return true;
    });
  }
  report.seminormal = !report.witness;
  return report;
}

bool valuation_membership(const Sequence& s, ValuationTrace* trace) {
  const auto& g = s.group();
  if (!distinct_two_factors(g)) {
    fail(ErrorCode::GroupShapeUnsupported, "need a 2-group with distinct invariant factors, got " + g.spec());
  }
  constexpr int kInf = ValuationLevel::kInfinity;
  const int r = g.rank();
  std::vector<int> t(r);
  for (int i = 0; i < r; ++i) t[i] = log2_exact(g.invariant_factors()[i]);

  const auto elems = s.elements();
  // v2[j][i] = 2-adic valuation of coordinate i of element j (kInf for 0).
  std::vector<std::vector<int>> v2(elems.size(), std::vector<int>(r, kInf));
  for (std::size_t j = 0; j < elems.size(); ++j) {
    const auto c = g.coords(elems[j]);
    for (int i = 0; i < r; ++i) {
      if (c[i] != 0) v2[j][i] = __builtin_ctz(static_cast<unsigned>(c[i]));
    }
  }

  ValuationTrace state;
  bool even = true;
  std::vector<int> active(r);
  std::iota(active.begin(), active.end(), 0);
  while (true) {
    ValuationLevel lv;
    lv.d_coord.assign(r, kInf);
    for (int i : active) {
      for (std::size_t j = 0; j < elems.size(); ++j) lv.d_coord[i] = std::min(lv.d_coord[i], v2[j][i]);
    }
    if (r > 0) lv.d = *std::min_element(lv.d_coord.begin(), lv.d_coord.end());
    if (lv.d == kInf) break;  // only possible for 0^l at the first level
    for (int i = 0; i < r; ++i) {
      if (lv.d_coord[i] == lv.d) lv.m = i;
    }
    for (std::size_t j = 0; j < elems.size(); ++j) {
      if (v2[j][lv.m] == lv.d) lv.n_set.push_back(j);
    }
    const int bar = t[lv.m] - lv.d;
    for (int i : active) {
      if (lv.d_coord[i] != kInf && t[i] - lv.d_coord[i] > bar) lv.i_set.push_back(i);
    }
    if (lv.n_set.size() % 2 != 0) even = false;
    active = lv.i_set;
    state.levels.push_back(std::move(lv));
    if (active.empty()) break;
  }
  state.t = static_cast<int>(state.levels.size());
  if (trace) *trace = std::move(state);
  return even;
}

namespace {

enum class CicShape { PlusMinusExp4, AutDistinct, None };

CicShape cic_shape(const WeightSet& weights) {
  const auto& g = weights.group();
  if (is_plus_minus_only(weights) && weights.contains_plus_minus() && 4 % g.exponent() == 0) {
    return CicShape::PlusMinusExp4;
  }
  if (weights.kind() == WeightKind::FullAut && distinct_two_factors(g)) return CicShape::AutDistinct;
  return CicShape::None;
}

}  // namespace

bool cic_member(const Sequence& s, const WeightSet& weights) {
  const auto& g = weights.group();
  switch (cic_shape(weights)) {
    case CicShape::PlusMinusExp4: {
      const auto twos = g.two_g();
      return std::find(twos.begin(), twos.end(), sigma(s)) != twos.end();
    }
    case CicShape::AutDistinct: {
      std::size_t top = 0;
      for (ElemId x : s.elements()) top += g.element_order(x) == g.exponent() ? 1 : 0;
      return g.order() == 1 || top % 2 == 0;
    }
    case CicShape::None:
      break;
  }
  fail(ErrorCode::HypothesisNotMet, "no closure characterization for " + g.spec() + " " + weights.spec());
}

bool cic_member_bruteforce(const Sequence& s, const WeightSet& weights, int c_len_cap, int k_max) {
  const auto& g = weights.group();
  std::vector<GSubset> powers;  // sigma_Gamma(S^k), k = 1..k_max
  const GSubset base = sigma_gamma(s, weights);
  GSubset cur = base;
  for (int k = 1; k <= k_max; ++k) {
    powers.push_back(cur);
    cur = sumset(g, cur, base);
  }
  auto works = [&](const Sequence& c) {
    const GSubset vc = sigma_gamma(c, weights);
    if (!vc.contains(g.zero())) return false;
    for (const auto& p : powers) {
      if (!sumset(g, vc, p).contains(g.zero())) return false;
    }
    return true;
  };

  Sequence hint(g);
  const auto& f = g.invariant_factors();
  switch (cic_shape(weights)) {
    case CicShape::PlusMinusExp4:
      for (int i = 0; i < g.rank(); ++i) {
        if (f[i] == 4) hint.add(g.basis(i), 2);
      }
      break;
    case CicShape::AutDistinct:
      if (g.rank() > 0) hint.add(g.basis(g.rank() - 1), 2);
      break;
    case CicShape::None:
      break;
  }
  if (works(hint)) return true;

  const auto pool = g.elements();
  for (int len = 1; len <= c_len_cap; ++len) {
    if (for_each_multiset(g, pool, len, works)) return true;
  }
  return false;
}

std::optional<std::size_t> ClassSemigroup::index_of(const GSubset& s) const {
  const auto it = std::lower_bound(elements.begin(), elements.end(), s, [&](const GSubset& a, const GSubset& b) {
    return gsubset_less(a, b, group.order());
  });
  if (it == elements.end() || !(*it == s)) return std::nullopt;
  return static_cast<std::size_t>(it - elements.begin());
}

ClassSemigroup class_semigroup(const WeightSet& weights, std::size_t max_elements) {
  if (!weights.is_group()) fail(ErrorCode::WeightSetNotGroup, weights.spec());
  const auto& g = weights.group();
  const std::size_t n = g.order();

  std::vector<GSubset> found{GSubset::singleton(g.zero())};
  std::unordered_map<std::bitset<kMaxGroupOrder>, std::size_t> seen{{found[0].bits(), 0}};
  for (std::size_t next = 0; next < found.size(); ++next) {
    for (ElemId x = 0; x < n; ++x) {
      GSubset sum = sumset(g, found[next], std::span<const ElemId>(weights.orbit_list(x)));
      if (seen.emplace(sum.bits(), found.size()).second) {
        found.push_back(sum);
        if (found.size() > max_elements) {
          fail(ErrorCode::BoundTooLarge, "class semigroup exceeds " + std::to_string(max_elements) + " elements");
        }
      }
    }
  }

  ClassSemigroup cs{g, std::move(found), {}, 0, {}, {}, {}, false};
  std::sort(cs.elements.begin(), cs.elements.end(),
            [&](const GSubset& a, const GSubset& b) { return gsubset_less(a, b, n); });
  const std::size_t size = cs.elements.size();
  cs.identity = *cs.index_of(GSubset::singleton(g.zero()));

  cs.table.assign(size, std::vector<std::uint32_t>(size));
  for (std::size_t i = 0; i < size; ++i) {
    for (std::size_t j = i; j < size; ++j) {
      const auto k = cs.index_of(sumset(g, cs.elements[i], cs.elements[j]));
      if (!k) fail(ErrorCode::CompositionInconsistent, "class semigroup not closed");
      cs.table[i][j] = cs.table[j][i] = static_cast<std::uint32_t>(*k);
    }
  }

  for (std::size_t i = 0; i < size; ++i) {
    if (cs.table[i][i] == i) cs.idempotents.push_back(i);
  }
  auto below = [&](std::size_t e, std::size_t f) { return e != f && cs.table[e][f] == e; };
  for (std::size_t e : cs.idempotents) {
    for (std::size_t f : cs.idempotents) {
      if (!below(e, f)) continue;
      bool cover = true;
      for (std::size_t mid : cs.idempotents) {
        if (below(e, mid) && below(mid, f)) {
          cover = false;
          break;
        }
      }
      if (cover) cs.rees_edges.emplace_back(e, f);
    }
  }

  std::size_t covered = 0;
  for (std::size_t e : cs.idempotents) {
    std::vector<std::size_t> members;
    for (std::size_t x = 0; x < size; ++x) {
      if (cs.table[x][e] != x) continue;
      for (std::size_t y = 0; y < size; ++y) {
        if (cs.table[x][y] == e) {
          members.push_back(x);
          break;
        }
      }
    }
    covered += members.size();
    cs.constituent.push_back(std::move(members));
  }
  // Constituent groups are pairwise disjoint, so counting suffices.
  cs.clifford = covered == size;
  return cs;
}

std::vector<ElemId> height_one_primes(const std::vector<ElemId>& support) {
  std::vector<ElemId> out = support;
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool in_prime(ElemId h, const Sequence& s, const WeightSet& weights) {
  return s.multiplicity(h) > 0 && is_wzs(s, weights);
}

std::vector<std::vector<ElemId>> divisor_closed_submonoids(const std::vector<ElemId>& support) {
  const auto g0 = height_one_primes(support);
  if (g0.size() > 20) fail(ErrorCode::BoundTooLarge, "more than 2^20 support subsets");
  std::vector<std::vector<ElemId>> out;
  for (std::size_t mask = 0; mask < (std::size_t{1} << g0.size()); ++mask) {
    std::vector<ElemId> sub;
    for (std::size_t i = 0; i < g0.size(); ++i) {
      if (mask >> i & 1) sub.push_back(g0[i]);
    }
    out.push_back(std::move(sub));
  }
  return out;
}

namespace {

Sequence letters(const FiniteAbelianGroup& g, ElemId x, std::uint32_t k) {
  Sequence s(g);
  if (k) s.add(x, k);
  return s;
}

std::optional<ElemId> first_of_order(const FiniteAbelianGroup& g, const std::function<bool(int)>& ok) {
  for (ElemId x = 0; x < g.order(); ++x) {
    if (ok(g.element_order(x))) return x;
  }
  return std::nullopt;
}

}  // namespace

NonKrullWitness nonweakly_krull_witness(const WeightSet& weights, int case_tag) {
  const auto& g = weights.group();
  auto unmet = [&](const std::string& why) -> NonKrullWitness {
    fail(ErrorCode::HypothesisNotMet, "case " + std::to_string(case_tag) + ": " + why);
  };
  switch (case_tag) {
    case 1: {
      require_pm(weights);
      const auto x = first_of_order(g, [](int n) { return n >= 3 && n % 2 == 1; });
      if (!x) return unmet("no element of odd order >= 3");
      const auto n = static_cast<std::uint32_t>(g.element_order(*x));
      const ElemId neg = g.neg(*x);
      Sequence xs = letters(g, *x, 1);
      return {1, xs,
              {{letters(g, *x, n + 1), letters(g, *x, n)},
               {letters(g, neg, n) * xs, letters(g, neg, n)}}};
    }
    case 2: {
      require_pm(weights);
      const auto x = first_of_order(g, [](int n) { return n >= 4 && n % 2 == 0; });
      if (!x) return unmet("no element of even order >= 4");
      const auto n = static_cast<std::uint32_t>(g.element_order(*x));
      const ElemId neg = g.neg(*x);
      Sequence xs = letters(g, g.add(*x, *x), 1);
      return {2, xs,
              {{xs * letters(g, *x, n - 2), letters(g, *x, n - 2)},
               {xs * letters(g, neg, n - 2), letters(g, neg, n - 2)}}};
    }
    case 3: {
      if (!g.is_elementary_2()) return unmet("group is not elementary 2");
      for (ElemId e = 1; e < g.order(); ++e) {
        for (const auto& tau : weights.endos()) {
          const ElemId te = tau.apply(e);
          if (te == e) continue;
          Sequence xs = letters(g, g.add(e, te), 1);
          return {3, xs, {{xs * letters(g, e, 2), letters(g, e, 2)}, {xs * letters(g, te, 2), letters(g, te, 2)}}};
        }
      }
      return unmet("every weight fixes every element");
    }
    default:
      return unmet("unknown case");
  }
}

bool verify_nonweakly_krull_witness(const WeightSet& weights, int case_tag) {
  const NonKrullWitness w = nonweakly_krull_witness(weights, case_tag);
  const auto& g = weights.group();
  if (is_wzs(w.x, weights)) return false;
  for (const auto& f : w.representations) {
    if (!is_wzs(f.numerator, weights) || !is_wzs(f.denominator, weights)) return false;
    if (!(f.numerator == w.x * f.denominator)) return false;
  }
  for (ElemId h = 0; h < g.order(); ++h) {
    const bool avoided = std::any_of(w.representations.begin(), w.representations.end(),
                                     [&](const Fraction& f) { return f.denominator.multiplicity(h) == 0; });
    if (!avoided) return false;
  }
  return true;
}

StructureReport krull_characterization(const WeightSet& weights) {
  if (!weights.contains_plus_minus() || !weights.all_bijective()) {
    fail(ErrorCode::HypothesisNotMet, "weights must contain +-id and consist of automorphisms");
  }
  const auto& g = weights.group();
  StructureReport report;
  const bool krull = g.is_elementary_2() && is_plus_minus_only(weights);
  report.krull_expected = report.root_closed_expected = report.weakly_krull_expected =
      report.transfer_krull_expected = krull;
  report.acts_trivially = true;
  for (ElemId x = 0; x < g.order(); ++x) report.acts_trivially &= weights.orbit(x).size() == 1;
  if (!krull) {
    if (!g.is_elementary_2()) {
      const bool has_odd = first_of_order(g, [](int n) { return n >= 3 && n % 2 == 1; }).has_value();
      report.witness_case = has_odd ? 1 : 2;
    } else {
      report.witness_case = 3;
    }
    report.witness_verified = verify_nonweakly_krull_witness(weights, report.witness_case);
  }
  return report;
}

}  // namespace wzs
