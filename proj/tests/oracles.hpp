#pragma once
// Brute-force reference implementations. Deliberately naive: they enumerate
// weight tuples and sub-multisets directly and share no code paths with the
// library beyond group arithmetic.

#include <algorithm>
#include <functional>
#include <set>
#include <vector>

#include "wzs/groups.hpp"
#include "wzs/sequences.hpp"

namespace oracle {

using wzs::ElemId;

/// All weighted sums by iterating over every tuple in Gamma^|S|.
inline std::set<ElemId> weighted_sums(const wzs::Sequence& s, const wzs::WeightSet& w) {
  const auto& g = s.group();
  const auto elems = s.elements();
  std::set<ElemId> out;
  std::function<void(std::size_t, ElemId)> rec = [&](std::size_t i, ElemId acc) {
    if (i == elems.size()) {
      out.insert(acc);
      return;
    }
    for (const auto& e : w.endos()) rec(i + 1, g.add(acc, e.apply(elems[i])));
  };
  rec(0, g.zero());
  return out;
}

inline bool member(const wzs::Sequence& s, const wzs::WeightSet& w) {
  return weighted_sums(s, w).count(s.group().zero()) == 1;
}

/// Same set, letter by letter over std::set states; for long sequences.
inline std::set<ElemId> weighted_sums_dp(const wzs::Sequence& s, const wzs::WeightSet& w) {
  const auto& g = s.group();
  std::set<ElemId> cur{g.zero()};
  for (ElemId x : s.elements()) {
    std::set<ElemId> next;
    for (ElemId a : cur) {
      for (const auto& e : w.endos()) next.insert(g.add(a, e.apply(x)));
    }
    cur = std::move(next);
  }
  return cur;
}

/// Every sub-multiset T | S (including 1 and S) by exponent odometer.
inline std::vector<wzs::Sequence> submultisets(const wzs::Sequence& s) {
  const auto& g = s.group();
  const auto supp = s.support();
  std::vector<std::uint32_t> e(supp.size(), 0);
  std::vector<wzs::Sequence> out;
  while (true) {
    wzs::Sequence t(g);
    for (std::size_t i = 0; i < supp.size(); ++i) t.add(supp[i], e[i]);
    out.push_back(t);
    std::size_t i = 0;
    while (i < supp.size() && e[i] == s.multiplicity(supp[i])) e[i++] = 0;
    if (i == supp.size()) break;
    ++e[i];
  }
  return out;
}

inline wzs::Sequence minus(const wzs::Sequence& b, const wzs::Sequence& t) {
  wzs::Sequence q(b.group());
  for (ElemId x = 0; x < b.group().order(); ++x) q.add(x, b.multiplicity(x) - t.multiplicity(x));
  return q;
}

/// Union of weighted sums over all nonempty T | S.
inline std::set<ElemId> all_subsums(const wzs::Sequence& s, const wzs::WeightSet& w) {
  std::set<ElemId> out;
  for (const auto& t : submultisets(s)) {
    if (t.empty()) continue;
    auto v = weighted_sums(t, w);
    out.insert(v.begin(), v.end());
  }
  return out;
}

/// Member with no split into two nonempty members.
inline bool is_atom(const wzs::Sequence& s, const wzs::WeightSet& w) {
  if (s.empty() || !member(s, w)) return false;
  for (const auto& t : submultisets(s)) {
    if (t.empty() || t.length() == s.length()) continue;
    if (member(t, w) && member(minus(s, t), w)) return false;
  }
  return true;
}

/// Every multiset over `support` with length in [lo, hi].
inline std::vector<wzs::Sequence> all_sequences(const wzs::FiniteAbelianGroup& g, const std::vector<ElemId>& support,
                                                std::size_t lo, std::size_t hi) {
  std::vector<wzs::Sequence> out;
  wzs::Sequence cur(g);
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (cur.length() >= lo) out.push_back(cur);
    if (cur.length() == hi) return;
    for (std::size_t j = i; j < support.size(); ++j) {
      cur.add(support[j]);
      rec(j);
      cur.remove(support[j]);
    }
  };
  rec(0);
  return out;
}

inline std::set<ElemId> to_set(const wzs::GSubset& s, std::size_t order) {
  auto v = s.elements(order);
  return {v.begin(), v.end()};
}

}  // namespace oracle

namespace oracle {

/// Membership of every multiset over `support` with length <= max_len, by
/// weight-tuple enumeration. Keyed by exponent table.
inline std::set<std::vector<std::uint32_t>> member_set(const wzs::FiniteAbelianGroup& g, const wzs::WeightSet& w,
                                                       const std::vector<ElemId>& support, std::size_t max_len) {
  std::set<std::vector<std::uint32_t>> out;
  for (const auto& s : all_sequences(g, support, 0, max_len)) {
    if (member(s, w)) out.insert(s.exponents());
  }
  return out;
}

/// Atoms over `support` of length <= max_len by testing every split against
/// a precomputed membership set.
inline std::vector<wzs::Sequence> atoms_by_splits(const wzs::FiniteAbelianGroup& g, const wzs::WeightSet& w,
                                                  const std::vector<ElemId>& support, std::size_t max_len) {
  const auto members = member_set(g, w, support, max_len);
  std::vector<wzs::Sequence> out;
  for (const auto& s : all_sequences(g, support, 1, max_len)) {
    if (!members.count(s.exponents())) continue;
    bool splits = false;
    for (const auto& t : submultisets(s)) {
      if (t.empty() || t.length() == s.length()) continue;
      if (members.count(t.exponents()) && members.count(minus(s, t).exponents())) {
        splits = true;
        break;
      }
    }
    if (!splits) out.push_back(s);
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Multisets of atoms (as index lists) whose product is b, found without any
/// membership pruning.
inline std::vector<std::vector<std::uint32_t>> factor_by_products(const std::vector<wzs::Sequence>& atoms,
                                                                  const wzs::Sequence& b) {
  std::vector<std::vector<std::uint32_t>> out;
  std::vector<std::uint32_t> chosen;
  std::function<void(std::size_t, const wzs::Sequence&)> rec = [&](std::size_t start, const wzs::Sequence& prod) {
    if (prod == b) {
      out.push_back(chosen);
      return;
    }
    for (std::size_t i = start; i < atoms.size(); ++i) {
      auto next = prod * atoms[i];
      if (!next.divides(b)) continue;
      chosen.push_back(static_cast<std::uint32_t>(i));
      rec(i, next);
      chosen.pop_back();
    }
  };
  rec(0, wzs::Sequence(b.group()));
  return out;
}

}  // namespace oracle
