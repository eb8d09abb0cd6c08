#include "wzs/monoid.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <map>
#include <mutex>
#include <numeric>
#include <set>
#include <stdexcept>
#include <string>
#include <unordered_set>

#include "wzs/parallel.hpp"

namespace wzs {

struct MonoidHandle::State {
  WeightSet weights;
  std::vector<ElemId> support;
  bool full = false;
  std::once_flag atoms_once;
  std::vector<Sequence> atoms;
  std::map<std::vector<std::uint32_t>, std::size_t> atom_lookup;

  State(WeightSet w, std::vector<ElemId> s) : weights(std::move(w)), support(std::move(s)) {}
};

namespace {

std::string exponent_key(const Sequence& s) {
  std::string key;
  key.reserve(2 * s.exponents().size());
  for (std::uint32_t e : s.exponents()) {
    key.push_back(static_cast<char>(e & 0xff));
    key.push_back(static_cast<char>(e >> 8));
  }
  return key;
}

std::vector<Sequence> compute_atoms(const WeightSet& w, const std::vector<ElemId>& support) {
  const auto& group = w.group();
  std::vector<ElemId> nonzero;
  bool has_zero = false;
  for (ElemId g : support) {
    if (g == group.zero()) {
      has_zero = true;
    } else {
      nonzero.push_back(g);
    }
  }
  // D(B_Gamma(G0)) <= D(G) <= |G| bounds every atom length.
  const std::size_t max_len = group.order();

  // A sequence containing 0 and something else splits off the prime 0, so
  // only zero-free sequences are enumerated. Prefix pruning on members is not
  // sound here: g^2 is a member of B_pm(C3) yet g^3 is an atom.
  std::vector<Sequence> members;
  Sequence cur(group);
  auto rec = [&](auto&& self, std::size_t start, const GSubset& sums) -> void {
    for (std::size_t j = start; j < nonzero.size(); ++j) {
      const ElemId g = nonzero[j];
      GSubset next = sumset(group, sums, std::span<const ElemId>(w.orbit_list(g)));
      cur.add(g);
      if (next.contains(group.zero())) members.push_back(cur);
      if (cur.length() < max_len) self(self, j, next);
      cur.remove(g);
    }
  };
  rec(rec, 0, GSubset::singleton(group.zero()));

  std::stable_sort(members.begin(), members.end(),
                   [](const Sequence& a, const Sequence& b) { return a.length() < b.length(); });
  std::unordered_set<std::string> member_keys;
  member_keys.reserve(members.size() * 2);
  for (const auto& m : members) member_keys.insert(exponent_key(m));

  // Graded order: a non-atom b = A W with A an atom and W a nonempty member,
  // so A is shorter than b and has already been classified.
  std::vector<Sequence> found;
  for (const auto& b : members) {
    bool splits = false;
    for (const auto& a : found) {
      if (a.length() >= b.length()) break;
      if (!a.divides(b)) continue;
      if (member_keys.count(exponent_key(quotient(a, b)))) {
        splits = true;
        break;
      }
    }
    if (!splits) found.push_back(b);
  }
  if (has_zero) found.push_back(Sequence::from_elements(group, {group.zero()}));
  std::sort(found.begin(), found.end());
  return found;
}

}  // namespace

MonoidHandle::MonoidHandle(WeightSet weights) : MonoidHandle(weights, weights.group().elements()) {}

MonoidHandle::MonoidHandle(WeightSet weights, std::vector<ElemId> support) {
  const std::size_t n = weights.group().order();
  std::sort(support.begin(), support.end());
  support.erase(std::unique(support.begin(), support.end()), support.end());
  for (ElemId g : support) {
    if (g >= n) fail(ErrorCode::GroupMismatch, "support element outside the group");
  }
  const bool full = support.size() == n;
  state_ = std::make_shared<State>(std::move(weights), std::move(support));
  state_->full = full;
}

const FiniteAbelianGroup& MonoidHandle::group() const { return state_->weights.group(); }
const WeightSet& MonoidHandle::weights() const { return state_->weights; }
const std::vector<ElemId>& MonoidHandle::support() const { return state_->support; }
bool MonoidHandle::full_support() const { return state_->full; }

const std::vector<Sequence>& MonoidHandle::atoms() const {
  std::call_once(state_->atoms_once, [this] {
    state_->atoms = compute_atoms(state_->weights, state_->support);
    for (std::size_t i = 0; i < state_->atoms.size(); ++i) {
      state_->atom_lookup.emplace(state_->atoms[i].exponents(), i);
    }
  });
  return state_->atoms;
}

std::optional<std::size_t> MonoidHandle::atom_index(const Sequence& s) const {
  atoms();
  if (!(s.group() == group())) return std::nullopt;
  auto it = state_->atom_lookup.find(s.exponents());
  if (it == state_->atom_lookup.end()) return std::nullopt;
  return it->second;
}

bool MonoidHandle::contains(const Sequence& s) const {
  if (!(s.group() == group())) fail(ErrorCode::GroupMismatch, "sequence over a different group");
  if (!state_->full) {
    for (ElemId g : s.support()) {
      if (!std::binary_search(state_->support.begin(), state_->support.end(), g)) return false;
    }
  }
  return is_wzs(s, state_->weights);
}

Factorization::Factorization(const MonoidHandle& handle, std::vector<std::uint32_t> atom_indices)
    : handle_(handle), atoms_(std::move(atom_indices)) {
  std::sort(atoms_.begin(), atoms_.end());
  const std::size_t n = handle_.atoms().size();
  for (auto i : atoms_) {
    if (i >= n) fail(ErrorCode::OutOfRange, "atom index out of range");
  }
}

Sequence Factorization::product() const {
  Sequence out(handle_.group());
  const auto& list = handle_.atoms();
  for (auto i : atoms_) out = out * list[i];
  return out;
}

const std::vector<Sequence>& atoms(const MonoidHandle& h) { return h.atoms(); }

int davenport_large(const MonoidHandle& h) {
  int best = 0;
  for (const auto& a : h.atoms()) best = std::max(best, static_cast<int>(a.length()));
  return best;
}

int davenport_small(const MonoidHandle& h) {
  const auto& group = h.group();
  const auto& w = h.weights();
  std::vector<ElemId> letters;
  for (ElemId g : h.support()) {
    if (!w.orbit(g).contains(group.zero())) letters.push_back(g);
  }
  int best = 0;
  auto rec = [&](auto&& self, std::size_t start, const GSubset& reach, int len) -> void {
    best = std::max(best, len);
    for (std::size_t j = start; j < letters.size(); ++j) {
      const ElemId g = letters[j];
      GSubset next = reach | sumset(group, reach, std::span<const ElemId>(w.orbit_list(g))) | w.orbit(g);
      if (!next.contains(group.zero())) self(self, j, next, len + 1);
    }
  };
  rec(rec, 0, GSubset{}, 0);
  return best;
}

namespace {

void require_member(const MonoidHandle& h, const Sequence& b) {
  if (!h.contains(b)) fail(ErrorCode::NotInMonoid, b.to_string());
}

}  // namespace

std::vector<Factorization> factorizations(const MonoidHandle& h, const Sequence& b) {
  require_member(h, b);
  const auto& list = h.atoms();
  const auto& w = h.weights();
  std::vector<Factorization> out;
  std::vector<std::uint32_t> chosen;
  auto rec = [&](auto&& self, std::size_t start, const Sequence& rem) -> void {
    if (rem.empty()) {
      out.emplace_back(h, chosen);
      return;
    }
    for (std::size_t i = start; i < list.size(); ++i) {
      if (list[i].length() > rem.length() || !list[i].divides(rem)) continue;
      Sequence q = quotient(list[i], rem);
      if (!is_wzs(q, w)) continue;
      chosen.push_back(static_cast<std::uint32_t>(i));
      self(self, i, q);
      chosen.pop_back();
    }
  };
  rec(rec, 0, b);
  return out;
}

LengthSet set_of_lengths(const MonoidHandle& h, const Sequence& b) {
  std::set<int> lengths;
  for (const auto& z : factorizations(h, b)) lengths.insert(static_cast<int>(z.length()));
  return {lengths.begin(), lengths.end()};
}

int distance(const Factorization& z, const Factorization& w) {
  if (!z.handle().same_handle(w.handle())) fail(ErrorCode::HandleMismatch, "factorizations of different monoids");
  const auto& a = z.atom_indices();
  const auto& b = w.atom_indices();
  std::size_t common = 0;
  for (std::size_t i = 0, j = 0; i < a.size() && j < b.size();) {
    if (a[i] == b[j]) {
      ++common;
      ++i;
      ++j;
    } else if (a[i] < b[j]) {
      ++i;
    } else {
      ++j;
    }
  }
  return static_cast<int>(std::max(a.size(), b.size()) - common);
}

namespace {

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n), components_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) {
      parent_[a] = b;
      --components_;
    }
  }
  std::size_t components() const { return components_; }

 private:
  std::vector<std::size_t> parent_;
  std::size_t components_;
};

int catenary_of_factorizations(const std::vector<Factorization>& z) {
  if (z.size() <= 1) return 0;
  struct Edge {
    int d;
    std::uint32_t a, b;
  };
  std::vector<Edge> edges;
  edges.reserve(z.size() * (z.size() - 1) / 2);
  for (std::uint32_t i = 0; i < z.size(); ++i) {
    for (std::uint32_t j = i + 1; j < z.size(); ++j) edges.push_back({distance(z[i], z[j]), i, j});
  }
  std::sort(edges.begin(), edges.end(), [](const Edge& x, const Edge& y) { return x.d < y.d; });
  DisjointSets dsu(z.size());
  for (const auto& e : edges) {
    dsu.unite(e.a, e.b);
    if (dsu.components() == 1) return e.d;
  }
  return edges.back().d;
}

bool is_prime_number(std::size_t n) {
  if (n < 2) return false;
  for (std::size_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

/// B_Gamma(G0) is factorial: |G| <= 2 and Gamma consists of automorphisms.
bool factorial_case(const MonoidHandle& h) {
  return h.group().order() <= 2 && h.weights().all_bijective();
}

Sequence from_positions(const MonoidHandle& h, const std::vector<std::uint32_t>& v) {
  Sequence s(h.group());
  const auto& supp = h.support();
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i]) s.add(supp[i], v[i]);
  }
  return s;
}

}  // namespace

int catenary_of_element(const MonoidHandle& h, const Sequence& b) {
  return catenary_of_factorizations(factorizations(h, b));
}

bool prime_cyclic_certificate(const MonoidHandle& h) {
  const auto& group = h.group();
  const auto& w = h.weights();
  const std::size_t p = group.order();
  if (group.rank() != 1 || p < 3 || !is_prime_number(p) || !h.full_support()) return false;
  if (w.size() != 2 || !w.contains_plus_minus()) return false;
  std::vector<ElemId> nonzero;
  for (ElemId g = 1; g < p; ++g) nonzero.push_back(g);
  const GSubset all = group.full_set();
  bool ok = true;
  auto rec = [&](auto&& self, std::size_t start, std::size_t len, const GSubset& sums) -> void {
    if (!ok) return;
    if (len == p - 1) {
      ok = sums == all;
      return;
    }
    for (std::size_t j = start; j < nonzero.size() && ok; ++j) {
      self(self, j, len + 1, sumset(group, sums, std::span<const ElemId>(w.orbit_list(nonzero[j]))));
    }
  };
  rec(rec, 0, 0, GSubset::singleton(group.zero()));
  return ok;
}

BoundedValue catenary_degree(const MonoidHandle& h, int total_length_bound) {
  const auto table = LengthTable::build(h, total_length_bound);
  const auto& supp = h.support();
  const bool zero_first = !supp.empty() && supp[0] == h.group().zero();
  std::vector<Sequence> members;
  table.for_each([&](const std::vector<std::uint32_t>& v, std::uint64_t mask) {
    // 0 is prime, so Z(0 b) = 0 Z(b) and c(0 b) = c(b).
    if (mask == 0 || (zero_first && v[0] > 0)) return;
    members.push_back(from_positions(h, v));
  });
  std::vector<int> values(members.size(), 0);
  parallel_for(members.size(), [&](std::size_t i) { values[i] = catenary_of_element(h, members[i]); });
  const int best = values.empty() ? 0 : *std::max_element(values.begin(), values.end());
  bool exact = false;
  if (factorial_case(h)) {
    exact = best == 0;
  } else if (prime_cyclic_certificate(h)) {
    exact = best == static_cast<int>(h.group().order());
  }
  return {best, exact};
}

namespace {

/// Membership of exponent vectors over the support positions, answered from a
/// length table when one fits and by direct folding otherwise.
class MemberOracle {
 public:
  MemberOracle(const MonoidHandle& h, int max_len) : h_(h) {
    const int bound = std::min(max_len, 63);
    if (bound == max_len) {
      try {
        table_.emplace(LengthTable::build(h, bound, 2'000'000));
      } catch (const Error&) {
        table_.reset();
      }
    }
  }

  bool member(const std::vector<std::uint32_t>& v) const {
    if (table_) return table_->mask(table_->rank(v)) != 0;
    return is_wzs(from_positions(h_, v), h_.weights());
  }

 private:
  const MonoidHandle& h_;
  std::optional<LengthTable> table_;
};

}  // namespace

BoundedValue omega_of_atom(const MonoidHandle& h, const Sequence& u, int cap) {
  if (!h.atom_index(u)) fail(ErrorCode::NotAnAtom, u.to_string());
  const auto& group = h.group();
  if (u.length() == 1 && u.multiplicity(group.zero()) == 1) return {1, true};
  if (factorial_case(h)) return {1, true};

  const bool certified = prime_cyclic_certificate(h);
  const int upper = certified ? static_cast<int>(group.order()) : std::numeric_limits<int>::max();
  const auto& supp = h.support();
  const std::size_t n = supp.size();
  auto positions_of = [&](const Sequence& s) {
    std::vector<std::uint32_t> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = s.multiplicity(supp[i]);
    return v;
  };
  std::vector<std::vector<std::uint32_t>> list;
  for (const auto& a : h.atoms()) list.push_back(positions_of(a));
  const auto uv = positions_of(u);
  const MemberOracle oracle(h, cap * davenport_large(h));

  // u | prod in the monoid; prod is modified and restored.
  auto divides = [&](std::vector<std::uint32_t>& prod) {
    for (std::size_t i = 0; i < n; ++i) {
      if (uv[i] > prod[i]) return false;
    }
    for (std::size_t i = 0; i < n; ++i) prod[i] -= uv[i];
    const bool ok = oracle.member(prod);
    for (std::size_t i = 0; i < n; ++i) prod[i] += uv[i];
    return ok;
  };

  int best = 0;
  std::vector<std::uint32_t> chosen;
  std::vector<std::uint32_t> prod(n, 0);
  auto minimal = [&]() {
    for (std::size_t k = 0; k < chosen.size(); ++k) {
      if (k > 0 && chosen[k] == chosen[k - 1]) continue;
      const auto& a = list[chosen[k]];
      for (std::size_t i = 0; i < n; ++i) prod[i] -= a[i];
      const bool d = divides(prod);
      for (std::size_t i = 0; i < n; ++i) prod[i] += a[i];
      if (d) return false;
    }
    return true;
  };
  auto rec = [&](auto&& self, std::size_t start) -> void {
    for (std::size_t i = start; i < list.size() && best < upper; ++i) {
      const auto& a = list[i];
      for (std::size_t t = 0; t < n; ++t) prod[t] += a[t];
      chosen.push_back(static_cast<std::uint32_t>(i));
      if (divides(prod)) {
        // Every extension of a divisible product is non-minimal.
        if (minimal()) best = std::max(best, static_cast<int>(chosen.size()));
      } else if (static_cast<int>(chosen.size()) < cap) {
        self(self, i);
      }
      chosen.pop_back();
      for (std::size_t t = 0; t < n; ++t) prod[t] -= a[t];
    }
  };
  rec(rec, 0);
  // Under the certificate no minimal product has more than p atoms, so a
  // search through size p is exhaustive.
  return {best, certified && cap >= upper};
}

BoundedValue omega(const MonoidHandle& h, int cap) {
  const auto& list = h.atoms();
  std::vector<BoundedValue> values(list.size());
  parallel_for(list.size(), [&](std::size_t i) { values[i] = omega_of_atom(h, list[i], cap); });
  BoundedValue out{0, true};
  for (const auto& v : values) {
    out.value = std::max(out.value, v.value);
    out.exact = out.exact && v.exact;
  }
  return out;
}

LengthTable::LengthTable(const MonoidHandle& h, int bound)
    : handle_(h), bound_(bound), positions_(h.support().size()) {}

std::size_t LengthTable::count(std::size_t dims, int budget) const {
  if (budget < 0) return 0;
  return binom_[dims + static_cast<std::size_t>(budget)][dims];
}

std::size_t LengthTable::rank(const std::vector<std::uint32_t>& v) const {
  std::size_t r = 0;
  int budget = bound_;
  for (std::size_t i = 0; i < positions_; ++i) {
    const std::size_t dims = positions_ - i;
    r += count(dims, budget) - count(dims, budget - static_cast<int>(v[i]));
    budget -= static_cast<int>(v[i]);
  }
  return r;
}

void LengthTable::advance(std::vector<std::uint32_t>& v) const {
  if (positions_ == 0) return;
  const auto total = std::accumulate(v.begin(), v.end(), 0u);
  if (static_cast<int>(total) < bound_) {
    ++v[positions_ - 1];
    return;
  }
  std::size_t j = positions_;
  while (j > 0 && v[j - 1] == 0) --j;
  if (j <= 1) return;  // past the last state
  v[j - 1] = 0;
  ++v[j - 2];
}

LengthTable LengthTable::build(const MonoidHandle& h, int bound, std::size_t max_states) {
  if (bound < 0) fail(ErrorCode::OutOfRange, "negative length bound");
  if (bound > 63) fail(ErrorCode::BoundTooLarge, "length bound " + std::to_string(bound) + " exceeds 63");
  LengthTable t(h, bound);
  const std::size_t n = t.positions_;
  const std::size_t rows = n + static_cast<std::size_t>(bound) + 1;
  constexpr std::size_t kSat = std::numeric_limits<std::size_t>::max() / 2;
  t.binom_.assign(rows, std::vector<std::size_t>(n + 1, 0));
  for (std::size_t a = 0; a < rows; ++a) {
    t.binom_[a][0] = 1;
    for (std::size_t b = 1; b <= std::min(a, n); ++b) {
      t.binom_[a][b] = std::min(kSat, t.binom_[a - 1][b - 1] + (b <= a - 1 ? t.binom_[a - 1][b] : 0));
    }
  }
  const std::size_t states = t.count(n, bound);
  if (states > max_states) {
    fail(ErrorCode::BoundTooLarge, std::to_string(states) + " states at length bound " + std::to_string(bound));
  }

  // Atoms as sparse (position, exponent) lists.
  const auto& supp = h.support();
  std::vector<std::vector<std::pair<std::size_t, std::uint32_t>>> sparse;
  for (const auto& a : h.atoms()) {
    if (static_cast<int>(a.length()) > bound) continue;
    std::vector<std::pair<std::size_t, std::uint32_t>> entry;
    for (std::size_t i = 0; i < n; ++i) {
      if (a.multiplicity(supp[i])) entry.emplace_back(i, a.multiplicity(supp[i]));
    }
    sparse.push_back(std::move(entry));
  }

  t.masks_.assign(states, 0);
  t.masks_[0] = 1;
  std::vector<std::uint32_t> v(n, 0);
  for (std::size_t r = 1; r < states; ++r) {
    t.advance(v);
    std::uint64_t mask = 0;
    for (const auto& a : sparse) {
      bool fits = true;
      for (auto [i, e] : a) {
        if (v[i] < e) {
          fits = false;
          break;
        }
      }
      if (!fits) continue;
      for (auto [i, e] : a) v[i] -= e;
      mask |= t.masks_[t.rank(v)] << 1;
      for (auto [i, e] : a) v[i] += e;
    }
    t.masks_[r] = mask;
  }
  return t;
}

std::uint64_t LengthTable::mask_of(const Sequence& s) const {
  if (static_cast<int>(s.length()) > bound_) fail(ErrorCode::OutOfRange, "sequence longer than the table bound");
  const auto& supp = handle_.support();
  std::vector<std::uint32_t> v(positions_, 0);
  std::size_t seen = 0;
  for (std::size_t i = 0; i < positions_; ++i) {
    v[i] = s.multiplicity(supp[i]);
    seen += v[i];
  }
  if (seen != s.length()) return 0;  // support outside G0
  return masks_[rank(v)];
}

LengthSet mask_to_lengths(std::uint64_t mask) {
  LengthSet out;
  for (int l = 0; l < 64; ++l) {
    if (mask >> l & 1u) out.push_back(l);
  }
  return out;
}

std::vector<int> delta_set(const LengthTable& table) {
  std::uint64_t gaps = 0;
  for (std::size_t r = 0; r < table.size(); ++r) {
    std::uint64_t m = table.mask(r);
    if (std::popcount(m) < 2) continue;
    int prev = std::countr_zero(m);
    m &= m - 1;
    while (m) {
      const int l = std::countr_zero(m);
      gaps |= std::uint64_t{1} << (l - prev);
      prev = l;
      m &= m - 1;
    }
  }
  return mask_to_lengths(gaps);
}

std::vector<int> delta_set(const MonoidHandle& h, int total_length_bound) {
  return delta_set(LengthTable::build(h, total_length_bound));
}

UnionResult unions_Uk(const LengthTable& table, int k, int davenport) {
  if (k < 1 || k > 63) fail(ErrorCode::OutOfRange, "k must lie in [1, 63]");
  std::uint64_t acc = 0;
  const std::uint64_t bit = std::uint64_t{1} << k;
  for (std::size_t r = 0; r < table.size(); ++r) {
    if (table.mask(r) & bit) acc |= table.mask(r);
  }
  // An element with a factorization of length k has length at most kD.
  return {mask_to_lengths(acc), table.bound() >= k * davenport};
}

UnionResult unions_Uk(const MonoidHandle& h, int k, int total_length_bound) {
  return unions_Uk(LengthTable::build(h, total_length_bound), k, davenport_large(h));
}

BoundedValue rho_k(const MonoidHandle& h, int k, int total_length_bound) {
  auto u = unions_Uk(h, k, total_length_bound);
  return {u.values.empty() ? 0 : u.values.back(), u.exact};
}

BoundedValue lambda_k(const MonoidHandle& h, int k, int total_length_bound) {
  auto u = unions_Uk(h, k, total_length_bound);
  return {u.values.empty() ? 0 : u.values.front(), u.exact};
}

Interval union_interval_formula(int davenport, int k) {
  const int d = davenport - 1;
  const int l = k / davenport;
  const int j = k % davenport;
  const int hi = k * davenport / 2;
  int lo;
  if (l == 0) {
    lo = 2;
  } else if (j == 0) {
    lo = 2 * l;
  } else if (j <= d / 2) {
    lo = 2 * l + 1;
  } else {
    lo = 2 * l + 2;
  }
  return {lo, hi};
}

Interval predicted_union_interval(const FiniteAbelianGroup& g, int k) {
  if (k < 2) fail(ErrorCode::HypothesisNotMet, "k must be at least 2");
  if (g.order() % 2 == 0 || g.order() < 3) fail(ErrorCode::HypothesisNotMet, "|G| must be odd and at least 3");
  const int d = davenport_large(MonoidHandle(WeightSet::identity(g)));
  if (d != g.davenport_star() || d < 3) fail(ErrorCode::HypothesisNotMet, "D(G) differs from D*(G)");
  return union_interval_formula(d, k);
}

std::pair<Sequence, LengthSet> two_length_witness(int n, int j) {
  if (n < 3 || n % 2 == 0) fail(ErrorCode::OutOfRange, "n must be odd and at least 3");
  if (j < 3 || j > n) fail(ErrorCode::OutOfRange, "j must lie in [3, n]");
  const int k = n - j + 1;
  auto group = FiniteAbelianGroup::make({n});
  const ElemId g = group.basis(0);
  Sequence b(group);
  b.add(g, static_cast<std::uint32_t>(n + n - k));
  b.add(group.scale(k, g));
  MonoidHandle h(WeightSet::plus_minus(group));
  LengthSet lengths = set_of_lengths(h, b);
  if (lengths != LengthSet{2, j}) {
    throw std::logic_error("witness " + b.to_string() + " does not have lengths {2," + std::to_string(j) + "}");
  }
  return {b, lengths};
}

}  // namespace wzs
