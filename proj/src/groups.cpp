#include "wzs/groups.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace wzs {

std::string_view error_code_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::OrderCapExceeded: return "OrderCapExceeded";
    case ErrorCode::InvalidFactor: return "InvalidFactor";
    case ErrorCode::GroupMismatch: return "GroupMismatch";
    case ErrorCode::NotInMonoid: return "NotInMonoid";
    case ErrorCode::NotASubsequence: return "NotASubsequence";
    case ErrorCode::HandleMismatch: return "HandleMismatch";
    case ErrorCode::NotAnAtom: return "NotAnAtom";
    case ErrorCode::HypothesisNotMet: return "HypothesisNotMet";
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::WeightSetLacksPM: return "WeightSetLacksPM";
    case ErrorCode::WeightSetNotGroup: return "WeightSetNotGroup";
    case ErrorCode::EmptyWeightSet: return "EmptyWeightSet";
    case ErrorCode::InvalidEndomorphism: return "InvalidEndomorphism";
    case ErrorCode::GroupShapeUnsupported: return "GroupShapeUnsupported";
    case ErrorCode::NotPrimitive: return "NotPrimitive";
    case ErrorCode::WrongSign: return "WrongSign";
    case ErrorCode::InvalidDiscriminant: return "InvalidDiscriminant";
    case ErrorCode::DiscriminantMismatch: return "DiscriminantMismatch";
    case ErrorCode::CompositionInconsistent: return "CompositionInconsistent";
    case ErrorCode::PrimeDividesConductor: return "PrimeDividesConductor";
    case ErrorCode::NotInNPrime: return "NotInNPrime";
    case ErrorCode::NotInRcirc: return "NotInRcirc";
    case ErrorCode::BoundTooLarge: return "BoundTooLarge";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

std::vector<ElemId> GSubset::elements(std::size_t order) const {
  std::vector<ElemId> out;
  out.reserve(bits_.count());
  for (std::size_t i = 0; i < order; ++i) {
    if (bits_.test(i)) out.push_back(static_cast<ElemId>(i));
  }
  return out;
}

bool gsubset_less(const GSubset& a, const GSubset& b, std::size_t order) {
  const auto na = a.size();
  const auto nb = b.size();
  if (na != nb) return na < nb;
  return a.elements(order) < b.elements(order);
}

namespace {

constexpr std::size_t kClosureCheckLimit = 1024;

long long mod(long long a, long long n) {
  long long r = a % n;
  return r < 0 ? r + n : r;
}

// Elementary-divisor regrouping of a direct sum of cyclic groups into the
// invariant-factor chain n1 | n2 | ... | nr.
std::vector<int> normalize_factors(std::span<const long long> factors) {
  std::map<long long, std::vector<long long>> prime_powers;
  for (long long n : factors) {
    long long m = n;
    for (long long p = 2; p * p <= m; ++p) {
      if (m % p != 0) continue;
      long long q = 1;
      while (m % p == 0) {
        m /= p;
        q *= p;
      }
      prime_powers[p].push_back(q);
    }
    if (m > 1) prime_powers[m].push_back(m);
  }
  std::size_t r = 0;
  for (auto& [p, qs] : prime_powers) {
    std::sort(qs.begin(), qs.end(), std::greater<>());
    r = std::max(r, qs.size());
  }
  // Position r-1 collects the largest power of every prime, and so on.
  std::vector<int> out(r, 1);
  for (auto& [p, qs] : prime_powers) {
    for (std::size_t i = 0; i < qs.size(); ++i) out[r - 1 - i] *= static_cast<int>(qs[i]);
  }
  return out;
}

}  // namespace

FiniteAbelianGroup FiniteAbelianGroup::make(std::span<const long long> factors,
                                            GroupLimits limits) {
  if (limits.order_cap > kMaxGroupOrder) {
    fail(ErrorCode::OrderCapExceeded,
         "order cap " + std::to_string(limits.order_cap) + " exceeds hard limit " +
             std::to_string(kMaxGroupOrder));
  }
  long long order = 1;
  for (long long n : factors) {
    if (n < 2) fail(ErrorCode::InvalidFactor, "factor " + std::to_string(n) + " < 2");
    order *= n;
    if (order > static_cast<long long>(limits.order_cap)) {
      fail(ErrorCode::OrderCapExceeded,
           "group order exceeds cap " + std::to_string(limits.order_cap));
    }
  }

  auto impl = std::make_shared<Impl>();
  impl->factors = normalize_factors(factors);
  const std::size_t r = impl->factors.size();
  impl->order = static_cast<std::size_t>(order);
  impl->exponent = r == 0 ? 1 : impl->factors.back();
  impl->strides.assign(r, 1);
  for (std::size_t i = r; i-- > 1;) impl->strides[i - 1] = impl->strides[i] * impl->factors[i];

  const std::size_t n = impl->order;
  impl->coords.resize(n * r);
  for (std::size_t idx = 0; idx < n; ++idx) {
    for (std::size_t i = 0; i < r; ++i) {
      impl->coords[idx * r + i] = static_cast<int>((idx / impl->strides[i]) % impl->factors[i]);
    }
  }
  auto index_from = [&](auto coord_at) {
    std::size_t idx = 0;
    for (std::size_t i = 0; i < r; ++i) idx += static_cast<std::size_t>(coord_at(i)) * impl->strides[i];
    return static_cast<ElemId>(idx);
  };
  impl->add.resize(n * n);
  impl->neg.resize(n);
  impl->elem_order.resize(n);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      impl->add[a * n + b] = index_from([&](std::size_t i) {
        return (impl->coords[a * r + i] + impl->coords[b * r + i]) % impl->factors[i];
      });
    }
    impl->neg[a] = index_from([&](std::size_t i) {
      return (impl->factors[i] - impl->coords[a * r + i]) % impl->factors[i];
    });
    long long ord = 1;
    for (std::size_t i = 0; i < r; ++i) {
      const long long ni = impl->factors[i];
      const long long oi = ni / std::gcd(static_cast<long long>(impl->coords[a * r + i]), ni);
      ord = std::lcm(ord, oi);
    }
    impl->elem_order[a] = static_cast<int>(ord);
  }
  return FiniteAbelianGroup(std::move(impl));
}

FiniteAbelianGroup FiniteAbelianGroup::parse(std::string_view spec, GroupLimits limits) {
  std::vector<long long> factors;
  std::size_t pos = 0;
  auto skip_ws = [&] {
    while (pos < spec.size() && (spec[pos] == ' ' || spec[pos] == '\t')) ++pos;
  };
  skip_ws();
  if (pos == spec.size()) return make(std::span<const long long>(factors), limits);
  while (true) {
    skip_ws();
    long long v = 0;
    auto [ptr, ec] = std::from_chars(spec.data() + pos, spec.data() + spec.size(), v);
    if (ec != std::errc()) throw ParseError("expected integer factor in group spec", 1, pos + 1);
    pos = static_cast<std::size_t>(ptr - spec.data());
    factors.push_back(v);
    skip_ws();
    if (pos == spec.size()) break;
    if (spec[pos] != ',') throw ParseError("expected ',' in group spec", 1, pos + 1);
    ++pos;
  }
  return make(std::span<const long long>(factors), limits);
}

ElemId FiniteAbelianGroup::scale(long long k, ElemId a) const {
  const std::size_t r = impl_->factors.size();
  std::size_t idx = 0;
  for (std::size_t i = 0; i < r; ++i) {
    const long long ni = impl_->factors[i];
    const long long c = mod((mod(k, ni) * impl_->coords[a * r + i]), ni);
    idx += static_cast<std::size_t>(c) * impl_->strides[i];
  }
  return static_cast<ElemId>(idx);
}

ElemId FiniteAbelianGroup::index_of(std::span<const long long> coords) const {
  const std::size_t r = impl_->factors.size();
  if (coords.size() != r) {
    fail(ErrorCode::GroupMismatch, "element has " + std::to_string(coords.size()) +
                                       " coordinates, group rank is " + std::to_string(r));
  }
  std::size_t idx = 0;
  for (std::size_t i = 0; i < r; ++i) {
    idx += static_cast<std::size_t>(mod(coords[i], impl_->factors[i])) * impl_->strides[i];
  }
  return static_cast<ElemId>(idx);
}

ElemId FiniteAbelianGroup::basis(int i) const {
  if (i < 0 || i >= rank()) fail(ErrorCode::OutOfRange, "basis index " + std::to_string(i));
  return static_cast<ElemId>(impl_->strides[static_cast<std::size_t>(i)]);
}

std::string FiniteAbelianGroup::format(ElemId a) const {
  std::string out = "(";
  auto c = coords(a);
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(c[i]);
  }
  out += ')';
  return out;
}

std::string FiniteAbelianGroup::spec() const {
  std::string out;
  for (std::size_t i = 0; i < impl_->factors.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(impl_->factors[i]);
  }
  return out.empty() ? "1" : out;
}

std::vector<ElemId> FiniteAbelianGroup::elements() const {
  std::vector<ElemId> out(order());
  std::iota(out.begin(), out.end(), ElemId{0});
  return out;
}

std::vector<ElemId> FiniteAbelianGroup::two_g() const {
  GSubset s;
  for (ElemId g = 0; g < order(); ++g) s.insert(add(g, g));
  return s.elements(order());
}

std::vector<ElemId> FiniteAbelianGroup::subgroup_generated(std::span<const ElemId> gens) const {
  GSubset s = GSubset::singleton(zero());
  std::vector<ElemId> frontier{zero()};
  while (!frontier.empty()) {
    std::vector<ElemId> next;
    for (ElemId x : frontier) {
      for (ElemId g : gens) {
        for (ElemId y : {add(x, g), add(x, neg(g))}) {
          if (!s.contains(y)) {
            s.insert(y);
            next.push_back(y);
          }
        }
      }
    }
    frontier = std::move(next);
  }
  return s.elements(order());
}

bool FiniteAbelianGroup::is_subgroup(const GSubset& s) const {
  if (!s.contains(zero())) return false;
  auto elems = s.elements(order());
  for (ElemId a : elems) {
    for (ElemId b : elems) {
      if (!s.contains(sub(a, b))) return false;
    }
  }
  return true;
}

GSubset FiniteAbelianGroup::full_set() const {
  GSubset s;
  for (ElemId g = 0; g < order(); ++g) s.insert(g);
  return s;
}

int FiniteAbelianGroup::davenport_star() const {
  int d = 1;
  for (int n : impl_->factors) d += n - 1;
  return d;
}

GroupElement make_element(const FiniteAbelianGroup& g, std::initializer_list<long long> coords) {
  std::vector<long long> c(coords);
  return {g, g.index_of(c)};
}

namespace {
void require_same(const GroupElement& g, const GroupElement& h) {
  if (!(g.group == h.group)) {
    fail(ErrorCode::GroupMismatch, "elements of " + g.group.spec() + " and " + h.group.spec());
  }
}
}  // namespace

GroupElement elem_add(const GroupElement& g, const GroupElement& h) {
  require_same(g, h);
  return {g.group, g.group.add(g.id, h.id)};
}

GroupElement elem_neg(const GroupElement& g) { return {g.group, g.group.neg(g.id)}; }

GroupElement elem_scale(long long k, const GroupElement& g) { return {g.group, g.group.scale(k, g.id)}; }

int element_order(const GroupElement& g) { return g.group.element_order(g.id); }

Endomorphism::Endomorphism(const FiniteAbelianGroup& group, std::vector<ElemId> basis_images)
    : basis_images_(std::move(basis_images)) {
  const auto& f = group.invariant_factors();
  if (basis_images_.size() != f.size()) {
    fail(ErrorCode::InvalidEndomorphism, "need one image per basis element");
  }
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (basis_images_[i] >= group.order()) fail(ErrorCode::InvalidEndomorphism, "image out of range");
    if (group.scale(f[i], basis_images_[i]) != group.zero()) {
      fail(ErrorCode::InvalidEndomorphism, "image of basis element " + std::to_string(i) +
                                               " has order not dividing " + std::to_string(f[i]));
    }
  }
  table_.resize(group.order());
  for (ElemId g = 0; g < group.order(); ++g) {
    auto c = group.coords(g);
    ElemId img = group.zero();
    for (std::size_t i = 0; i < c.size(); ++i) img = group.add(img, group.scale(c[i], basis_images_[i]));
    table_[g] = img;
  }
}

Endomorphism Endomorphism::identity(const FiniteAbelianGroup& group) {
  std::vector<ElemId> imgs;
  for (int i = 0; i < group.rank(); ++i) imgs.push_back(group.basis(i));
  return Endomorphism(group, std::move(imgs));
}

Endomorphism Endomorphism::negation(const FiniteAbelianGroup& group) {
  std::vector<ElemId> imgs;
  for (int i = 0; i < group.rank(); ++i) imgs.push_back(group.neg(group.basis(i)));
  return Endomorphism(group, std::move(imgs));
}

bool Endomorphism::is_bijective() const {
  std::vector<char> seen(table_.size(), 0);
  for (ElemId y : table_) {
    if (seen[y]) return false;
    seen[y] = 1;
  }
  return true;
}

Endomorphism Endomorphism::compose(const Endomorphism& other) const {
  if (table_.size() != other.table_.size() || basis_images_.size() != other.basis_images_.size()) {
    fail(ErrorCode::GroupMismatch, "composition of endomorphisms of different groups");
  }
  std::vector<ElemId> imgs;
  imgs.reserve(other.basis_images_.size());
  for (ElemId b : other.basis_images_) imgs.push_back(table_[b]);
  std::vector<ElemId> table(table_.size());
  for (std::size_t g = 0; g < table_.size(); ++g) table[g] = table_[other.table_[g]];
  return Endomorphism(std::move(imgs), std::move(table));
}

std::string_view weight_kind_name(WeightKind k) {
  switch (k) {
    case WeightKind::Identity: return "id";
    case WeightKind::PlusMinus: return "pm";
    case WeightKind::FullAut: return "aut";
    case WeightKind::Custom: return "custom";
  }
  return "custom";
}

WeightSet::WeightSet(FiniteAbelianGroup group, std::vector<Endomorphism> endos, WeightKind kind,
                     bool known_group)
    : group_(std::move(group)), kind_(kind) {
  if (endos.empty()) fail(ErrorCode::EmptyWeightSet, "weight set must be nonempty");
  std::set<std::vector<ElemId>> seen;
  for (auto& e : endos) {
    if (e.table().size() != group_.order()) fail(ErrorCode::GroupMismatch, "endomorphism of another group");
    if (seen.insert(e.table()).second) endos_.push_back(std::move(e));
  }
  if (known_group) {
    is_group_ = true;
  } else {
    is_group_ = all_bijective();
    for (std::size_t i = 0; is_group_ && i < endos_.size(); ++i) {
      for (const auto& b : endos_) {
        if (!seen.contains(endos_[i].compose(b).table())) {
          is_group_ = false;
          break;
        }
      }
    }
  }
  const std::size_t n = group_.order();
  orbit_sets_.resize(n);
  orbit_lists_.resize(n);
  for (ElemId g = 0; g < n; ++g) {
    for (const auto& e : endos_) orbit_sets_[g].insert(e.apply(g));
    orbit_lists_[g] = orbit_sets_[g].elements(n);
  }
}

WeightSet WeightSet::identity(const FiniteAbelianGroup& group) {
  return WeightSet(group, {Endomorphism::identity(group)}, WeightKind::Identity);
}

WeightSet WeightSet::plus_minus(const FiniteAbelianGroup& group) {
  return WeightSet(group, {Endomorphism::identity(group), Endomorphism::negation(group)},
                   WeightKind::PlusMinus);
}

WeightSet WeightSet::full_aut(const FiniteAbelianGroup& group, GroupLimits limits) {
  return enumerate_automorphisms(group, limits);
}

WeightSet WeightSet::custom(const FiniteAbelianGroup& group, std::vector<Endomorphism> endos) {
  return WeightSet(group, std::move(endos), WeightKind::Custom);
}

WeightSet WeightSet::parse(std::string_view spec, const FiniteAbelianGroup& group, GroupLimits limits) {
  if (spec == "id") return identity(group);
  if (spec == "pm") return plus_minus(group);
  if (spec == "aut") return full_aut(group, limits);
  throw ParseError("unknown weight set '" + std::string(spec) + "' (expected id|pm|aut)", 1, 1);
}

std::string WeightSet::spec() const { return std::string(weight_kind_name(kind_)); }

bool WeightSet::contains(const Endomorphism& e) const {
  return std::find(endos_.begin(), endos_.end(), e) != endos_.end();
}

bool WeightSet::contains_plus_minus() const {
  return contains(Endomorphism::identity(group_)) && contains(Endomorphism::negation(group_));
}

bool WeightSet::all_bijective() const {
  return std::all_of(endos_.begin(), endos_.end(), [](const Endomorphism& e) { return e.is_bijective(); });
}

WeightSet enumerate_automorphisms(const FiniteAbelianGroup& group, GroupLimits limits) {
  if (group.order() > limits.aut_cap) {
    fail(ErrorCode::OrderCapExceeded, "automorphism enumeration needs |G| <= " +
                                          std::to_string(limits.aut_cap));
  }
  const auto& f = group.invariant_factors();
  const std::size_t r = f.size();
  std::vector<std::vector<ElemId>> candidates(r);
  for (std::size_t i = 0; i < r; ++i) {
    for (ElemId g = 0; g < group.order(); ++g) {
      if (f[i] % group.element_order(g) == 0) candidates[i].push_back(g);
    }
  }
  std::vector<Endomorphism> autos;
  std::vector<ElemId> images;
  // Images of e_1..e_k must generate a subgroup of order n_1...n_k; the full
  // tuple then generates G, which makes the induced map bijective.
  auto recurse = [&](auto&& self, std::size_t i, std::size_t expected) -> void {
    if (i == r) {
      autos.emplace_back(group, images);
      return;
    }
    for (ElemId c : candidates[i]) {
      images.push_back(c);
      const std::size_t want = expected * static_cast<std::size_t>(f[i]);
      if (group.subgroup_generated(images).size() == want) self(self, i + 1, want);
      images.pop_back();
    }
  };
  recurse(recurse, 0, 1);
  // Aut(G) is a group by construction; the closure check is only run when cheap.
  const bool verify = autos.size() <= kClosureCheckLimit;
  return WeightSet(group, std::move(autos), WeightKind::FullAut, !verify);
}

}  // namespace wzs
