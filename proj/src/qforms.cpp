#include "wzs/qforms.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <mutex>
#include <numeric>
#include <set>

#include "wzs/parallel.hpp"

namespace wzs {

namespace {

long long floor_div(long long a, long long b) {
  long long q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

long long mod_pos(long long a, long long m) {
  long long r = a % m;
  return r < 0 ? r + m : r;
}

long long isqrt(long long n) {
  if (n <= 0) return 0;
  auto r = static_cast<long long>(std::sqrt(static_cast<long double>(n)));
  while (r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

long long pow_mod(long long base, long long e, long long m) {
  __int128 result = 1, b = mod_pos(base, m);
  while (e > 0) {
    if (e & 1) result = result * b % m;
    b = b * b % m;
    e >>= 1;
  }
  return static_cast<long long>(result);
}

/// Inverse of a modulo m, gcd(a, m) = 1.
long long inverse_mod(long long a, long long m) {
  long long r0 = mod_pos(a, m), r1 = m, s0 = 1, s1 = 0;
  while (r1 != 0) {
    const long long q = r0 / r1;
    std::tie(r0, r1) = std::pair{r1, r0 - q * r1};
    std::tie(s0, s1) = std::pair{s1, s0 - q * s1};
  }
  return mod_pos(s0, m);
}

/// f(xX + zY, yX + wY) for xw - yz = 1.
QForm transform(const QForm& f, long long x, long long y, long long z, long long w) {
  return {f.eval(x, y), 2 * f.a * x * z + f.b * (x * w + y * z) + 2 * f.c * y * w, f.eval(z, w)};
}

/// Properly equivalent form whose leading coefficient is coprime to `m`.
QForm with_leading_coprime_to(const QForm& f, long long m) {
  if (std::gcd(f.a, m) == 1) return f;
  for (long long bound = 1;; ++bound) {
    for (long long x = -bound; x <= bound; ++x) {
      for (long long y = 0; y <= bound; ++y) {
        if (std::gcd(x, y) != 1 || std::gcd(f.eval(x, y), m) != 1) continue;
        // Complete (x, y) to a matrix of determinant 1.
        long long z = 0, w = 0;
        if (y == 0) {
          z = 0;
          w = x;  // x = +-1
        } else {
          const long long xi = inverse_mod(x, std::abs(y));  // x * xi = 1 mod |y|
          w = xi;
          z = (x * w - 1) / y;
        }
        return transform(f, x, y, z, w);
      }
    }
  }
}

}  // namespace

Discriminant Discriminant::make(long long value) {
  if (value >= 0 || (mod_pos(value, 4) != 0 && mod_pos(value, 4) != 1)) {
    fail(ErrorCode::InvalidDiscriminant, std::to_string(value));
  }
  // Squarefree part with sign, then d_K = d0 or 4 d0.
  long long d0 = -1, rest = -value;
  for (auto [p, e] : factorize(rest)) {
    if (e % 2) d0 *= p;
  }
  const long long dk = mod_pos(d0, 4) == 1 ? d0 : 4 * d0;
  const long long m = isqrt(value / dk);
  return {value, dk, m};
}

std::string QForm::to_string() const {
  return "(" + std::to_string(a) + "," + std::to_string(b) + "," + std::to_string(c) + ")";
}

bool is_reduced(const QForm& f) {
  const long long ab = f.b < 0 ? -f.b : f.b;
  if (!(ab <= f.a && f.a <= f.c)) return false;
  if ((ab == f.a || f.a == f.c) && f.b < 0) return false;
  return true;
}

QForm reduce(const QForm& f) {
  const long long disc = f.discriminant();
  if (disc >= 0) fail(ErrorCode::InvalidDiscriminant, f.to_string() + " has discriminant " + std::to_string(disc));
  if (f.a <= 0) fail(ErrorCode::WrongSign, f.to_string());
  if (std::gcd(std::gcd(f.a, f.b), f.c) != 1) fail(ErrorCode::NotPrimitive, f.to_string());
  QForm g = f;
  while (true) {
    if (!(-g.a < g.b && g.b <= g.a)) {
      const long long k = floor_div(g.a - g.b, 2 * g.a);
      g.b += 2 * k * g.a;
      g.c = (g.b * g.b - disc) / (4 * g.a);
    }
    if (g.a > g.c) {
      g = {g.c, -g.b, g.a};
      continue;
    }
    if (g.a == g.c && g.b < 0) g.b = -g.b;
    return g;
  }
}

std::vector<QForm> enumerate_reduced(const Discriminant& d) {
  std::vector<QForm> out;
  const long long delta = d.value;
  const long long bmax = isqrt(-delta / 3);
  for (long long b = -bmax; b <= bmax; ++b) {
    if (mod_pos(b - delta, 2) != 0) continue;
    const long long ac = (b * b - delta) / 4;
    for (long long a = std::max<long long>(1, b < 0 ? -b : b); a * a <= ac; ++a) {
      if (ac % a) continue;
      const QForm f{a, b, ac / a};
      if (is_reduced(f) && std::gcd(std::gcd(f.a, f.b), f.c) == 1) out.push_back(f);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

QForm compose(const QForm& f, const QForm& g) {
  const long long disc = f.discriminant();
  if (disc != g.discriminant()) {
    fail(ErrorCode::DiscriminantMismatch, f.to_string() + " vs " + g.to_string());
  }
  const QForm f1 = reduce(f);
  const QForm f2 = with_leading_coprime_to(reduce(g), f1.a);
  // B = b1 mod 2a1, B = b2 mod 2a2; B^2 = disc mod 4 a1 a2 follows.
  const long long k = mod_pos((f2.b - f1.b) / 2 % f2.a * inverse_mod(f1.a, f2.a), f2.a);
  const long long big_b = f1.b + 2 * f1.a * k;
  const __int128 num = static_cast<__int128>(big_b) * big_b - disc;
  const __int128 den = static_cast<__int128>(4) * f1.a * f2.a;
  if (num % den != 0) fail(ErrorCode::CompositionInconsistent, "non-integral composite");
  return reduce({f1.a * f2.a, big_b, static_cast<long long>(num / den)});
}

std::optional<std::pair<long long, long long>> find_representation(const QForm& f, long long n) {
  const long long disc = f.discriminant();
  if (n < 0) return std::nullopt;
  if (n == 0) return std::pair{0LL, 0LL};
  // 4a f(x, y) = (2ax + by)^2 - disc y^2 >= |disc| y^2.
  const long long ymax = isqrt(4 * f.a * n / -disc);
  for (long long y = 0; y <= ymax; ++y) {
    // a x^2 + (b y) x + (c y^2 - n) = 0.
    const long long q = disc * y * y + 4 * f.a * n;
    if (q < 0) continue;
    const long long t = isqrt(q);
    if (t * t != q) continue;
    for (long long num : {-f.b * y + t, -f.b * y - t}) {
      if (num % (2 * f.a) == 0) {
        const long long x = num / (2 * f.a);
        if (f.eval(x, y) == n) return std::pair{x, y};
      }
    }
  }
  return std::nullopt;
}

bool is_prime(long long n) {
  if (n < 2) return false;
  for (long long p = 2; p * p <= n; ++p) {
    if (n % p == 0) return false;
  }
  return true;
}

std::vector<std::pair<long long, int>> factorize(long long n) {
  std::vector<std::pair<long long, int>> out;
  for (long long p = 2; p * p <= n; ++p) {
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    if (e) out.emplace_back(p, e);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

int kronecker(long long d, long long p) {
  if (!is_prime(p)) fail(ErrorCode::OutOfRange, std::to_string(p) + " is not prime");
  if (p == 2) {
    if (d % 2 == 0) return 0;
    const long long r = mod_pos(d, 8);
    return (r == 1 || r == 7) ? 1 : -1;
  }
  const long long a = mod_pos(d, p);
  if (a == 0) return 0;
  return pow_mod(a, (p - 1) / 2, p) == 1 ? 1 : -1;
}

namespace {

/// Invariant factors of a finite abelian group given by its composition table,
/// from the counts |{x : p^k x = 0}|.
std::vector<long long> invariant_factors(std::size_t h, const std::function<std::size_t(std::size_t, std::size_t)>& op) {
  auto multiple = [&](std::size_t x, long long k) {
    std::size_t acc = 0;
    for (long long i = 0; i < k; ++i) acc = op(acc, x);
    return acc;
  };
  std::vector<long long> prime_powers;
  for (auto [p, e] : factorize(static_cast<long long>(h))) {
    std::vector<int> at_least;  // number of cyclic p-factors of order >= p^k
    long long prev = 1, pk = 1;
    for (int k = 1;; ++k) {
      pk *= p;
      long long cnt = 0;
      for (std::size_t x = 0; x < h; ++x) cnt += multiple(x, pk) == 0 ? 1 : 0;
      int r = 0;
      for (long long q = cnt / prev; q > 1; q /= p) ++r;
      if (r == 0) break;
      at_least.push_back(r);
      prev = cnt;
    }
    long long order = 1;
    for (std::size_t k = 0; k < at_least.size(); ++k) {
      order *= p;
      const int next = k + 1 < at_least.size() ? at_least[k + 1] : 0;
      for (int i = 0; i < at_least[k] - next; ++i) prime_powers.push_back(order);
    }
    (void)e;
  }
  return prime_powers;
}

}  // namespace

FormClassGroup FormClassGroup::build(const Discriminant& d, GroupLimits limits) {
  auto classes = enumerate_reduced(d);
  const std::size_t h = classes.size();
  if (h == 0 || !(classes[0].a == 1)) fail(ErrorCode::CompositionInconsistent, "no principal form");

  auto find = [&](const QForm& f) {
    const auto it = std::lower_bound(classes.begin(), classes.end(), f);
    if (it == classes.end() || !(*it == f)) fail(ErrorCode::CompositionInconsistent, f.to_string() + " not reduced");
    return static_cast<std::size_t>(it - classes.begin());
  };
  std::vector<std::size_t> table(h * h), neg(h);
  for (std::size_t i = 0; i < h; ++i) {
    neg[i] = find(reduce({classes[i].a, -classes[i].b, classes[i].c}));
    for (std::size_t j = i; j < h; ++j) table[i * h + j] = table[j * h + i] = find(wzs::compose(classes[i], classes[j]));
  }
  auto op = [&](std::size_t i, std::size_t j) { return table[i * h + j]; };

  for (std::size_t i = 0; i < h; ++i) {
    if (op(0, i) != i || op(i, neg[i]) != 0) fail(ErrorCode::CompositionInconsistent, "identity or inverse");
    std::vector<bool> row(h, false);
    for (std::size_t j = 0; j < h; ++j) {
      if (op(i, j) != op(j, i)) fail(ErrorCode::CompositionInconsistent, "not commutative");
      row[op(i, j)] = true;
      for (std::size_t k = 0; k < h; ++k) {
        if (op(op(i, j), k) != op(i, op(j, k))) fail(ErrorCode::CompositionInconsistent, "not associative");
      }
    }
    if (std::find(row.begin(), row.end(), false) != row.end()) fail(ErrorCode::CompositionInconsistent, "not a Latin square");
  }

  const auto factors = invariant_factors(h, op);
  auto abstract = FiniteAbelianGroup::make(std::span<const long long>(factors), limits);
  FormClassGroup cg(d, abstract);

  // Generators of the invariant-factor orders spanning the whole group.
  const auto& inv = abstract.invariant_factors();
  std::vector<int> order(h, 0);
  for (std::size_t x = 0; x < h; ++x) {
    std::size_t acc = x;
    order[x] = 1;
    while (acc != 0) {
      acc = op(acc, x);
      ++order[x];
    }
  }
  std::vector<std::size_t> gens;
  std::function<bool(const std::vector<std::size_t>&)> pick = [&](const std::vector<std::size_t>& span) -> bool {
    if (gens.size() == inv.size()) return span.size() == h;
    const int n = inv[gens.size()];
    for (std::size_t cand = 0; cand < h; ++cand) {
      if (order[cand] != n) continue;
      std::vector<std::size_t> next;
      std::vector<bool> in(h, false);
      for (std::size_t s : span) {
        std::size_t acc = s;
        for (int k = 0; k < n; ++k) {
          if (!in[acc]) {
            in[acc] = true;
            next.push_back(acc);
          }
          acc = op(acc, cand);
        }
      }
      if (next.size() != span.size() * static_cast<std::size_t>(n)) continue;
      gens.push_back(cand);
      if (pick(next)) return true;
      gens.pop_back();
    }
    return false;
  };
  if (!pick({0})) fail(ErrorCode::CompositionInconsistent, "no basis found");

  cg.to_group_.assign(h, 0);
  cg.from_group_.assign(h, 0);
  for (ElemId e = 0; e < abstract.order(); ++e) {
    const auto c = abstract.coords(e);
    std::size_t cls = 0;
    for (std::size_t i = 0; i < gens.size(); ++i) {
      for (int k = 0; k < c[i]; ++k) cls = op(cls, gens[i]);
    }
    cg.to_group_[cls] = e;
    cg.from_group_[e] = cls;
  }
  cg.classes_ = std::move(classes);
  cg.table_ = std::move(table);
  cg.neg_ = std::move(neg);
  cg.monoid_ = std::make_shared<MonoidHandle>(WeightSet::plus_minus(abstract));
  cg.prime_cache_ = std::make_shared<PrimeCache>();
  return cg;
}

std::size_t FormClassGroup::index_of(const QForm& f) const {
  if (f.discriminant() != disc_.value) fail(ErrorCode::DiscriminantMismatch, f.to_string());
  const QForm r = reduce(f);
  const auto it = std::lower_bound(classes_.begin(), classes_.end(), r);
  return static_cast<std::size_t>(it - classes_.begin());
}

PrimeData prime_data(const FormClassGroup& cg, long long p) {
  return cg.cached_prime(p, [&] {
    const auto& d = cg.discriminant();
    if (!is_prime(p)) fail(ErrorCode::OutOfRange, std::to_string(p) + " is not prime");
    if (d.conductor % p == 0) fail(ErrorCode::PrimeDividesConductor, std::to_string(p));
    PrimeData out;
    out.p = p;
    out.kronecker = kronecker(d.value, p);
    out.inertia = out.kronecker == -1 ? 2 : 1;
    if (out.inertia == 1) {
      std::vector<std::size_t> hits;
      for (std::size_t i = 0; i < cg.class_number(); ++i) {
        if (find_representation(cg.classes()[i], p)) hits.push_back(i);
      }
      if (hits.empty() || hits.size() > 2 || (hits.size() == 2 && cg.negate(hits[0]) != hits[1])) {
        fail(ErrorCode::CompositionInconsistent, "classes representing " + std::to_string(p));
      }
      out.pair = std::pair{hits.front(), hits.back()};
    }
    return out;
  });
}

PrimeData FormClassGroup::cached_prime(long long p, const std::function<PrimeData()>& compute) const {
  {
    std::lock_guard<std::mutex> lock(prime_cache_->mu);
    if (auto it = prime_cache_->entries.find(p); it != prime_cache_->entries.end()) return it->second;
  }
  PrimeData data = compute();
  std::lock_guard<std::mutex> lock(prime_cache_->mu);
  prime_cache_->entries.emplace(p, data);
  return data;
}

bool is_admissible(const FormClassGroup& cg, long long n) {
  if (n < 1 || std::gcd(n, cg.discriminant().conductor) != 1) return false;
  for (auto [p, e] : factorize(n)) {
    if (prime_data(cg, p).inertia != 1) return false;
  }
  return true;
}

Sequence theta_prime(const FormClassGroup& cg, long long n, const std::vector<long long>& flipped) {
  if (!is_admissible(cg, n)) fail(ErrorCode::NotInNPrime, std::to_string(n));
  Sequence s(cg.group());
  for (auto [p, e] : factorize(n)) {
    const auto pair = *prime_data(cg, p).pair;
    const bool flip = std::find(flipped.begin(), flipped.end(), p) != flipped.end();
    s.add(cg.to_group(flip ? pair.second : pair.first), static_cast<std::uint32_t>(e));
  }
  return s;
}

bool in_Rcirc_via_transfer(const FormClassGroup& cg, long long n) {
  return is_wzs(theta_prime(cg, n), cg.monoid().weights());
}

bool represents_principal_bruteforce(const Discriminant& d, long long n) {
  const long long s = mod_pos(d.value, 4);
  const QForm principal{1, s, (s - d.value) / 4};
  return find_representation(principal, n).has_value();
}

LengthSet lengths_in_Rcirc(const FormClassGroup& cg, long long n) {
  if (!is_admissible(cg, n)) fail(ErrorCode::NotInNPrime, std::to_string(n));
  const auto& d = cg.discriminant();
  if (!represents_principal_bruteforce(d, n)) fail(ErrorCode::NotInRcirc, std::to_string(n));

  std::vector<long long> divs;
  for (long long k = 1; k * k <= n; ++k) {
    if (n % k) continue;
    divs.push_back(k);
    if (k != n / k) divs.push_back(n / k);
  }
  std::sort(divs.begin(), divs.end());
  std::map<long long, bool> member;
  for (long long k : divs) member[k] = represents_principal_bruteforce(d, k);

  std::map<long long, bool> atom;
  for (long long a : divs) {
    bool is_atom = a > 1 && member[a];
    for (long long e : divs) {
      if (!is_atom || e >= a) break;
      if (e > 1 && a % e == 0 && member[e] && member[a / e]) is_atom = false;
    }
    atom[a] = is_atom;
  }

  std::map<long long, std::set<int>> lengths;
  for (long long k : divs) {
    if (!member[k]) continue;
    if (k == 1) {
      lengths[k] = {0};
      continue;
    }
    std::set<int>& out = lengths[k];
    for (long long a : divs) {
      if (a > k) break;
      if (k % a || !atom[a] || !member[k / a]) continue;
      for (int l : lengths[k / a]) out.insert(l + 1);
    }
  }
  const auto& ln = lengths[n];
  return {ln.begin(), ln.end()};
}

std::string prime_signature(long long n) {
  if (n == 1) return "1";
  std::string out;
  for (auto [p, e] : factorize(n)) {
    if (!out.empty()) out += '*';
    out += std::to_string(p);
    if (e > 1) out += '^' + std::to_string(e);
  }
  return out;
}

std::vector<SweepRow> sweep(const FormClassGroup& cg, long long max_n, long long lengths_max_n) {
  std::vector<std::optional<SweepRow>> slots(static_cast<std::size_t>(std::max(0LL, max_n)));
  cg.monoid().atoms();  // build once before the workers share the handle
  parallel_for(slots.size(), [&](std::size_t i) {
    const long long n = static_cast<long long>(i) + 1;
    if (!is_admissible(cg, n)) return;
    SweepRow row;
    row.n = n;
    row.prime_signature = prime_signature(n);
    row.transfer = in_Rcirc_via_transfer(cg, n);
    row.bruteforce = represents_principal_bruteforce(cg.discriminant(), n);
    if (row.bruteforce && n <= lengths_max_n) {
      row.lengths_monoid = lengths_in_Rcirc(cg, n);
      if (row.transfer) row.lengths_sequences = set_of_lengths(cg.monoid(), theta_prime(cg, n));
    }
    slots[i] = std::move(row);
  });
  std::vector<SweepRow> out;
  for (auto& s : slots) {
    if (s) out.push_back(std::move(*s));
  }
  return out;
}

}  // namespace wzs
