#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "wzs/groups.hpp"
#include "wzs/monoid.hpp"
#include "wzs/sequences.hpp"

namespace wzs {

/// Negative quadratic discriminant value = fundamental * conductor^2.
struct Discriminant {
  long long value = -4;
  long long fundamental = -4;
  long long conductor = 1;

  /// InvalidDiscriminant unless value < 0 and value = 0 or 1 mod 4.
  static Discriminant make(long long value);
  friend bool operator==(const Discriminant&, const Discriminant&) = default;
};

/// a X^2 + b XY + c Y^2.
struct QForm {
  long long a = 1;
  long long b = 0;
  long long c = 1;

  long long discriminant() const { return b * b - 4 * a * c; }
  long long eval(long long x, long long y) const { return a * x * x + b * x * y + c * y * y; }
  std::string to_string() const;

  friend bool operator==(const QForm&, const QForm&) = default;
  friend auto operator<=>(const QForm&, const QForm&) = default;
};

/// Unique reduced form properly equivalent to f: |b| <= a <= c, and b >= 0
/// when |b| = a or a = c. NotPrimitive, WrongSign (a <= 0), or
/// InvalidDiscriminant (not negative).
QForm reduce(const QForm& f);
bool is_reduced(const QForm& f);

/// Reduced primitive forms of discriminant d, sorted by (a, b, c).
std::vector<QForm> enumerate_reduced(const Discriminant& d);

/// Dirichlet composition of the classes of f and g, reduced.
/// DiscriminantMismatch if the discriminants differ.
QForm compose(const QForm& f, const QForm& g);

/// Some (x, y) with f(x, y) = n, by the positive-definite search bound
/// |y| <= sqrt(4 a n / |disc|) and the exact quadratic in x per y.
std::optional<std::pair<long long, long long>> find_representation(const QForm& f, long long n);

struct PrimeData {
  long long p = 2;
  int kronecker = 0;
  int inertia = 1;
  /// Class indices of F_p and -F_p (equal when p ramifies); empty when inertia 2.
  std::optional<std::pair<std::size_t, std::size_t>> pair;
};

class FormClassGroup {
 public:
  /// CompositionInconsistent if the computed table fails the group axioms.
  static FormClassGroup build(const Discriminant& d, GroupLimits limits = {});

  const Discriminant& discriminant() const { return disc_; }
  /// Reduced representatives, sorted by (a, b, c); index 0 is principal.
  const std::vector<QForm>& classes() const { return classes_; }
  std::size_t class_number() const { return classes_.size(); }
  std::size_t principal() const { return 0; }
  std::size_t compose(std::size_t i, std::size_t j) const { return table_[i * classes_.size() + j]; }
  /// Index of [a, -b, c].
  std::size_t negate(std::size_t i) const { return neg_[i]; }
  std::size_t index_of(const QForm& f) const;

  /// Abstract group isomorphic to the class group, with explicit maps.
  const FiniteAbelianGroup& group() const { return group_; }
  ElemId to_group(std::size_t cls) const { return to_group_[cls]; }
  std::size_t from_group(ElemId g) const { return from_group_[g]; }
  /// B_pm over the abstract group (shared, lazily computed atoms).
  const MonoidHandle& monoid() const { return *monoid_; }

  /// Per-prime memo shared by copies; compute runs outside the lock.
  PrimeData cached_prime(long long p, const std::function<PrimeData()>& compute) const;

 private:
  struct PrimeCache {
    std::mutex mu;
    std::map<long long, PrimeData> entries;
  };

  FormClassGroup(Discriminant d, FiniteAbelianGroup g) : disc_(d), group_(std::move(g)) {}

  Discriminant disc_;
  std::vector<QForm> classes_;
  std::vector<std::size_t> table_;
  std::vector<std::size_t> neg_;
  FiniteAbelianGroup group_;
  std::vector<ElemId> to_group_;
  std::vector<std::size_t> from_group_;
  std::shared_ptr<MonoidHandle> monoid_;
  std::shared_ptr<PrimeCache> prime_cache_;
};

/// Kronecker symbol (d / p) for a prime p (OutOfRange otherwise).
int kronecker(long long d, long long p);

/// PrimeDividesConductor if p | conductor.
PrimeData prime_data(const FormClassGroup& cg, long long p);

/// Prime factorization in increasing order of primes.
std::vector<std::pair<long long, int>> factorize(long long n);
bool is_prime(long long n);

/// n >= 1 coprime to the conductor with every prime factor of inertia 1.
bool is_admissible(const FormClassGroup& cg, long long n);

/// prod F_p^{v_p(n)} over the abstract group, taking the smaller class index
/// of each pair unless p is listed in `flipped`. NotInNPrime if n is not admissible.
Sequence theta_prime(const FormClassGroup& cg, long long n, const std::vector<long long>& flipped = {});
bool in_Rcirc_via_transfer(const FormClassGroup& cg, long long n);
/// Direct search for f_O(x, y) = n with the principal form.
bool represents_principal_bruteforce(const Discriminant& d, long long n);

/// L(n) in the multiplicative monoid of admissible integers represented by
/// the principal form; membership of divisors by direct representation
/// search. NotInNPrime / NotInRcirc on bad input.
LengthSet lengths_in_Rcirc(const FormClassGroup& cg, long long n);

struct SweepRow {
  long long n = 1;
  std::string prime_signature;
  bool transfer = false;
  bool bruteforce = false;
  /// Empty unless n is represented.
  std::optional<LengthSet> lengths_monoid;
  std::optional<LengthSet> lengths_sequences;
};

/// Every admissible n <= max_n in increasing order. Lengths are filled for
/// represented n <= lengths_max_n.
std::vector<SweepRow> sweep(const FormClassGroup& cg, long long max_n, long long lengths_max_n);
std::string prime_signature(long long n);

}  // namespace wzs
