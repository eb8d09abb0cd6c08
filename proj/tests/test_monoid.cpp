#include <algorithm>
#include <set>

#include "doctest.h"
#include "oracles.hpp"
#include "wzs/monoid.hpp"

using namespace wzs;

namespace {

FiniteAbelianGroup grp(std::initializer_list<long long> f) { return FiniteAbelianGroup::make(f); }
Sequence seq(const MonoidHandle& h, const char* lit) { return Sequence::parse(h.group(), lit); }
MonoidHandle pm(std::initializer_list<long long> f) { return MonoidHandle(WeightSet::plus_minus(grp(f))); }
MonoidHandle id(std::initializer_list<long long> f) { return MonoidHandle(WeightSet::identity(grp(f))); }

std::vector<std::string> strings(const std::vector<Sequence>& v) {
  std::vector<std::string> out;
  for (const auto& s : v) out.push_back(s.to_string());
  return out;
}

const std::vector<std::vector<long long>> kSmallGroups = {{2}, {3}, {4}, {5}, {6}, {7}, {8}, {9},
                                                         {2, 2}, {2, 4}, {2, 2, 2}, {3, 3}};

}  // namespace

TEST_CASE("atom lists for small cases") {
  CHECK(strings(atoms(pm({2}))) == std::vector<std::string>{"[(0)]", "[(1)^2]"});
  CHECK(strings(atoms(id({3}))) == std::vector<std::string>{"[(0)]", "[(1),(2)]", "[(1)^3]", "[(2)^3]"});
  // g^2(2g) and g(2g)^2 are members (g + g - 2g = 0) with no member split.
  CHECK(strings(atoms(pm({3}))) == std::vector<std::string>{"[(0)]", "[(1)^2]", "[(1),(2)]", "[(2)^2]", "[(1)^3]",
                                                            "[(1)^2,(2)]", "[(1),(2)^2]", "[(2)^3]"});
  CHECK(davenport_large(pm({3})) == 3);
}

TEST_CASE("atoms agree with the split-enumeration oracle") {
  for (const auto& f : kSmallGroups) {
    auto g = FiniteAbelianGroup::make(std::span<const long long>(f));
    for (const char* ws : {"id", "pm"}) {
      auto w = WeightSet::parse(ws, g);
      CAPTURE(g.spec());
      CAPTURE(ws);
      // 0 is prime; the oracle handles the zero-free part.
      std::vector<ElemId> nonzero;
      for (ElemId x : g.elements()) {
        if (x != g.zero()) nonzero.push_back(x);
      }
      auto expected = oracle::atoms_by_splits(g, w, nonzero, g.order());
      expected.push_back(Sequence::from_elements(g, {g.zero()}));
      std::sort(expected.begin(), expected.end());
      MonoidHandle h(w);
      CHECK(strings(atoms(h)) == strings(expected));
    }
  }
}

TEST_CASE("atoms over a proper support") {
  auto g = grp({5});
  auto w = WeightSet::plus_minus(g);
  std::vector<ElemId> supp{1, 2};
  MonoidHandle h(w, supp);
  CHECK(strings(atoms(h)) == strings(oracle::atoms_by_splits(g, w, supp, g.order())));
  CHECK_FALSE(h.contains(Sequence::parse(g, "[(3)^2]")));
  CHECK(h.contains(Sequence::parse(g, "[(1)^2]")));
  // 0 in the support contributes the prime atom 0.
  MonoidHandle h0(w, {0, 2});
  CHECK(atoms(h0).front().to_string() == "[(0)]");
}

TEST_CASE("Davenport constants") {
  CHECK(davenport_large(pm({3})) == 3);
  CHECK(davenport_small(pm({3})) == 1);
  CHECK(davenport_large(id({5})) == 5);
  CHECK(davenport_large(pm({2, 4})) >= 4);
  for (int n : {3, 5, 7}) CHECK(davenport_large(pm({n})) == n);
}

TEST_CASE("Davenport inequality chain and equality cases") {
  for (const auto& f : kSmallGroups) {
    auto g = FiniteAbelianGroup::make(std::span<const long long>(f));
    CAPTURE(g.spec());
    const int d_classical = davenport_large(MonoidHandle(WeightSet::identity(g)));
    if (g.rank() <= 2) CHECK(d_classical == g.davenport_star());
    CHECK(d_classical <= static_cast<int>(g.order()));
    for (const char* ws : {"id", "pm", "aut"}) {
      MonoidHandle h(WeightSet::parse(ws, g));
      CAPTURE(ws);
      CHECK(1 + davenport_small(h) <= davenport_large(h));
      CHECK(davenport_large(h) <= d_classical);
    }
  }
}

TEST_CASE("classical atoms are weighted atoms for odd order") {
  for (auto f : {std::vector<long long>{3}, {5}, {7}, {3, 3}}) {
    auto g = FiniteAbelianGroup::make(std::span<const long long>(f));
    MonoidHandle plain(WeightSet::identity(g));
    MonoidHandle signed_(WeightSet::plus_minus(g));
    for (const auto& a : atoms(plain)) CHECK(signed_.atom_index(a).has_value());
  }
}

TEST_CASE("factorizations") {
  auto h = pm({3});
  auto b = seq(h, "[(1)^3,(2)^3]");
  auto z = factorizations(h, b);
  CHECK(z.size() == 4);
  std::multiset<int> lens;
  for (const auto& f : z) lens.insert(static_cast<int>(f.length()));
  CHECK(lens == std::multiset<int>{2, 2, 3, 3});

  auto zz = factorizations(h, seq(h, "[(0)^2]"));
  REQUIRE(zz.size() == 1);
  CHECK(zz[0].length() == 2);

  auto e = factorizations(h, Sequence(h.group()));
  REQUIRE(e.size() == 1);
  CHECK(e[0].length() == 0);

  try {
    factorizations(h, seq(h, "[(1)]"));
    FAIL("expected NotInMonoid");
  } catch (const Error& err) {
    CHECK(err.code() == ErrorCode::NotInMonoid);
  }
}

TEST_CASE("factorizations agree with unpruned product search") {
  for (auto f : {std::vector<long long>{3}, {5}, {2, 4}, {6}}) {
    auto g = FiniteAbelianGroup::make(std::span<const long long>(f));
    MonoidHandle h(WeightSet::plus_minus(g));
    const auto& list = atoms(h);
    const auto seqs = oracle::all_sequences(g, g.elements(), 0, 7);
    for (std::size_t i = 0; i < seqs.size(); i += 5) {
      const auto& b = seqs[i];
      if (!h.contains(b)) continue;
      CAPTURE(b.to_string());
      auto z = factorizations(h, b);
      std::set<std::vector<std::uint32_t>> got;
      for (const auto& f : z) {
        CHECK(f.product() == b);
        got.insert(f.atom_indices());
      }
      CHECK(got.size() == z.size());
      auto expected = oracle::factor_by_products(list, b);
      CHECK(got == std::set<std::vector<std::uint32_t>>(expected.begin(), expected.end()));
    }
  }
}

TEST_CASE("sets of lengths") {
  auto c3 = pm({3});
  CHECK(set_of_lengths(c3, seq(c3, "[(1)^3,(2)^3]")) == LengthSet{2, 3});
  auto c5 = pm({5});
  CHECK(set_of_lengths(c5, seq(c5, "[(1)^5,(4)^5]")) == LengthSet{2, 5});
  CHECK(set_of_lengths(c5, seq(c5, "[(1)^8,(2)]")) == LengthSet{2, 4});
  CHECK(set_of_lengths(c5, Sequence(c5.group())) == LengthSet{0});
}

TEST_CASE("distance") {
  auto h = pm({3});
  auto z = factorizations(h, seq(h, "[(1)^3,(2)^3]"));
  for (const auto& x : z) CHECK(distance(x, x) == 0);
  const auto g3 = *h.atom_index(seq(h, "[(1)^3]"));
  const auto h3 = *h.atom_index(seq(h, "[(2)^3]"));
  const auto gh = *h.atom_index(seq(h, "[(1),(2)]"));
  Factorization a(h, {static_cast<std::uint32_t>(g3), static_cast<std::uint32_t>(h3)});
  Factorization b(h, {static_cast<std::uint32_t>(gh), static_cast<std::uint32_t>(gh), static_cast<std::uint32_t>(gh)});
  CHECK(distance(a, b) == 3);
  Factorization p(h, {1, 2, 3});
  Factorization q(h, {1, 4});
  CHECK(distance(p, q) == 2);

  auto other = pm({3});
  try {
    distance(a, Factorization(other, {0}));
    FAIL("expected HandleMismatch");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::HandleMismatch);
  }
}

TEST_CASE("distance is a metric on Z(b)") {
  auto h = pm({5});
  for (const char* lit : {"[(1)^5,(4)^5]", "[(1)^4,(2)^2,(3)^2]", "[(1)^3,(2)^3,(4)^2]"}) {
    auto z = factorizations(h, seq(h, lit));
    for (const auto& x : z) {
      for (const auto& y : z) {
        CHECK(distance(x, y) == distance(y, x));
        CHECK((distance(x, y) == 0) == (x == y));
        for (const auto& w : z) CHECK(distance(x, w) <= distance(x, y) + distance(y, w));
      }
    }
  }
}

TEST_CASE("catenary degree of elements") {
  auto c3 = pm({3});
  CHECK(catenary_of_element(c3, seq(c3, "[(1)^3,(2)^3]")) == 3);
  CHECK(catenary_of_element(c3, seq(c3, "[(1)^2]")) == 0);
  auto c5 = pm({5});
  CHECK(catenary_of_element(c5, seq(c5, "[(1)^5,(4)^5]")) == 5);
}

TEST_CASE("catenary degree with certificates") {
  CHECK(catenary_degree(pm({3}), 9) == BoundedValue{3, true});
  CHECK(catenary_degree(pm({2}), 8) == BoundedValue{0, true});
  CHECK(catenary_degree(pm({5}), 12) == BoundedValue{5, true});
  // No certificate outside prime cyclic groups.
  CHECK_FALSE(catenary_degree(pm({4}), 6).exact);
}

TEST_CASE("prime cyclic certificate") {
  CHECK(prime_cyclic_certificate(pm({3})));
  CHECK(prime_cyclic_certificate(pm({5})));
  CHECK(prime_cyclic_certificate(pm({7})));
  CHECK_FALSE(prime_cyclic_certificate(pm({9})));
  CHECK_FALSE(prime_cyclic_certificate(id({5})));
  CHECK_FALSE(prime_cyclic_certificate(pm({3, 3})));
}

TEST_CASE("omega") {
  auto c3 = pm({3});
  CHECK(omega_of_atom(c3, seq(c3, "[(0)]"), 4) == BoundedValue{1, true});
  CHECK(omega_of_atom(c3, seq(c3, "[(1)^3]"), 4) == BoundedValue{3, true});
  CHECK(omega(c3, 3) == BoundedValue{3, true});
  // The witness (g(2g))^3: divisible by g^3, no two of its atoms suffice.
  auto u = seq(c3, "[(1)^3]");
  auto w = c3.weights();
  CHECK(divides_in_monoid(u, seq(c3, "[(1)^3,(2)^3]"), w));
  CHECK_FALSE(u.divides(seq(c3, "[(1)^2,(2)^2]")));

  CHECK(omega(pm({5}), 5) == BoundedValue{5, true});
  CHECK_FALSE(omega_of_atom(c3, seq(c3, "[(1)^3]"), 2).exact);
  CHECK(omega(pm({2}), 3) == BoundedValue{1, true});
  try {
    omega_of_atom(c3, seq(c3, "[(1)^4]"), 3);
    FAIL("expected NotAnAtom");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotAnAtom);
  }
}

TEST_CASE("invariant chain 2 + max delta <= c <= omega") {
  for (int p : {3, 5}) {
    auto h = pm({p});
    auto dset = delta_set(h, 12);
    auto c = catenary_degree(h, 12);
    auto w = omega(h, p);
    REQUIRE(c.exact);
    REQUIRE(w.exact);
    CHECK(2 + dset.back() <= c.value);
    CHECK(c.value <= w.value);
  }
}

TEST_CASE("length table ranks and masks") {
  auto h = pm({3});
  auto t = LengthTable::build(h, 6);
  std::size_t r = 0;
  t.for_each([&](const std::vector<std::uint32_t>& v, std::uint64_t mask) {
    CHECK(t.rank(v) == r++);
    Sequence s(h.group());
    for (std::size_t i = 0; i < v.size(); ++i) s.add(h.support()[i], v[i]);
    if (h.contains(s)) {
      CHECK(mask_to_lengths(mask) == set_of_lengths(h, s));
    } else {
      CHECK(mask == 0);
    }
  });
  CHECK(r == t.size());
  CHECK(t.size() == 84);  // C(3 + 6, 3)
  CHECK_THROWS_AS(LengthTable::build(h, 64), Error);
}

TEST_CASE("sets of distances") {
  CHECK(delta_set(pm({3}), 9) == std::vector<int>{1});
  CHECK(delta_set(pm({5}), 12) == std::vector<int>{1, 2, 3});
  CHECK(delta_set(pm({2}), 10).empty());
  auto h = pm({5});
  auto small = delta_set(h, 6);
  auto large = delta_set(h, 10);
  for (int x : small) CHECK(std::binary_search(large.begin(), large.end(), x));
}

TEST_CASE("unions of sets of lengths") {
  auto c3 = pm({3});
  auto u2 = unions_Uk(c3, 2, 6);
  CHECK(u2.values == std::vector<int>{2, 3});
  CHECK(u2.exact);
  CHECK(rho_k(c3, 3, 9) == BoundedValue{4, true});
  CHECK(rho_k(pm({5}), 2, 10) == BoundedValue{5, true});
  CHECK_FALSE(unions_Uk(c3, 3, 8).exact);
  CHECK(lambda_k(c3, 4, 12) == BoundedValue{3, true});
}

TEST_CASE("union formula") {
  CHECK(predicted_union_interval(grp({3}), 2) == Interval{2, 3});
  CHECK(predicted_union_interval(grp({3}), 3) == Interval{2, 4});
  CHECK(predicted_union_interval(grp({3}), 4) == Interval{3, 6});
  CHECK(predicted_union_interval(grp({3}), 5) == Interval{4, 7});
  CHECK(predicted_union_interval(grp({3}), 6) == Interval{4, 9});
  CHECK(predicted_union_interval(grp({5}), 6) == Interval{3, 15});
  CHECK_THROWS_AS(predicted_union_interval(grp({4}), 3), Error);
  CHECK_THROWS_AS(predicted_union_interval(grp({3}), 1), Error);
}

TEST_CASE("computed unions match the formula") {
  for (int n : {3, 5}) {
    auto h = pm({n});
    auto table = LengthTable::build(h, 6 * n);
    for (int k = 2; k <= 6; ++k) {
      CAPTURE(n);
      CAPTURE(k);
      auto u = unions_Uk(table, k, n);
      REQUIRE(u.exact);
      auto p = predicted_union_interval(h.group(), k);
      std::vector<int> interval;
      for (int x = p.lo; x <= p.hi; ++x) interval.push_back(x);
      CHECK(u.values == interval);
    }
  }
}

TEST_CASE("two-element length witnesses") {
  auto [b, l] = two_length_witness(5, 3);
  CHECK(b.to_string() == "[(1)^7,(3)]");
  CHECK(l == LengthSet{2, 3});
  CHECK(two_length_witness(5, 5).second == LengthSet{2, 5});
  CHECK(two_length_witness(7, 4).first.to_string() == "[(1)^10,(4)]");
  for (int j = 3; j <= 7; ++j) CHECK(two_length_witness(7, j).second == LengthSet{2, j});
  CHECK_THROWS_AS(two_length_witness(4, 3), Error);
  CHECK_THROWS_AS(two_length_witness(5, 2), Error);
  CHECK_THROWS_AS(two_length_witness(5, 6), Error);
}
