#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "oracles.hpp"
#include "wzs/groups.hpp"
#include "wzs/monoid.hpp"
#include "wzs/qforms.hpp"
#include "wzs/sequences.hpp"
#include "wzs/structure.hpp"

namespace wzs::cli {

namespace {

// Limits wide enough for every group in the suite (|Aut(C2^4)| = 20160).
const GroupLimits kWide{256, 25000};

FiniteAbelianGroup grp(std::vector<long long> f) { return FiniteAbelianGroup::make(std::span<const long long>(f), kWide); }

WeightSet weights(const std::string& spec, const FiniteAbelianGroup& g) { return WeightSet::parse(spec, g, kWide); }

/// Collects failed checks; a criterion passes iff none failed.
struct Check {
  std::vector<std::string> failures;
  std::size_t count = 0;
  std::string note;

  void expect(bool ok, const std::string& what) {
    ++count;
    if (!ok && failures.size() < 5) failures.push_back(what);
    if (!ok && failures.size() == 5) failures.push_back("...");
  }
  bool passed() const { return failures.empty(); }
};

std::string ints(const std::vector<int>& v) {
  std::string out = "{";
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + std::to_string(v[i]);
  return out + "}";
}

std::vector<int> range(int lo, int hi) {
  std::vector<int> v;
  for (int x = lo; x <= hi; ++x) v.push_back(x);
  return v;
}

bool oracle_member(const Sequence& s, const WeightSet& w) { return oracle::weighted_sums_dp(s, w).count(0) == 1; }

/// Longest zero-sum free sequence by exhaustive search on growing lengths.
int oracle_small_davenport(const FiniteAbelianGroup& g, const WeightSet& w) {
  int best = 0;
  for (std::size_t len = 1;; ++len) {
    bool found = false;
    for (const auto& s : oracle::all_sequences(g, g.elements(), len, len)) {
      if (oracle::all_subsums(s, w).count(0) == 0) {
        found = true;
        break;
      }
    }
    if (!found) return best;
    best = static_cast<int>(len);
  }
}

// --- criteria ---------------------------------------------------------------

void davenport_constants(Check& c) {
  const std::map<int, int> small{{3, 1}, {5, 2}, {7, 2}};
  for (const auto& [n, d] : small) {
    const auto g = grp({n});
    const MonoidHandle pm(weights("pm", g));
    std::size_t longest = 0;
    for (const auto& a : atoms(pm)) longest = std::max(longest, a.length());
    c.expect(static_cast<int>(longest) == n, "max atom length of B_pm(C" + std::to_string(n) + ")");
    c.expect(davenport_large(pm) == n, "D_pm(C" + std::to_string(n) + ")");
    const auto by_splits = oracle::atoms_by_splits(g, pm.weights(), g.elements(), n + 1);
    c.expect(by_splits == atoms(pm), "atoms of B_pm(C" + std::to_string(n) + ") vs split oracle");
    c.expect(davenport_small(pm) == d, "d_pm(C" + std::to_string(n) + ") = " + std::to_string(d));
    c.expect(oracle_small_davenport(g, pm.weights()) == d, "d_pm(C" + std::to_string(n) + ") oracle");
    c.expect(davenport_large(MonoidHandle(weights("id", g))) == n, "D(C" + std::to_string(n) + ")");
  }
  const std::vector<std::vector<long long>> groups{{2}, {3}, {4}, {5}, {6}, {7}, {8}, {9}, {2, 2}, {2, 4}, {2, 2, 2}, {3, 3}};
  for (const auto& f : groups) {
    const auto g = grp(f);
    const int plain = davenport_large(MonoidHandle(weights("id", g)));
    c.expect(plain == g.davenport_star(), "D(" + g.spec() + ") = D*");
    c.expect(plain <= static_cast<int>(g.order()), "D(" + g.spec() + ") <= |G|");
    for (const char* ws : {"id", "pm", "aut"}) {
      const MonoidHandle h(weights(ws, g));
      const int D = davenport_large(h);
      const int d = davenport_small(h);
      c.expect(1 + d <= D && D <= plain, std::string("chain on ") + g.spec() + " " + ws);
    }
  }
  c.note = "n=3,5,7: D_pm=n, d_pm=1,2,2; chain on 12 groups x {id,pm,aut}";
}

void union_formula(Check& c) {
  const std::vector<std::pair<int, int>> cases{{3, 6}, {5, 6}, {7, 3}};
  for (const auto& [n, kmax] : cases) {
    const MonoidHandle h(weights("pm", grp({n})));
    const int D = davenport_large(h);
    const auto table = LengthTable::build(h, kmax * D);
    for (int k = 2; k <= kmax; ++k) {
      const auto u = unions_Uk(table, k, D);
      const auto p = predicted_union_interval(h.group(), k);
      const std::string tag = "C" + std::to_string(n) + " k=" + std::to_string(k);
      c.expect(table.bound() >= k * D && u.exact, tag + " exactness bound");
      c.expect(u.values == range(p.lo, p.hi), tag + " U_k " + ints(u.values));
    }
  }
  c.note = "C3 k<=6, C5 k<=6, C7 k<=3 with bound k*D";
}

void two_length_witnesses(Check& c) {
  for (int n : {5, 7}) {
    const auto g = grp({n});
    const MonoidHandle h(weights("pm", g));
    for (int j = 3; j <= n; ++j) {
      const auto [b, l] = two_length_witness(n, j);
      const std::string tag = "n=" + std::to_string(n) + " j=" + std::to_string(j);
      c.expect(l == LengthSet{2, j}, tag + " reported lengths");
      c.expect(set_of_lengths(h, b) == LengthSet{2, j}, tag + " recomputed lengths");
      std::set<int> brute;
      for (const auto& z : oracle::factor_by_products(h.atoms(), b)) brute.insert(static_cast<int>(z.size()));
      c.expect(brute == std::set<int>{2, j}, tag + " product oracle");
    }
  }
  c.note = "n in {5,7}, j in [3,n]";
}

void prime_cyclic(Check& c) {
  for (int p : {3, 5}) {
    const auto g = grp({p});
    const MonoidHandle h(weights("pm", g));
    const std::string tag = "p=" + std::to_string(p);
    c.expect(prime_cyclic_certificate(h), tag + " certificate");
    std::vector<ElemId> nonzero;
    for (ElemId x = 1; x < g.order(); ++x) nonzero.push_back(x);
    for (const auto& s : oracle::all_sequences(g, nonzero, p - 1, p + 1)) {
      c.expect(oracle_member(s, h.weights()), tag + " member " + s.to_string());
    }
    const int bound = 2 * p + 2;
    c.expect(delta_set(h, bound) == range(1, p - 2), tag + " delta@" + std::to_string(bound));
    const auto cat = catenary_degree(h, bound);
    c.expect(cat.value == p && cat.exact, tag + " catenary " + std::to_string(cat.value));
    const auto om = omega(h, p);
    c.expect(om.value == p && om.exact, tag + " omega " + std::to_string(om.value));
    c.expect(davenport_large(h) == p, tag + " D_pm");
  }
  c.note = "p=3,5: delta=[1,p-2], c=omega=D=p exact; members of length p-1..p+1 over G\\0 exhaustive";
}

void seminormality(Check& c) {
  struct Case {
    std::vector<long long> f;
    const char* w;
    bool seminormal;
  };
  const std::vector<Case> cases{{{2}, "pm", true},       {{4}, "pm", true},       {{2, 4}, "pm", true},
                                {{3}, "pm", false},      {{8}, "pm", false},      {{2, 4}, "aut", true},
                                {{2, 8}, "aut", true},   {{2, 2}, "aut", false},  {{4, 4}, "aut", false}};
  for (const auto& k : cases) {
    const auto g = grp(k.f);
    const auto w = weights(k.w, g);
    const auto rep = is_seminormal(w, 2);
    const std::string tag = g.spec() + " " + k.w;
    c.expect(rep.seminormal == k.seminormal, tag + " search verdict");
    c.expect(rep.seminormal_predicted == k.seminormal, tag + " predicted verdict");
    if (rep.witness) {
      const auto& s = *rep.witness;
      c.expect(s.length() <= 2 && !oracle_member(s, w) && seminormalization_member(s, w), tag + " witness");
    }
  }
  const auto c3 = grp({3});
  const auto r3 = is_seminormal(weights("pm", c3), 2);
  c.expect(r3.witness && r3.witness->to_string() == "[(1)]", "C3 witness is g");
  const auto c8 = grp({8});
  const auto w8 = weights("pm", c8);
  const auto s = Sequence::from_elements(c8, {c8.basis(0), c8.scale(5, c8.basis(0))});
  c.expect(!oracle_member(s, w8), "g(5g) not in B_pm(C8)");
  c.expect(oracle_member(s.power(2), w8) && oracle_member(s.power(3), w8), "squares and cubes of g(5g) in B");
  c.expect(seminormalization_member(s, w8), "g(5g) in the seminormalization");
  c.note = "9 verdicts at search length 2; C3 witness g; C8 witness g(5g)";
}

void valuation_recursion(Check& c) {
  const std::vector<std::pair<std::vector<long long>, std::size_t>> cases{{{2, 4}, 5}, {{2, 8}, 4}};
  std::size_t total = 0;
  for (const auto& [f, len] : cases) {
    const auto g = grp(f);
    const auto w = WeightSet::full_aut(g, kWide);
    if (f == std::vector<long long>{2, 4}) c.expect(w.size() == 8, "|Aut(C2+C4)| = 8");
    for (const auto& s : oracle::all_sequences(g, g.elements(), 0, len)) {
      ++total;
      c.expect(valuation_membership(s) == oracle_member(s, w), g.spec() + " " + s.to_string());
    }
  }
  c.note = std::to_string(total) + " sequences over C2+C4 (len<=5) and C2+C8 (len<=4)";
}

void class_semigroups(Check& c) {
  for (const auto& [f, order] : std::vector<std::pair<std::vector<long long>, std::size_t>>{{{4}, 2}, {{2, 4}, 4}}) {
    const auto g = grp(f);
    const auto cs = class_semigroup(weights("pm", g));
    const std::string tag = g.spec();
    c.expect(cs.clifford, tag + " Clifford");
    // Subgroups of 2G by exhaustive subset test.
    const auto two_g = g.two_g();
    std::set<std::vector<ElemId>> subgroups;
    for (std::size_t mask = 1; mask < (std::size_t{1} << two_g.size()); ++mask) {
      std::vector<ElemId> sub;
      for (std::size_t i = 0; i < two_g.size(); ++i) {
        if (mask >> i & 1) sub.push_back(two_g[i]);
      }
      bool closed = true;
      for (ElemId a : sub) {
        for (ElemId b : sub) closed = closed && std::binary_search(sub.begin(), sub.end(), g.sub(a, b));
      }
      if (closed) subgroups.insert(sub);
    }
    std::set<std::vector<ElemId>> idem;
    for (auto e : cs.idempotents) idem.insert(cs.elements[e].elements(g.order()));
    c.expect(idem == subgroups, tag + " idempotents = subgroups of 2G");
    for (std::size_t k = 0; k < cs.idempotents.size(); ++k) {
      const auto e = cs.idempotents[k];
      const auto& grp_k = cs.constituent[k];
      c.expect(grp_k.size() == order, tag + " constituent order at " + std::to_string(e));
      for (auto x : grp_k) c.expect(cs.table[x][x] == e, tag + " constituent exponent 2");
    }
    for (auto e : cs.idempotents) {
      for (auto f2 : cs.idempotents) {
        const bool below = cs.table[e][f2] == e;
        c.expect(below == cs.elements[f2].is_subset_of(cs.elements[e]), tag + " Rees order");
      }
    }
  }
  c.note = "C4 and C2+C4 with pm: constituent groups of orders 2 and 4";
}

void krull_verdicts(Check& c) {
  c.expect(verify_nonweakly_krull_witness(weights("pm", grp({3})), 1), "C3 pm case 1");
  c.expect(verify_nonweakly_krull_witness(weights("pm", grp({8})), 2), "C8 pm case 2");
  c.expect(verify_nonweakly_krull_witness(weights("aut", grp({2, 2})), 3), "C2^2 aut case 3");
  const std::vector<std::vector<long long>> groups{{2},    {4},    {2, 2}, {8},       {2, 4},    {2, 2, 2},
                                                   {16},   {2, 8}, {4, 4}, {2, 2, 4}, {2, 2, 2, 2}, {3},
                                                   {5},    {7},    {9},    {3, 3}};
  for (const auto& f : groups) {
    const auto g = grp(f);
    for (const char* ws : {"pm", "aut"}) {
      const auto w = weights(ws, g);
      const auto rep = krull_characterization(w);
      const bool expected = g.is_elementary_2() && w.size() == 1;
      const std::string tag = g.spec() + " " + ws;
      c.expect(rep.krull_expected == expected, tag + " verdict");
      c.expect(rep.krull_expected || (rep.witness_case > 0 && rep.witness_verified), tag + " witness");
    }
  }
  c.note = "3 witnesses; 16 groups x {pm,aut}";
}

const std::vector<SweepRow>& sweep_rows(long long disc) {
  static std::map<long long, std::vector<SweepRow>> memo;
  auto it = memo.find(disc);
  if (it == memo.end()) {
    const auto cg = FormClassGroup::build(Discriminant::make(disc));
    it = memo.emplace(disc, sweep(cg, 5000, 2000)).first;
  }
  return it->second;
}

void transfer_equivalence(Check& c) {
  std::size_t rows = 0;
  for (long long d : {-23LL, -15LL, -84LL}) {
    for (const auto& r : sweep_rows(d)) {
      ++rows;
      c.expect(r.transfer == r.bruteforce, "disc " + std::to_string(d) + " n=" + std::to_string(r.n));
    }
  }
  c.note = std::to_string(rows) + " admissible n <= 5000 over disc -23,-15,-84";
}

void length_transfer(Check& c) {
  std::size_t rows = 0;
  for (long long d : {-23LL, -15LL, -84LL}) {
    for (const auto& r : sweep_rows(d)) {
      if (r.n > 2000 || !r.bruteforce) continue;
      ++rows;
      c.expect(r.lengths_monoid && r.lengths_sequences && *r.lengths_monoid == *r.lengths_sequences,
               "disc " + std::to_string(d) + " n=" + std::to_string(r.n));
    }
  }
  c.note = std::to_string(rows) + " represented n <= 2000";
}

/// Every set of lengths containing 2: such elements have length <= 2D, so a
/// table to bound 2D holds all of them.
std::set<LengthSet> lengths_with_two(const MonoidHandle& h, int D) {
  const auto table = LengthTable::build(h, 2 * D);
  std::set<LengthSet> out;
  table.for_each([&](const std::vector<std::uint32_t>&, std::uint64_t mask) {
    if (mask >> 2 & 1) out.insert(mask_to_lengths(mask));
  });
  return out;
}

void length_systems(Check& c) {
  struct Candidate {
    std::vector<long long> f;
    int D = 0;
    int rho2 = 0;
    std::set<LengthSet> with_two;
  };
  std::vector<Candidate> cs(3);
  cs[0].f = {5};
  cs[1].f = {7};
  cs[2].f = {3, 3};
  for (auto& k : cs) {
    const MonoidHandle h(weights("pm", grp(k.f)));
    k.D = davenport_large(h);
    const auto u = unions_Uk(h, 2, 2 * k.D);
    c.expect(u.exact, "U_2 exact for " + h.group().spec());
    k.rho2 = u.values.empty() ? 0 : u.values.back();
    c.expect(k.rho2 == k.D, "rho_2 = D for " + h.group().spec());
    k.with_two = lengths_with_two(h, k.D);
  }
  const auto& c5 = cs[0];
  const auto& c7 = cs[1];
  const auto& c33 = cs[2];
  c.expect(c5.D == c33.D, "C5 and C3+C3 share D");
  c.expect(c5.rho2 != c7.rho2, "rho_2 separates C5 and C7");
  c.expect(c5.with_two.count({2, 5}) == 1, "{2,5} in L(C5)");
  c.expect(c7.with_two.count({2, 7}) == 1, "{2,7} in L(C7)");
  c.expect(c33.with_two.count({2, 5}) == 0, "{2,5} not in L(C3+C3)");
  c.expect(c5.with_two != c33.with_two, "systems of C5 and C3+C3 differ");

  // Random members of each candidate: L(b) from the table agrees with the
  // factorization oracle, so the systems above are built from correct sets.
  std::mt19937 rng(20261014);
  for (const auto& k : cs) {
    const auto g = grp(k.f);
    const MonoidHandle h(weights("pm", g));
    const auto table = LengthTable::build(h, 2 * k.D);
    std::uniform_int_distribution<ElemId> elem(1, static_cast<ElemId>(g.order() - 1));
    std::uniform_int_distribution<int> len(2, 2 * k.D > 8 ? 8 : 2 * k.D);
    for (int trial = 0, hits = 0; trial < 2000 && hits < 40; ++trial) {
      Sequence b(g);
      for (int i = len(rng); i > 0; --i) b.add(elem(rng));
      if (!h.contains(b)) continue;
      ++hits;
      std::set<int> brute;
      for (const auto& z : oracle::factor_by_products(h.atoms(), b)) brute.insert(static_cast<int>(z.size()));
      const auto l = mask_to_lengths(table.mask_of(b));
      c.expect(std::set<int>(l.begin(), l.end()) == brute, "random member " + b.to_string());
    }
  }
  c.note = "rho_2 = 5, 7, 5; {2,5} in L(C5) only; sets containing 2 computed exactly at bound 2D";
}

class ThreadEnv {
 public:
  ThreadEnv() {
    if (const char* v = std::getenv("WZS_THREADS")) saved_ = v;
  }
  ~ThreadEnv() {
    if (saved_) {
      setenv("WZS_THREADS", saved_->c_str(), 1);
    } else {
      unsetenv("WZS_THREADS");
    }
  }
  void set(unsigned n) { setenv("WZS_THREADS", std::to_string(n).c_str(), 1); }

 private:
  std::optional<std::string> saved_;
};

void determinism(Check& c) {
  const std::vector<std::vector<std::string>> commands{
      {"atoms", "--group", "3", "--weights", "pm"},
      {"atoms", "--group", "2,4", "--weights", "aut", "--format", "json"},
      {"invariants", "--group", "5", "--weights", "pm", "--length-bound", "10", "--omega-cap", "5"},
      {"invariants", "--group", "3", "--weights", "pm", "--length-bound", "18", "--format", "json"},
      {"lengths", "--group", "5", "--weights", "pm", "--seq", "[(1)^5,(4)^5]"},
      {"seminormal", "--group", "2,4", "--weights", "aut"},
      {"seminormal", "--group", "8", "--weights", "pm", "--format", "json"},
      {"class-semigroup", "--group", "2,4", "--weights", "pm"},
      {"class-semigroup", "--group", "4", "--weights", "pm", "--format", "json"},
      {"qform", "classgroup", "--disc", "-84"},
      {"qform", "check", "--disc", "-23", "--n", "27", "--format", "json"},
      {"qform", "sweep", "--disc", "-23", "--max-n", "800", "--lengths-max-n", "400"},
      {"qform", "sweep", "--disc", "-15", "--max-n", "300", "--format", "json"},
  };
  ThreadEnv env;
  for (const auto& cmd : commands) {
    std::string name;
    for (const auto& a : cmd) name += (name.empty() ? "" : " ") + a;
    std::optional<std::string> first;
    for (unsigned t : {1u, 2u, 8u}) {
      env.set(t);
      std::ostringstream out;
      std::ostringstream err;
      const int code = run(cmd, out, err);
      c.expect(code == kOk, name + " exit code with " + std::to_string(t) + " threads");
      if (!first) {
        first = out.str();
      } else {
        c.expect(out.str() == *first, name + " output with " + std::to_string(t) + " threads");
      }
    }
  }
  c.note = std::to_string(commands.size()) + " commands x WZS_THREADS in {1,2,8}";
}

struct Criterion {
  const char* id;
  const char* name;
  std::function<void(Check&)> run;
};

}  // namespace

int run_acceptance(std::ostream& out) {
  const std::vector<Criterion> criteria{
      {"AC01", "davenport-constants", davenport_constants},
      {"AC02", "union-of-lengths-formula", union_formula},
      {"AC03", "two-element-length-witnesses", two_length_witnesses},
      {"AC04", "prime-cyclic-invariants", prime_cyclic},
      {"AC05", "seminormality-verdicts", seminormality},
      {"AC06", "valuation-recursion-vs-oracle", valuation_recursion},
      {"AC07", "class-semigroup-structure", class_semigroups},
      {"AC08", "krull-verdicts-and-witnesses", krull_verdicts},
      {"AC09", "transfer-vs-representation", transfer_equivalence},
      {"AC10", "length-transfer", length_transfer},
      {"AC11", "length-systems-separate-groups", length_systems},
      {"AC12", "thread-count-determinism", determinism},
  };
  int failed = 0;
  for (const auto& cr : criteria) {
    Check c;
    const auto start = std::chrono::steady_clock::now();
    try {
      cr.run(c);
    } catch (const std::exception& e) {
      c.failures.push_back(std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::ostringstream line;
    line.setf(std::ios::fixed);
    line.precision(1);
    line << (c.passed() ? "PASS " : "FAIL ") << cr.id << " " << cr.name << "  checks " << c.count << "  "
         << secs << "s  " << c.note;
    for (const auto& f : c.failures) line << "\n    failed: " << f;
    out << line.str() << std::endl;
    failed += !c.passed();
  }
  out << (failed == 0 ? "acceptance: all 12 criteria passed" : "acceptance: " + std::to_string(failed) + " of 12 criteria failed")
      << std::endl;
  return failed;
}

}  // namespace wzs::cli
