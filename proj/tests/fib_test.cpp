#include "doctest.h"

#include <set>
#include <thread>

#include "fibrum/fibered.hpp"

using namespace fibrum;

namespace {

// Exhaustive oracle for basis counts: all subgroups of G x H by powerset scan,
// all value assignments checked to be homomorphisms, orbits under all
// conjugations. Only for tiny products.
int bruteforce_orbit_count(const GroupPtr& g, const GroupPtr& h, long long n) {
  GroupPtr prod = direct_product(g, h);
  int m = prod->order();
  REQUIRE(m <= 16);
  std::set<std::pair<std::vector<int>, std::vector<long long>>> all;
  for (unsigned mask = 1; mask < (1u << m); ++mask) {
    if (!(mask & 1)) continue;
    std::vector<int> elems;
    for (int i = 0; i < m; ++i)
      if (mask & (1u << i)) elems.push_back(i);
    if (!is_subgroup(prod, elems)) continue;
    // all functions elems -> Z/n that are homomorphisms
    size_t k = elems.size();
    std::vector<long long> vals(k, 0);
    while (true) {
      bool hom = true;
      SubgroupRef u{prod, elems};
      for (size_t i = 0; i < k && hom; ++i)
        for (size_t j = 0; j < k && hom; ++j) {
          int pr = prod->mul(elems[i], elems[j]);
          int pi = u.index_of(pr);
          if ((vals[i] + vals[j]) % n != vals[pi]) hom = false;
        }
      if (hom) all.insert({elems, vals});
      size_t pos = 0;
      while (pos < k && ++vals[pos] == n) vals[pos++] = 0;
      if (pos == k) break;
    }
  }
  // orbit count under conjugation by every (a, b)
  std::set<std::pair<std::vector<int>, std::vector<long long>>> seen;
  int orbits = 0;
  for (const auto& key : all) {
    if (seen.count(key)) continue;
    ++orbits;
    for (int c = 0; c < m; ++c) {
      std::vector<std::pair<int, long long>> tmp;
      for (size_t i = 0; i < key.first.size(); ++i)
        tmp.push_back({prod->conj(c, key.first[i]), key.second[i]});
      std::sort(tmp.begin(), tmp.end());
      std::vector<int> e2;
      std::vector<long long> v2;
      for (auto& [e, v] : tmp) { e2.push_back(e); v2.push_back(v); }
      seen.insert({e2, v2});
    }
  }
  return orbits;
}

}  // namespace

TEST_CASE("standard basis counts against exhaustive oracle") {
  auto c1 = cyclic_group(1);
  auto c2 = cyclic_group(2);
  CHECK(standard_basis(c1, c1, 5).size() == 1);
  CHECK(standard_basis(c2, c1, 2).size() == 3);
  CHECK(static_cast<int>(standard_basis(c2, c1, 2).size()) ==
        bruteforce_orbit_count(c2, c1, 2));
  CHECK(static_cast<int>(standard_basis(c2, c2, 2).size()) ==
        bruteforce_orbit_count(c2, c2, 2));
  auto c4 = cyclic_group(4);
  CHECK(static_cast<int>(standard_basis(c4, c2, 4).size()) ==
        bruteforce_orbit_count(c4, c2, 4));
  auto v4 = build_group("V4");
  CHECK(static_cast<int>(standard_basis(v4, c2, 2).size()) ==
        bruteforce_orbit_count(v4, c2, 2));
}

TEST_CASE("canonicalize is constant on conjugacy orbits and idempotent") {
  auto s3 = symmetric_group(3);
  auto basis = standard_basis(s3, s3, 2);
  CHECK(basis.size() > 4);
  for (const auto& b : basis) {
    // idempotence
    CanonicalPair again = canonicalize(b.pair());
    CHECK(again == b);
    // full orbit maps to the same canonical form
    for (int a = 0; a < 6; ++a)
      for (int c = 0; c < 6; ++c)
        CHECK(canonicalize(b.pair().conjugate(a, c)) == b);
  }
}

TEST_CASE("opposite is an involution and fixes the identity") {
  auto s3 = symmetric_group(3);
  FiberPair id = identity_pair(s3, 4);
  CHECK(canonicalize(id.opposite()) == canonicalize(id));
  for (const auto& b : standard_basis(s3, cyclic_group(2), 4))
    CHECK(canonicalize(b.pair().opposite().opposite()) == b);
  // k1(U^op) = k2(U) and (phi^op)_1 = phi_2
  for (const auto& b : standard_basis(s3, cyclic_group(4), 4)) {
    FiberPair op = b.pair().opposite();
    CHECK(op.k1().elems == b.pair().k2().elems);
    CHECK(op.phi1().vals == b.pair().phi2().vals);
    CHECK(op.k2().elems == b.pair().k1().elems);
    CHECK(op.phi2().vals == b.pair().phi1().vals);
  }
}

TEST_CASE("star product basics") {
  auto g = dihedral_group(8);
  FiberPair idp = identity_pair(g, 2);
  auto sp = star_product(idp, idp);
  REQUIRE(sp.has_value());
  CHECK(canonicalize(*sp) == canonicalize(idp));

  // character clash in C4 x C4 with N = 4: phi2 vs psi1 disagree on k2∩k1
  auto c4 = cyclic_group(4);
  // U = C4 x C4 with phi(a,b) = val1*a - ... build via characters:
  // phi(x, y) = x (mod 4), so phi2 = -(y) -> phi2(y) = -y... use full subgroup.
  std::vector<std::pair<int, int>> full;
  std::vector<long long> v1, v2;
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) {
      full.push_back({a, b});
      v1.push_back(b);       // phi: (a,b) -> b, so phi2 = -id on k2 = C4
      v2.push_back(0);       // psi trivial, psi1 = 0 on k1 = C4
    }
  FiberPair p1 = make_pair(c4, c4, 4, full, v1);
  FiberPair p2 = make_pair(c4, c4, 4, full, v2);
  CHECK_FALSE(star_product(p1, p2).has_value());

  // r(p) = l(q) implies l(U*V) = l(U), r(U*V) = r(V)
  auto s3 = symmetric_group(3);
  for (const auto& p : standard_basis(s3, s3, 2))
    for (const auto& q : standard_basis(s3, s3, 2)) {
      if (p.pair().p2().elems != q.pair().p1().elems) continue;
      if (p.pair().k2().elems != q.pair().k1().elems) continue;
      if (p.pair().phi2().vals != q.pair().phi1().vals) continue;
      auto st = star_product(p.pair(), q.pair());
      REQUIRE(st.has_value());
      CHECK(st->p1().elems == p.pair().p1().elems);
      CHECK(st->k1().elems == p.pair().k1().elems);
      CHECK(st->phi1().vals == p.pair().phi1().vals);
      CHECK(st->p2().elems == q.pair().p2().elems);
      CHECK(st->k2().elems == q.pair().k2().elems);
      CHECK(st->phi2().vals == q.pair().phi2().vals);
    }
}

TEST_CASE("projection monotonicity under star products") {
  auto s3 = symmetric_group(3);
  auto c4 = cyclic_group(4);
  auto basis1 = standard_basis(s3, c4, 4);
  auto basis2 = standard_basis(c4, s3, 4);
  auto leq = [](const std::vector<int>& a, const std::vector<int>& b) {
    return std::includes(b.begin(), b.end(), a.begin(), a.end());
  };
  for (const auto& p : basis1)
    for (const auto& q : basis2) {
      auto st = star_product(p.pair(), q.pair());
      if (!st.has_value()) continue;
      CHECK(leq(p.pair().k1().elems, st->k1().elems));
      CHECK(leq(st->k1().elems, st->p1().elems));
      CHECK(leq(st->p1().elems, p.pair().p1().elems));
    }
}

TEST_CASE("mackey product: identity acts as identity") {
  auto s3 = symmetric_group(3);
  auto c4 = cyclic_group(4);
  RingSpec zz = RingSpec::integers();
  FiberedElement id = identity_element(s3, 4, zz);
  for (const auto& b : standard_basis(s3, c4, 4)) {
    FiberedElement x = FiberedElement::basis(b, zz);
    CHECK(mackey_product(id, x) == x);
  }
  FiberedElement idc4 = identity_element(c4, 4, zz);
  for (const auto& b : standard_basis(s3, c4, 4)) {
    FiberedElement x = FiberedElement::basis(b, zz);
    CHECK(mackey_product(x, idc4) == x);
  }
}

TEST_CASE("mackey associativity on a sample") {
  auto c2 = cyclic_group(2);
  auto s3 = symmetric_group(3);
  RingSpec zz = RingSpec::integers();
  auto b1 = standard_basis(s3, c2, 2);
  auto b2 = standard_basis(c2, s3, 2);
  auto b3 = standard_basis(s3, c2, 2);
  for (size_t i = 0; i < b1.size(); i += 2)
    for (size_t j = 0; j < b2.size(); j += 2)
      for (size_t k = 0; k < b3.size(); k += 2) {
        auto x = FiberedElement::basis(b1[i], zz);
        auto y = FiberedElement::basis(b2[j], zz);
        auto z = FiberedElement::basis(b3[k], zz);
        CHECK(mackey_product(mackey_product(x, y), z) ==
              mackey_product(x, mackey_product(y, z)));
      }
}

TEST_CASE("anti-multiplicativity of opposites") {
  auto c4 = cyclic_group(4);
  auto v4 = build_group("V4");
  RingSpec zz = RingSpec::integers();
  for (const auto& p : standard_basis(c4, v4, 2))
    for (const auto& q : standard_basis(v4, c4, 2)) {
      auto x = FiberedElement::basis(p, zz);
      auto y = FiberedElement::basis(q, zz);
      CHECK(opposite(mackey_product(x, y)) ==
            mackey_product(opposite(y), opposite(x)));
    }
}

TEST_CASE("elementary pairs") {
  auto s3 = symmetric_group(3);
  // ind with H = G is the identity pair
  FiberPair ind_full = elementary_ind(s3, full_subgroup(s3), 2);
  CHECK(ind_full.u_order() == 6);
  CHECK(ind_full.covering());

  // def∘inf for G/N = identity of G/N
  auto a3 = derived_subgroup(s3);
  FiberPair inf = elementary_inf(s3, a3, 2);
  FiberPair def = elementary_def(s3, a3, 2);
  RingSpec zz = RingSpec::integers();
  FiberedElement prod = mackey_product(FiberedElement::basis(canonicalize(def), zz),
                                       FiberedElement::basis(canonicalize(inf), zz));
  CHECK(prod == identity_element(def.g(), 2, zz));

  // res∘ind decomposes by double cosets H\G/H: for H = <transposition> in S3,
  // |H\G/H| = 2 (identity coset and one mixed coset).
  SubgroupRef h{s3, {}};
  for (int x = 1; x < 6; ++x)
    if (s3->element_order(x) == 2) { h = closure(s3, {x}); break; }
  FiberPair ind = elementary_ind(s3, h, 2);
  FiberPair res = elementary_res(s3, h, 2);
  FiberedElement ri = mackey_product(FiberedElement::basis(canonicalize(res), zz),
                                     FiberedElement::basis(canonicalize(ind), zz));
  int total = 0;
  for (const auto& [p, c] : ri.terms()) total += 1;
  CHECK(total == 2);
}

TEST_CASE("five-factor decomposition round-trips") {
  auto s3 = symmetric_group(3);
  auto c4 = cyclic_group(4);
  RingSpec zz = RingSpec::integers();
  for (const auto& b : standard_basis(s3, c4, 4)) {
    StandardDecomposition d = decompose_standard(b.pair());
    FiberedElement acc = FiberedElement::basis(canonicalize(d.ind), zz);
    acc = mackey_product(acc, FiberedElement::basis(canonicalize(d.inf), zz));
    acc = mackey_product(acc, FiberedElement::basis(canonicalize(d.middle), zz));
    acc = mackey_product(acc, FiberedElement::basis(canonicalize(d.def), zz));
    acc = mackey_product(acc, FiberedElement::basis(canonicalize(d.res), zz));
    CHECK(acc == FiberedElement::basis(b, zz));
  }
}

TEST_CASE("pair invariants") {
  auto s3 = symmetric_group(3);
  FiberPair id = identity_pair(s3, 2);
  PairInvariants inv = pair_invariants(id);
  CHECK(inv.l.sub.order() == 6);   // p1 = G
  CHECK(inv.l.chi.dom.order() == 1);  // k1 = 1
  CHECK(inv.pk->order() == 6);  // G/1
  for (int x = 0; x < 6; ++x) CHECK(inv.eta(x) == x);  // eta = identity
  // eta and zeta orders agree
  for (const auto& b : standard_basis(s3, cyclic_group(4), 4)) {
    PairInvariants i2 = pair_invariants(b.pair());
    CHECK(i2.pk->order() == i2.ql->order());
    CHECK(i2.ktilde_mod->order() == i2.ltilde_mod->order());
  }
}

TEST_CASE("change of fiber") {
  auto c2 = cyclic_group(2);
  auto basis = standard_basis(c2, c2, 2);
  RingSpec zz = RingSpec::integers();
  for (const auto& b : basis) {
    FiberedElement x = FiberedElement::basis(b, zz);
    // identity map
    CHECK(change_of_fiber(x, 2, 1) == x);
  }
  // injective C2 -> C4 (1 -> 2) stays injective on the basis
  std::set<std::string> images;
  for (const auto& b : basis) {
    FiberedElement y = change_of_fiber(FiberedElement::basis(b, zz), 4, 2);
    CHECK(y.terms().size() == 1);
    std::string key;
    for (const auto& [p, c] : y.terms()) {
      for (int e : p.pair().u_elems()) key += std::to_string(e) + ",";
      for (long long v : p.pair().phi_vals()) key += std::to_string(v) + ";";
    }
    CHECK(images.insert(key).second);
  }
  // zero map trivializes all characters
  for (const auto& b : basis) {
    FiberedElement y = change_of_fiber(FiberedElement::basis(b, zz), 2, 0);
    for (const auto& [p, c] : y.terms())
      { bool trivial = true; for (long long v : p.pair().phi_vals()) if (v % 2 != 0) trivial = false; CHECK(trivial); }
  }
}

TEST_CASE("coefficient rings are exact and unmixable") {
  RingSpec zz = RingSpec::integers();
  RingSpec qq = RingSpec::rationals();
  Coeff a = Coeff::from_string(qq, "1/3");
  Coeff b = Coeff::from_string(qq, "2/3");
  CHECK((a + b) == Coeff::one(qq));
  CHECK_THROWS_AS(Coeff::from_string(zz, "1/2"), FormatError);
  CHECK_THROWS_AS((void)(Coeff::one(zz) + Coeff::one(qq)), PreconditionError);
  RingSpec f5 = RingSpec::prime_field(5);
  CHECK((Coeff::from_integer(f5, 3) * Coeff::from_integer(f5, 2)) ==
        Coeff::one(f5));
  CHECK_THROWS_AS(RingSpec::prime_field(6), PreconditionError);
}

TEST_CASE("concurrent canonicalization on shared groups is deterministic") {
  auto s3 = symmetric_group(3);
  auto c4 = cyclic_group(4);
  std::vector<std::thread> workers;
  std::vector<size_t> counts(4, 0);
  for (int t = 0; t < 4; ++t)
    workers.emplace_back([&, t] { counts[t] = standard_basis(s3, c4, 4).size(); });
  for (auto& w : workers) w.join();
  for (int t = 1; t < 4; ++t) CHECK(counts[t] == counts[0]);
}
