#include "doctest.h"

#include <set>

#include "fibrum/idempotents.hpp"

using namespace fibrum;
using namespace fibrum::idem;

TEST_CASE("mgg pairs") {
  CHECK(mgg_pairs(cyclic_group(1), 4).size() == 1);
  // C4, N = 2: subgroups 1 (1 char), C2 (2 chars), C4 (2 chars): 5 pairs
  CHECK(mgg_pairs(cyclic_group(4), 2).size() == 5);
  // S3, N = 2: A3 admits only the trivial S3-stable character into Z/2
  auto s3 = symmetric_group(3);
  int on_a3 = 0;
  for (const auto& p : mgg_pairs(s3, 2))
    if (p.k.order() == 3) ++on_a3;
  CHECK(on_a3 == 1);
}

TEST_CASE("e elements and idempotent relations") {
  RingSpec zz = RingSpec::integers();
  auto c4 = cyclic_group(4);
  long long n = 2;
  auto pairs = mgg_pairs(c4, n);
  // e_(1,1) is the identity of E_G
  for (const auto& p : pairs)
    if (p.k.order() == 1)
      CHECK(e_element(p, zz) == identity_element(c4, n, zz));
  // e products follow the character-agreement rule
  for (const auto& p : pairs)
    for (const auto& q : pairs) {
      FiberedElement prod = mackey_product(e_element(p, zz), e_element(q, zz));
      bool agree = true;
      SubgroupRef meet = intersect(p.k, q.k);
      for (int x : meet.elems)
        if ((p.kappa(x) - q.kappa(x)) % n != 0) agree = false;
      if (!agree) {
        CHECK(prod.is_zero());
      } else {
        SubgroupRef join = product_subgroup(p.k, q.k);
        AHom sum{join, n, {}};
        for (int x : join.elems) sum.vals.push_back(0);
        // l0 of the product is (KL, kappa*lambda); check via e-pair class
        CHECK(prod.terms().size() == 1);
        const auto& t = prod.terms().begin()->first;
        CHECK(t.pair().k1().elems == join.elems);
      }
    }
}

TEST_CASE("f elements: orthogonal idempotent decomposition of 1") {
  RingSpec zz = RingSpec::integers();
  for (const auto& name : {"C4", "V4", "S3"}) {
    auto g = build_group(name);
    for (long long n : {2LL, 4LL}) {
      auto pairs = mgg_pairs(g, n);
      FiberedElement sum(g, g, n, zz);
      for (const auto& p : pairs) sum = sum + f_element(p, zz);
      CHECK(sum == identity_element(g, n, zz));
      // orthogonality f f' = delta f
      for (const auto& p : pairs)
        for (const auto& q : pairs) {
          FiberedElement prod = mackey_product(f_element(p, zz), f_element(q, zz));
          if (p == q) CHECK(prod == f_element(p, zz));
          else CHECK(prod.is_zero());
        }
      // e f = f e = f if (K,kappa) <= (L,lambda), else 0
      for (const auto& p : pairs)
        for (const auto& q : pairs) {
          FiberedElement ef = mackey_product(e_element(p, zz), f_element(q, zz));
          FiberedElement fe = mackey_product(f_element(q, zz), e_element(p, zz));
          CHECK(ef == fe);
          if (pair_leq(p, q)) CHECK(ef == f_element(q, zz));
          else CHECK(ef.is_zero());
        }
    }
  }
}

TEST_CASE("covering basis") {
  CHECK(covering_basis(cyclic_group(1), 3).size() == 1);
  // C2, N=2: U in {Delta variants inside C2xC2} with full projections:
  // Delta(C2) (2 chars), C2xC2 (4 chars, but conjugation is trivial: 4),
  // total 6 pair classes
  auto cb = covering_basis(cyclic_group(2), 2);
  int expected = 0;
  {
    // oracle: enumerate all (U, phi) with full projections by brute force
    auto c2 = cyclic_group(2);
    auto all = standard_basis(c2, c2, 2);
    for (const auto& b : all)
      if (b.pair().covering()) ++expected;
  }
  CHECK(static_cast<int>(cb.size()) == expected);
  // every e and f lies in the covering span
  RingSpec zz = RingSpec::integers();
  auto s3 = symmetric_group(3);
  std::set<std::pair<std::vector<int>, std::vector<long long>>> keys;
  for (const auto& b : covering_basis(s3, 2)) keys.insert(b.pair().key());
  for (const auto& p : mgg_pairs(s3, 2)) {
    FiberedElement e = e_element(p, zz);
    for (const auto& [t, c] : e.terms())
      CHECK(keys.count(t.pair().key()) == 1);
    FiberedElement f = f_element(p, zz);
    for (const auto& [t, c] : f.terms())
      CHECK(keys.count(t.pair().key()) == 1);
  }
}

TEST_CASE("lemma delete-f identity on sampled covering elements") {
  RingSpec zz = RingSpec::integers();
  auto g = dihedral_group(8);
  long long n = 2;
  auto pairs = mgg_pairs(g, n);
  auto find_pair = [&](const std::vector<int>& k, const std::vector<long long>& v) {
    for (const auto& p : pairs)
      if (p.k.elems == k && p.kappa.vals == v) return p;
    throw InternalError("pair not found");
  };
  int count = 0;
  for (const auto& x : covering_basis(g, n)) {
    CentralPair l0 = find_pair(x.pair().k1().elems, x.pair().phi1().vals);
    CentralPair r0 = find_pair(x.pair().k2().elems, x.pair().phi2().vals);
    FiberedElement xe = FiberedElement::basis(x, zz);
    FiberedElement rhs = mackey_product(xe, f_element(r0, zz));
    FiberedElement mid = mackey_product(f_element(l0, zz), rhs);
    FiberedElement lhs = mackey_product(f_element(l0, zz), xe);
    CHECK(rhs == mid);
    CHECK(mid == lhs);
    if (++count >= 20) break;
  }
}

TEST_CASE("linkage classes") {
  // abelian G: (1,1) alone in its class iff no covering pair mixes sizes;
  // linked pairs always share |K|
  auto c4 = cyclic_group(4);
  auto lc = linkage_classes(c4, 2);
  for (size_t c = 0; c < lc.classes.size(); ++c) {
    std::set<int> sizes;
    for (int i : lc.classes[c]) sizes.insert(lc.pairs[i].k.order());
    CHECK(sizes.size() == 1);
  }
  // class idempotent relations (e,f-relations for classes)
  RingSpec zz = RingSpec::integers();
  auto d8 = dihedral_group(8);
  auto lcd = linkage_classes(d8, 2);
  for (size_t c = 0; c < lcd.classes.size(); ++c)
    for (size_t c2 = 0; c2 < lcd.classes.size(); ++c2) {
      FiberedElement prod = mackey_product(class_f_element(lcd, c, zz),
                                           class_f_element(lcd, c2, zz));
      if (c == c2) CHECK(prod == class_f_element(lcd, c, zz));
      else CHECK(prod.is_zero());
    }
}

TEST_CASE("gamma groups") {
  // Gamma_(C2,1,1) at N=2 has order 2
  auto c2 = cyclic_group(2);
  auto pairs = mgg_pairs(c2, 2);
  CentralPair triv = pairs.front();
  REQUIRE(triv.k.order() == 1);
  GammaGroup gamma = gamma_group(triv);
  CHECK(gamma.table->order() == 2);
  // identity element is e_(K,kappa) at index 0
  CHECK(gamma.elements[0] == canonicalize(e_pair(triv)));
  // x * opposite(x) = identity
  RingSpec zz = RingSpec::integers();
  for (const auto& x : gamma.elements) {
    FiberedElement prod = mackey_product(FiberedElement::basis(x, zz),
                                         FiberedElement::basis(canonicalize(x.pair().opposite()), zz));
    CHECK(prod == e_element(triv, zz));
  }
}

TEST_CASE("gamma bimodule: diagonal case") {
  auto c4 = cyclic_group(4);
  auto pairs = mgg_pairs(c4, 4);
  // pick the faithful pair on K = C4? use (1,1): bimodule over identical
  // triples is the Gamma group itself
  CentralPair triv = pairs.front();
  GammaGroup gamma = gamma_group(triv);
  GammaBimodule bm = gamma_bimodule(gamma, gamma);
  CHECK_FALSE(bm.empty());
  CHECK(bm.elements.size() == gamma.elements.size());
}

TEST_CASE("gamma bimodule across groups: the Q8/D8 pair") {
  auto q8 = quaternion_group(8);
  auto d8 = dihedral_group(8);
  auto pick = [](const GroupPtr& g, long long n) {
    for (const auto& p : mgg_pairs(g, n))
      if (p.k.order() == 2 && p.kappa.is_faithful()) return p;
    throw InternalError("pair missing");
  };
  {
    GammaGroup ga = gamma_group(pick(q8, 4));
    GammaGroup gb = gamma_group(pick(d8, 4));
    GammaBimodule bm = gamma_bimodule(ga, gb);
    CHECK_FALSE(bm.empty());  // freeness/transitivity asserted inside
    CHECK(bm.elements.size() == ga.elements.size());
  }
  {
    GammaGroup ga = gamma_group(pick(q8, 2));
    GammaGroup gb = gamma_group(pick(d8, 2));
    CHECK(gamma_bimodule(ga, gb).empty());
  }
}

TEST_CASE("covering algebra dimension identity") {
  RingSpec zz = RingSpec::integers();
  for (const auto& name : {"C4", "V4", "S3"}) {
    auto g = build_group(name);
    CoveringReport rep = covering_algebra_report(g, 2, zz, false);
    CHECK(rep.dimension_identity);
  }
  // with structure constants on a small case
  CoveringReport rep = covering_algebra_report(cyclic_group(2), 2, zz, true);
  CHECK(rep.dimension_identity);
  CHECK(rep.structure_constants_ok);
}

TEST_CASE("ses report") {
  // (C2, 1, 1) at N=2: |Gamma| = 2 = |(C2)*| * |Out(C2)| = 2*1
  auto c2 = cyclic_group(2);
  CentralPair triv = mgg_pairs(c2, 2).front();
  SesReport rep = ses_report(triv);
  CHECK(rep.gamma_order == 2);
  CHECK(rep.quot_chars == 2);
  CHECK(rep.impi_order == 1);
  CHECK(rep.orders_match);
  CHECK(rep.kernel_is_image);

  // (Q8, Z, faithful kappa) at N=4: |(Q8/Z)*| = |Hom(V4, Z/4)| = 4. The four
  // iota-characters fuse into one class (K meets G', quotient abelian), so the
  // naive order product overshoots; the refined identity with |im iota| holds.
  auto q8 = quaternion_group(8);
  for (const auto& p : mgg_pairs(q8, 4)) {
    if (p.k.order() != 2 || !p.kappa.is_faithful()) continue;
    SesReport r = ses_report(p);
    CHECK(r.quot_chars == 4);
    CHECK(r.gamma_order == 6);
    CHECK(r.iota_order == 1);
    CHECK(r.impi_order == 6);
    CHECK_FALSE(r.orders_match);
    CHECK(r.refined_orders_match);
    CHECK(r.kernel_is_image);
  }
  // Pairs with K ∩ G' = 1 never fuse: the naive product holds on (G, 1, 1).
  for (const auto& name : {"C4", "D8", "Q8", "S3"}) {
    auto g = build_group(name);
    CentralPair t = mgg_pairs(g, 2).front();
    REQUIRE(t.k.order() == 1);
    SesReport r = ses_report(t);
    CHECK(r.orders_match);
    CHECK(r.refined_orders_match);
    CHECK(r.kernel_is_image);
  }
}
