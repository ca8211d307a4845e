#include "doctest.h"

#include "fibrum/oracle.hpp"

using namespace fibrum;
using oracle::ExplicitFiberedBiset;

TEST_CASE("realize point counts and freeness") {
  auto c2 = cyclic_group(2);
  auto c1 = cyclic_group(1);
  // identity pair of C1 with N = 3: one free A-orbit of 3 points
  ExplicitFiberedBiset x = oracle::realize(identity_pair(c1, 3));
  CHECK(x.points == 3);

  // diagonal C2 with trivial phi, N = 2: 2*2*2/2 = 4 points
  ExplicitFiberedBiset y = oracle::realize(identity_pair(c2, 2));
  CHECK(y.points == 4);

  for (const auto& b : standard_basis(c2, c2, 2)) {
    ExplicitFiberedBiset r = oracle::realize(b.pair());
    CHECK(r.points == 2 * 2 * 2 / b.pair().u_order());
  }
}

TEST_CASE("classify(realize(p)) round-trips") {
  auto s3 = symmetric_group(3);
  auto c4 = cyclic_group(4);
  for (const auto& b : standard_basis(s3, c4, 4)) {
    FiberedElement cls = oracle::classify_explicit(oracle::realize(b.pair()));
    CHECK(cls == FiberedElement::basis(b, RingSpec::integers()));
  }
}

TEST_CASE("stabilizing pairs are equivariant") {
  auto s3 = symmetric_group(3);
  auto c2 = cyclic_group(2);
  auto basis = standard_basis(s3, c2, 2);
  for (const auto& b : basis) {
    ExplicitFiberedBiset x = oracle::realize(b.pair());
    // point-level stabilizing pair extraction
    auto stab_of = [&](int pt) {
      std::vector<int> elems;
      std::vector<long long> vals;
      // A-orbit of pt
      std::vector<int> orbit;
      int r = pt;
      do { orbit.push_back(r); r = x.a_gen[r]; } while (r != pt);
      for (int g = 0; g < 6; ++g)
        for (int h = 0; h < 2; ++h) {
          int q = x.h_act[x.h->inv(h)][x.g_act[g][pt]];
          long long a = -1;
          for (size_t i = 0; i < orbit.size(); ++i)
            if (orbit[i] == q) a = static_cast<long long>(i);
          if (a < 0) continue;
          elems.push_back(g * 2 + h);
          vals.push_back(a);
        }
      return FiberPair(s3, c2, 2, elems, vals);
    };
    // (S_{(g,h)x}, phi_{(g,h)x}) = ^(g,h)(S_x, phi_x), pointwise
    for (int g = 0; g < 6; ++g)
      for (int h = 0; h < 2; ++h) {
        int moved = x.h_act[x.h->inv(h)][x.g_act[g][0]];
        FiberPair lhs = stab_of(moved);
        FiberPair rhs = stab_of(0).conjugate(g, h);
        CHECK(lhs.key() == rhs.key());
      }
    FiberedElement c0 = oracle::classify_explicit(x);
    CHECK(c0.terms().size() == 1);
  }
}

TEST_CASE("classify is additive on disjoint unions") {
  auto c4 = cyclic_group(4);
  auto c2 = cyclic_group(2);
  auto basis = standard_basis(c4, c2, 2);
  REQUIRE(basis.size() >= 2);
  ExplicitFiberedBiset x = oracle::realize(basis[0].pair());
  ExplicitFiberedBiset y = oracle::realize(basis[1].pair());
  FiberedElement sum = oracle::classify_explicit(oracle::disjoint_union(x, y));
  FiberedElement expect = oracle::classify_explicit(x) + oracle::classify_explicit(y);
  CHECK(sum == expect);
}

TEST_CASE("tensor with the identity recovers the input class") {
  auto s3 = symmetric_group(3);
  ExplicitFiberedBiset id = oracle::realize(identity_pair(s3, 2));
  for (const auto& b : standard_basis(s3, s3, 2)) {
    ExplicitFiberedBiset x = oracle::realize(b.pair());
    FiberedElement t = oracle::classify_explicit(oracle::tensor_explicit(id, x));
    CHECK(t == FiberedElement::basis(b, RingSpec::integers()));
  }
}

TEST_CASE("master check: tensor vs Mackey on a small suite") {
  RingSpec zz = RingSpec::integers();
  auto c2 = cyclic_group(2);
  auto c4 = cyclic_group(4);
  auto s3 = symmetric_group(3);
  struct Case { GroupPtr g, h, k; long long n; };
  std::vector<Case> cases = {
      {c2, c2, c2, 2},
      {c4, c2, c4, 4},
      {s3, c2, c2, 2},
      {c2, s3, c2, 3},
  };
  for (const auto& cs : cases) {
    auto b1 = standard_basis(cs.g, cs.h, cs.n);
    auto b2 = standard_basis(cs.h, cs.k, cs.n);
    for (const auto& p : b1)
      for (const auto& q : b2) {
        FiberedElement lhs = oracle::classify_explicit(oracle::tensor_explicit(
            oracle::realize(p.pair()), oracle::realize(q.pair())));
        FiberedElement rhs = mackey_product_pairs(p.pair(), q.pair(), zz);
        CHECK(lhs == rhs);
      }
  }
}

TEST_CASE("tensor associativity on sampled triples") {
  auto c4 = cyclic_group(4);
  auto c2 = cyclic_group(2);
  auto b1 = standard_basis(c4, c2, 4);
  auto b2 = standard_basis(c2, c4, 4);
  auto b3 = standard_basis(c4, c2, 4);
  for (size_t i = 0; i < b1.size(); i += 3)
    for (size_t j = 0; j < b2.size(); j += 3)
      for (size_t k = 0; k < b3.size(); k += 3) {
        auto x = oracle::realize(b1[i].pair());
        auto y = oracle::realize(b2[j].pair());
        auto z = oracle::realize(b3[k].pair());
        FiberedElement left = oracle::classify_explicit(
            oracle::tensor_explicit(oracle::tensor_explicit(x, y), z));
        FiberedElement right = oracle::classify_explicit(
            oracle::tensor_explicit(x, oracle::tensor_explicit(y, z)));
        CHECK(left == right);
      }
}
