#include "doctest.h"

#include <random>

#include "fibrum/linearize.hpp"

using namespace fibrum;
using namespace fibrum::lin;

TEST_CASE("linearize basics") {
  auto s3 = symmetric_group(3);
  auto c1 = cyclic_group(1);
  long long n = 6, p = 7;
  Embedding e = make_embedding(n, p);
  RingSpec zz = RingSpec::integers();

  // [G, trivial] is the trivial character (constant 1)
  {
    std::vector<int> elems;
    for (int x = 0; x < 6; ++x) elems.push_back(x * 1 + 0);
    FiberPair full(s3, c1, n, elems, std::vector<long long>(6, 0));
    ClassFunction f = linearize(FiberedElement::basis(canonicalize(full), zz), e);
    for (long long v : f.vals) CHECK(v == 1);
  }
  // [1, -] is the regular character: |G| at 1, zero elsewhere
  {
    FiberPair triv(s3, c1, n, {0}, {0});
    ClassFunction f = linearize(FiberedElement::basis(canonicalize(triv), zz), e);
    ConjClasses cc = conjugacy_classes(s3);
    for (int cls = 0; cls < cc.count(); ++cls)
      CHECK(f.vals[cls] == (cc.reps[cls] == 0 ? 6 % p : 0));
  }
  // degree additivity: degree of a sum is the sum of degrees
  {
    auto basis = standard_basis(s3, c1, n);
    ConjClasses cc = conjugacy_classes(s3);
    FiberedElement sum(s3, c1, n, zz);
    long long expect = 0;
    for (const auto& b : basis) {
      sum = sum + FiberedElement::basis(b, zz);
      expect = (expect + 6 / b.pair().u_order()) % p;  // [G:H] = degree
    }
    ClassFunction f = linearize(sum, e);
    CHECK(f.vals[cc.class_of[0]] == expect);
  }
}

TEST_CASE("surjectivity of lin for S3 at N=6, p=7") {
  auto s3 = symmetric_group(3);
  ProbeReport rep = simplicity_probe({s3}, 6);
  REQUIRE(rep.groups.size() == 1);
  CHECK(rep.groups[0].p == 7);
  CHECK(rep.groups[0].classes == 3);
  CHECK(rep.groups[0].lin_rank == 3);
  CHECK(rep.groups[0].cond_surjective);
}

TEST_CASE("action on characters") {
  auto s3 = symmetric_group(3);
  long long n = 6, p = 7;
  Embedding e = make_embedding(n, p);
  ConjClasses cc = conjugacy_classes(s3);

  // identity pair acts as the identity
  FiberPair id = identity_pair(s3, n);
  std::mt19937 rng(7);
  for (int trial = 0; trial < 5; ++trial) {
    ClassFunction f{s3, p, {}};
    for (int i = 0; i < cc.count(); ++i) f.vals.push_back(rng() % p);
    CHECK(action_on_characters(id, f, e) == f);
  }

  // induction from a subgroup matches the classical induced-character formula
  SubgroupRef a3 = derived_subgroup(s3);
  FiberPair ind = elementary_ind(s3, a3, n);
  EmbeddedGroup ea3 = subgroup_as_group(a3);
  ConjClasses ch = conjugacy_classes(ind.h());
  for (int trial = 0; trial < 5; ++trial) {
    ClassFunction f{ind.h(), p, {}};
    for (int i = 0; i < ch.count(); ++i) f.vals.push_back(rng() % p);
    ClassFunction got = action_on_characters(ind, f, e);
    // classical: (Ind f)(x) = |H|^-1 sum_{r in G, r^-1 x r in H} f(r^-1 x r)
    for (int cls = 0; cls < cc.count(); ++cls) {
      int x = cc.reps[cls];
      long long acc = 0;
      for (int r = 0; r < 6; ++r) {
        int y = s3->mul(s3->mul(s3->inv(r), x), r);
        int i = a3.index_of(y);
        if (i < 0) continue;
        acc = (acc + f.vals[ch.class_of[i]]) % p;
      }
      long long hinv = 1;
      while ((hinv * 3) % p != 1) ++hinv;
      acc = (acc * hinv) % p;
      CHECK(got.vals[cls] == acc);
    }
  }

  // restriction acts as restriction of class functions
  FiberPair res = elementary_res(s3, a3, n);
  for (int trial = 0; trial < 5; ++trial) {
    ClassFunction f{s3, p, {}};
    for (int i = 0; i < cc.count(); ++i) f.vals.push_back(rng() % p);
    ClassFunction got = action_on_characters(res, f, e);
    ConjClasses csub = conjugacy_classes(res.g());
    for (int cls = 0; cls < csub.count(); ++cls) {
      int parent = a3.elems[csub.reps[cls]];
      CHECK(got.vals[cls] == f.vals[cc.class_of[parent]]);
    }
  }
}

TEST_CASE("functoriality of the character action") {
  auto s3 = symmetric_group(3);
  auto c2 = cyclic_group(2);
  long long n = 6, p = 7;
  Embedding e = make_embedding(n, p);
  RingSpec zz = RingSpec::integers();
  std::mt19937 rng(11);
  auto b1 = standard_basis(s3, c2, n);
  auto b2 = standard_basis(c2, s3, n);
  ConjClasses cs = conjugacy_classes(s3);
  for (size_t i = 0; i < b1.size(); i += 2)
    for (size_t j = 0; j < b2.size(); j += 2) {
      ClassFunction f{s3, p, {}};
      for (int k = 0; k < cs.count(); ++k) f.vals.push_back(rng() % p);
      // action of the Mackey product = composition of actions
      FiberedElement prod =
          mackey_product_pairs(b1[i].pair(), b2[j].pair(), zz);
      ClassFunction lhs{b1[i].pair().g(), p,
                        std::vector<long long>(conjugacy_classes(b1[i].pair().g()).count(), 0)};
      for (const auto& [t, c] : prod.terms()) {
        ClassFunction part = action_on_characters(t.pair(), f, e);
        long long cc = ((std::stoll(c.str()) % p) + p) % p;
        for (size_t k = 0; k < lhs.vals.size(); ++k)
          lhs.vals[k] = (lhs.vals[k] + cc * part.vals[k]) % p;
      }
      ClassFunction rhs =
          action_on_characters(b1[i].pair(), action_on_characters(b2[j].pair(), f, e), e);
      CHECK(lhs == rhs);
    }
}

TEST_CASE("simplicity probe on the character surrogate") {
  ProbeReport rep = simplicity_probe(
      {cyclic_group(2), cyclic_group(3), symmetric_group(3), cyclic_group(4)}, 12);
  CHECK(rep.cond_unit);
  CHECK(rep.all_pass);
  for (const auto& r : rep.groups) {
    CHECK(r.cond_surjective);
    CHECK(r.cond_kernel);
  }
}

TEST_CASE("burnside kernel element") {
  for (int p : {2, 3}) {
    BurnsideKernelReport rep = burnside_kernel_check(p);
    CHECK(rep.element_nonzero);
    CHECK(rep.annihilates_all);
    for (long long v : rep.functional_values) CHECK(v == 0);
  }
}
