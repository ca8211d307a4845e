#include "doctest.h"

#include <algorithm>
#include <numeric>
#include <set>
#include <thread>

#include "fibrum/group.hpp"

using namespace fibrum;

namespace {

// Brute-force subgroup count: scan all subsets containing the identity.
// Only usable for tiny orders; this is the oracle for the lattice code.
int powerset_subgroup_count(const GroupPtr& g) {
  int n = g->order();
  REQUIRE(n <= 16);
  int count = 0;
  for (unsigned mask = 1; mask < (1u << n); ++mask) {
    if (!(mask & 1)) continue;
    std::vector<int> elems;
    for (int i = 0; i < n; ++i)
      if (mask & (1u << i)) elems.push_back(i);
    if (is_subgroup(g, elems)) ++count;
  }
  return count;
}

std::multiset<int> order_multiset(const GroupPtr& g) {
  std::multiset<int> m;
  for (int i = 0; i < g->order(); ++i) m.insert(g->element_order(i));
  return m;
}

}  // namespace

TEST_CASE("constructors and element orders") {
  auto c4 = cyclic_group(4);
  CHECK(c4->order() == 4);
  CHECK(c4->element_order(1) == 4);

  auto v4 = direct_product(cyclic_group(2), cyclic_group(2));
  for (int i = 1; i < 4; ++i) CHECK(v4->element_order(i) == 2);

  auto q8 = quaternion_group(8);
  std::multiset<int> orders = order_multiset(q8);
  CHECK(std::count(orders.begin(), orders.end(), 2) == 1);  // unique involution
  CHECK(std::count(orders.begin(), orders.end(), 4) == 6);

  auto s3 = symmetric_group(3);
  CHECK(s3->order() == 6);
  CHECK_FALSE(s3->is_abelian());

  auto a4 = alternating_group(4);
  CHECK(a4->order() == 12);
}

TEST_CASE("table validation rejects bad input") {
  CHECK_THROWS_AS(GroupTable::make("bad", {0, 1, 1, 0, 1, 1, 1, 1, 1}), FormatError);
  // Non-associative Latin square (order 5 loop).
  std::vector<std::vector<int>> loop = {
      {0, 1, 2, 3, 4},
      {1, 0, 3, 4, 2},
      {2, 4, 0, 1, 3},
      {3, 2, 4, 0, 1},
      {4, 3, 1, 2, 0},
  };
  CHECK_THROWS_AS(GroupTable::make_from_rows("loop", loop), FormatError);
}

TEST_CASE("quotients") {
  auto c4 = cyclic_group(4);
  SubgroupRef c2{c4, {0, 2}};
  auto q = quotient_group(c4, c2);
  CHECK(q.group->order() == 2);

  auto q8 = quaternion_group(8);
  auto z = center(q8);
  CHECK(z.order() == 2);
  auto qz = quotient_group(q8, z);
  CHECK(qz.group->order() == 4);
  for (int i = 0; i < 4; ++i) CHECK(qz.group->mul(i, i) == 0);  // Klein four

  auto s3 = symmetric_group(3);
  auto a3 = derived_subgroup(s3);
  CHECK(a3.order() == 3);
  CHECK(quotient_group(s3, a3).group->order() == 2);

  // Projection is a homomorphism with the right kernel.
  for (int a = 0; a < 8; ++a)
    for (int b = 0; b < 8; ++b)
      CHECK(qz.proj(q8->mul(a, b)) == qz.group->mul(qz.proj(a), qz.proj(b)));
}

TEST_CASE("subgroup lattice vs powerset oracle") {
  auto v4 = direct_product(cyclic_group(2), cyclic_group(2));
  auto lat = subgroup_lattice(v4);
  CHECK(static_cast<int>(lat.size()) == powerset_subgroup_count(v4));
  CHECK(lat.size() == 5);
  for (const auto& s : lat) CHECK(s.normal);

  auto s3 = symmetric_group(3);
  auto lat3 = subgroup_lattice(s3);
  CHECK(static_cast<int>(lat3.size()) == powerset_subgroup_count(s3));
  CHECK(lat3.size() == 6);
  std::set<int> classes;
  for (const auto& s : lat3) classes.insert(s.conj_class);
  CHECK(classes.size() == 4);

  CHECK(subgroup_lattice(cyclic_group(1)).size() == 1);

  auto q8 = quaternion_group(8);
  CHECK(static_cast<int>(subgroup_lattice(q8).size()) == powerset_subgroup_count(q8));

  auto c12 = cyclic_group(12);
  CHECK(static_cast<int>(subgroup_lattice(c12).size()) == powerset_subgroup_count(c12));

  LatticeOptions tight;
  tight.max_order = 4;
  CHECK_THROWS_AS(subgroup_lattice(s3, tight), ResourceError);
}

TEST_CASE("characteristic data") {
  auto q8 = quaternion_group(8);
  auto cd = characteristic_data(q8);
  CHECK(cd.center.order() == 2);
  CHECK(cd.derived.order() == 2);
  CHECK(cd.abelianization->order() == 4);
  for (int i = 0; i < 4; ++i) CHECK(cd.abelianization->mul(i, i) == 0);

  auto c6 = cyclic_group(6);
  auto cd6 = characteristic_data(c6);
  CHECK(cd6.center.order() == 6);
  CHECK(cd6.derived.order() == 1);

  auto s3 = symmetric_group(3);
  auto cds = characteristic_data(s3);
  CHECK(cds.center.order() == 1);
  CHECK(cds.derived.order() == 3);
}

TEST_CASE("homs to Z/N with gcd formula cross-check") {
  auto check_count = [](const GroupPtr& g, long long N) {
    auto homs = homs_to_cyclic(full_subgroup(g), N);
    // Oracle: |Hom(H, Z/N)| = prod gcd(d_i, N) over invariant factors of H/H'.
    auto cd = characteristic_data(g);
    long long expect = 1;
    for (long long d : invariant_factors(cd.abelianization)) expect *= std::gcd(d, N);
    CHECK(static_cast<long long>(homs.size()) == expect);
    // Every listed map is a homomorphism; list is duplicate-free.
    std::set<std::vector<long long>> distinct;
    for (const auto& h : homs) {
      distinct.insert(h.vals);
      for (int a = 0; a < g->order(); ++a)
        for (int b = 0; b < g->order(); ++b)
          CHECK((h(a) + h(b)) % N == h(g->mul(a, b)) % N);
    }
    CHECK(distinct.size() == homs.size());
  };
  check_count(cyclic_group(4), 2);   // 2 homs
  check_count(quaternion_group(8), 4);  // 4 homs, factor through C2xC2
  check_count(symmetric_group(3), 6);
  check_count(cyclic_group(12), 8);
  check_count(direct_product(cyclic_group(4), cyclic_group(2)), 4);

  CHECK(homs_to_cyclic(full_subgroup(symmetric_group(4)), 1).size() == 1);
  CHECK(homs_to_cyclic(full_subgroup(cyclic_group(4)), 2).size() == 2);
  CHECK(homs_to_cyclic(full_subgroup(quaternion_group(8)), 4).size() == 4);
}

TEST_CASE("automorphism groups") {
  auto aut_c4 = automorphism_group(cyclic_group(4));
  CHECK(aut_c4.aut->order() == 2);

  auto v4 = abelian_group({2, 2});
  auto aut_v4 = automorphism_group(v4);
  CHECK(aut_v4.aut->order() == 6);

  CHECK(automorphism_group(cyclic_group(1)).aut->order() == 1);

  auto s3 = symmetric_group(3);
  auto aut_s3 = automorphism_group(s3);
  CHECK(aut_s3.aut->order() == 6);
  // Inn(G) = G/Z(G).
  CHECK(aut_s3.inner.order() == s3->order() / center(s3).order());
  CHECK(aut_s3.out_transversal.size() == 1);

  auto q8 = quaternion_group(8);
  auto aut_q8 = automorphism_group(q8);
  CHECK(aut_q8.aut->order() == 24);
  CHECK(aut_q8.inner.order() == 4);
  CHECK(aut_q8.out_transversal.size() == 6);

  // Every listed map is bijective and multiplicative.
  for (const auto& m : aut_q8.maps) {
    CHECK(m.is_bijective());
    for (int a = 0; a < 8; ++a)
      for (int b = 0; b < 8; ++b)
        CHECK(m(q8->mul(a, b)) == q8->mul(m(a), m(b)));
  }
}

TEST_CASE("isomorphism testing") {
  auto q8 = quaternion_group(8);
  auto d8 = dihedral_group(8);
  CHECK_FALSE(isomorphic(q8, d8).has_value());

  auto s3 = symmetric_group(3);
  auto id = isomorphic(s3, s3);
  REQUIRE(id.has_value());
  CHECK(id->is_bijective());

  auto c6 = cyclic_group(6);
  auto c2c3 = direct_product(cyclic_group(2), cyclic_group(3));
  auto iso = isomorphic(c6, c2c3);
  REQUIRE(iso.has_value());
  CHECK(iso->is_bijective());
  for (int a = 0; a < 6; ++a)
    for (int b = 0; b < 6; ++b)
      CHECK((*iso)(c6->mul(a, b)) == c2c3->mul((*iso)(a), (*iso)(b)));

  CHECK(isomorphic(dihedral_group(12), dicyclic_group(3)) == std::nullopt);
}

TEST_CASE("small catalog") {
  auto cat1 = small_catalog(1);
  CHECK(cat1.groups.size() == 1);
  CHECK(cat1.complete);

  auto cat4 = small_catalog(4);
  CHECK(cat4.groups.size() == 5);  // C1 C2 C3 C4 V4

  auto cat8 = small_catalog(8);
  int order8 = 0;
  for (const auto& g : cat8.groups)
    if (g->order() == 8) ++order8;
  CHECK(order8 == 5);

  auto cat15 = small_catalog(15);
  CHECK(cat15.complete);
  CHECK(cat15.groups.size() == 28);  // classification of orders <= 15
  // Pairwise non-isomorphic; isomorphic() is reflexive on the catalog.
  for (size_t i = 0; i < cat15.groups.size(); ++i) {
    CHECK(isomorphic(cat15.groups[i], cat15.groups[i]).has_value());
    for (size_t j = i + 1; j < cat15.groups.size(); ++j)
      CHECK_FALSE(isomorphic(cat15.groups[i], cat15.groups[j]).has_value());
  }

  CHECK_FALSE(small_catalog(16).complete);
}

TEST_CASE("build_group spec parsing") {
  CHECK(build_group("C4")->order() == 4);
  CHECK(build_group("D8")->order() == 8);
  CHECK(build_group("Q16")->order() == 16);
  CHECK(build_group("V4")->order() == 4);
  CHECK(build_group("C2xC2xC2")->order() == 8);
  CHECK(build_group("S3xC2")->order() == 12);
  CHECK_THROWS_AS(build_group("nope"), FormatError);
}

TEST_CASE("shared immutable values are safe across threads") {
  auto s3 = symmetric_group(3);
  auto c4 = cyclic_group(4);
  std::vector<std::thread> workers;
  std::vector<size_t> sizes(4, 0);
  for (int t = 0; t < 4; ++t)
    workers.emplace_back([&, t] {
      auto lat = subgroup_lattice(s3);
      auto homs = homs_to_cyclic(full_subgroup(c4), 4);
      sizes[t] = lat.size() * 100 + homs.size();
    });
  for (auto& w : workers) w.join();
  for (int t = 1; t < 4; ++t) CHECK(sizes[t] == sizes[0]);
}
