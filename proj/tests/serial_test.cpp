#include "doctest.h"

#include "fibrum/serialize.hpp"

using namespace fibrum;
using namespace fibrum::serial;

TEST_CASE("group round trip") {
  auto q8 = quaternion_group(8);
  json j = group_to_json(q8);
  GroupPtr back = group_from_json(j);
  CHECK(back->order() == 8);
  for (int a = 0; a < 8; ++a)
    for (int b = 0; b < 8; ++b) CHECK(back->mul(a, b) == q8->mul(a, b));
  CHECK(back->name() == "Q8");
}

TEST_CASE("malformed group documents are rejected") {
  CHECK_THROWS_AS(group_from_json(json::parse(R"({"name":"x","mul":[[0,1],[1,1]]})")),
                  FormatError);
  CHECK_THROWS_AS(group_from_json(json::parse(R"({"schema":99,"name":"x","mul":[[0]]})")),
                  FormatError);
  CHECK_THROWS_AS(group_from_json(json::parse(R"({"name":"x"})")), FormatError);
}

TEST_CASE("pair and element round trips") {
  auto s3 = symmetric_group(3);
  auto c4 = cyclic_group(4);
  auto basis = standard_basis(s3, c4, 4);
  for (const auto& b : basis) {
    json j = pair_to_json(b.pair());
    FiberPair back = pair_from_json(j);
    CHECK(back.u_elems() == b.pair().u_elems());
    CHECK(back.phi_vals() == b.pair().phi_vals());
  }
  // rational coefficients survive the decimal-string round trip
  RingSpec qq = RingSpec::rationals();
  FiberedElement x(s3, c4, 4, qq);
  x.add_term(basis[0], Coeff::from_string(qq, "3/7"));
  x.add_term(basis[1], Coeff::from_string(qq, "-22/5"));
  FiberedElement back = element_from_json(element_to_json(x));
  CHECK(back.ring() == qq);
  CHECK(back.terms().size() == 2);
  auto it = back.terms().begin();
  CHECK(it->second.str() == "3/7");
  ++it;
  CHECK(it->second.str() == "-22/5");

  CHECK_THROWS_AS(element_from_json(json::parse(R"({"ring":"Z"})")), json::exception);
}

TEST_CASE("named group references shrink the documents") {
  auto d8 = dihedral_group(8);
  json ref = group_ref(d8);
  CHECK(ref.is_string());
  CHECK(group_from_ref(ref)->order() == 8);
}
