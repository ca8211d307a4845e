#include "doctest.h"

#include <string>

#include "fibrum/fibrum.h"

namespace {

std::string take(char* s) {
  std::string out(s ? s : "");
  fibrum_string_free(s);
  return out;
}

}  // namespace

TEST_CASE("C API: groups") {
  fibrum_group* g = nullptr;
  REQUIRE(fibrum_group_build("Q8", &g) == FIBRUM_OK);
  CHECK(fibrum_group_order(g) == 8);
  char* j = nullptr;
  REQUIRE(fibrum_group_to_json(g, &j) == FIBRUM_OK);
  std::string doc = take(j);
  CHECK(doc.find("\"Q8\"") != std::string::npos);

  fibrum_group* g2 = nullptr;
  REQUIRE(fibrum_group_from_json(doc.c_str(), &g2) == FIBRUM_OK);
  CHECK(fibrum_group_order(g2) == 8);
  fibrum_group_free(g2);
  fibrum_group_free(g);

  fibrum_group* bad = nullptr;
  CHECK(fibrum_group_build("nope", &bad) == FIBRUM_ERR_ARGUMENT);
  CHECK(std::string(fibrum_last_error()).size() > 0);
}

TEST_CASE("C API: basis and products") {
  fibrum_group *c2 = nullptr, *c1 = nullptr;
  REQUIRE(fibrum_group_build("C2", &c2) == FIBRUM_OK);
  REQUIRE(fibrum_group_build("C1", &c1) == FIBRUM_OK);
  char* out = nullptr;
  REQUIRE(fibrum_standard_basis(c2, c1, 2, &out) == FIBRUM_OK);
  std::string basis = take(out);
  // |B(C2, C1, N=2)| = 3
  size_t count = 0, at = 0;
  while ((at = basis.find("\"phi\"", at)) != std::string::npos) { ++count; ++at; }
  CHECK(count == 3);

  // identity * identity through the C API
  const char* idelem = R"({"schema":1,"ring":"Z","g":"C2","h":"C2","N":2,
    "terms":[{"pair":{"u":[[0,0],[1,1]],"phi":[0,0]},"coeff":"1"}]})";
  fibrum_element *x = nullptr, *y = nullptr, *z = nullptr;
  REQUIRE(fibrum_element_from_json(idelem, &x) == FIBRUM_OK);
  REQUIRE(fibrum_element_from_json(idelem, &y) == FIBRUM_OK);
  REQUIRE(fibrum_element_product(x, y, &z) == FIBRUM_OK);
  char* zj = nullptr;
  REQUIRE(fibrum_element_to_json(z, &zj) == FIBRUM_OK);
  std::string prod = take(zj);
  CHECK(prod.find("\"coeff\":\"1\"") != std::string::npos);
  fibrum_element_free(x);
  fibrum_element_free(y);
  fibrum_element_free(z);
  fibrum_group_free(c2);
  fibrum_group_free(c1);
}

TEST_CASE("C API: reports and determinism") {
  fibrum_group* q8 = nullptr;
  REQUIRE(fibrum_group_build("Q8", &q8) == FIBRUM_OK);
  char* a = nullptr;
  char* b = nullptr;
  REQUIRE(fibrum_reduced_report(q8, 8, nullptr, &a) == FIBRUM_OK);
  REQUIRE(fibrum_reduced_report(q8, 8, nullptr, &b) == FIBRUM_OK);
  std::string ra = take(a), rb = take(b);
  CHECK(ra == rb);  // identical inputs give byte-identical output
  CHECK(ra.find("\"catalog_complete\":true") != std::string::npos);
  fibrum_group_free(q8);

  // precondition errors surface as status codes
  char* out = nullptr;
  CHECK(fibrum_burnside_kernel(5, &out) == FIBRUM_ERR_PRECONDITION);
  REQUIRE(fibrum_burnside_kernel(2, &out) == FIBRUM_OK);
  std::string rep = take(out);
  CHECK(rep.find("\"annihilates_all\":true") != std::string::npos);
}

TEST_CASE("C API: verify single suite") {
  char* out = nullptr;
  REQUIRE(fibrum_verify("burnside", "{\"seed\":1}", &out) == FIBRUM_OK);
  std::string rep = take(out);
  CHECK(rep.find("\"pass\":true") != std::string::npos);
  CHECK(fibrum_verify("bogus", nullptr, &out) == FIBRUM_ERR_PRECONDITION);
}
