// Acceptance suite: runs every verification criterion at its pinned
// parameters and prints one pass/fail line per criterion.
#include <cstdio>

#include "fibrum/verify.hpp"

int main() {
  using namespace fibrum::verify;
  VerifyConfig cfg;  // defaults pin the acceptance parameters
  bool all = true;
  for (int id = 1; id <= 12; ++id) {
    CriterionResult r = run_criterion(id, cfg);
    std::printf("criterion %2d  %s  %s -- %s\n", r.id, r.pass ? "PASS" : "FAIL",
                r.name.c_str(), r.details.c_str());
    std::fflush(stdout);
    all = all && r.pass;
  }
  std::printf("acceptance: %s\n", all ? "ALL PASS" : "FAILURES PRESENT");
  return all ? 0 : 1;
}
