#pragma once

#include <string>
#include <vector>

#include "fibrum/group.hpp"

namespace fibrum::verify {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string details;
};

struct VerifyConfig {
  unsigned seed = 20260810;
  // Grid caps; the documented defaults pin the acceptance parameters.
  int mackey_max_order = 6;
  std::vector<long long> mackey_moduli = {2, 3, 4, 6};
  int sample_covering = 50;   // delete-f samples per group
  int sample_decompositions = 100;
  int sample_alpha_tuples = 200;
};

std::vector<std::string> criterion_names();
CriterionResult run_criterion(int id, const VerifyConfig& cfg = {});
std::vector<CriterionResult> run_all(const VerifyConfig& cfg = {});

}  // namespace fibrum::verify
