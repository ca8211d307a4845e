#pragma once

#include "fibrum/fibered.hpp"

// Ground-truth engine: transitive fibered bisets as explicit point sets with
// actions, and literal tensor products. Never routes through the Mackey or
// star formulas; the whole point is independence from fibered.cpp.

namespace fibrum::oracle {

struct ExplicitFiberedBiset {
  GroupPtr g, h;
  long long n = 1;
  int points = 0;
  std::vector<int> a_gen;               // action of the A-generator
  std::vector<std::vector<int>> g_act;  // left action, one permutation per g
  std::vector<std::vector<int>> h_act;  // right action, one permutation per h
};

/// Coset-space realization (A x G x H)/U_phi; point count N*|G|*|H|/|U|.
ExplicitFiberedBiset realize(const FiberPair& p, long long max_points = 200000);

/// Checks the action axioms, commutation and freeness of the A-action.
void validate(const ExplicitFiberedBiset& x);

ExplicitFiberedBiset tensor_explicit(const ExplicitFiberedBiset& x,
                                     const ExplicitFiberedBiset& y,
                                     long long max_points = 200000);

ExplicitFiberedBiset disjoint_union(const ExplicitFiberedBiset& x,
                                    const ExplicitFiberedBiset& y);

/// Decomposes into transitive summands: stabilizing pairs of orbit
/// representatives, canonicalized, with multiplicities (integer ring).
FiberedElement classify_explicit(const ExplicitFiberedBiset& x);

}  // namespace fibrum::oracle
