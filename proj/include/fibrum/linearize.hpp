#pragma once

#include "fibrum/fibered.hpp"

// Character rings over F_p as the exact surrogate for complex characters:
// p = 1 mod lcm(exp G, N) makes the N-th roots of unity and all needed
// character values live in F_p.

namespace fibrum::lin {

struct ConjClasses {
  GroupPtr g;
  std::vector<int> class_of;  // element -> class id
  std::vector<int> reps;      // class id -> minimal element
  int count() const { return static_cast<int>(reps.size()); }
};
ConjClasses conjugacy_classes(const GroupPtr& g);

/// zeta: Z/N -> F_p^x of exact order N; requires N | p-1.
struct Embedding {
  long long n = 1;
  long long p = 2;
  long long zeta = 1;  // image of 1 mod N
  long long operator()(long long residue) const;  // zeta^residue mod p
};
Embedding make_embedding(long long n, long long p);

/// Least prime p with p = 1 (mod m) and p coprime to every entry of avoid.
long long choose_prime(long long m, const std::vector<long long>& avoid);

struct ClassFunction {
  GroupPtr g;
  long long p = 2;
  std::vector<long long> vals;  // per conjugacy class
  bool operator==(const ClassFunction& o) const { return vals == o.vals; }
};

/// Induced monomial character of a subgroup-with-character, as a function on
/// the whole group (one value per element).
std::vector<long long> induced_character_values(const GroupPtr& g,
                                                const SubgroupRef& h,
                                                const std::vector<long long>& phi_vals,
                                                const Embedding& e);

/// lin_G on B^A(G) = B^A(G, 1): [H, phi] -> Ind_H^G(zeta . phi).
/// x must be an element over (G, C1) with integer coefficients.
ClassFunction linearize(const FiberedElement& x, const Embedding& e);

/// The action of a (G,H)-pair on class functions of H.
ClassFunction action_on_characters(const FiberPair& pair, const ClassFunction& f,
                                   const Embedding& e);

struct ProbeGroupResult {
  std::string name;
  long long p = 0;
  int classes = 0;
  int lin_rank = 0;       // rank of the induced-character matrix
  int pairing_rank = 0;   // rank of the evaluation pairing to the trivial group
  bool cond_surjective = false;  // (ii)
  bool cond_kernel = false;      // (iii)
};

struct ProbeReport {
  long long n = 1;
  bool cond_unit = false;  // (i): F({1}) is one-dimensional
  std::vector<ProbeGroupResult> groups;
  bool all_pass = false;
};
/// Desk-scale probe of the three simplicity conditions for the character-ring
/// surrogate; p is chosen per group as the least admissible prime.
ProbeReport simplicity_probe(const std::vector<GroupPtr>& test_groups, long long n);

struct BurnsideKernelReport {
  long long prime = 2;              // p of C_p x C_p
  bool element_nonzero = false;     // the combination has a nonzero coefficient
  bool annihilates_all = false;     // every |P\G/Q| functional vanishes (exact)
  std::vector<long long> functional_values;  // per subgroup P, should be zero
};
/// The explicit kernel element p[G/G] - sum [G/H_i] + [G/1] over G = C_p x C_p.
BurnsideKernelReport burnside_kernel_check(int prime);

}  // namespace fibrum::lin
