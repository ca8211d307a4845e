#pragma once

#include <compare>
#include <map>
#include <optional>
#include <vector>

#include <gmpxx.h>

#include "fibrum/group.hpp"

namespace fibrum {

// ---------------------------------------------------------------------------
// Coefficients
// ---------------------------------------------------------------------------

enum class RingTag { Z, Q, Fp };

struct RingSpec {
  RingTag tag = RingTag::Z;
  long long p = 0;  // prime, Fp only
  bool operator==(const RingSpec& o) const { return tag == o.tag && p == o.p; }
  static RingSpec integers() { return {RingTag::Z, 0}; }
  static RingSpec rationals() { return {RingTag::Q, 0}; }
  static RingSpec prime_field(long long p);
  std::string str() const;
};

/// Exact coefficient: arbitrary-precision rational for Z and Q, residue for Fp.
class Coeff {
 public:
  Coeff() = default;
  static Coeff zero(const RingSpec& r);
  static Coeff one(const RingSpec& r);
  static Coeff from_integer(const RingSpec& r, long long v);
  static Coeff from_string(const RingSpec& r, const std::string& s);

  const RingSpec& ring() const { return ring_; }
  bool is_zero() const;
  Coeff operator+(const Coeff& o) const;
  Coeff operator-(const Coeff& o) const;
  Coeff operator*(const Coeff& o) const;
  Coeff operator-() const;
  bool operator==(const Coeff& o) const;
  std::string str() const;

 private:
  void check_same(const Coeff& o) const;
  RingSpec ring_;
  mpq_class q_ = 0;   // Z and Q
  long long r_ = 0;   // Fp
};

// ---------------------------------------------------------------------------
// Fiber pairs
// ---------------------------------------------------------------------------

struct Triple {  // (group, subgroup, character): l(U,phi) or r(U,phi)
  GroupPtr group;
  SubgroupRef sub;
  AHom chi;
};

/// A pair (U, phi): U <= G x H together with phi: U -> Z/N. Elements of the
/// product are encoded as i*|H| + j; no product table is materialized.
/// Immutable; the projection/kernel invariants are computed on construction.
class FiberPair {
 public:
  FiberPair(GroupPtr g, GroupPtr h, long long n, std::vector<int> u_elems,
            std::vector<long long> phi_vals);

  const GroupPtr& g() const { return g_; }
  const GroupPtr& h() const { return h_; }
  long long n() const { return n_; }
  const std::vector<int>& u_elems() const { return u_elems_; }
  const std::vector<long long>& phi_vals() const { return phi_vals_; }
  int u_order() const { return static_cast<int>(u_elems_.size()); }
  /// phi value at a pair-index element; the element must lie in U.
  long long phi_at(int pair_elem) const;

  const SubgroupRef& p1() const { return p1_; }
  const SubgroupRef& p2() const { return p2_; }
  const SubgroupRef& k1() const { return k1_; }
  const SubgroupRef& k2() const { return k2_; }
  const AHom& phi1() const { return phi1_; }   // on k1 <= G
  const AHom& phi2() const { return phi2_; }   // on k2 <= H
  Triple l() const { return {g_, p1_, phi1_}; }
  Triple r() const { return {h_, p2_, phi2_}; }

  bool covering() const;
  bool same_ambient(const FiberPair& o) const;

  FiberPair conjugate(int a, int b) const;  // ^(a,b)(U, phi)
  FiberPair opposite() const;

  std::pair<std::vector<int>, std::vector<long long>> key() const;

 private:
  GroupPtr g_, h_;
  long long n_;
  std::vector<int> u_elems_;        // sorted pair indices
  std::vector<long long> phi_vals_; // aligned residues mod n
  SubgroupRef p1_, p2_, k1_, k2_;
  AHom phi1_, phi2_;
};

/// The subgroup U as its own GroupTable: element i corresponds to u_elems[i].
GroupPtr pair_subgroup_table(const GroupPtr& g, const GroupPtr& h,
                             const std::vector<int>& u_elems);

/// A FiberPair that is the lexicographic minimum of its G x H-conjugacy orbit.
class CanonicalPair {
 public:
  explicit CanonicalPair(const FiberPair& p);  // canonicalizes
  const FiberPair& pair() const { return pair_; }
  std::strong_ordering operator<=>(const CanonicalPair& o) const;
  bool operator==(const CanonicalPair& o) const;

 private:
  FiberPair pair_;
};

CanonicalPair canonicalize(const FiberPair& p);

struct PairInvariants {
  Triple l, r;
  SubgroupRef k_hat, k_tilde;  // inside G
  SubgroupRef l_hat, l_tilde;  // inside H
  GroupPtr ql;                 // Q/L
  GroupPtr pk;                 // P/K
  GroupHom eta;                // Q/L -> P/K, eta(qL) = pK iff (p,q) in U
  GroupPtr ltilde_mod, ktilde_mod;
  GroupHom zeta;               // Ltilde/Lhat -> Ktilde/Khat
};
PairInvariants pair_invariants(const FiberPair& p);

// ---------------------------------------------------------------------------
// Elements of B^A_k(G, H)
// ---------------------------------------------------------------------------

class FiberedElement {
 public:
  FiberedElement(GroupPtr g, GroupPtr h, long long n, RingSpec ring);
  static FiberedElement basis(const CanonicalPair& p, RingSpec ring);

  const GroupPtr& g() const { return g_; }
  const GroupPtr& h() const { return h_; }
  long long n() const { return n_; }
  const RingSpec& ring() const { return ring_; }
  const std::map<CanonicalPair, Coeff>& terms() const { return terms_; }

  bool is_zero() const { return terms_.empty(); }
  void add_term(const CanonicalPair& p, const Coeff& c);
  FiberedElement operator+(const FiberedElement& o) const;
  FiberedElement operator-(const FiberedElement& o) const;
  FiberedElement scaled(const Coeff& c) const;
  bool operator==(const FiberedElement& o) const;

 private:
  GroupPtr g_, h_;
  long long n_;
  RingSpec ring_;
  std::map<CanonicalPair, Coeff> terms_;
};

// ---------------------------------------------------------------------------
// Operations
// ---------------------------------------------------------------------------

FiberPair make_pair(const GroupPtr& g, const GroupPtr& h, long long n,
                    const std::vector<std::pair<int, int>>& u_elems,
                    const std::vector<long long>& phi_vals);

struct BasisOptions {
  bool require_p1_full = false;
  bool require_p2_full = false;
  int lattice_bound = 48;
  long long max_basis = 2000000;
};
std::vector<CanonicalPair> standard_basis(const GroupPtr& g, const GroupPtr& h,
                                          long long n, const BasisOptions& opt = {});

FiberedElement opposite(const FiberedElement& x);

std::optional<FiberPair> star_product(const FiberPair& p, const FiberPair& q);

FiberedElement mackey_product_pairs(const FiberPair& p, const FiberPair& q,
                                    const RingSpec& ring);
FiberedElement mackey_product(const FiberedElement& x, const FiberedElement& y);

FiberPair identity_pair(const GroupPtr& g, long long n);
FiberedElement identity_element(const GroupPtr& g, long long n, const RingSpec& ring);

FiberPair elementary_ind(const GroupPtr& g, const SubgroupRef& h, long long n);
FiberPair elementary_res(const GroupPtr& g, const SubgroupRef& h, long long n);
FiberPair elementary_inf(const GroupPtr& g, const SubgroupRef& nsub, long long n);
FiberPair elementary_def(const GroupPtr& g, const SubgroupRef& nsub, long long n);
FiberPair elementary_iso(const GroupHom& iso, long long n);

struct StandardDecomposition {
  FiberPair ind;     // over (G, P)
  FiberPair inf;     // over (P, P/Khat)
  FiberPair middle;  // over (P/Khat, Q/Lhat), both projections full, faithful
  FiberPair def;     // over (Q/Lhat, Q)
  FiberPair res;     // over (Q, H)
};
StandardDecomposition decompose_standard(const FiberPair& p);

FiberedElement change_of_fiber(const FiberedElement& x, long long new_n,
                               long long image_of_one);

}  // namespace fibrum
