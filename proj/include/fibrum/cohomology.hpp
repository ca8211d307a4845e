#pragma once

#include <functional>
#include <optional>

#include "fibrum/idempotents.hpp"
#include "fibrum/zlin.hpp"

namespace fibrum::cohom {

// ---------------------------------------------------------------------------
// Finite abelian coefficient groups
// ---------------------------------------------------------------------------

struct FinAb {
  std::vector<long long> factors;  // cyclic factor orders, each >= 1
  int rank() const { return static_cast<int>(factors.size()); }
  long long order() const;
  bool operator==(const FinAb& o) const { return factors == o.factors; }
};

using AbElem = std::vector<long long>;  // one residue per factor

AbElem ab_zero(const FinAb& b);
AbElem ab_reduce(const FinAb& b, AbElem v);
AbElem ab_add(const FinAb& b, const AbElem& x, const AbElem& y);
AbElem ab_sub(const FinAb& b, const AbElem& x, const AbElem& y);
AbElem ab_neg(const FinAb& b, const AbElem& x);

/// Explicit isomorphism between an abelian subgroup of a GroupTable and its
/// invariant-factor decomposition.
struct AbelianCoords {
  SubgroupRef sub;
  FinAb shape;
  std::vector<int> gens;  // parent element per factor
  AbElem coords(int parent_elem) const;
  int element(const AbElem& v) const;
  std::map<int, AbElem> table_;
  std::map<AbElem, int> inverse_;
};
AbelianCoords abelian_coords(const SubgroupRef& sub);

// ---------------------------------------------------------------------------
// Cocycles
// ---------------------------------------------------------------------------

struct CocycleTable {
  GroupPtr q;
  FinAb b;
  std::vector<AbElem> vals;  // |Q|^2 entries, index x*|Q| + y

  const AbElem& at(int x, int y) const { return vals[x * q->order() + y]; }
  AbElem& at(int x, int y) { return vals[x * q->order() + y]; }
  bool is_cocycle() const;
  bool is_symmetric() const;
  bool is_normalized() const;  // vanishes when either argument is 1
};

CocycleTable zero_cocycle(const GroupPtr& q, const FinAb& b);
CocycleTable cocycle_add(const CocycleTable& a, const CocycleTable& c);
CocycleTable cocycle_sub(const CocycleTable& a, const CocycleTable& c);
CocycleTable cocycle_scaled(const CocycleTable& a, long long m);
/// d(mu)(x,y) = mu(x) + mu(y) - mu(xy)
CocycleTable coboundary(const GroupPtr& q, const FinAb& b, const std::vector<AbElem>& mu);
/// Adjusts by a constant coboundary so the cocycle is normalized.
CocycleTable normalize_cocycle(const CocycleTable& a);
/// alpha o (f x f) along a homomorphism f: Q' -> Q.
CocycleTable pullback(const CocycleTable& a, const GroupHom& f);
/// Componentwise coefficient map.
CocycleTable push_coeffs(const CocycleTable& a, const FinAb& to,
                         const std::function<AbElem(const AbElem&)>& f);
/// mu o alpha for a character mu of the coefficient group into Z/N, where mu
/// is given by its value on each invariant-factor generator.
CocycleTable apply_char(const CocycleTable& a, const std::vector<long long>& mu,
                        long long n);

// ---------------------------------------------------------------------------
// H^2 with trivial action
// ---------------------------------------------------------------------------

class H2Group {
 public:
  GroupPtr q;
  FinAb b;
  std::vector<long long> factors;     // cyclic factors of H^2 (per component)
  std::vector<CocycleTable> gens;     // representative cocycle per factor
  std::vector<CocycleTable> z2_basis; // lattice basis of cocycles
  std::vector<CocycleTable> b2_basis; // coboundary generators

  long long order() const;
  std::vector<long long> invariant_factors() const;  // canonicalized via SNF
  std::vector<long long> class_of(const CocycleTable& c) const;
  CocycleTable rep_of(const std::vector<long long>& coords) const;
  bool is_trivial_class(const CocycleTable& c) const;

  struct Component {
    zlin::QuotientPresentation pres;
    long long modulus = 1;
    int first_factor = 0, num_factors = 0;
  };
  std::vector<Component> comps_;
};

H2Group h2_group(const GroupPtr& q, const FinAb& b, int max_order = 16);

/// A 1-cochain mu with d(mu) = c, when c is a coboundary.
std::optional<std::vector<AbElem>> coboundary_preimage(const CocycleTable& c);

// ---------------------------------------------------------------------------
// Sections and central extensions
// ---------------------------------------------------------------------------

struct SectionData {
  QuotientData quot;          // Q = G/K
  std::vector<int> section;   // quotient element -> minimal parent representative
  AbelianCoords kcoords;      // coordinates on K
  CocycleTable alpha;         // sigma(x) sigma(y) = alpha(x,y) sigma(xy)
};
SectionData section_with_cocycle(const GroupPtr& g, const SubgroupRef& k);

struct CentralExtension {
  GroupPtr group;        // elements (b, s) indexed bindex*|Q| + s; identity 0
  GroupPtr q;
  FinAb b;
  SubgroupRef fiber;     // image of b, central
  GroupHom proj;         // onto q
  std::vector<int> section;  // s -> element (0, s); a normalized section

  int encode(const AbElem& v, int s) const;
  std::pair<AbElem, int> decode(int e) const;
};
/// Builds the central extension of q by b along a normalized cocycle.
CentralExtension central_extension(const GroupPtr& q, const FinAb& b,
                                   const CocycleTable& beta);

// ---------------------------------------------------------------------------
// The alpha_n machinery
// ---------------------------------------------------------------------------

/// The recursively defined commutator-defect function; args has 2n entries.
AbElem alpha_n(const CocycleTable& alpha, int n, const std::vector<int>& args);

// ---------------------------------------------------------------------------
// Cohomological linkage
// ---------------------------------------------------------------------------

struct LinkageResult {
  bool linked = false;
  std::optional<GroupHom> eta;       // H/L -> G/K witness (faithful case)
  std::optional<FiberPair> witness;  // (U, phi) realizing the linkage
};
LinkageResult linkage_via_cohomology(const idem::CentralPair& a,
                                     const idem::CentralPair& b);

// ---------------------------------------------------------------------------
// Squeezing, insertion and deletion
// ---------------------------------------------------------------------------

struct SqueezeResult {
  GroupPtr gtilde;
  SubgroupRef k_tilde;              // K ∩ G' inside G
  FiberPair ins;                    // (M, mu) over (G, Gtilde)
  // choice log (classes in H^2(G/K, K) normal form)
  std::vector<long long> alpha_class;
  std::vector<long long> beta_class;
  std::vector<long long> gamma_class;
};
/// Requires |G| dividing N (the Z/N surrogate of the torsion hypothesis),
/// K <= Z(G) and kappa faithful. All postconditions of the construction are
/// asserted; a failure indicates an internal error, not bad input.
SqueezeResult squeeze(const idem::CentralPair& p);

struct InsDel {
  FiberPair ins;
  FiberPair del;
};
InsDel ins_del(const idem::CentralPair& p);

struct ReducedDecomposition {
  FiberPair ins;     // over (G, Gtilde)
  FiberPair middle;  // over (Gtilde, Htilde); two-sided reduced
  FiberPair del;     // over (Htilde, H)
};
/// Requires a covering pair with faithful phi_1, phi_2 and |G|, |H| | N.
ReducedDecomposition reduce_decomposition(const FiberPair& p);

struct FullDecomposition {
  // Ind, Inf, Ins, X, Del, Def, Res
  std::vector<FiberPair> factors;
};
FullDecomposition full_decomposition(const FiberPair& p);

/// K cyclic, K <= Z(G) ∩ G', kappa faithful; requires |G| dividing N.
bool reduced_criterion_hypothesis(const idem::CentralPair& p);

}  // namespace fibrum::cohom
