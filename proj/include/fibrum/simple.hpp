#pragma once

#include "fibrum/cohomology.hpp"

namespace fibrum::simp {

struct ReducedFlag {
  idem::CentralPair pair;
  bool reduced = false;
  std::optional<CanonicalPair> witness;  // linkage to a smaller group
};

struct ReducedPairs {
  GroupPtr g;
  long long n = 0;
  std::vector<ReducedFlag> flags;  // in mgg_pairs order
  bool catalog_complete = false;   // soundness of the brute force
  bool is_reduced(const idem::CentralPair& p) const;
};

/// A pair is non-reduced iff it is linked to a triple over a strictly smaller
/// group; the search runs over the supplied catalog. Sound when the catalog
/// covers all isomorphism classes below |G|.
ReducedPairs reduced_pairs_bruteforce(const GroupPtr& g, long long n,
                                      const Catalog& catalog,
                                      int lattice_bound = 48);

struct EssentialReport {
  GroupPtr g;
  long long n = 0;
  RingSpec ring;
  ReducedPairs reduced;
  idem::LinkageClasses classes;
  long long dim_e = 0;          // |standard basis of E_G|
  long long dim_ideal = 0;      // |I_G basis|
  long long dim_essential = 0;  // dim Ebar
  std::vector<long long> block_dims;  // per reduced linkage class
  bool decomposition_ok = false;
};
EssentialReport essential_basis(const GroupPtr& g, long long n, const RingSpec& ring,
                                const Catalog& catalog, int lattice_bound = 48);

/// An F_p-module of a Gamma group, one matrix per Gamma element.
struct GammaModule {
  long long p = 2;
  int dim = 1;
  std::vector<std::vector<std::vector<long long>>> mats;
  bool simple_checked = false;
};

GammaModule trivial_module(const idem::GammaGroup& gamma, long long p);
bool validate_module(const idem::GammaGroup& gamma, const GammaModule& m);
/// Spin test: every nonzero vector generates the whole space. Guarded to
/// small p and dim; beyond the guard simplicity stays an assertion.
bool spin_simple(const idem::GammaGroup& gamma, const GammaModule& m,
                 long long max_p = 7, int max_dim = 4);

/// Abelian case with exp(Gamma) | p-1: the full character list; otherwise only
/// the trivial module is produced.
std::vector<GammaModule> gamma_irreducibles(const idem::GammaGroup& gamma, long long p);

struct Quadruple {
  idem::CentralPair triple;      // (K, kappa) reduced in G
  idem::GammaGroup gamma;
  GammaModule v;
  // block data (computed on construction)
  std::vector<idem::CentralPair> class_members;
  std::vector<CanonicalPair> connectors;  // x_i with l0 = member_i, r0 = (K,kappa)
};

Quadruple make_quadruple(const idem::CentralPair& triple, const GammaModule& v,
                         int lattice_bound = 48);

/// dim of S_(G,K,kappa,V)(H) over F_p, through the explicit pairing rank.
long long simple_evaluation(const Quadruple& q, const GroupPtr& h,
                            int lattice_bound = 48);

bool quadruple_linkage(const Quadruple& a, const Quadruple& b,
                       int lattice_bound = 48);

/// Necessary condition for S(H) != 0: a section of H carries a faithful pair
/// linked to (G,K,kappa) with matching quotient and derived-meet data.
bool nonvanishing_filter(const idem::CentralPair& triple, const GroupPtr& h,
                         int lattice_bound = 48);

}  // namespace fibrum::simp
