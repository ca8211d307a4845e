#pragma once

#include "fibrum/fibered.hpp"

namespace fibrum::idem {

/// A G-fixed pair (K, kappa): K normal in G, kappa a G-stable hom into Z/N.
struct CentralPair {
  GroupPtr g;
  SubgroupRef k;
  AHom kappa;

  long long n() const { return kappa.modulus; }
  std::pair<std::vector<int>, std::vector<long long>> key() const {
    return {k.elems, kappa.vals};
  }
  bool operator==(const CentralPair& o) const { return key() == o.key(); }
  bool operator<(const CentralPair& o) const { return key() < o.key(); }
};

/// All of M_G^G for the given modulus, sorted by (subgroup, values).
std::vector<CentralPair> mgg_pairs(const GroupPtr& g, long long n);

/// (K, kappa) <= (L, lambda): K <= L and lambda restricts to kappa.
bool pair_leq(const CentralPair& a, const CentralPair& b);

/// Moebius coefficient of K <= L in the poset of normal subgroups of G.
long long mobius_normal(const GroupPtr& g, const std::vector<int>& k_elems,
                        const std::vector<int>& l_elems);

FiberPair e_pair(const CentralPair& p);  // (Delta_K(G), phi_kappa)
FiberedElement e_element(const CentralPair& p, const RingSpec& ring);
FiberedElement f_element(const CentralPair& p, const RingSpec& ring);

/// k-basis of the covering subalgebra E_G^c.
std::vector<CanonicalPair> covering_basis(const GroupPtr& g, long long n,
                                          int lattice_bound = 48);

struct LinkageClasses {
  std::vector<CentralPair> pairs;         // mgg_pairs order
  std::vector<int> class_of;              // pair index -> class id
  std::vector<std::vector<int>> classes;  // class id -> sorted member indices
};
LinkageClasses linkage_classes(const GroupPtr& g, long long n,
                               int lattice_bound = 48);

FiberedElement class_e_element(const LinkageClasses& lc, int cls, const RingSpec& ring);
FiberedElement class_f_element(const LinkageClasses& lc, int cls, const RingSpec& ring);

/// The finite group of covering classes with l = r = (G, K, kappa).
struct GammaGroup {
  CentralPair base;
  std::vector<CanonicalPair> elements;  // element 0 is e_pair
  GroupPtr table;                       // multiplication table, validated
  int index_of(const CanonicalPair& p) const;
};
GammaGroup gamma_group(const CentralPair& p, int lattice_bound = 48);

struct GammaBimodule {
  CentralPair left_base, right_base;
  std::vector<CanonicalPair> elements;        // l = left_base, r = right_base
  std::vector<std::vector<int>> left_act;     // [gamma][i] -> i'
  std::vector<std::vector<int>> right_act;    // [delta][i] -> i'
  bool empty() const { return elements.empty(); }
  /// Transport-of-structure isomorphism right Gamma -> left Gamma through the
  /// minimal element; empty when the bimodule is empty.
  std::vector<int> transport;
};
GammaBimodule gamma_bimodule(const GammaGroup& left, const GammaGroup& right);

/// Exhaustive search for a covering pair witnessing (G,K,kappa) ~ (H,L,lambda).
std::optional<CanonicalPair> linkage_witness_bruteforce(const CentralPair& a,
                                                        const CentralPair& b,
                                                        int lattice_bound = 48);

struct CoveringBlock {
  int class_id = 0;
  std::vector<int> members;   // indices into linkage pairs
  long long gamma_order = 0;
  long long block_dim = 0;    // |class|^2 * |Gamma|
};

struct CoveringReport {
  long long n = 0;
  long long dim = 0;                   // |covering basis|
  LinkageClasses classes;
  std::vector<CoveringBlock> blocks;
  bool dimension_identity = false;     // dim == sum of block dims
  bool structure_constants_ok = false; // f.E^c.f vs kGamma checked
};
/// Verifies dim E_G^c = sum |class|^2 |Gamma| and, when check_blocks is set,
/// the algebra isomorphism kGamma -> f E^c f through structure constants.
CoveringReport covering_algebra_report(const GroupPtr& g, long long n,
                                       const RingSpec& ring, bool check_blocks,
                                       int lattice_bound = 48);

struct SesReport {
  CentralPair base;
  long long gamma_order = 0;
  long long quot_chars = 0;       // |(G/K)*|
  long long iota_order = 0;       // |im(iota)|; characters may fuse under
                                  // conjugation when K meets G'
  long long impi_order = 0;       // |image of pi| inside Out(G/K)
  bool orders_match = false;      // gamma = quot_chars * impi
  bool refined_orders_match = false;  // gamma = iota_order * impi
  bool kernel_is_image = false;   // ker(pi) = im(iota), elementwise
  std::vector<int> impi_out_reps; // transversal indices of Out(G/K) hit by pi
  bool split_found = false;       // a complement of im(iota) exists at desk scale
};
SesReport ses_report(const CentralPair& p, int lattice_bound = 48);

}  // namespace fibrum::idem
