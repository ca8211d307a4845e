#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "fibrum/base.hpp"

namespace fibrum {

class GroupTable;
using GroupPtr = std::shared_ptr<const GroupTable>;

/// A finite group given by its full multiplication table. Element 0 is the
/// identity. Instances are immutable and freely shareable between threads.
class GroupTable {
 public:
  int order() const { return n_; }
  int mul(int a, int b) const { return mul_[a * n_ + b]; }
  int inv(int a) const { return inv_[a]; }
  int conj(int g, int a) const { return mul(mul(g, a), inv(g)); }  // g a g^-1
  int pow(int a, long long e) const;
  int element_order(int a) const { return elt_order_[a]; }
  bool is_abelian() const { return abelian_; }

  const std::string& name() const { return name_; }
  const std::string& label(int a) const { return labels_[a]; }

  /// Validates associativity, Latin-square rows/columns, identity at index 0
  /// and two-sided inverses; throws FormatError otherwise.
  static GroupPtr make(std::string name, std::vector<int> mul,
                       std::vector<std::string> labels = {});

  static GroupPtr make_from_rows(std::string name,
                                 const std::vector<std::vector<int>>& mul,
                                 std::vector<std::string> labels = {});

 private:
  GroupTable() = default;
  int n_ = 0;
  std::vector<int> mul_;   // n*n, row-major
  std::vector<int> inv_;
  std::vector<int> elt_order_;
  bool abelian_ = false;
  std::string name_;
  std::vector<std::string> labels_;
};

/// A subgroup of a fixed parent, stored as the sorted list of its elements.
struct SubgroupRef {
  GroupPtr parent;
  std::vector<int> elems;  // strictly increasing, contains 0

  int order() const { return static_cast<int>(elems.size()); }
  bool contains(int g) const;
  /// Position of g inside elems; -1 when absent.
  int index_of(int g) const;
  bool operator==(const SubgroupRef& o) const { return elems == o.elems; }
};

struct GroupHom {
  GroupPtr dom;
  GroupPtr cod;
  std::vector<int> img;  // image of each element of dom

  int operator()(int g) const { return img[g]; }
  bool is_bijective() const;
};

/// A homomorphism from a subgroup into Z/N, with values as residues mod N
/// listed in the order of dom.elems.
struct AHom {
  SubgroupRef dom;
  long long modulus = 1;
  std::vector<long long> vals;

  long long operator()(int g) const;
  bool is_trivial() const;
  bool is_faithful() const;  // injective
  /// The conjugate homomorphism ^g(dom, vals) on ^g dom.
  AHom conjugate(int g) const;
  AHom restrict_to(const SubgroupRef& sub) const;
  long long kernel_size() const;
  SubgroupRef kernel() const;
};

// ---------------------------------------------------------------------------
// Construction
// ---------------------------------------------------------------------------

GroupPtr cyclic_group(int n);
GroupPtr dihedral_group(int order2n);       // order 2n, n >= 1
GroupPtr dicyclic_group(int n);             // order 4n; n = 2 gives Q8
GroupPtr quaternion_group(int order);       // 8 or 16
GroupPtr abelian_group(const std::vector<int>& invariant_factors);
GroupPtr symmetric_group(int n);            // n <= 5
GroupPtr alternating_group(int n);          // n = 4
GroupPtr direct_product(const GroupPtr& a, const GroupPtr& b);  // index i*|B|+j

/// Parses a named constructor spec: "C1".."Cn", "CaxCb..." (abelian products),
/// "D2n" (dihedral of that order), "Q8", "Q16", "S3".."S5", "A4", "V4".
GroupPtr build_group(const std::string& spec);

GroupHom product_proj1(const GroupPtr& prod, const GroupPtr& a, const GroupPtr& b);
GroupHom product_proj2(const GroupPtr& prod, const GroupPtr& a, const GroupPtr& b);

// ---------------------------------------------------------------------------
// Subgroup machinery
// ---------------------------------------------------------------------------

SubgroupRef trivial_subgroup(const GroupPtr& g);
SubgroupRef full_subgroup(const GroupPtr& g);
SubgroupRef closure(const GroupPtr& g, std::vector<int> gens);
bool is_subgroup(const GroupPtr& g, const std::vector<int>& elems);
bool is_normal(const SubgroupRef& h);
SubgroupRef conjugate_subgroup(const SubgroupRef& h, int g);
SubgroupRef intersect(const SubgroupRef& a, const SubgroupRef& b);
/// Product set HK; requires it to be a subgroup (e.g. one factor normal).
SubgroupRef product_subgroup(const SubgroupRef& a, const SubgroupRef& b);

/// The subgroup as a standalone GroupTable (identity first, elements in the
/// order of h.elems) plus the inclusion map back into the parent.
struct EmbeddedGroup {
  GroupPtr group;
  std::vector<int> to_parent;  // element of group -> element of parent
  int from_parent(int g) const;
};
EmbeddedGroup subgroup_as_group(const SubgroupRef& h, const std::string& name = "");

struct QuotientData {
  GroupPtr group;
  GroupHom proj;                  // parent -> quotient
  std::vector<int> coset_rep;     // quotient element -> minimal parent rep
};
QuotientData quotient_group(const GroupPtr& g, const SubgroupRef& nsub);

struct SubgroupInfo {
  SubgroupRef sub;
  bool normal = false;
  int conj_class = 0;  // index of the lexicographically least conjugate
};

struct LatticeOptions {
  int max_order = 48;
};

/// All subgroups, each exactly once, sorted by (order, element list).
/// Enumeration is by cyclic prime extensions; requires a solvable parent,
/// which covers every group of order < 60.
std::vector<SubgroupInfo> subgroup_lattice(const GroupPtr& g,
                                           const LatticeOptions& opt = {});

struct CharacteristicData {
  SubgroupRef center;
  SubgroupRef derived;
  GroupPtr abelianization;
  GroupHom ab_proj;
};
CharacteristicData characteristic_data(const GroupPtr& g);

SubgroupRef center(const GroupPtr& g);
SubgroupRef derived_subgroup(const GroupPtr& g);
bool is_solvable(const GroupPtr& g);

/// All homomorphisms from h into Z/N, enumerated through the abelianization
/// of h; the list is complete, duplicate-free and lexicographically sorted by
/// value vector.
std::vector<AHom> homs_to_cyclic(const SubgroupRef& h, long long N);

/// Invariant factors d1 | d2 | ... of a finite abelian group.
std::vector<long long> invariant_factors(const GroupPtr& abelian);

// ---------------------------------------------------------------------------
// Automorphisms and isomorphism
// ---------------------------------------------------------------------------

struct AutomorphismData {
  GroupPtr aut;                      // the automorphism group as a table
  std::vector<GroupHom> maps;        // element of aut -> explicit map
  SubgroupRef inner;                 // Inn(G) inside aut
  std::vector<int> out_transversal;  // minimal-index coset representatives
};

struct AutOptions {
  int max_order = 48;
};

AutomorphismData automorphism_group(const GroupPtr& g, const AutOptions& opt = {});

std::optional<GroupHom> isomorphic(const GroupPtr& g, const GroupPtr& h);

struct Catalog {
  std::vector<GroupPtr> groups;  // sorted by order, then fixed internal order
  bool complete = false;         // true iff all classes up to max_order present
  int max_order = 0;
};

/// One group per isomorphism class of order <= maxOrder; complete (and flagged
/// so) for maxOrder <= 15.
Catalog small_catalog(int max_order);

}  // namespace fibrum
