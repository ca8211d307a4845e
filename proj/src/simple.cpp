#include "fibrum/simple.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

namespace fibrum::simp {

namespace {

long long mod_pos(long long v, long long p) { return ((v % p) + p) % p; }

using FpMat = std::vector<std::vector<long long>>;

FpMat fp_zero(int r, int c) { return FpMat(r, std::vector<long long>(c, 0)); }

FpMat fp_identity(int n) {
  FpMat m = fp_zero(n, n);
  for (int i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

FpMat fp_mul(const FpMat& a, const FpMat& b, long long p) {
  int r = a.size(), k = b.size(), c = b[0].size();
  FpMat m = fp_zero(r, c);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < k; ++j) {
      if (a[i][j] == 0) continue;
      for (int l = 0; l < c; ++l) m[i][l] = (m[i][l] + a[i][j] * b[j][l]) % p;
    }
  return m;
}

long long fp_inv(long long a, long long p) {
  long long t = 0, newt = 1, r = p, newr = mod_pos(a, p);
  while (newr != 0) {
    long long q = r / newr;
    std::swap(t, newt); newt -= q * t;
    std::swap(r, newr); newr -= q * r;
  }
  check_internal(r == 1, "fp_inv of zero");
  return mod_pos(t, p);
}

int fp_rank(FpMat m, long long p) {
  if (m.empty() || m[0].empty()) return 0;
  int rows = m.size(), cols = m[0].size();
  int rank = 0;
  for (int col = 0; col < cols && rank < rows; ++col) {
    int piv = -1;
    for (int r = rank; r < rows; ++r)
      if (m[r][col] % p != 0) { piv = r; break; }
    if (piv < 0) continue;
    std::swap(m[rank], m[piv]);
    long long inv = fp_inv(m[rank][col], p);
    for (int c = col; c < cols; ++c) m[rank][c] = (m[rank][c] * inv) % p;
    for (int r = 0; r < rows; ++r) {
      if (r == rank || m[r][col] == 0) continue;
      long long f = m[r][col];
      for (int c = col; c < cols; ++c)
        m[r][c] = mod_pos(m[r][c] - f * m[rank][c], p);
    }
    ++rank;
  }
  return rank;
}

bool pair_matches(const FiberPair& cand, const idem::CentralPair& left) {
  return cand.k1().elems == left.k.elems && cand.phi1().vals == left.kappa.vals;
}

}  // namespace

bool ReducedPairs::is_reduced(const idem::CentralPair& p) const {
  for (const auto& f : flags)
    if (f.pair == p) return f.reduced;
  throw PreconditionError("pair not in M_G^G");
}

ReducedPairs reduced_pairs_bruteforce(const GroupPtr& g, long long n,
                                      const Catalog& catalog, int lattice_bound) {
  ReducedPairs out;
  out.g = g;
  out.n = n;
  out.catalog_complete = catalog.complete && catalog.max_order >= g->order() - 1;
  SubgroupRef derived = derived_subgroup(g);
  for (const auto& p : idem::mgg_pairs(g, n)) {
    ReducedFlag flag;
    flag.pair = p;
    bool inside_derived = std::includes(derived.elems.begin(), derived.elems.end(),
                                        p.k.elems.begin(), p.k.elems.end());
    if (p.kappa.is_faithful() && inside_derived) {
      // sufficient condition: no search needed
      flag.reduced = true;
      out.flags.push_back(std::move(flag));
      continue;
    }
    flag.reduced = true;
    for (const auto& h : catalog.groups) {
      if (h->order() >= g->order()) continue;
      BasisOptions opt;
      opt.require_p1_full = true;
      opt.require_p2_full = true;
      opt.lattice_bound = lattice_bound;
      for (const auto& cand : standard_basis(g, h, n, opt)) {
        if (pair_matches(cand.pair(), p)) {
          flag.reduced = false;
          flag.witness = cand;
          break;
        }
      }
      if (!flag.reduced) break;
    }
    out.flags.push_back(std::move(flag));
  }
  return out;
}

EssentialReport essential_basis(const GroupPtr& g, long long n, const RingSpec& ring,
                                const Catalog& catalog, int lattice_bound) {
  EssentialReport rep;
  rep.g = g;
  rep.n = n;
  rep.ring = ring;
  rep.reduced = reduced_pairs_bruteforce(g, n, catalog, lattice_bound);
  rep.classes = idem::linkage_classes(g, n, lattice_bound);

  BasisOptions all;
  all.lattice_bound = lattice_bound;
  auto basis = standard_basis(g, g, n, all);
  rep.dim_e = static_cast<long long>(basis.size());
  long long covering_nonreduced = 0, covering_total = 0;
  for (const auto& b : basis) {
    if (!b.pair().covering()) {
      ++rep.dim_ideal;
      continue;
    }
    ++covering_total;
    idem::CentralPair l0{g, b.pair().k1(), b.pair().phi1()};
    if (!rep.reduced.is_reduced(l0)) {
      ++rep.dim_ideal;
      ++covering_nonreduced;
    }
  }
  rep.dim_essential = rep.dim_e - rep.dim_ideal;

  long long block_sum = 0;
  for (size_t c = 0; c < rep.classes.classes.size(); ++c) {
    const auto& members = rep.classes.classes[c];
    const idem::CentralPair& repr = rep.classes.pairs[members.front()];
    if (!rep.reduced.is_reduced(repr)) continue;
    idem::GammaGroup gamma = idem::gamma_group(repr, lattice_bound);
    long long cls = static_cast<long long>(members.size());
    rep.block_dims.push_back(cls * cls * gamma.table->order());
    block_sum += rep.block_dims.back();
  }
  // Ebar = sum of reduced blocks; E^c + I = E (non-covering part is inside I).
  rep.decomposition_ok = (rep.dim_essential == block_sum) &&
                         (rep.dim_e == covering_total + (rep.dim_ideal - covering_nonreduced));
  return rep;
}

GammaModule trivial_module(const idem::GammaGroup& gamma, long long p) {
  GammaModule m;
  m.p = p;
  m.dim = 1;
  m.mats.assign(gamma.elements.size(), {{1}});
  m.simple_checked = true;
  return m;
}

bool validate_module(const idem::GammaGroup& gamma, const GammaModule& m) {
  int n = gamma.table->order();
  if (static_cast<int>(m.mats.size()) != n) return false;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      FpMat prod = fp_mul(m.mats[i], m.mats[j], m.p);
      if (prod != m.mats[gamma.table->mul(i, j)]) return false;
    }
  // identity acts as identity
  return m.mats[0] == fp_identity(m.dim);
}

bool spin_simple(const idem::GammaGroup& gamma, const GammaModule& m,
                 long long max_p, int max_dim) {
  require(m.p <= max_p && m.dim <= max_dim,
          "spin test guarded to small p and dim");
  // every nonzero vector generates the whole module
  int d = m.dim;
  std::vector<long long> v(d, 0);
  while (true) {
    int pos = 0;
    while (pos < d && ++v[pos] == m.p) v[pos++] = 0;
    if (pos == d) break;
    // span of {g . v}
    FpMat rows;
    for (const auto& mat : m.mats) {
      std::vector<long long> w(d, 0);
      for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) w[i] = (w[i] + mat[i][j] * v[j]) % m.p;
      rows.push_back(w);
    }
    if (fp_rank(rows, m.p) != d) return false;
  }
  return true;
}

std::vector<GammaModule> gamma_irreducibles(const idem::GammaGroup& gamma, long long p) {
  long long order = gamma.table->order();
  require(order % p != 0, "gamma_irreducibles needs p coprime to |Gamma|");
  std::vector<GammaModule> out;
  if (!gamma.table->is_abelian()) {
    out.push_back(trivial_module(gamma, p));
    return out;
  }
  long long expo = 1;
  for (int i = 0; i < gamma.table->order(); ++i)
    expo = std::lcm(expo, static_cast<long long>(gamma.table->element_order(i)));
  if ((p - 1) % expo != 0) {
    out.push_back(trivial_module(gamma, p));
    return out;
  }
  // least primitive root of p
  long long root = 0;
  for (long long r = 2; r < p; ++r) {
    long long x = r % p;
    bool prim = true;
    for (long long d = 1; d < p - 1; ++d) {
      if (x == 1) { prim = false; break; }
      x = (x * r) % p;
    }
    if (prim) { root = r; break; }
  }
  if (p == 2) root = 1;
  for (const auto& chi : homs_to_cyclic(full_subgroup(gamma.table), p - 1)) {
    GammaModule m;
    m.p = p;
    m.dim = 1;
    for (long long v : chi.vals) {
      long long x = 1;
      for (long long i = 0; i < v; ++i) x = (x * root) % p;
      m.mats.push_back({{x}});
    }
    m.simple_checked = true;
    out.push_back(std::move(m));
  }
  check_internal(static_cast<long long>(out.size()) == order,
                 "character count must equal |Gamma| in the split abelian case");
  return out;
}

Quadruple make_quadruple(const idem::CentralPair& triple, const GammaModule& v,
                         int lattice_bound) {
  Quadruple q;
  q.triple = triple;
  q.gamma = idem::gamma_group(triple, lattice_bound);
  require(validate_module(q.gamma, v), "V is not a module over Gamma");
  q.v = v;
  // reducedness check against the complete small catalog
  Catalog cat = small_catalog(std::min(15, triple.g->order() - 1 > 0 ? triple.g->order() - 1 : 1));
  ReducedPairs red = reduced_pairs_bruteforce(triple.g, triple.n(), cat, lattice_bound);
  require(red.is_reduced(triple), "(K, kappa) is not reduced in G");
  // linkage class members and connectors x_i with l0 = member, r0 = (K,kappa)
  idem::LinkageClasses lc = idem::linkage_classes(triple.g, triple.n(), lattice_bound);
  int idx = -1;
  for (size_t i = 0; i < lc.pairs.size(); ++i)
    if (lc.pairs[i] == triple) idx = static_cast<int>(i);
  check_internal(idx >= 0, "triple not in M_G^G");
  for (int member : lc.classes[lc.class_of[idx]])
    q.class_members.push_back(lc.pairs[member]);
  auto cb = idem::covering_basis(triple.g, triple.n(), lattice_bound);
  for (const auto& member : q.class_members) {
    std::optional<CanonicalPair> best;
    for (const auto& b : cb) {
      if (b.pair().k1().elems == member.k.elems &&
          b.pair().phi1().vals == member.kappa.vals &&
          b.pair().k2().elems == triple.k.elems &&
          b.pair().phi2().vals == triple.kappa.vals) {
        if (!best.has_value() || b < *best) best = b;
      }
    }
    check_internal(best.has_value(), "bimodule connector missing");
    q.connectors.push_back(*best);
  }
  return q;
}

namespace {

// Action of a standard (G,G)-basis class on Vtilde = ⊕_i x_i (x) V.
// Returns a (nc*dv) x (nc*dv) matrix over F_p, or nothing when the action is 0.
struct VtildeAction {
  const Quadruple& q;
  RingSpec zz = RingSpec::integers();
  std::map<std::pair<std::vector<int>, std::vector<long long>>, FpMat> memo;

  explicit VtildeAction(const Quadruple& qq) : q(qq) {}

  int dim() const { return static_cast<int>(q.class_members.size()) * q.v.dim; }

  int member_index(const FiberPair& y) const {
    for (size_t j = 0; j < q.class_members.size(); ++j)
      if (y.k1().elems == q.class_members[j].k.elems &&
          y.phi1().vals == q.class_members[j].kappa.vals)
        return static_cast<int>(j);
    return -1;
  }

  const FpMat& act(const CanonicalPair& a) {
    auto key = a.pair().key();
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
    int nc = static_cast<int>(q.class_members.size());
    int dv = q.v.dim;
    FpMat m = fp_zero(nc * dv, nc * dv);
    if (a.pair().covering()) {
      for (int i = 0; i < nc; ++i) {
        FiberedElement w = mackey_product_pairs(a.pair(), q.connectors[i].pair(), zz);
        for (const auto& [y, coeff] : w.terms()) {
          if (!y.pair().covering()) continue;
          // r0(y) >= (K,kappa); only equality survives multiplication by f.
          if (y.pair().k2().elems != q.triple.k.elems ||
              y.pair().phi2().vals != q.triple.kappa.vals)
            continue;
          int j = member_index(y.pair());
          check_internal(j >= 0, "term lands outside the linkage class block");
          // gamma = x_j^op . y
          FiberedElement gprod = mackey_product_pairs(
              q.connectors[j].pair().opposite(), y.pair(), zz);
          check_internal(gprod.terms().size() == 1, "connector transport not transitive");
          int gidx = q.gamma.index_of(gprod.terms().begin()->first);
          check_internal(gidx >= 0, "transport left Gamma");
          long long c = mod_pos(std::stoll(coeff.str()), q.v.p);
          if (c == 0) continue;
          for (int r = 0; r < dv; ++r)
            for (int s = 0; s < dv; ++s)
              m[j * dv + r][i * dv + s] =
                  (m[j * dv + r][i * dv + s] + c * q.v.mats[gidx][r][s]) % q.v.p;
        }
      }
    }
    return memo.emplace(std::move(key), std::move(m)).first->second;
  }
};

}  // namespace

long long simple_evaluation(const Quadruple& q, const GroupPtr& h, int lattice_bound) {
  const GroupPtr& g = q.triple.g;
  if (static_cast<long long>(g->order()) * h->order() > 64)
    throw ResourceError("simple_evaluation: |G|*|H| exceeds the basis-wise bound");
  long long n = q.triple.n();
  long long p = q.v.p;
  RingSpec zz = RingSpec::integers();
  VtildeAction action(q);
  int dvt = action.dim();

  // Only pairs with a full G-side projection can contribute, and only when
  // the G-side invariants sit below the (K,kappa)-block: every Mackey term
  // grows l0/r0, and the Vtilde action vanishes off the block.
  auto leq = [n](const SubgroupRef& small, const std::vector<long long>& small_vals,
                 const SubgroupRef& big, const AHom& big_chi) {
    if (!std::includes(big.elems.begin(), big.elems.end(), small.elems.begin(),
                       small.elems.end()))
      return false;
    for (size_t i = 0; i < small.elems.size(); ++i)
      if (small_vals[i] % n != big_chi(small.elems[i]) % n) return false;
    return true;
  };
  BasisOptions row_opt;
  row_opt.require_p2_full = true;
  row_opt.lattice_bound = lattice_bound;
  std::vector<CanonicalPair> rows;
  for (const auto& x : standard_basis(h, g, n, row_opt))  // x in B(H,G)
    if (leq(x.pair().k2(), x.pair().phi2().vals, q.triple.k, q.triple.kappa))
      rows.push_back(x);
  BasisOptions col_opt;
  col_opt.require_p1_full = true;
  col_opt.lattice_bound = lattice_bound;
  std::vector<CanonicalPair> cols;
  for (const auto& y : standard_basis(g, h, n, col_opt)) {  // y in B(G,H)
    bool keep = false;
    for (const auto& member : q.class_members)
      if (leq(y.pair().k1(), y.pair().phi1().vals, member.k, member.kappa)) keep = true;
    if (keep) cols.push_back(y);
  }

  if (rows.empty() || cols.empty()) return 0;
  FpMat phi = fp_zero(static_cast<int>(rows.size()) * dvt,
                      static_cast<int>(cols.size()) * dvt);
  for (size_t yi = 0; yi < cols.size(); ++yi)
    for (size_t xi = 0; xi < rows.size(); ++xi) {
      FiberedElement prod = mackey_product_pairs(cols[yi].pair(), rows[xi].pair(), zz);
      FpMat m = fp_zero(dvt, dvt);
      bool nonzero = false;
      for (const auto& [t, coeff] : prod.terms()) {
        long long c = mod_pos(std::stoll(coeff.str()), p);
        if (c == 0) continue;
        const FpMat& am = action.act(t);
        for (int r = 0; r < dvt; ++r)
          for (int s = 0; s < dvt; ++s)
            if (am[r][s] != 0) {
              m[r][s] = (m[r][s] + c * am[r][s]) % p;
              nonzero = true;
            }
      }
      if (!nonzero) continue;
      // entry((x,v),(y,u)) = coord_u((y.x) . (x_block v))
      for (int u = 0; u < dvt; ++u)
        for (int v = 0; v < dvt; ++v)
          phi[xi * dvt + v][yi * dvt + u] = m[u][v];
    }
  return fp_rank(phi, p);
}

bool quadruple_linkage(const Quadruple& a, const Quadruple& b, int lattice_bound) {
  if (a.triple.n() != b.triple.n()) return false;
  if (a.v.p != b.v.p || a.v.dim != b.v.dim) return false;
  idem::GammaBimodule bm = idem::gamma_bimodule(a.gamma, b.gamma);
  if (bm.empty()) return false;
  // V_a isomorphic to W_b transported through the bimodule: W ∘ transport^{-1}.
  int nb = static_cast<int>(b.gamma.elements.size());
  std::vector<int> inv_transport(nb, -1);
  for (int y = 0; y < nb; ++y) inv_transport[bm.transport[y]] = y;
  // Solve T A_g = B_g T for all g in Gamma_a; nonzero T suffices (Schur).
  int d = a.v.dim;
  long long p = a.v.p;
  zlin::Mat sys;  // rows: one per (g, i, j); unknowns T entries d*d
  for (size_t gidx = 0; gidx < a.gamma.elements.size(); ++gidx) {
    const FpMat& ag = a.v.mats[gidx];
    const FpMat& bg = b.v.mats[inv_transport[gidx]];
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) {
        std::vector<long long> row(d * d, 0);
        // (T ag)_{ij} - (bg T)_{ij} = sum_k T_{ik} ag_{kj} - bg_{ik} T_{kj}
        for (int k = 0; k < d; ++k) {
          row[i * d + k] = mod_pos(row[i * d + k] + ag[k][j], p);
          row[k * d + j] = mod_pos(row[k * d + j] - bg[i][k], p);
        }
        sys.push_back(std::move(row));
      }
  }
  FpMat fpsys(sys.size(), std::vector<long long>(d * d, 0));
  for (size_t i = 0; i < sys.size(); ++i)
    for (int j = 0; j < d * d; ++j) fpsys[i][j] = mod_pos(sys[i][j], p);
  return fp_rank(fpsys, p) < d * d;  // nontrivial kernel => intertwiner exists
}

bool nonvanishing_filter(const idem::CentralPair& triple, const GroupPtr& h,
                         int lattice_bound) {
  const GroupPtr& g = triple.g;
  long long n = triple.n();
  // abelian invariants for the K ∩ G' comparison
  auto derived_meet_factors = [&](const GroupPtr& grp, const SubgroupRef& k) {
    SubgroupRef meet = intersect(k, derived_subgroup(grp));
    EmbeddedGroup e = subgroup_as_group(meet);
    return invariant_factors(e.group);
  };
  auto target_quot = quotient_group(g, triple.k).group;
  auto target_meet = derived_meet_factors(g, triple.k);

  LatticeOptions lo;
  lo.max_order = lattice_bound;
  for (const auto& h2info : subgroup_lattice(h, lo)) {
    EmbeddedGroup eh2 = subgroup_as_group(h2info.sub);
    for (const auto& h1info : subgroup_lattice(eh2.group)) {
      if (!h1info.normal) continue;
      QuotientData sect = quotient_group(eh2.group, h1info.sub);
      const GroupPtr& i = sect.group;
      if (i->order() < g->order()) continue;
      for (const auto& cand : idem::mgg_pairs(i, n)) {
        if (!cand.kappa.is_faithful()) continue;
        if (quotient_group(i, cand.k).group->order() != target_quot->order()) continue;
        if (!isomorphic(quotient_group(i, cand.k).group, target_quot).has_value())
          continue;
        if (derived_meet_factors(i, cand.k) != target_meet) continue;
        cohom::LinkageResult link = cohom::linkage_via_cohomology(triple, cand);
        if (link.linked) return true;
      }
    }
  }
  return false;
}

}  // namespace fibrum::simp
