#include "fibrum/idempotents.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>

namespace fibrum::idem {

namespace {

// Single-class Mackey product inside the covering world: the product of two
// covering basis classes is either zero or one basis class.
std::optional<CanonicalPair> covering_mul(const CanonicalPair& a, const CanonicalPair& b) {
  FiberedElement prod = mackey_product_pairs(a.pair(), b.pair(), RingSpec::integers());
  if (prod.terms().empty()) return std::nullopt;
  check_internal(prod.terms().size() == 1, "covering product is not transitive");
  const auto& [p, c] = *prod.terms().begin();
  check_internal(c == Coeff::one(RingSpec::integers()), "covering product has multiplicity");
  return p;
}

bool g_stable(const GroupPtr& g, const AHom& kappa) {
  for (int x = 0; x < g->order(); ++x) {
    for (size_t i = 0; i < kappa.dom.elems.size(); ++i) {
      int e = kappa.dom.elems[i];
      int ce = g->conj(x, e);
      int j = kappa.dom.index_of(ce);
      if (j < 0 || kappa.vals[i] != kappa.vals[j]) return false;
    }
  }
  return true;
}

}  // namespace

std::vector<CentralPair> mgg_pairs(const GroupPtr& g, long long n) {
  std::vector<CentralPair> out;
  for (const auto& info : subgroup_lattice(g)) {
    if (!info.normal) continue;
    for (const auto& kappa : homs_to_cyclic(info.sub, n))
      if (g_stable(g, kappa)) out.push_back(CentralPair{g, info.sub, kappa});
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool pair_leq(const CentralPair& a, const CentralPair& b) {
  if (!std::includes(b.k.elems.begin(), b.k.elems.end(), a.k.elems.begin(),
                     a.k.elems.end()))
    return false;
  for (size_t i = 0; i < a.k.elems.size(); ++i) {
    int j = b.k.index_of(a.k.elems[i]);
    if (b.kappa.vals[j] % b.n() != a.kappa.vals[i] % a.n()) return false;
  }
  return true;
}

long long mobius_normal(const GroupPtr& g, const std::vector<int>& k_elems,
                        const std::vector<int>& l_elems) {
  // normal subgroups between K and L
  std::vector<std::vector<int>> between;
  for (const auto& info : subgroup_lattice(g)) {
    if (!info.normal) continue;
    const auto& m = info.sub.elems;
    if (std::includes(m.begin(), m.end(), k_elems.begin(), k_elems.end()) &&
        std::includes(l_elems.begin(), l_elems.end(), m.begin(), m.end()))
      between.push_back(m);
  }
  // recursion mu(L, L) = 1, sum_{K<=M<=L} mu(M, L) = 0
  std::map<std::vector<int>, long long> mu;
  std::sort(between.begin(), between.end(), [](const auto& a, const auto& b) {
    return a.size() > b.size();
  });
  for (const auto& m : between) {
    if (m == l_elems) {
      mu[m] = 1;
      continue;
    }
    long long s = 0;
    for (const auto& mm : between)
      if (mm != m &&
          std::includes(mm.begin(), mm.end(), m.begin(), m.end()))
        s += mu.at(mm);
    mu[m] = -s;
  }
  auto it = mu.find(k_elems);
  require(it != mu.end(), "K is not normal below L");
  return it->second;
}

FiberPair e_pair(const CentralPair& p) {
  const GroupPtr& g = p.g;
  int ng = g->order();
  std::vector<int> elems;
  std::vector<long long> vals;
  for (int a = 0; a < ng; ++a)
    for (int b = 0; b < ng; ++b) {
      int d = g->mul(a, g->inv(b));  // a b^-1
      int i = p.k.index_of(d);
      if (i < 0) continue;
      elems.push_back(a * ng + b);
      vals.push_back(p.kappa.vals[i]);
    }
  return FiberPair(g, g, p.n(), elems, vals);
}

FiberedElement e_element(const CentralPair& p, const RingSpec& ring) {
  return FiberedElement::basis(canonicalize(e_pair(p)), ring);
}

FiberedElement f_element(const CentralPair& p, const RingSpec& ring) {
  FiberedElement out(p.g, p.g, p.n(), ring);
  for (const auto& q : mgg_pairs(p.g, p.n())) {
    if (!pair_leq(p, q)) continue;
    long long mu = mobius_normal(p.g, p.k.elems, q.k.elems);
    if (mu == 0) continue;
    out = out + e_element(q, ring).scaled(Coeff::from_integer(ring, mu));
  }
  return out;
}

std::vector<CanonicalPair> covering_basis(const GroupPtr& g, long long n,
                                          int lattice_bound) {
  BasisOptions opt;
  opt.require_p1_full = true;
  opt.require_p2_full = true;
  opt.lattice_bound = lattice_bound;
  return standard_basis(g, g, n, opt);
}

LinkageClasses linkage_classes(const GroupPtr& g, long long n, int lattice_bound) {
  LinkageClasses out;
  out.pairs = mgg_pairs(g, n);
  int m = static_cast<int>(out.pairs.size());
  auto index_of_pair = [&](const std::vector<int>& k, const std::vector<long long>& v) {
    for (int i = 0; i < m; ++i)
      if (out.pairs[i].k.elems == k && out.pairs[i].kappa.vals == v) return i;
    return -1;
  };
  std::vector<int> parent(m);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) {
    while (parent[x] != x) { parent[x] = parent[parent[x]]; x = parent[x]; }
    return x;
  };
  for (const auto& b : covering_basis(g, n, lattice_bound)) {
    int i = index_of_pair(b.pair().k1().elems, b.pair().phi1().vals);
    int j = index_of_pair(b.pair().k2().elems, b.pair().phi2().vals);
    check_internal(i >= 0 && j >= 0, "covering invariants must be G-stable");
    int a = find(i), bb = find(j);
    if (a != bb) parent[std::max(a, bb)] = std::min(a, bb);
  }
  std::map<int, int> root_to_class;
  out.class_of.resize(m);
  for (int i = 0; i < m; ++i) {
    int r = find(i);
    auto [it, fresh] = root_to_class.emplace(r, static_cast<int>(root_to_class.size()));
    out.class_of[i] = it->second;
    if (fresh) out.classes.push_back({});
    out.classes[it->second].push_back(i);
  }
  return out;
}

FiberedElement class_e_element(const LinkageClasses& lc, int cls, const RingSpec& ring) {
  const auto& members = lc.classes.at(cls);
  FiberedElement out(lc.pairs[0].g, lc.pairs[0].g, lc.pairs[0].n(), ring);
  for (int i : members) out = out + e_element(lc.pairs[i], ring);
  return out;
}

FiberedElement class_f_element(const LinkageClasses& lc, int cls, const RingSpec& ring) {
  const auto& members = lc.classes.at(cls);
  FiberedElement out(lc.pairs[0].g, lc.pairs[0].g, lc.pairs[0].n(), ring);
  for (int i : members) out = out + f_element(lc.pairs[i], ring);
  return out;
}

int GammaGroup::index_of(const CanonicalPair& p) const {
  for (size_t i = 0; i < elements.size(); ++i)
    if (elements[i] == p) return static_cast<int>(i);
  return -1;
}

GammaGroup gamma_group(const CentralPair& p, int lattice_bound) {
  GammaGroup out;
  out.base = p;
  CanonicalPair id = canonicalize(e_pair(p));
  std::vector<CanonicalPair> elems{id};
  for (const auto& b : covering_basis(p.g, p.n(), lattice_bound)) {
    if (b == id) continue;
    if (b.pair().k1().elems == p.k.elems && b.pair().phi1().vals == p.kappa.vals &&
        b.pair().k2().elems == p.k.elems && b.pair().phi2().vals == p.kappa.vals)
      elems.push_back(b);
  }
  out.elements = std::move(elems);
  int m = static_cast<int>(out.elements.size());
  std::vector<int> mul(static_cast<size_t>(m) * m, -1);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      auto prod = covering_mul(out.elements[i], out.elements[j]);
      check_internal(prod.has_value(), "Gamma product vanished");
      int k = out.index_of(*prod);
      check_internal(k >= 0, "Gamma is not closed under multiplication");
      mul[i * m + j] = k;
    }
  out.table = GroupTable::make("Gamma", std::move(mul));
  // opposite = inverse
  for (int i = 0; i < m; ++i) {
    CanonicalPair op = canonicalize(out.elements[i].pair().opposite());
    check_internal(out.table->inv(i) == out.index_of(op),
                   "opposite is not the Gamma inverse");
  }
  return out;
}

GammaBimodule gamma_bimodule(const GammaGroup& left, const GammaGroup& right) {
  GammaBimodule out;
  out.left_base = left.base;
  out.right_base = right.base;
  require(left.base.n() == right.base.n(), "modulus mismatch");
  BasisOptions opt;
  opt.require_p1_full = true;
  opt.require_p2_full = true;
  for (const auto& b :
       standard_basis(left.base.g, right.base.g, left.base.n(), opt)) {
    if (b.pair().k1().elems == left.base.k.elems &&
        b.pair().phi1().vals == left.base.kappa.vals &&
        b.pair().k2().elems == right.base.k.elems &&
        b.pair().phi2().vals == right.base.kappa.vals)
      out.elements.push_back(b);
  }
  if (out.elements.empty()) return out;
  int m = static_cast<int>(out.elements.size());
  auto index_of = [&](const CanonicalPair& p) {
    for (int i = 0; i < m; ++i)
      if (out.elements[i] == p) return i;
    return -1;
  };
  int nl = static_cast<int>(left.elements.size());
  int nr = static_cast<int>(right.elements.size());
  out.left_act.assign(nl, std::vector<int>(m, -1));
  for (int gidx = 0; gidx < nl; ++gidx)
    for (int i = 0; i < m; ++i) {
      auto prod = covering_mul(left.elements[gidx], out.elements[i]);
      check_internal(prod.has_value(), "left Gamma action vanished");
      out.left_act[gidx][i] = index_of(*prod);
      check_internal(out.left_act[gidx][i] >= 0, "left action leaves the bimodule");
    }
  out.right_act.assign(nr, std::vector<int>(m, -1));
  for (int didx = 0; didx < nr; ++didx)
    for (int i = 0; i < m; ++i) {
      auto prod = covering_mul(out.elements[i], right.elements[didx]);
      check_internal(prod.has_value(), "right Gamma action vanished");
      out.right_act[didx][i] = index_of(*prod);
      check_internal(out.right_act[didx][i] >= 0, "right action leaves the bimodule");
    }
  // freeness and transitivity on both sides
  check_internal(nl == m && nr == m, "Gamma and bimodule sizes differ");
  for (int side = 0; side < 2; ++side) {
    const auto& act = side == 0 ? out.left_act : out.right_act;
    std::set<int> orbit_of_0;
    for (const auto& row : act) orbit_of_0.insert(row[0]);
    check_internal(static_cast<int>(orbit_of_0.size()) == m,
                   "Gamma action is not free and transitive");
  }
  // transport of structure: y -> u y u^op for the minimal element u
  const CanonicalPair& u = out.elements[0];
  out.transport.resize(nr);
  for (int y = 0; y < nr; ++y) {
    auto step = covering_mul(u, right.elements[y]);
    check_internal(step.has_value(), "transport step vanished");
    auto full = covering_mul(*step, canonicalize(u.pair().opposite()));
    check_internal(full.has_value(), "transport step vanished");
    out.transport[y] = left.index_of(*full);
    check_internal(out.transport[y] >= 0, "transport left Gamma");
  }
  return out;
}

std::optional<CanonicalPair> linkage_witness_bruteforce(const CentralPair& a,
                                                        const CentralPair& b,
                                                        int lattice_bound) {
  require(a.n() == b.n(), "modulus mismatch");
  BasisOptions opt;
  opt.require_p1_full = true;
  opt.require_p2_full = true;
  opt.lattice_bound = lattice_bound;
  for (const auto& cand : standard_basis(a.g, b.g, a.n(), opt)) {
    if (cand.pair().k1().elems == a.k.elems && cand.pair().phi1().vals == a.kappa.vals &&
        cand.pair().k2().elems == b.k.elems && cand.pair().phi2().vals == b.kappa.vals)
      return cand;
  }
  return std::nullopt;
}

CoveringReport covering_algebra_report(const GroupPtr& g, long long n,
                                       const RingSpec& ring, bool check_blocks,
                                       int lattice_bound) {
  CoveringReport rep;
  rep.n = n;
  auto basis = covering_basis(g, n, lattice_bound);
  rep.dim = static_cast<long long>(basis.size());
  rep.classes = linkage_classes(g, n, lattice_bound);

  long long sum = 0;
  for (size_t c = 0; c < rep.classes.classes.size(); ++c) {
    CoveringBlock blk;
    blk.class_id = static_cast<int>(c);
    blk.members = rep.classes.classes[c];
    const CentralPair& repr = rep.classes.pairs[blk.members.front()];
    GammaGroup gamma = gamma_group(repr, lattice_bound);
    blk.gamma_order = gamma.table->order();
    long long cls = static_cast<long long>(blk.members.size());
    blk.block_dim = cls * cls * blk.gamma_order;
    sum += blk.block_dim;
    rep.blocks.push_back(std::move(blk));
  }
  rep.dimension_identity = (sum == rep.dim);

  if (check_blocks) {
    rep.structure_constants_ok = true;
    std::map<std::pair<std::vector<int>, std::vector<long long>>, int> basis_index;
    for (size_t i = 0; i < basis.size(); ++i)
      basis_index[basis[i].pair().key()] = static_cast<int>(i);
    // pair products repeat heavily across the block checks; memoize them
    using Key = std::pair<std::pair<std::vector<int>, std::vector<long long>>,
                          std::pair<std::vector<int>, std::vector<long long>>>;
    std::map<Key, FiberedElement> prod_memo;
    auto mul_elements = [&](const FiberedElement& x, const FiberedElement& y) {
      FiberedElement out(x.g(), y.h(), x.n(), x.ring());
      for (const auto& [p, cp] : x.terms())
        for (const auto& [q, cq] : y.terms()) {
          Key key{p.pair().key(), q.pair().key()};
          auto it = prod_memo.find(key);
          if (it == prod_memo.end())
            it = prod_memo.emplace(key,
                     mackey_product_pairs(p.pair(), q.pair(), x.ring())).first;
          Coeff scale = cp * cq;
          for (const auto& [r, cr] : it->second.terms()) out.add_term(r, cr * scale);
        }
      return out;
    };
    for (size_t c = 0; c < rep.classes.classes.size(); ++c) {
      const CentralPair& repr = rep.classes.pairs[rep.classes.classes[c].front()];
      GammaGroup gamma = gamma_group(repr, lattice_bound);
      FiberedElement f = f_element(repr, ring);
      int m = static_cast<int>(gamma.elements.size());
      std::vector<FiberedElement> img;
      for (int i = 0; i < m; ++i) {
        FiberedElement x = FiberedElement::basis(gamma.elements[i], ring);
        img.push_back(mul_elements(mul_elements(f, x), f));
      }
      // homomorphism on structure constants
      for (int i = 0; i < m && rep.structure_constants_ok; ++i)
        for (int j = 0; j < m && rep.structure_constants_ok; ++j) {
          FiberedElement lhs = mul_elements(img[i], img[j]);
          FiberedElement rhs = mul_elements(mul_elements(f,
                  FiberedElement::basis(gamma.elements[gamma.table->mul(i, j)], ring)), f);
          if (!(lhs == rhs)) rep.structure_constants_ok = false;
        }
      // linear independence of the images over Q
      std::vector<std::vector<mpq_class>> rows;
      for (const auto& x : img) {
        std::vector<mpq_class> row(basis.size(), 0);
        for (const auto& [p, cf] : x.terms()) {
          auto it = basis_index.find(p.pair().key());
          check_internal(it != basis_index.end(), "term outside covering basis");
          row[it->second] = mpq_class(cf.str());
        }
        rows.push_back(std::move(row));
      }
      int rank = 0;
      size_t cols = basis.size();
      for (size_t col = 0; col < cols && rank < m; ++col) {
        int piv = -1;
        for (int r = rank; r < m; ++r)
          if (rows[r][col] != 0) { piv = r; break; }
        if (piv < 0) continue;
        std::swap(rows[rank], rows[piv]);
        for (int r = 0; r < m; ++r) {
          if (r == rank || rows[r][col] == 0) continue;
          mpq_class factor = rows[r][col] / rows[rank][col];
          for (size_t cc = col; cc < cols; ++cc)
            rows[r][cc] -= factor * rows[rank][cc];
        }
        ++rank;
      }
      if (rank != m) rep.structure_constants_ok = false;
    }
  }
  return rep;
}

SesReport ses_report(const CentralPair& p, int lattice_bound) {
  require(p.kappa.is_faithful(), "ses_report needs a faithful kappa");
  SesReport rep;
  rep.base = p;
  const GroupPtr& g = p.g;
  long long n = p.n();
  GammaGroup gamma = gamma_group(p, lattice_bound);
  rep.gamma_order = gamma.table->order();

  QuotientData quot = quotient_group(g, p.k);
  auto chars = homs_to_cyclic(full_subgroup(quot.group), n);
  rep.quot_chars = static_cast<long long>(chars.size());

  // iota: theta -> class of (Delta_K(G), theta~)
  std::set<int> iota_image;
  int ng = g->order();
  for (const auto& theta : chars) {
    std::vector<int> elems;
    std::vector<long long> vals;
    for (int a = 0; a < ng; ++a)
      for (int b = 0; b < ng; ++b) {
        int d = g->mul(a, g->inv(b));
        int i = p.k.index_of(d);
        if (i < 0) continue;
        elems.push_back(a * ng + b);
        vals.push_back((p.kappa.vals[i] + theta(quot.proj(b))) % n);
      }
    CanonicalPair cp = canonicalize(FiberPair(g, g, n, elems, vals));
    int idx = gamma.index_of(cp);
    check_internal(idx >= 0, "iota lands outside Gamma");
    iota_image.insert(idx);
  }
  rep.iota_order = static_cast<long long>(iota_image.size());

  // pi: recover eta in Aut(G/K) from U, reduce to Out(G/K)
  AutomorphismData aut = automorphism_group(quot.group, AutOptions{lattice_bound});
  auto out_rep = [&](int a) {  // minimal element of the coset a*Inn
    int best = -1;
    for (int i : aut.inner.elems) {
      int x = aut.aut->mul(a, i);
      if (best < 0 || x < best) best = x;
    }
    return best;
  };
  std::map<std::vector<int>, int> aut_index;
  for (size_t i = 0; i < aut.maps.size(); ++i) aut_index[aut.maps[i].img] = static_cast<int>(i);
  std::set<int> impi;
  std::set<int> kernel;
  for (size_t x = 0; x < gamma.elements.size(); ++x) {
    const FiberPair& fp = gamma.elements[x].pair();
    std::vector<int> eta(quot.group->order(), -1);
    for (int e : fp.u_elems()) {
      int g1 = e / ng, g2 = e % ng;
      int src = quot.proj(g2), dst = quot.proj(g1);
      if (eta[src] < 0) eta[src] = dst;
      else check_internal(eta[src] == dst, "U does not induce a map on G/K");
    }
    auto it = aut_index.find(eta);
    check_internal(it != aut_index.end(), "eta is not an automorphism");
    int o = out_rep(it->second);
    impi.insert(o);
    if (o == out_rep(0) || aut.inner.contains(it->second)) kernel.insert(static_cast<int>(x));
  }
  rep.impi_order = static_cast<long long>(impi.size());
  rep.orders_match = (rep.gamma_order == rep.quot_chars * rep.impi_order);
  rep.refined_orders_match = (rep.gamma_order == rep.iota_order * rep.impi_order);
  rep.kernel_is_image = (kernel == iota_image);
  rep.impi_out_reps.assign(impi.begin(), impi.end());

  // desk-scale complement search for the extension
  for (const auto& sub : subgroup_lattice(gamma.table, LatticeOptions{gamma.table->order()})) {
    if (sub.sub.order() != static_cast<int>(rep.impi_order)) continue;
    int meet = 0;
    for (int e : sub.sub.elems)
      if (iota_image.count(e)) ++meet;
    if (meet == 1) { rep.split_found = true; break; }
  }
  return rep;
}

}  // namespace fibrum::idem
