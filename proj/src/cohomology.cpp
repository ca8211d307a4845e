#include "fibrum/cohomology.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace fibrum::cohom {

// ---------------------------------------------------------------------------
// FinAb / AbelianCoords
// ---------------------------------------------------------------------------

long long FinAb::order() const {
  long long n = 1;
  for (long long d : factors) n *= d;
  return n;
}

AbElem ab_zero(const FinAb& b) { return AbElem(b.factors.size(), 0); }

AbElem ab_reduce(const FinAb& b, AbElem v) {
  for (size_t i = 0; i < v.size(); ++i)
    v[i] = ((v[i] % b.factors[i]) + b.factors[i]) % b.factors[i];
  return v;
}

AbElem ab_add(const FinAb& b, const AbElem& x, const AbElem& y) {
  AbElem v(x.size());
  for (size_t i = 0; i < x.size(); ++i) v[i] = (x[i] + y[i]) % b.factors[i];
  return v;
}

AbElem ab_sub(const FinAb& b, const AbElem& x, const AbElem& y) {
  AbElem v(x.size());
  for (size_t i = 0; i < x.size(); ++i)
    v[i] = ((x[i] - y[i]) % b.factors[i] + b.factors[i]) % b.factors[i];
  return v;
}

AbElem ab_neg(const FinAb& b, const AbElem& x) {
  AbElem v(x.size());
  for (size_t i = 0; i < x.size(); ++i)
    v[i] = (b.factors[i] - x[i]) % b.factors[i];
  return v;
}

AbElem AbelianCoords::coords(int parent_elem) const {
  auto it = table_.find(parent_elem);
  require(it != table_.end(), "element outside the abelian subgroup");
  return it->second;
}

int AbelianCoords::element(const AbElem& v) const {
  auto it = inverse_.find(ab_reduce(shape, v));
  check_internal(it != inverse_.end(), "bad abelian coordinates");
  return it->second;
}

AbelianCoords abelian_coords(const SubgroupRef& sub) {
  AbelianCoords out;
  out.sub = sub;
  EmbeddedGroup e = subgroup_as_group(sub);
  require(e.group->is_abelian(), "abelian_coords needs an abelian subgroup");
  int m = e.group->order();
  if (m == 1) {
    out.table_[sub.elems[0]] = {};
    out.inverse_[{}] = sub.elems[0];
    return out;
  }
  // chain generators with relation matrix, then SNF with transforms
  std::vector<int> gens;
  std::vector<int> orders;
  std::vector<std::vector<int>> power_expr;
  std::vector<std::vector<int>> nf(m);
  {
    std::vector<int> cur{0};
    while (static_cast<int>(cur.size()) < m) {
      int gnew = -1;
      for (int x = 1; x < m; ++x)
        if (!std::binary_search(cur.begin(), cur.end(), x)) { gnew = x; break; }
      int r = 1, p = gnew;
      while (!std::binary_search(cur.begin(), cur.end(), p)) { p = e.group->mul(p, gnew); ++r; }
      int gi = static_cast<int>(gens.size());
      gens.push_back(gnew);
      orders.push_back(r);
      std::vector<int> pe = nf[p];
      pe.resize(gi, 0);
      power_expr.push_back(pe);
      std::vector<int> next;
      for (int ee = 0, pw = 0; ee < r; ++ee) {
        for (int s : std::vector<int>(cur)) {
          int y = e.group->mul(s, pw);
          next.push_back(y);
          std::vector<int> v = nf[s];
          v.resize(gi + 1, 0);
          v[gi] = ee;
          nf[y] = v;
        }
        pw = e.group->mul(pw, gnew);
      }
      std::sort(next.begin(), next.end());
      cur = next;
    }
    for (auto& v : nf) v.resize(gens.size(), 0);
  }
  int k = static_cast<int>(gens.size());
  zlin::Mat rel(k, std::vector<long long>(k, 0));
  for (int i = 0; i < k; ++i) {
    rel[i][i] = orders[i];
    for (int j = 0; j < i; ++j) rel[i][j] = -power_expr[i][j];
  }
  auto snf = zlin::smith_normal_form(rel, true, true);
  // new generators h_j = prod_i g_i^(V[i][j]) of order diag[j]
  std::vector<int> hs;
  std::vector<long long> ds;
  for (int j = 0; j < k; ++j) {
    long long d = snf.d[j][j];
    if (d <= 1) continue;
    int h = 0;
    for (int i = 0; i < k; ++i)
      h = e.group->mul(h, e.group->pow(gens[i], snf.right[i][j]));
    hs.push_back(h);
    ds.push_back(d);
  }
  out.shape.factors = ds;
  out.gens.resize(hs.size());
  for (size_t i = 0; i < hs.size(); ++i) out.gens[i] = e.to_parent[hs[i]];
  // enumerate all coordinate tuples
  int r = static_cast<int>(ds.size());
  AbElem v(r, 0);
  while (true) {
    int x = 0;
    for (int i = 0; i < r; ++i) x = e.group->mul(x, e.group->pow(hs[i], v[i]));
    int parent = e.to_parent[x];
    check_internal(!out.inverse_.count(v) || out.inverse_[v] == parent,
                   "abelian coordinates are not unique");
    out.table_[parent] = v;
    out.inverse_[v] = parent;
    int pos = 0;
    while (pos < r && ++v[pos] == ds[pos]) v[pos++] = 0;
    if (pos == r) break;
  }
  check_internal(static_cast<int>(out.table_.size()) == m,
                 "abelian coordinates do not cover the subgroup");
  return out;
}

// ---------------------------------------------------------------------------
// Cocycle tables
// ---------------------------------------------------------------------------

bool CocycleTable::is_cocycle() const {
  int nq = q->order();
  for (int x = 0; x < nq; ++x)
    for (int y = 0; y < nq; ++y)
      for (int z = 0; z < nq; ++z) {
        AbElem lhs = ab_add(b, at(x, y), at(q->mul(x, y), z));
        AbElem rhs = ab_add(b, at(y, z), at(x, q->mul(y, z)));
        if (lhs != rhs) return false;
      }
  return true;
}

bool CocycleTable::is_symmetric() const {
  int nq = q->order();
  for (int x = 0; x < nq; ++x)
    for (int y = 0; y < x; ++y)
      if (at(x, y) != at(y, x)) return false;
  return true;
}

bool CocycleTable::is_normalized() const {
  int nq = q->order();
  for (int x = 0; x < nq; ++x)
    if (at(0, x) != ab_zero(b) || at(x, 0) != ab_zero(b)) return false;
  return true;
}

CocycleTable zero_cocycle(const GroupPtr& q, const FinAb& b) {
  CocycleTable c{q, b, {}};
  c.vals.assign(static_cast<size_t>(q->order()) * q->order(), ab_zero(b));
  return c;
}

CocycleTable cocycle_add(const CocycleTable& a, const CocycleTable& c) {
  CocycleTable out = a;
  for (size_t i = 0; i < out.vals.size(); ++i)
    out.vals[i] = ab_add(a.b, out.vals[i], c.vals[i]);
  return out;
}

CocycleTable cocycle_sub(const CocycleTable& a, const CocycleTable& c) {
  CocycleTable out = a;
  for (size_t i = 0; i < out.vals.size(); ++i)
    out.vals[i] = ab_sub(a.b, out.vals[i], c.vals[i]);
  return out;
}

CocycleTable cocycle_scaled(const CocycleTable& a, long long m) {
  CocycleTable out = a;
  for (auto& v : out.vals) {
    for (size_t i = 0; i < v.size(); ++i)
      v[i] = ((v[i] * m) % a.b.factors[i] + a.b.factors[i]) % a.b.factors[i];
  }
  return out;
}

CocycleTable coboundary(const GroupPtr& q, const FinAb& b,
                        const std::vector<AbElem>& mu) {
  CocycleTable out = zero_cocycle(q, b);
  int nq = q->order();
  for (int x = 0; x < nq; ++x)
    for (int y = 0; y < nq; ++y)
      out.at(x, y) = ab_sub(b, ab_add(b, mu[x], mu[y]), mu[q->mul(x, y)]);
  return out;
}

CocycleTable normalize_cocycle(const CocycleTable& a) {
  // subtract the constant coboundary with value a(1,1)
  std::vector<AbElem> mu(a.q->order(), a.at(0, 0));
  return cocycle_sub(a, coboundary(a.q, a.b, mu));
}

CocycleTable pullback(const CocycleTable& a, const GroupHom& f) {
  CocycleTable out = zero_cocycle(f.dom, a.b);
  int n = f.dom->order();
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) out.at(x, y) = a.at(f(x), f(y));
  return out;
}

CocycleTable push_coeffs(const CocycleTable& a, const FinAb& to,
                         const std::function<AbElem(const AbElem&)>& f) {
  CocycleTable out = zero_cocycle(a.q, to);
  for (size_t i = 0; i < a.vals.size(); ++i) out.vals[i] = ab_reduce(to, f(a.vals[i]));
  return out;
}

CocycleTable apply_char(const CocycleTable& a, const std::vector<long long>& mu,
                        long long n) {
  FinAb zn{{n}};
  CocycleTable out = zero_cocycle(a.q, zn);
  for (size_t i = 0; i < a.vals.size(); ++i) {
    long long v = 0;
    for (size_t j = 0; j < mu.size(); ++j) v = (v + a.vals[i][j] * mu[j]) % n;
    out.vals[i] = {((v % n) + n) % n};
  }
  return out;
}

// ---------------------------------------------------------------------------
// H^2 computation
// ---------------------------------------------------------------------------

namespace {

// Column-assembled matrix helper: rows = m, columns appended one at a time.
struct ColMat {
  int m;
  std::vector<std::vector<long long>> cols;
  explicit ColMat(int rows) : m(rows) {}
  void add(std::vector<long long> c) { cols.push_back(std::move(c)); }
  zlin::Mat to_rows() const {
    zlin::Mat a(m, std::vector<long long>(cols.size(), 0));
    for (size_t j = 0; j < cols.size(); ++j)
      for (int i = 0; i < m; ++i) a[i][j] = cols[j][i];
    return a;
  }
};

// Generators (as m-vectors mod d) of {v : C v = 0 mod d}.
std::vector<std::vector<long long>> solution_lattice_gens(const zlin::Mat& c,
                                                          int m, long long d) {
  std::vector<std::vector<long long>> out;
  if (c.empty()) {
    for (int i = 0; i < m; ++i) {
      std::vector<long long> e(m, 0);
      e[i] = 1;
      out.push_back(e);
    }
    return out;
  }
  auto snf = zlin::smith_normal_form(c, false, true);
  for (int i = 0; i < m; ++i) {
    long long s = (i < snf.rank) ? snf.d[i][i] : 0;
    long long scale = (s == 0) ? 1 : d / std::gcd(s, d);
    std::vector<long long> col(m);
    for (int j = 0; j < m; ++j)
      col[j] = ((snf.right[j][i] * scale) % d + d) % d;
    out.push_back(std::move(col));
  }
  for (int i = 0; i < m; ++i) {
    std::vector<long long> e(m, 0);
    e[i] = d;
    out.push_back(std::move(e));
  }
  return out;
}

zlin::Mat cocycle_constraints(const GroupPtr& q) {
  int nq = q->order();
  int m = nq * nq;
  zlin::Mat c;
  for (int x = 0; x < nq; ++x)
    for (int y = 0; y < nq; ++y)
      for (int z = 0; z < nq; ++z) {
        std::vector<long long> row(m, 0);
        row[x * nq + y] += 1;
        row[q->mul(x, y) * nq + z] += 1;
        row[y * nq + z] -= 1;
        row[x * nq + q->mul(y, z)] -= 1;
        bool nonzero = false;
        for (long long v : row)
          if (v != 0) { nonzero = true; break; }
        if (nonzero) c.push_back(std::move(row));
      }
  return c;
}

std::vector<std::vector<long long>> coboundary_columns(const GroupPtr& q) {
  int nq = q->order();
  int m = nq * nq;
  std::vector<std::vector<long long>> cols;
  for (int z = 0; z < nq; ++z) {
    std::vector<long long> col(m, 0);
    for (int x = 0; x < nq; ++x)
      for (int y = 0; y < nq; ++y) {
        long long v = 0;
        if (x == z) ++v;
        if (y == z) ++v;
        if (q->mul(x, y) == z) --v;
        col[x * nq + y] = v;
      }
    cols.push_back(std::move(col));
  }
  return cols;
}

CocycleTable component_cocycle(const GroupPtr& q, const FinAb& b, int comp,
                               const std::vector<long long>& flat) {
  CocycleTable c = zero_cocycle(q, b);
  for (size_t i = 0; i < c.vals.size(); ++i)
    c.vals[i][comp] = ((flat[i] % b.factors[comp]) + b.factors[comp]) % b.factors[comp];
  return c;
}

}  // namespace

long long H2Group::order() const {
  long long n = 1;
  for (long long f : factors) n *= f;
  return n;
}

std::vector<long long> H2Group::invariant_factors() const {
  if (factors.empty()) return {};
  zlin::Mat diag(factors.size(), std::vector<long long>(factors.size(), 0));
  for (size_t i = 0; i < factors.size(); ++i) diag[i][i] = factors[i];
  auto snf = zlin::smith_normal_form(diag, false, false);
  std::vector<long long> out;
  for (long long d : snf.diag())
    if (d > 1) out.push_back(d);
  return out;
}

std::vector<long long> H2Group::class_of(const CocycleTable& c) const {
  require(c.q.get() == q.get() && c.b == b, "cocycle ambient mismatch");
  std::vector<long long> out;
  int nq = q->order();
  for (const auto& comp : comps_) {
    int ci = &comp - comps_.data();
    std::vector<long long> flat(nq * nq);
    for (int i = 0; i < nq * nq; ++i) flat[i] = c.vals[i][ci];
    auto nfv = comp.pres.normal_form(flat);
    out.insert(out.end(), nfv.begin(), nfv.end());
  }
  return out;
}

CocycleTable H2Group::rep_of(const std::vector<long long>& coords) const {
  CocycleTable acc = zero_cocycle(q, b);
  for (size_t i = 0; i < factors.size(); ++i)
    if (coords[i] % factors[i] != 0)
      acc = cocycle_add(acc, cocycle_scaled(gens[i], coords[i]));
  return acc;
}

bool H2Group::is_trivial_class(const CocycleTable& c) const {
  for (long long v : class_of(c))
    if (v != 0) return false;
  return true;
}

H2Group h2_group(const GroupPtr& q, const FinAb& b, int max_order) {
  if (q->order() > max_order)
    throw ResourceError("h2_group: group order exceeds the configured bound");
  H2Group out;
  out.q = q;
  out.b = b;
  int nq = q->order();
  int m = nq * nq;
  zlin::Mat cons = cocycle_constraints(q);
  auto cob_cols = coboundary_columns(q);

  for (int comp = 0; comp < b.rank(); ++comp) {
    long long d = b.factors[comp];
    H2Group::Component c;
    c.modulus = d;
    c.first_factor = static_cast<int>(out.factors.size());
    if (d == 1) {
      c.num_factors = 0;
      // trivial component: a 0-factor presentation over the zero lattice
      zlin::Mat id_cols(m, std::vector<long long>(m, 0));
      for (int i = 0; i < m; ++i) id_cols[i][i] = 1;
      c.pres = zlin::quotient_presentation(id_cols, id_cols);
      out.comps_.push_back(std::move(c));
      continue;
    }
    ColMat z2(m);
    for (auto& g : solution_lattice_gens(cons, m, d)) z2.add(std::move(g));
    ColMat b2(m);
    for (auto col : cob_cols) b2.add(std::move(col));
    for (int i = 0; i < m; ++i) {
      std::vector<long long> e(m, 0);
      e[i] = d;
      b2.add(std::move(e));
    }
    c.pres = zlin::quotient_presentation(z2.to_rows(), b2.to_rows());
    c.num_factors = static_cast<int>(c.pres.factors.size());
    for (long long f : c.pres.factors) out.factors.push_back(f);
    // representative generators: solve U z = e_pos and map through basis1
    int k = static_cast<int>(c.pres.all_diag_.size());
    int pos = 0;
    for (int i = 0; i < k; ++i) {
      if (c.pres.all_diag_[i] <= 1) continue;
      std::vector<long long> e(k, 0);
      e[i] = 1;
      auto z = zlin::solve_integer(c.pres.u_full_, e);
      check_internal(z.has_value(), "H2 generator lift failed");
      auto flat = zlin::mat_vec(c.pres.basis1, *z);
      out.gens.push_back(component_cocycle(q, b, comp, flat));
      ++pos;
    }
    // bases for reporting
    int nb = c.pres.basis1.empty() ? 0 : static_cast<int>(c.pres.basis1[0].size());
    for (int j = 0; j < nb; ++j) {
      std::vector<long long> flat(m);
      for (int i = 0; i < m; ++i) flat[i] = c.pres.basis1[i][j];
      out.z2_basis.push_back(component_cocycle(q, b, comp, flat));
    }
    for (const auto& col : cob_cols)
      out.b2_basis.push_back(component_cocycle(q, b, comp, col));
    out.comps_.push_back(std::move(c));
  }
  // The exponent of H^2 divides |Q|.
  for (long long f : out.factors)
    check_internal(q->order() % f == 0, "H2 exponent does not divide |Q|");
  return out;
}

std::optional<std::vector<AbElem>> coboundary_preimage(const CocycleTable& c) {
  int nq = c.q->order();
  int m = nq * nq;
  auto cob = coboundary_columns(c.q);
  std::vector<AbElem> mu(nq, ab_zero(c.b));
  for (int comp = 0; comp < c.b.rank(); ++comp) {
    long long d = c.b.factors[comp];
    if (d == 1) continue;
    // [cob | d I] x = flat
    ColMat a(m);
    for (auto col : cob) a.add(std::move(col));
    for (int i = 0; i < m; ++i) {
      std::vector<long long> e(m, 0);
      e[i] = d;
      a.add(std::move(e));
    }
    std::vector<long long> flat(m);
    for (int i = 0; i < m; ++i) flat[i] = c.vals[i][comp];
    auto x = zlin::solve_integer(a.to_rows(), flat);
    if (!x.has_value()) return std::nullopt;
    for (int z = 0; z < nq; ++z) mu[z][comp] = (((*x)[z] % d) + d) % d;
  }
  // verify exactly
  CocycleTable check = coboundary(c.q, c.b, mu);
  for (size_t i = 0; i < c.vals.size(); ++i)
    if (ab_reduce(c.b, check.vals[i]) != ab_reduce(c.b, c.vals[i])) return std::nullopt;
  return mu;
}

// ---------------------------------------------------------------------------
// Sections, central extensions
// ---------------------------------------------------------------------------

SectionData section_with_cocycle(const GroupPtr& g, const SubgroupRef& k) {
  SubgroupRef z = center(g);
  for (int e : k.elems)
    require(z.contains(e), "section_with_cocycle needs a central subgroup");
  SectionData out;
  out.quot = quotient_group(g, k);
  out.section = out.quot.coset_rep;
  out.kcoords = abelian_coords(k);
  const GroupPtr& q = out.quot.group;
  out.alpha = zero_cocycle(q, out.kcoords.shape);
  for (int x = 0; x < q->order(); ++x)
    for (int y = 0; y < q->order(); ++y) {
      int sx = out.section[x], sy = out.section[y];
      int sxy = out.section[q->mul(x, y)];
      int kk = g->mul(g->mul(sx, sy), g->inv(sxy));
      out.alpha.at(x, y) = out.kcoords.coords(kk);
    }
  check_internal(out.alpha.is_cocycle(), "section cocycle identity failed");
  return out;
}

int CentralExtension::encode(const AbElem& v, int s) const {
  long long idx = 0;
  for (size_t i = 0; i < v.size(); ++i) idx = idx * b.factors[i] + (v[i] % b.factors[i]);
  return static_cast<int>(idx) * q->order() + s;
}

std::pair<AbElem, int> CentralExtension::decode(int e) const {
  int s = e % q->order();
  long long idx = e / q->order();
  AbElem v(b.factors.size(), 0);
  for (int i = static_cast<int>(b.factors.size()) - 1; i >= 0; --i) {
    v[i] = idx % b.factors[i];
    idx /= b.factors[i];
  }
  return {v, s};
}

CentralExtension central_extension(const GroupPtr& q, const FinAb& b,
                                   const CocycleTable& beta) {
  require(beta.is_cocycle(), "central_extension needs a 2-cocycle");
  require(beta.is_normalized(), "central_extension needs a normalized cocycle");
  CentralExtension ext;
  ext.q = q;
  ext.b = b;
  int nq = q->order();
  long long nb = b.order();
  int total = static_cast<int>(nb) * nq;
  std::vector<int> mul(static_cast<size_t>(total) * total);
  // enumerate AbElems by mixed radix (same order as encode)
  std::vector<AbElem> elems;
  {
    AbElem v(b.factors.size(), 0);
    while (true) {
      elems.push_back(v);
      int pos = static_cast<int>(b.factors.size()) - 1;
      while (pos >= 0 && ++v[pos] == b.factors[pos]) v[pos--] = 0;
      if (pos < 0) break;
    }
  }
  ext.group = nullptr;
  for (int e1 = 0; e1 < total; ++e1) {
    int s1 = e1 % nq;
    const AbElem& v1 = elems[e1 / nq];
    for (int e2 = 0; e2 < total; ++e2) {
      int s2 = e2 % nq;
      const AbElem& v2 = elems[e2 / nq];
      AbElem v = ab_add(b, ab_add(b, v1, v2), beta.at(s1, s2));
      long long idx = 0;
      for (size_t i = 0; i < v.size(); ++i) idx = idx * b.factors[i] + v[i];
      mul[static_cast<size_t>(e1) * total + e2] = static_cast<int>(idx) * nq + q->mul(s1, s2);
    }
  }
  ext.group = GroupTable::make("ext", std::move(mul));
  ext.fiber = SubgroupRef{ext.group, {}};
  for (long long i = 0; i < nb; ++i)
    ext.fiber.elems.push_back(static_cast<int>(i) * nq);
  ext.proj = GroupHom{ext.group, q, std::vector<int>(total)};
  for (int e = 0; e < total; ++e) ext.proj.img[e] = e % nq;
  ext.section.resize(nq);
  for (int s = 0; s < nq; ++s) ext.section[s] = s;
  return ext;
}

// ---------------------------------------------------------------------------
// alpha_n
// ---------------------------------------------------------------------------

AbElem alpha_n(const CocycleTable& alpha, int n, const std::vector<int>& args) {
  require(n >= 1 && static_cast<int>(args.size()) == 2 * n,
          "alpha_n needs 2n arguments");
  const GroupPtr& q = alpha.q;
  const FinAb& b = alpha.b;
  auto comm = [&](int a, int c) {  // a c a^-1 c^-1
    return q->mul(q->mul(a, c), q->mul(q->inv(a), q->inv(c)));
  };
  auto a1 = [&](int s1, int s2) {
    int s21 = q->mul(s2, s1);
    int s12 = q->mul(s1, s2);
    int inv21 = q->inv(s21);
    AbElem v = alpha.at(s1, s2);
    v = ab_sub(b, v, alpha.at(s2, s1));
    v = ab_sub(b, v, alpha.at(s21, inv21));
    v = ab_add(b, v, alpha.at(s12, inv21));
    v = ab_sub(b, v, alpha.at(0, 0));
    return v;
  };
  AbElem acc = a1(args[0], args[1]);
  int cprod = comm(args[0], args[1]);
  for (int i = 1; i < n; ++i) {
    int s1 = args[2 * i], s2 = args[2 * i + 1];
    acc = ab_add(b, acc, a1(s1, s2));
    acc = ab_add(b, acc, alpha.at(cprod, comm(s1, s2)));
    cprod = q->mul(cprod, comm(s1, s2));
  }
  return acc;
}

// ---------------------------------------------------------------------------
// Cohomological linkage
// ---------------------------------------------------------------------------

namespace {

std::vector<GroupHom> all_isos(const GroupPtr& a, const GroupPtr& b) {
  std::vector<GroupHom> out;
  if (a->order() != b->order()) return out;
  if (a->order() == 1) {
    out.push_back(GroupHom{a, b, {0}});
    return out;
  }
  auto first = isomorphic(a, b);
  if (!first.has_value()) return out;
  auto aut = automorphism_group(a, AutOptions{std::max(a->order(), 48)});
  for (const auto& alpha : aut.maps) {
    GroupHom comp{a, b, std::vector<int>(a->order())};
    for (int x = 0; x < a->order(); ++x) comp.img[x] = first->img[alpha(x)];
    out.push_back(std::move(comp));
  }
  return out;
}

idem::CentralPair bar_reduce(const idem::CentralPair& p) {
  SubgroupRef khat = p.kappa.kernel();
  QuotientData q = quotient_group(p.g, khat);
  std::set<int> kbar_set;
  for (int k : p.k.elems) kbar_set.insert(q.proj(k));
  SubgroupRef kbar{q.group, std::vector<int>(kbar_set.begin(), kbar_set.end())};
  AHom kappabar{kbar, p.n(), {}};
  for (int kb : kbar.elems) {
    // any preimage works: kappa kills ker
    long long val = 0;
    for (int k : p.k.elems)
      if (q.proj(k) == kb) { val = p.kappa(k); break; }
    kappabar.vals.push_back(val);
  }
  return idem::CentralPair{q.group, kbar, kappabar};
}

}  // namespace

LinkageResult linkage_via_cohomology(const idem::CentralPair& a,
                                     const idem::CentralPair& b) {
  require(a.n() == b.n(), "modulus mismatch");
  long long n = a.n();
  if (!a.kappa.is_faithful() || !b.kappa.is_faithful()) {
    // reduce to the faithful case through the bar quotients
    LinkageResult sub = linkage_via_cohomology(bar_reduce(a), bar_reduce(b));
    LinkageResult out;
    out.linked = sub.linked;
    return out;
  }
  LinkageResult out;
  QuotientData qa = quotient_group(a.g, a.k);
  QuotientData qb = quotient_group(b.g, b.k);
  if (qa.group->order() != qb.group->order()) return out;

  SectionData sa = section_with_cocycle(a.g, a.k);
  SectionData sb = section_with_cocycle(b.g, b.k);
  // kappa o alpha as Z/N-valued cocycles
  auto char_of = [n](const AHom& kappa, const AbelianCoords& kc) {
    std::vector<long long> mu;
    for (int g : kc.gens) mu.push_back(kappa(g));
    return mu;
  };
  CocycleTable ca = apply_char(sa.alpha, char_of(a.kappa, sa.kcoords), n);
  CocycleTable cb = apply_char(sb.alpha, char_of(b.kappa, sb.kcoords), n);
  H2Group h2 = h2_group(sa.quot.group, FinAb{{n}});

  for (const auto& eta : all_isos(sb.quot.group, sa.quot.group)) {
    // eta: H/L -> G/K; compare [kappa o alpha] and [lambda o beta o (eta^-1 x eta^-1)]
    GroupHom eta_inv{sa.quot.group, sb.quot.group, std::vector<int>(sa.quot.group->order())};
    for (int x = 0; x < sb.quot.group->order(); ++x) eta_inv.img[eta(x)] = x;
    CocycleTable moved = pullback(cb, eta_inv);
    if (h2.class_of(ca) != h2.class_of(moved)) continue;
    out.linked = true;
    out.eta = eta;
    // witness pair U = {(g,h) : gK = eta(hL)}, phi extending kappa x lambda^-1
    int ng = a.g->order(), nh = b.g->order();
    std::vector<int> elems;
    for (int g = 0; g < ng; ++g)
      for (int h = 0; h < nh; ++h)
        if (qa.proj(g) == eta(qb.proj(h))) elems.push_back(g * nh + h);
    GroupPtr usub = pair_subgroup_table(a.g, b.g, elems);
    for (const auto& phi : homs_to_cyclic(full_subgroup(usub), n)) {
      FiberPair cand(a.g, b.g, n, elems, phi.vals);
      if (cand.k1().elems == a.k.elems && cand.phi1().vals == a.kappa.vals &&
          cand.k2().elems == b.k.elems && cand.phi2().vals == b.kappa.vals) {
        out.witness = cand;
        break;
      }
    }
    check_internal(out.witness.has_value(),
                   "linkage witness extension failed against the criterion");
    return out;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Squeezing
// ---------------------------------------------------------------------------

namespace {

// Generators of the symmetric cocycle lattice over an abelian group, mod d.
std::vector<std::vector<long long>> symmetric_lattice_gens(const GroupPtr& q,
                                                           long long d) {
  int nq = q->order();
  int m = nq * nq;
  zlin::Mat cons = cocycle_constraints(q);
  for (int x = 0; x < nq; ++x)
    for (int y = 0; y < x; ++y) {
      std::vector<long long> row(m, 0);
      row[x * nq + y] = 1;
      row[y * nq + x] = -1;
      cons.push_back(std::move(row));
    }
  return solution_lattice_gens(cons, m, d);
}

}  // namespace

SqueezeResult squeeze(const idem::CentralPair& p) {
  const GroupPtr& g = p.g;
  long long n = p.n();
  require(n % g->order() == 0, "squeeze needs |G| dividing N");
  require(p.kappa.is_faithful(), "squeeze needs a faithful kappa");
  {
    SubgroupRef z = center(g);
    for (int e : p.k.elems)
      require(z.contains(e), "squeeze needs K central");
  }
  SectionData sec = section_with_cocycle(g, p.k);
  const GroupPtr& q = sec.quot.group;
  const AbelianCoords& kc = sec.kcoords;

  SubgroupRef k_tilde = intersect(p.k, derived_subgroup(g));
  AbelianCoords ktc = abelian_coords(k_tilde);

  H2Group h2k = h2_group(q, kc.shape, std::max(16, q->order()));
  std::vector<long long> alpha_class = h2k.class_of(sec.alpha);

  // Symmetric generators over Q/Q' inflated to Q, valued in K.
  CharacteristicData qc = characteristic_data(q);
  std::vector<CocycleTable> sym_gens;  // on qab, valued in kc.shape
  for (int comp = 0; comp < kc.shape.rank(); ++comp) {
    long long d = kc.shape.factors[comp];
    if (d == 1) continue;
    for (auto& flat : symmetric_lattice_gens(qc.abelianization, d))
      sym_gens.push_back(component_cocycle(qc.abelianization, kc.shape, comp, flat));
  }
  // K~-valued H2 generators pushed into K.
  H2Group h2kt = h2_group(q, ktc.shape, std::max(16, q->order()));
  auto kt_to_k = [&](const AbElem& v) { return kc.coords(ktc.element(v)); };
  std::vector<CocycleTable> t_gens_kt = h2kt.gens;  // keep K~-valued originals

  // Solve [alpha] = sum x_i [sym_i] + sum y_j [t_j] in H2(Q, K).
  int nf = static_cast<int>(h2k.factors.size());
  std::vector<std::vector<long long>> cols;
  for (const auto& sg : sym_gens)
    cols.push_back(h2k.class_of(pullback(sg, qc.ab_proj)));
  for (const auto& tg : t_gens_kt)
    cols.push_back(h2k.class_of(push_coeffs(tg, kc.shape, kt_to_k)));
  for (int i = 0; i < nf; ++i) {
    std::vector<long long> e(nf, 0);
    e[i] = h2k.factors[i];
    cols.push_back(std::move(e));
  }
  std::optional<std::vector<long long>> sol;
  if (nf == 0) {
    sol = std::vector<long long>(cols.size(), 0);
  } else {
    zlin::Mat a(nf, std::vector<long long>(cols.size(), 0));
    for (size_t j = 0; j < cols.size(); ++j)
      for (int i = 0; i < nf; ++i) a[i][j] = cols[j][i];
    sol = zlin::solve_integer(a, alpha_class);
  }
  check_internal(sol.has_value(), "squeeze: class decomposition failed");

  CocycleTable gamma = zero_cocycle(qc.abelianization, kc.shape);
  for (size_t i = 0; i < sym_gens.size(); ++i)
    if ((*sol)[i] != 0) gamma = cocycle_add(gamma, cocycle_scaled(sym_gens[i], (*sol)[i]));
  gamma = normalize_cocycle(gamma);
  check_internal(gamma.is_symmetric(), "squeeze: gamma is not symmetric");

  CocycleTable beta = zero_cocycle(q, ktc.shape);
  for (size_t j = 0; j < t_gens_kt.size(); ++j) {
    long long c = (*sol)[sym_gens.size() + j];
    if (c != 0) beta = cocycle_add(beta, cocycle_scaled(t_gens_kt[j], c));
  }
  beta = normalize_cocycle(beta);
  std::vector<long long> beta_class = h2kt.class_of(beta);
  std::vector<long long> gamma_class = h2k.class_of(pullback(gamma, qc.ab_proj));

  // Consistency: [alpha] = [inflated gamma + beta in K].
  CocycleTable alpha_prime = cocycle_add(pullback(gamma, qc.ab_proj),
                                         push_coeffs(beta, kc.shape, kt_to_k));
  auto mu = coboundary_preimage(cocycle_sub(sec.alpha, alpha_prime));
  check_internal(mu.has_value(), "squeeze: adjusted section does not exist");

  CentralExtension ext = central_extension(q, ktc.shape, beta);

  // M = {(g, (ktilde, s)) : pi(g) = s}
  std::vector<int> elems;
  int ngt = ext.group->order();
  for (int x = 0; x < g->order(); ++x) {
    int s = sec.quot.proj(x);
    for (int e : ext.fiber.elems) {
      int target = ext.group->mul(e, ext.section[s]);  // (ktilde, s)
      elems.push_back(x * ngt + target);
    }
  }
  std::sort(elems.begin(), elems.end());

  GroupPtr usub = pair_subgroup_table(g, ext.group, elems);
  std::optional<std::vector<long long>> mu_vals;
  for (const auto& hom : homs_to_cyclic(full_subgroup(usub), n)) {
    bool ok = true;
    for (size_t i = 0; i < p.k.elems.size() && ok; ++i) {
      int e = p.k.elems[i] * ngt + 0;
      auto it = std::lower_bound(elems.begin(), elems.end(), e);
      check_internal(it != elems.end() && *it == e, "K x 1 must lie inside M");
      if (hom.vals[it - elems.begin()] % n != p.kappa.vals[i] % n) ok = false;
    }
    if (ok) { mu_vals = hom.vals; break; }
  }
  check_internal(mu_vals.has_value(), "squeeze: kappa does not extend to M");
  FiberPair ins(g, ext.group, n, elems, *mu_vals);

  // Postconditions of the construction.
  check_internal(ins.p1().order() == g->order(), "squeeze: p1(M) != G");
  check_internal(ins.k1().elems == p.k.elems, "squeeze: k1(M) != K");
  check_internal(ins.phi1().vals == p.kappa.vals, "squeeze: mu_1 != kappa");
  check_internal(ins.p2().order() == ext.group->order(), "squeeze: p2(M) != Gtilde");
  check_internal(ins.k2().elems == ext.fiber.elems, "squeeze: k2(M) != Ktilde");
  for (size_t i = 0; i < ext.fiber.elems.size(); ++i) {
    auto [v, s] = ext.decode(ext.fiber.elems[i]);
    long long expect = p.kappa(ktc.element(v));
    check_internal(ins.phi2().vals[i] % n == expect % n, "squeeze: mu_2 != kappa|Ktilde");
  }
  {
    SubgroupRef zt = center(ext.group);
    SubgroupRef dt = derived_subgroup(ext.group);
    for (int e : ext.fiber.elems) {
      check_internal(zt.contains(e), "squeeze: Ktilde not central in Gtilde");
      check_internal(dt.contains(e), "squeeze: Ktilde not inside Gtilde'");
    }
  }
  return SqueezeResult{ext.group, k_tilde, ins, alpha_class, beta_class, gamma_class};
}

InsDel ins_del(const idem::CentralPair& p) {
  SqueezeResult sq = squeeze(p);
  return InsDel{sq.ins, sq.ins.opposite()};
}

namespace {

// The unique transitive class of a product that theory promises transitive.
CanonicalPair single_class(const FiberedElement& x, const char* what) {
  check_internal(x.terms().size() == 1, what);
  check_internal(x.terms().begin()->second == Coeff::one(RingSpec::integers()), what);
  return x.terms().begin()->first;
}

}  // namespace

ReducedDecomposition reduce_decomposition(const FiberPair& p) {
  require(p.covering(), "reduce_decomposition needs a covering pair");
  require(p.phi1().is_faithful() && p.phi2().is_faithful(),
          "reduce_decomposition needs faithful characters");
  require(p.n() % p.g()->order() == 0 && p.n() % p.h()->order() == 0,
          "reduce_decomposition needs |G| and |H| dividing N");
  RingSpec zz = RingSpec::integers();
  idem::CentralPair left{p.g(), p.k1(), p.phi1()};
  idem::CentralPair right{p.h(), p.k2(), p.phi2()};
  SqueezeResult sg = squeeze(left);
  SqueezeResult sh = squeeze(right);
  FiberPair del_g = sg.ins.opposite();  // over (Gtilde, G)
  FiberPair ins_h = sh.ins;             // over (H, Htilde)

  FiberedElement y = mackey_product_pairs(del_g, p, zz);
  CanonicalPair step = single_class(y, "Del (x) X is not transitive");
  FiberedElement y2 = mackey_product_pairs(step.pair(), ins_h, zz);
  CanonicalPair mid = single_class(y2, "Del (x) X (x) Ins is not transitive");

  // Postconditions from the decomposition statement.
  const FiberPair& m = mid.pair();
  check_internal(m.k1().order() == sg.k_tilde.order(), "middle k1 != Ktilde");
  check_internal(m.k2().order() == sh.k_tilde.order(), "middle k2 != Ltilde");
  check_internal(m.covering(), "middle pair is not covering");
  idem::CentralPair mleft{m.g(), m.k1(), m.phi1()};
  idem::CentralPair mright{m.h(), m.k2(), m.phi2()};
  check_internal(reduced_criterion_hypothesis(mleft) &&
                     reduced_criterion_hypothesis(mright),
                 "middle pair is not reduced");

  // Round trip: Ins (x) Y (x) Del reproduces the class of p.
  FiberedElement r1 = mackey_product_pairs(sg.ins, m, zz);
  CanonicalPair r1c = single_class(r1, "Ins (x) Y is not transitive");
  FiberedElement r2 = mackey_product_pairs(r1c.pair(), sh.ins.opposite(), zz);
  CanonicalPair r2c = single_class(r2, "Ins (x) Y (x) Del is not transitive");
  check_internal(r2c == canonicalize(p), "reduce_decomposition round trip failed");

  return ReducedDecomposition{sg.ins, m, sh.ins.opposite()};
}

FullDecomposition full_decomposition(const FiberPair& p) {
  require(p.n() % p.g()->order() == 0 && p.n() % p.h()->order() == 0,
          "full_decomposition needs |G| and |H| dividing N");
  StandardDecomposition sd = decompose_standard(p);
  ReducedDecomposition rd = reduce_decomposition(sd.middle);
  FullDecomposition out;
  out.factors = {sd.ind, sd.inf, rd.ins, rd.middle, rd.del, sd.def, sd.res};
  // exact round trip
  RingSpec zz = RingSpec::integers();
  FiberedElement acc = FiberedElement::basis(canonicalize(out.factors[0]), zz);
  for (size_t i = 1; i < out.factors.size(); ++i)
    acc = mackey_product(acc, FiberedElement::basis(canonicalize(out.factors[i]), zz));
  check_internal(acc == FiberedElement::basis(canonicalize(p), zz),
                 "full_decomposition round trip failed");
  return out;
}

bool reduced_criterion_hypothesis(const idem::CentralPair& p) {
  require(p.n() % p.g->order() == 0,
          "reduced_criterion_hypothesis needs |G| dividing N");
  if (!p.kappa.is_faithful()) return false;
  // K cyclic?
  bool cyclic = false;
  EmbeddedGroup e = subgroup_as_group(p.k);
  for (int i = 0; i < e.group->order(); ++i)
    if (e.group->element_order(i) == e.group->order()) cyclic = true;
  if (!cyclic) return false;
  SubgroupRef z = center(p.g);
  SubgroupRef d = derived_subgroup(p.g);
  for (int x : p.k.elems)
    if (!z.contains(x) || !d.contains(x)) return false;
  return true;
}

}  // namespace fibrum::cohom
