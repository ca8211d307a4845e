#include "fibrum/oracle.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace fibrum::oracle {

namespace {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

std::vector<int> generators_of(const GroupPtr& g) {
  std::vector<int> gens;
  SubgroupRef cur = trivial_subgroup(g);
  while (cur.order() < g->order()) {
    for (int x = 1; x < g->order(); ++x)
      if (!cur.contains(x)) {
        gens.push_back(x);
        auto e = cur.elems;
        e.push_back(x);
        cur = closure(g, e);
        break;
      }
  }
  return gens;
}

}  // namespace

ExplicitFiberedBiset realize(const FiberPair& p, long long max_points) {
  const GroupPtr& G = p.g();
  const GroupPtr& H = p.h();
  long long n = p.n();
  long long ng = G->order(), nh = H->order();
  long long total = n * ng * nh;
  if (total / p.u_order() > max_points)
    throw ResourceError("realize: point bound exceeded");

  // elements of A x G x H indexed a*(ng*nh) + g*nh + h
  auto enc = [&](long long a, int g, int h) { return a * ng * nh + g * nh + h; };
  // U_phi = {(-phi(u), u)}: right cosets x U_phi are the points.
  std::vector<int> coset(total, -1);
  std::vector<long long> reps;
  for (long long x = 0; x < total; ++x) {
    if (coset[x] >= 0) continue;
    int id = static_cast<int>(reps.size());
    reps.push_back(x);
    long long a = x / (ng * nh);
    int gg = static_cast<int>((x / nh) % ng), hh = static_cast<int>(x % nh);
    for (size_t i = 0; i < p.u_elems().size(); ++i) {
      int u1 = p.u_elems()[i] / nh, u2 = p.u_elems()[i] % nh;
      long long aa = ((a - p.phi_vals()[i]) % n + n) % n;
      long long y = enc(aa, G->mul(gg, u1), H->mul(hh, u2));
      check_internal(coset[y] < 0 || coset[y] == id, "coset decomposition clash");
      coset[y] = id;
    }
  }
  int m = static_cast<int>(reps.size());
  check_internal(static_cast<long long>(m) * p.u_order() == total,
                 "coset count mismatch");

  ExplicitFiberedBiset out;
  out.g = G;
  out.h = H;
  out.n = n;
  out.points = m;
  out.a_gen.resize(m);
  out.g_act.assign(ng, std::vector<int>(m));
  out.h_act.assign(nh, std::vector<int>(m));
  for (int i = 0; i < m; ++i) {
    long long x = reps[i];
    long long a = x / (ng * nh);
    int gg = static_cast<int>((x / nh) % ng), hh = static_cast<int>(x % nh);
    out.a_gen[i] = coset[enc((a + 1) % n, gg, hh)];
    for (int g0 = 0; g0 < ng; ++g0)
      out.g_act[g0][i] = coset[enc(a, G->mul(g0, gg), hh)];
    for (int h0 = 0; h0 < nh; ++h0)  // x.h := (1, h^-1) x
      out.h_act[h0][i] = coset[enc(a, gg, H->mul(H->inv(h0), hh))];
  }
  validate(out);
  return out;
}

void validate(const ExplicitFiberedBiset& x) {
  int m = x.points;
  auto is_perm = [m](const std::vector<int>& p) {
    std::vector<char> seen(m, 0);
    for (int v : p) {
      if (v < 0 || v >= m || seen[v]) return false;
      seen[v] = 1;
    }
    return true;
  };
  check_internal(is_perm(x.a_gen), "A-generator is not a permutation");
  // A acts freely: all a-cycles have length exactly n.
  std::vector<char> vis(m, 0);
  for (int i = 0; i < m; ++i) {
    if (vis[i]) continue;
    int len = 0, j = i;
    do {
      vis[j] = 1;
      j = x.a_gen[j];
      ++len;
    } while (j != i);
    check_internal(len == x.n, "A-action is not free");
  }
  for (int g = 0; g < x.g->order(); ++g)
    check_internal(is_perm(x.g_act[g]), "G-action is not a permutation");
  for (int h = 0; h < x.h->order(); ++h)
    check_internal(is_perm(x.h_act[h]), "H-action is not a permutation");
  for (int g1 : generators_of(x.g))
    for (int g2 = 0; g2 < x.g->order(); ++g2)
      for (int i = 0; i < m; ++i)
        check_internal(x.g_act[x.g->mul(g1, g2)][i] == x.g_act[g1][x.g_act[g2][i]],
                       "left action does not compose");
  for (int h1 : generators_of(x.h))
    for (int h2 = 0; h2 < x.h->order(); ++h2)
      for (int i = 0; i < m; ++i)  // (x h1) h2 = x (h1 h2)
        check_internal(x.h_act[x.h->mul(h1, h2)][i] == x.h_act[h2][x.h_act[h1][i]],
                       "right action does not compose");
  for (int g : generators_of(x.g))
    for (int h : generators_of(x.h))
      for (int i = 0; i < m; ++i) {
        check_internal(x.g_act[g][x.h_act[h][i]] == x.h_act[h][x.g_act[g][i]],
                       "left and right actions do not commute");
        check_internal(x.g_act[g][x.a_gen[i]] == x.a_gen[x.g_act[g][i]],
                       "A- and G-actions do not commute");
        check_internal(x.h_act[h][x.a_gen[i]] == x.a_gen[x.h_act[h][i]],
                       "A- and H-actions do not commute");
      }
}

ExplicitFiberedBiset tensor_explicit(const ExplicitFiberedBiset& x,
                                     const ExplicitFiberedBiset& y,
                                     long long max_points) {
  require(x.h.get() == y.g.get(), "tensor needs a shared middle group");
  require(x.n == y.n, "modulus mismatch");
  long long mx = x.points, my = y.points;
  if (mx * my > max_points * 4) throw ResourceError("tensor: pair bound exceeded");
  int total = static_cast<int>(mx * my);
  auto enc = [&](int a, int b) { return a * static_cast<int>(my) + b; };

  // A x H-orbits of X x Y under (a,h)(x,y) = (x (a^-1, h^-1), (a, h) y).
  UnionFind uf(total);
  std::vector<int> a_inv_x(mx);
  for (int i = 0; i < mx; ++i) a_inv_x[x.a_gen[i]] = i;
  std::vector<int> hgens = generators_of(x.h);
  for (int i = 0; i < mx; ++i)
    for (int j = 0; j < my; ++j) {
      uf.unite(enc(i, j), enc(a_inv_x[i], y.a_gen[j]));
      for (int h : hgens)  // (x h^-1, h y)
        uf.unite(enc(i, j), enc(x.h_act[x.h->inv(h)][i], y.g_act[h][j]));
    }

  std::map<int, int> cls;
  for (int t = 0; t < total; ++t) {
    int r = uf.find(t);
    if (!cls.count(r)) {
      int id = static_cast<int>(cls.size());
      cls[r] = id;
    }
  }
  int nclasses = static_cast<int>(cls.size());
  std::vector<int> rep_of(nclasses);
  for (auto [r, id] : cls) rep_of[id] = r;

  std::vector<int> a_on_class(nclasses);
  for (int c = 0; c < nclasses; ++c) {
    int r = rep_of[c];
    int i = r / static_cast<int>(my), j = r % static_cast<int>(my);
    a_on_class[c] = cls.at(uf.find(enc(x.a_gen[i], j)));
  }
  std::vector<int> keep_id(nclasses, -1);
  std::vector<int> kept;
  std::vector<char> visited(nclasses, 0);
  for (int c = 0; c < nclasses; ++c) {
    if (visited[c]) continue;
    std::vector<int> cyc;
    int j = c;
    do {
      visited[j] = 1;
      cyc.push_back(j);
      j = a_on_class[j];
    } while (j != c);
    if (static_cast<long long>(cyc.size()) == x.n)
      for (int cc : cyc) {
        keep_id[cc] = static_cast<int>(kept.size());
        kept.push_back(cc);
      }
    else
      check_internal(x.n % cyc.size() == 0, "A-orbit length does not divide N");
  }

  ExplicitFiberedBiset out;
  out.g = x.g;
  out.h = y.h;
  out.n = x.n;
  out.points = static_cast<int>(kept.size());
  out.a_gen.resize(out.points);
  out.g_act.assign(x.g->order(), std::vector<int>(out.points));
  out.h_act.assign(y.h->order(), std::vector<int>(out.points));
  auto class_of_point = [&](int i, int j) { return cls.at(uf.find(enc(i, j))); };
  for (int t = 0; t < out.points; ++t) {
    int c = kept[t];
    int r = rep_of[c];
    int i = r / static_cast<int>(my), j = r % static_cast<int>(my);
    out.a_gen[t] = keep_id[class_of_point(x.a_gen[i], j)];
    check_internal(out.a_gen[t] >= 0, "A-action leaves the free part");
    for (int g = 0; g < x.g->order(); ++g) {
      out.g_act[g][t] = keep_id[class_of_point(x.g_act[g][i], j)];
      check_internal(out.g_act[g][t] >= 0, "G-action leaves the free part");
    }
    for (int h = 0; h < y.h->order(); ++h) {
      out.h_act[h][t] = keep_id[class_of_point(i, y.h_act[h][j])];
      check_internal(out.h_act[h][t] >= 0, "H-action leaves the free part");
    }
  }
  validate(out);
  return out;
}

ExplicitFiberedBiset disjoint_union(const ExplicitFiberedBiset& x,
                                    const ExplicitFiberedBiset& y) {
  require(x.g.get() == y.g.get() && x.h.get() == y.h.get() && x.n == y.n,
          "ambient mismatch");
  ExplicitFiberedBiset out;
  out.g = x.g;
  out.h = x.h;
  out.n = x.n;
  out.points = x.points + y.points;
  auto shift = [&](const std::vector<int>& a, const std::vector<int>& b) {
    std::vector<int> v = a;
    for (int w : b) v.push_back(w + x.points);
    return v;
  };
  out.a_gen = shift(x.a_gen, y.a_gen);
  for (int g = 0; g < x.g->order(); ++g)
    out.g_act.push_back(shift(x.g_act[g], y.g_act[g]));
  for (int h = 0; h < x.h->order(); ++h)
    out.h_act.push_back(shift(x.h_act[h], y.h_act[h]));
  return out;
}

FiberedElement classify_explicit(const ExplicitFiberedBiset& x) {
  validate(x);
  int m = x.points;
  int ng = x.g->order(), nh = x.h->order();
  std::vector<int> aorb(m, -1);
  std::vector<int> aorb_rep;
  for (int i = 0; i < m; ++i) {
    if (aorb[i] >= 0) continue;
    int id = static_cast<int>(aorb_rep.size());
    aorb_rep.push_back(i);
    int j = i;
    do {
      aorb[j] = id;
      j = x.a_gen[j];
    } while (j != i);
  }
  int na = static_cast<int>(aorb_rep.size());

  // G x H-orbits of A-orbits: (g,h)[x] = [g x h^-1]
  UnionFind uf(na);
  std::vector<int> ggens = generators_of(x.g), hgens = generators_of(x.h);
  for (int o = 0; o < na; ++o) {
    int pt = aorb_rep[o];
    for (int g : ggens) uf.unite(o, aorb[x.g_act[g][pt]]);
    for (int h : hgens) uf.unite(o, aorb[x.h_act[x.h->inv(h)][pt]]);
  }

  FiberedElement out(x.g, x.h, x.n, RingSpec::integers());
  for (int o = 0; o < na; ++o) {
    if (uf.find(o) != o) continue;
    int pt = aorb_rep[o];
    std::vector<int> elems;
    std::vector<long long> vals;
    for (int g = 0; g < ng; ++g)
      for (int h = 0; h < nh; ++h) {
        int q = x.h_act[x.h->inv(h)][x.g_act[g][pt]];  // g pt h^-1
        if (aorb[q] != aorb[pt]) continue;
        long long a = 0;
        int r = pt;
        while (r != q) {
          r = x.a_gen[r];
          ++a;
          check_internal(a <= x.n, "A-orbit scan overran");
        }
        elems.push_back(g * nh + h);
        vals.push_back(a);
      }
    FiberPair sp(x.g, x.h, x.n, elems, vals);
    out.add_term(canonicalize(sp), Coeff::one(RingSpec::integers()));
  }
  return out;
}

}  // namespace fibrum::oracle
