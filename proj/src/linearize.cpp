#include "fibrum/linearize.hpp"

#include <algorithm>
#include <numeric>

namespace fibrum::lin {

namespace {

long long mod_pos(long long v, long long p) { return ((v % p) + p) % p; }

long long pow_mod(long long b, long long e, long long p) {
  long long r = 1;
  b = mod_pos(b, p);
  while (e > 0) {
    if (e & 1) r = (r * b) % p;
    b = (b * b) % p;
    e >>= 1;
  }
  return r;
}

long long inv_mod(long long a, long long p) { return pow_mod(a, p - 2, p); }

int fp_rank(std::vector<std::vector<long long>> m, long long p) {
  if (m.empty() || m[0].empty()) return 0;
  int rows = m.size(), cols = m[0].size(), rank = 0;
  for (int col = 0; col < cols && rank < rows; ++col) {
    int piv = -1;
    for (int r = rank; r < rows; ++r)
      if (mod_pos(m[r][col], p) != 0) { piv = r; break; }
    if (piv < 0) continue;
    std::swap(m[rank], m[piv]);
    long long inv = inv_mod(mod_pos(m[rank][col], p), p);
    for (int c = col; c < cols; ++c) m[rank][c] = mod_pos(m[rank][c] * inv, p);
    for (int r = 0; r < rows; ++r) {
      if (r == rank) continue;
      long long f = mod_pos(m[r][col], p);
      if (f == 0) continue;
      for (int c = col; c < cols; ++c)
        m[r][c] = mod_pos(m[r][c] - f * m[rank][c], p);
    }
    ++rank;
  }
  return rank;
}

bool is_prime(long long p) {
  if (p < 2) return false;
  for (long long d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

}  // namespace

ConjClasses conjugacy_classes(const GroupPtr& g) {
  ConjClasses out;
  out.g = g;
  out.class_of.assign(g->order(), -1);
  for (int x = 0; x < g->order(); ++x) {
    if (out.class_of[x] >= 0) continue;
    int id = static_cast<int>(out.reps.size());
    out.reps.push_back(x);
    for (int c = 0; c < g->order(); ++c) out.class_of[g->conj(c, x)] = id;
  }
  return out;
}

long long Embedding::operator()(long long residue) const {
  return pow_mod(zeta, mod_pos(residue, n), p);
}

Embedding make_embedding(long long n, long long p) {
  require(is_prime(p), "embedding needs a prime p");
  require((p - 1) % n == 0, "embedding needs N dividing p-1");
  // element of exact order n: generator^((p-1)/n) for a primitive root
  for (long long r = 1; r < p; ++r) {
    long long z = pow_mod(r, (p - 1) / n, p);
    // z has order dividing n; check exact order n
    bool exact = true;
    for (long long d = 1; d < n; ++d)
      if (n % d == 0 && pow_mod(z, d, p) == 1) { exact = false; break; }
    if (n == 1) exact = (z == 1);
    if (exact) return Embedding{n, p, z};
  }
  throw InternalError("no element of exact order N in F_p^x");
}

long long choose_prime(long long m, const std::vector<long long>& avoid) {
  for (long long p = m + 1;; p += (m > 1 ? m : 1)) {
    if (!is_prime(p)) continue;
    bool ok = true;
    for (long long a : avoid)
      if (a % p == 0) ok = false;
    if (ok) return p;
  }
}

std::vector<long long> induced_character_values(const GroupPtr& g,
                                                const SubgroupRef& h,
                                                const std::vector<long long>& phi_vals,
                                                const Embedding& e) {
  // chi(x) = sum over coset reps r with r^-1 x r in H of zeta(phi(r^-1 x r)),
  // computed as |H|^-1 sum over all r in G.
  int n = g->order();
  std::vector<long long> chi(n, 0);
  long long hinv = inv_mod(mod_pos(h.order(), e.p), e.p);
  for (int x = 0; x < n; ++x) {
    long long acc = 0;
    for (int r = 0; r < n; ++r) {
      int y = g->mul(g->mul(g->inv(r), x), r);
      int i = h.index_of(y);
      if (i < 0) continue;
      acc = (acc + e(phi_vals[i])) % e.p;
    }
    chi[x] = (acc * hinv) % e.p;
  }
  return chi;
}

ClassFunction linearize(const FiberedElement& x, const Embedding& e) {
  require(x.h()->order() == 1, "linearize needs an element of B^A(G, 1)");
  require(x.n() == e.n, "modulus mismatch");
  require(x.ring().tag == RingTag::Z, "linearize needs integer coefficients");
  const GroupPtr& g = x.g();
  ConjClasses cc = conjugacy_classes(g);
  ClassFunction out{g, e.p, std::vector<long long>(cc.count(), 0)};
  for (const auto& [t, coeff] : x.terms()) {
    // U <= G x 1 is a subgroup of G
    SubgroupRef h{g, {}};
    for (int el : t.pair().u_elems()) h.elems.push_back(el);  // |H1| = 1
    auto chi = induced_character_values(g, h, t.pair().phi_vals(), e);
    long long c = mod_pos(std::stoll(coeff.str()), e.p);
    for (int cls = 0; cls < cc.count(); ++cls)
      out.vals[cls] = mod_pos(out.vals[cls] + c * chi[cc.reps[cls]], e.p);
  }
  return out;
}

ClassFunction action_on_characters(const FiberPair& pair, const ClassFunction& f,
                                   const Embedding& e) {
  require(pair.h().get() == f.g.get(), "class function lives on the wrong group");
  require(pair.n() == e.n && f.p == e.p, "embedding mismatch");
  const GroupPtr& g = pair.g();
  const GroupPtr& h = pair.h();
  GroupPtr prod = direct_product(g, h);
  SubgroupRef u{prod, pair.u_elems()};
  auto chi = induced_character_values(prod, u, pair.phi_vals(), e);
  ConjClasses cg = conjugacy_classes(g);
  ConjClasses ch = conjugacy_classes(h);
  long long hinv = inv_mod(mod_pos(h->order(), e.p), e.p);
  ClassFunction out{g, e.p, std::vector<long long>(cg.count(), 0)};
  for (int cls = 0; cls < cg.count(); ++cls) {
    int x = cg.reps[cls];
    long long acc = 0;
    for (int y = 0; y < h->order(); ++y) {
      long long fv = f.vals[ch.class_of[h->inv(y)]];
      acc = mod_pos(acc + chi[x * h->order() + y] * fv, e.p);
    }
    out.vals[cls] = mod_pos(acc * hinv, e.p);
  }
  return out;
}

ProbeReport simplicity_probe(const std::vector<GroupPtr>& test_groups, long long n) {
  ProbeReport rep;
  rep.n = n;
  rep.cond_unit = true;  // class functions on the trivial group form a line
  rep.all_pass = true;
  for (const auto& g : test_groups) {
    ProbeGroupResult r;
    r.name = g->name();
    long long expo = 1;
    for (int i = 0; i < g->order(); ++i)
      expo = std::lcm(expo, static_cast<long long>(g->element_order(i)));
    long long m = std::lcm(expo, n);
    r.p = choose_prime(m, {static_cast<long long>(g->order())});
    Embedding e = make_embedding(n, r.p);
    ConjClasses cc = conjugacy_classes(g);
    r.classes = cc.count();

    // rows of the induced-character matrix: the standard basis of B^A(G)
    auto c1 = cyclic_group(1);
    auto basis = standard_basis(g, c1, n);
    std::vector<std::vector<long long>> rows;
    for (const auto& b : basis) {
      SubgroupRef h{g, {}};
      for (int el : b.pair().u_elems()) h.elems.push_back(el);
      auto chi = induced_character_values(g, h, b.pair().phi_vals(), e);
      std::vector<long long> row(cc.count());
      for (int cls = 0; cls < cc.count(); ++cls) row[cls] = chi[cc.reps[cls]];
      rows.push_back(std::move(row));
    }
    r.lin_rank = fp_rank(rows, r.p);
    r.cond_surjective = (r.lin_rank == r.classes);

    // evaluation maps to the trivial group: f -> |G|^-1 sum chi(g) f(g^-1)
    std::vector<std::vector<long long>> funcs;
    long long ginv = inv_mod(mod_pos(g->order(), r.p), r.p);
    for (const auto& b : basis) {
      SubgroupRef h{g, {}};
      for (int el : b.pair().u_elems()) h.elems.push_back(el);
      auto chi = induced_character_values(g, h, b.pair().phi_vals(), e);
      std::vector<long long> row(cc.count(), 0);
      for (int x = 0; x < g->order(); ++x) {
        int cls = cc.class_of[g->inv(x)];
        row[cls] = mod_pos(row[cls] + chi[x] * ginv, r.p);
      }
      funcs.push_back(std::move(row));
    }
    r.pairing_rank = fp_rank(funcs, r.p);
    r.cond_kernel = (r.pairing_rank == r.classes);
    if (!r.cond_surjective || !r.cond_kernel) rep.all_pass = false;
    rep.groups.push_back(std::move(r));
  }
  return rep;
}

BurnsideKernelReport burnside_kernel_check(int prime) {
  require(prime == 2 || prime == 3, "burnside_kernel_check supports p in {2,3}");
  BurnsideKernelReport rep;
  rep.prime = prime;
  GroupPtr g = direct_product(cyclic_group(prime), cyclic_group(prime));
  auto lat = subgroup_lattice(g);
  // coefficients of p[G/G] - sum_{|H|=p} [G/H] + [G/1] indexed by subgroups
  std::vector<long long> coeff(lat.size(), 0);
  int order_p = 0;
  for (size_t i = 0; i < lat.size(); ++i) {
    int o = lat[i].sub.order();
    if (o == g->order()) coeff[i] = prime;
    else if (o == prime) { coeff[i] = -1; ++order_p; }
    else if (o == 1) coeff[i] = 1;
  }
  check_internal(order_p == prime + 1, "C_p x C_p must have p+1 subgroups of order p");
  rep.element_nonzero =
      std::any_of(coeff.begin(), coeff.end(), [](long long c) { return c != 0; });
  // functionals [G/P]: [G/Q] -> |P\G/Q|
  auto double_cosets = [&](const SubgroupRef& pp, const SubgroupRef& qq) {
    std::vector<char> seen(g->order(), 0);
    long long count = 0;
    for (int t = 0; t < g->order(); ++t) {
      if (seen[t]) continue;
      ++count;
      for (int a : pp.elems)
        for (int b : qq.elems) seen[g->mul(g->mul(a, t), b)] = 1;
    }
    return count;
  };
  rep.annihilates_all = true;
  for (const auto& p_info : lat) {
    long long acc = 0;
    for (size_t j = 0; j < lat.size(); ++j)
      if (coeff[j] != 0) acc += coeff[j] * double_cosets(p_info.sub, lat[j].sub);
    rep.functional_values.push_back(acc);
    if (acc != 0) rep.annihilates_all = false;
  }
  return rep;
}

}  // namespace fibrum::lin
