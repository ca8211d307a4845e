#include "fibrum/group.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <queue>
#include <set>

#include "fibrum/zlin.hpp"

namespace fibrum {

// ---------------------------------------------------------------------------
// GroupTable
// ---------------------------------------------------------------------------

int GroupTable::pow(int a, long long e) const {
  int ord = elt_order_[a];
  long long r = e % ord;
  if (r < 0) r += ord;
  int acc = 0;
  for (long long i = 0; i < r; ++i) acc = mul(acc, a);
  return acc;
}

GroupPtr GroupTable::make(std::string name, std::vector<int> mul,
                          std::vector<std::string> labels) {
  auto g = std::shared_ptr<GroupTable>(new GroupTable());
  size_t n2 = mul.size();
  int n = static_cast<int>(std::lround(std::sqrt(static_cast<double>(n2))));
  if (n <= 0 || static_cast<size_t>(n) * n != n2)
    throw FormatError("multiplication table is not square");
  g->n_ = n;
  g->mul_ = std::move(mul);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      int v = g->mul_[i * n + j];
      if (v < 0 || v >= n) throw FormatError("table entry out of range");
    }
  // Identity at index 0.
  for (int i = 0; i < n; ++i)
    if (g->mul_[0 * n + i] != i || g->mul_[i * n + 0] != i)
      throw FormatError("index 0 is not a two-sided identity");
  // Latin square.
  for (int i = 0; i < n; ++i) {
    std::vector<char> seen_row(n, 0), seen_col(n, 0);
    for (int j = 0; j < n; ++j) {
      if (seen_row[g->mul_[i * n + j]]++) throw FormatError("row is not a permutation");
      if (seen_col[g->mul_[j * n + i]]++) throw FormatError("column is not a permutation");
    }
  }
  // Associativity on all triples.
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      int ab = g->mul_[a * n + b];
      for (int c = 0; c < n; ++c)
        if (g->mul_[ab * n + c] != g->mul_[a * n + g->mul_[b * n + c]])
          throw FormatError("table is not associative");
    }
  // Inverses.
  g->inv_.assign(n, -1);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (g->mul_[a * n + b] == 0 && g->mul_[b * n + a] == 0) g->inv_[a] = b;
  for (int a = 0; a < n; ++a)
    if (g->inv_[a] < 0) throw FormatError("missing two-sided inverse");
  // Element orders and commutativity.
  g->elt_order_.assign(n, 1);
  for (int a = 0; a < n; ++a) {
    int x = a, ord = 1;
    while (x != 0) { x = g->mul_[x * n + a]; ++ord; }
    g->elt_order_[a] = ord;
  }
  g->abelian_ = true;
  for (int a = 0; a < n && g->abelian_; ++a)
    for (int b = a + 1; b < n; ++b)
      if (g->mul_[a * n + b] != g->mul_[b * n + a]) { g->abelian_ = false; break; }
  g->name_ = std::move(name);
  if (labels.empty()) {
    labels.resize(n);
    for (int i = 0; i < n; ++i) labels[i] = "g" + std::to_string(i);
    labels[0] = "1";
  }
  if (static_cast<int>(labels.size()) != n)
    throw FormatError("label count does not match order");
  g->labels_ = std::move(labels);
  return g;
}

GroupPtr GroupTable::make_from_rows(std::string name,
                                    const std::vector<std::vector<int>>& rows,
                                    std::vector<std::string> labels) {
  std::vector<int> flat;
  for (const auto& r : rows) {
    if (r.size() != rows.size()) throw FormatError("ragged multiplication table");
    flat.insert(flat.end(), r.begin(), r.end());
  }
  return make(std::move(name), std::move(flat), std::move(labels));
}

// ---------------------------------------------------------------------------
// SubgroupRef / GroupHom / AHom
// ---------------------------------------------------------------------------

bool SubgroupRef::contains(int g) const {
  return std::binary_search(elems.begin(), elems.end(), g);
}

int SubgroupRef::index_of(int g) const {
  auto it = std::lower_bound(elems.begin(), elems.end(), g);
  if (it == elems.end() || *it != g) return -1;
  return static_cast<int>(it - elems.begin());
}

bool GroupHom::is_bijective() const {
  if (dom->order() != cod->order()) return false;
  std::vector<char> seen(cod->order(), 0);
  for (int v : img)
    if (seen[v]++) return false;
  return true;
}

long long AHom::operator()(int g) const {
  int i = dom.index_of(g);
  require(i >= 0, "AHom evaluated outside its domain");
  return vals[i];
}

bool AHom::is_trivial() const {
  for (long long v : vals)
    if (v % modulus != 0) return false;
  return true;
}

bool AHom::is_faithful() const {
  int zero = 0;
  for (long long v : vals)
    if (v % modulus == 0) ++zero;
  return zero == 1;
}

AHom AHom::conjugate(int g) const {
  SubgroupRef cd = conjugate_subgroup(dom, g);
  AHom out{cd, modulus, std::vector<long long>(vals.size(), 0)};
  const auto& G = *dom.parent;
  for (size_t i = 0; i < cd.elems.size(); ++i) {
    int back = G.mul(G.mul(G.inv(g), cd.elems[i]), g);  // g^-1 x g
    out.vals[i] = vals[dom.index_of(back)];
  }
  return out;
}

AHom AHom::restrict_to(const SubgroupRef& sub) const {
  AHom out{sub, modulus, {}};
  out.vals.reserve(sub.elems.size());
  for (int e : sub.elems) {
    int i = dom.index_of(e);
    require(i >= 0, "restriction target is not contained in the domain");
    out.vals.push_back(vals[i]);
  }
  return out;
}

long long AHom::kernel_size() const {
  long long k = 0;
  for (long long v : vals)
    if (v % modulus == 0) ++k;
  return k;
}

SubgroupRef AHom::kernel() const {
  SubgroupRef k{dom.parent, {}};
  for (size_t i = 0; i < vals.size(); ++i)
    if (vals[i] % modulus == 0) k.elems.push_back(dom.elems[i]);
  return k;
}

// ---------------------------------------------------------------------------
// Constructors
// ---------------------------------------------------------------------------

GroupPtr cyclic_group(int n) {
  require(n >= 1, "cyclic_group needs n >= 1");
  std::vector<int> mul(n * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) mul[i * n + j] = (i + j) % n;
  std::vector<std::string> labels(n);
  for (int i = 0; i < n; ++i) labels[i] = i == 0 ? "1" : "x^" + std::to_string(i);
  return GroupTable::make("C" + std::to_string(n), std::move(mul), std::move(labels));
}

GroupPtr dihedral_group(int order2n) {
  require(order2n >= 2 && order2n % 2 == 0, "dihedral order must be even");
  int n = order2n / 2;
  int m = 2 * n;
  // index i < n: rotation r^i; index n+i: reflection s r^i
  auto idx = [n](int refl, int rot) { return refl * n + ((rot % n) + n) % n; };
  std::vector<int> mul(m * m);
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) {
      int ra = a % n, fa = a / n, rb = b % n, fb = b / n;
      // (s^fa r^ra)(s^fb r^rb) = s^(fa+fb) r^(rb +/- ra)
      int rot = fb ? (rb - ra) : (rb + ra);
      mul[a * m + b] = idx((fa + fb) % 2, rot);
    }
  std::vector<std::string> labels(m);
  for (int i = 0; i < n; ++i) labels[i] = i == 0 ? "1" : "r^" + std::to_string(i);
  for (int i = 0; i < n; ++i) labels[n + i] = i == 0 ? "s" : "sr^" + std::to_string(i);
  return GroupTable::make("D" + std::to_string(m), std::move(mul), std::move(labels));
}

GroupPtr dicyclic_group(int n) {
  require(n >= 2, "dicyclic_group needs n >= 2");
  int m = 4 * n;
  // elements a^i b^j with 0 <= i < 2n, j in {0,1}; relations
  // a^(2n) = 1, b^2 = a^n, b a b^-1 = a^-1.
  auto idx = [n](int i, int j) { return (((i % (2 * n)) + 2 * n) % (2 * n)) + 2 * n * j; };
  std::vector<int> mul(m * m);
  for (int x = 0; x < m; ++x)
    for (int y = 0; y < m; ++y) {
      int i1 = x % (2 * n), j1 = x / (2 * n);
      int i2 = y % (2 * n), j2 = y / (2 * n);
      // (a^i1 b^j1)(a^i2 b^j2): move b^j1 across a^i2.
      int i = j1 ? i1 - i2 : i1 + i2;
      int j = j1 + j2;
      if (j == 2) { i += n; j = 0; }
      mul[x * m + y] = idx(i, j);
    }
  std::vector<std::string> labels(m);
  for (int i = 0; i < 2 * n; ++i) {
    labels[i] = i == 0 ? "1" : "a^" + std::to_string(i);
    labels[2 * n + i] = i == 0 ? "b" : "a^" + std::to_string(i) + "b";
  }
  std::string name = (n == 2) ? "Q8" : (n == 4 ? "Q16" : "Dic" + std::to_string(n));
  return GroupTable::make(std::move(name), std::move(mul), std::move(labels));
}

GroupPtr quaternion_group(int order) {
  require(order == 8 || order == 16, "quaternion order must be 8 or 16");
  return dicyclic_group(order / 4);
}

GroupPtr abelian_group(const std::vector<int>& factors) {
  require(!factors.empty(), "abelian_group needs at least one factor");
  long long n = 1;
  for (int d : factors) {
    require(d >= 1, "abelian factors must be positive");
    n *= d;
  }
  require(n <= 4096, "abelian group too large");
  int m = static_cast<int>(n);
  int k = static_cast<int>(factors.size());
  auto decode = [&](int x, std::vector<int>& out) {
    for (int i = k - 1; i >= 0; --i) { out[i] = x % factors[i]; x /= factors[i]; }
  };
  auto encode = [&](const std::vector<int>& v) {
    int x = 0;
    for (int i = 0; i < k; ++i) x = x * factors[i] + (v[i] % factors[i]);
    return x;
  };
  std::vector<int> mul(static_cast<size_t>(m) * m);
  std::vector<int> va(k), vb(k), vc(k);
  for (int a = 0; a < m; ++a) {
    decode(a, va);
    for (int b = 0; b < m; ++b) {
      decode(b, vb);
      for (int i = 0; i < k; ++i) vc[i] = (va[i] + vb[i]) % factors[i];
      mul[a * m + b] = encode(vc);
    }
  }
  std::string name;
  for (size_t i = 0; i < factors.size(); ++i) {
    if (i) name += "x";
    name += "C" + std::to_string(factors[i]);
  }
  return GroupTable::make(std::move(name), std::move(mul));
}

namespace {

std::vector<std::vector<int>> all_permutations(int n) {
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  std::vector<std::vector<int>> out;
  do { out.push_back(p); } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

bool perm_even(const std::vector<int>& p) {
  int inv = 0;
  for (size_t i = 0; i < p.size(); ++i)
    for (size_t j = i + 1; j < p.size(); ++j)
      if (p[i] > p[j]) ++inv;
  return inv % 2 == 0;
}

GroupPtr perm_group(std::string name, const std::vector<std::vector<int>>& perms) {
  int m = static_cast<int>(perms.size());
  std::map<std::vector<int>, int> index;
  for (int i = 0; i < m; ++i) index[perms[i]] = i;
  int n = static_cast<int>(perms[0].size());
  std::vector<int> mul(static_cast<size_t>(m) * m);
  std::vector<int> comp(n);
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) {
      for (int x = 0; x < n; ++x) comp[x] = perms[a][perms[b][x]];
      mul[a * m + b] = index.at(comp);
    }
  std::vector<std::string> labels(m);
  for (int i = 0; i < m; ++i) {
    std::string s = "(";
    for (int x = 0; x < n; ++x) s += std::to_string(perms[i][x]);
    s += ")";
    labels[i] = s;
  }
  return GroupTable::make(std::move(name), std::move(mul), std::move(labels));
}

}  // namespace

GroupPtr symmetric_group(int n) {
  require(n >= 1 && n <= 5, "symmetric_group supports n <= 5");
  return perm_group("S" + std::to_string(n), all_permutations(n));
}

GroupPtr alternating_group(int n) {
  require(n == 4, "alternating_group supports n = 4 only");
  std::vector<std::vector<int>> perms;
  for (auto& p : all_permutations(n))
    if (perm_even(p)) perms.push_back(p);
  return perm_group("A4", perms);
}

GroupPtr direct_product(const GroupPtr& a, const GroupPtr& b) {
  int na = a->order(), nb = b->order();
  require(static_cast<long long>(na) * nb <= 4096, "direct product too large");
  int m = na * nb;
  std::vector<int> mul(static_cast<size_t>(m) * m);
  for (int x = 0; x < m; ++x)
    for (int y = 0; y < m; ++y) {
      int xa = x / nb, xb = x % nb, ya = y / nb, yb = y % nb;
      mul[x * m + y] = a->mul(xa, ya) * nb + b->mul(xb, yb);
    }
  std::vector<std::string> labels(m);
  for (int x = 0; x < m; ++x)
    labels[x] = "(" + a->label(x / nb) + "," + b->label(x % nb) + ")";
  return GroupTable::make(a->name() + "x" + b->name(), std::move(mul), std::move(labels));
}

GroupHom product_proj1(const GroupPtr& prod, const GroupPtr& a, const GroupPtr& b) {
  GroupHom h{prod, a, std::vector<int>(prod->order())};
  for (int x = 0; x < prod->order(); ++x) h.img[x] = x / b->order();
  return h;
}

GroupHom product_proj2(const GroupPtr& prod, const GroupPtr& a, const GroupPtr& b) {
  GroupHom h{prod, b, std::vector<int>(prod->order())};
  for (int x = 0; x < prod->order(); ++x) h.img[x] = x % b->order();
  return h;
}

GroupPtr build_group(const std::string& spec) {
  // Product specs: split on 'x' and fold with direct_product.
  auto xpos = spec.find('x');
  if (xpos != std::string::npos) {
    GroupPtr acc = build_group(spec.substr(0, xpos));
    GroupPtr rest = build_group(spec.substr(xpos + 1));
    return direct_product(acc, rest);
  }
  if (spec == "V4") return abelian_group({2, 2});
  if (spec.size() >= 2) {
    char c = spec[0];
    std::string tail = spec.substr(1);
    bool numeric = !tail.empty() &&
                   std::all_of(tail.begin(), tail.end(), [](char ch) { return ch >= '0' && ch <= '9'; });
    if (numeric) {
      int n = std::stoi(tail);
      switch (c) {
        case 'C': return cyclic_group(n);
        case 'D': return dihedral_group(n);
        case 'Q': return quaternion_group(n);
        case 'S': return symmetric_group(n);
        case 'A': return alternating_group(n);
        default: break;
      }
    }
  }
  throw FormatError("unknown group spec: " + spec);
}

// ---------------------------------------------------------------------------
// Subgroups
// ---------------------------------------------------------------------------

SubgroupRef trivial_subgroup(const GroupPtr& g) { return {g, {0}}; }

SubgroupRef full_subgroup(const GroupPtr& g) {
  SubgroupRef s{g, std::vector<int>(g->order())};
  std::iota(s.elems.begin(), s.elems.end(), 0);
  return s;
}

SubgroupRef closure(const GroupPtr& g, std::vector<int> gens) {
  std::set<int> elems{0};
  std::queue<int> todo;
  todo.push(0);
  for (int x : gens)
    if (elems.insert(x).second) todo.push(x);
  while (!todo.empty()) {
    int a = todo.front();
    todo.pop();
    for (int b : std::vector<int>(elems.begin(), elems.end())) {
      for (int c : {g->mul(a, b), g->mul(b, a)})
        if (elems.insert(c).second) todo.push(c);
    }
    int ia = g->inv(a);
    if (elems.insert(ia).second) todo.push(ia);
  }
  return {g, std::vector<int>(elems.begin(), elems.end())};
}

bool is_subgroup(const GroupPtr& g, const std::vector<int>& elems) {
  if (elems.empty() || elems[0] != 0) return false;
  if (!std::is_sorted(elems.begin(), elems.end())) return false;
  auto has = [&](int x) { return std::binary_search(elems.begin(), elems.end(), x); };
  for (int a : elems) {
    if (!has(g->inv(a))) return false;
    for (int b : elems)
      if (!has(g->mul(a, b))) return false;
  }
  return true;
}

bool is_normal(const SubgroupRef& h) {
  const auto& g = *h.parent;
  for (int x = 0; x < g.order(); ++x)
    for (int a : h.elems)
      if (!h.contains(g.conj(x, a))) return false;
  return true;
}

SubgroupRef conjugate_subgroup(const SubgroupRef& h, int g) {
  const auto& G = *h.parent;
  SubgroupRef out{h.parent, {}};
  out.elems.reserve(h.elems.size());
  for (int a : h.elems) out.elems.push_back(G.conj(g, a));
  std::sort(out.elems.begin(), out.elems.end());
  return out;
}

SubgroupRef intersect(const SubgroupRef& a, const SubgroupRef& b) {
  SubgroupRef out{a.parent, {}};
  std::set_intersection(a.elems.begin(), a.elems.end(), b.elems.begin(),
                        b.elems.end(), std::back_inserter(out.elems));
  return out;
}

SubgroupRef product_subgroup(const SubgroupRef& a, const SubgroupRef& b) {
  const auto& g = *a.parent;
  std::set<int> out;
  for (int x : a.elems)
    for (int y : b.elems) out.insert(g.mul(x, y));
  SubgroupRef s{a.parent, std::vector<int>(out.begin(), out.end())};
  require(is_subgroup(a.parent, s.elems), "product set HK is not a subgroup");
  return s;
}

int EmbeddedGroup::from_parent(int g) const {
  for (size_t i = 0; i < to_parent.size(); ++i)
    if (to_parent[i] == g) return static_cast<int>(i);
  return -1;
}

EmbeddedGroup subgroup_as_group(const SubgroupRef& h, const std::string& name) {
  const auto& G = *h.parent;
  int m = h.order();
  std::vector<int> mul(static_cast<size_t>(m) * m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      mul[i * m + j] = h.index_of(G.mul(h.elems[i], h.elems[j]));
  std::vector<std::string> labels(m);
  for (int i = 0; i < m; ++i) labels[i] = G.label(h.elems[i]);
  EmbeddedGroup out;
  out.group = GroupTable::make(name.empty() ? "sub" + std::to_string(m) + "@" + G.name() : name,
                               std::move(mul), std::move(labels));
  out.to_parent = h.elems;
  return out;
}

QuotientData quotient_group(const GroupPtr& g, const SubgroupRef& nsub) {
  require(is_normal(nsub), "quotient requires a normal subgroup");
  int n = g->order();
  std::vector<int> coset_min(n, -1);  // element -> minimal rep of its coset
  std::vector<int> reps;
  for (int x = 0; x < n; ++x) {
    if (coset_min[x] >= 0) continue;
    int m = x;
    std::vector<int> coset;
    for (int k : nsub.elems) {
      int y = g->mul(x, k);
      coset.push_back(y);
      m = std::min(m, y);
    }
    for (int y : coset) coset_min[y] = m;
    reps.push_back(m);
  }
  std::sort(reps.begin(), reps.end());
  std::map<int, int> rep_index;
  for (size_t i = 0; i < reps.size(); ++i) rep_index[reps[i]] = static_cast<int>(i);
  int q = static_cast<int>(reps.size());
  std::vector<int> mul(static_cast<size_t>(q) * q);
  for (int i = 0; i < q; ++i)
    for (int j = 0; j < q; ++j)
      mul[i * q + j] = rep_index.at(coset_min[g->mul(reps[i], reps[j])]);
  std::vector<std::string> labels(q);
  for (int i = 0; i < q; ++i) labels[i] = "[" + g->label(reps[i]) + "]";
  QuotientData out;
  out.group = GroupTable::make(g->name() + "/" + std::to_string(nsub.order()),
                               std::move(mul), std::move(labels));
  out.coset_rep = reps;
  out.proj.dom = g;
  out.proj.cod = out.group;
  out.proj.img.resize(n);
  for (int x = 0; x < n; ++x) out.proj.img[x] = rep_index.at(coset_min[x]);
  return out;
}

SubgroupRef center(const GroupPtr& g) {
  SubgroupRef z{g, {}};
  for (int a = 0; a < g->order(); ++a) {
    bool central = true;
    for (int b = 0; b < g->order() && central; ++b)
      if (g->mul(a, b) != g->mul(b, a)) central = false;
    if (central) z.elems.push_back(a);
  }
  return z;
}

SubgroupRef derived_subgroup(const GroupPtr& g) {
  std::vector<int> comms;
  for (int a = 0; a < g->order(); ++a)
    for (int b = 0; b < g->order(); ++b)
      comms.push_back(g->mul(g->mul(a, b), g->mul(g->inv(a), g->inv(b))));
  return closure(g, comms);
}

bool is_solvable(const GroupPtr& g) {
  SubgroupRef d = full_subgroup(g);
  while (d.order() > 1) {
    EmbeddedGroup e = subgroup_as_group(d);
    SubgroupRef dd = derived_subgroup(e.group);
    if (dd.order() == d.order()) return false;
    SubgroupRef next{g, {}};
    for (int i : dd.elems) next.elems.push_back(e.to_parent[i]);
    std::sort(next.elems.begin(), next.elems.end());
    d = next;
  }
  return true;
}

CharacteristicData characteristic_data(const GroupPtr& g) {
  CharacteristicData out;
  out.center = center(g);
  out.derived = derived_subgroup(g);
  QuotientData q = quotient_group(g, out.derived);
  out.abelianization = q.group;
  out.ab_proj = q.proj;
  return out;
}

std::vector<SubgroupInfo> subgroup_lattice(const GroupPtr& g, const LatticeOptions& opt) {
  int n = g->order();
  if (n > opt.max_order)
    throw ResourceError("subgroup_lattice: order exceeds configured bound");
  if (!is_solvable(g))
    throw ResourceError("subgroup_lattice: nonsolvable groups are out of range");

  std::set<std::vector<int>> seen;
  std::vector<std::vector<int>> order_queue;
  seen.insert({0});
  order_queue.push_back({0});

  // Cyclic prime extension: S = <T, x> with T normal in S and [S:T] prime.
  for (size_t qi = 0; qi < order_queue.size(); ++qi) {
    std::vector<int> t = order_queue[qi];
    auto in_t = [&](int x) { return std::binary_search(t.begin(), t.end(), x); };
    for (int x = 1; x < n; ++x) {
      if (in_t(x)) continue;
      // x must normalize T.
      bool norm = true;
      for (int a : t)
        if (!in_t(g->conj(x, a))) { norm = false; break; }
      if (!norm) continue;
      // Order of the coset xT: least k >= 1 with x^k in T.
      int k = 1, p = x;
      while (!in_t(p)) { p = g->mul(p, x); ++k; }
      bool prime = k >= 2;
      for (int d = 2; d * d <= k && prime; ++d)
        if (k % d == 0) prime = false;
      if (!prime) continue;
      std::vector<int> s;
      int pw = 0;
      for (int e = 0; e < k; ++e) {
        for (int a : t) s.push_back(g->mul(pw, a));
        pw = g->mul(pw, x);
      }
      std::sort(s.begin(), s.end());
      if (seen.insert(s).second) order_queue.push_back(std::move(s));
    }
  }

  std::vector<std::vector<int>> subs(seen.begin(), seen.end());
  std::sort(subs.begin(), subs.end(), [](const auto& a, const auto& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  });
  std::map<std::vector<int>, int> index;
  for (size_t i = 0; i < subs.size(); ++i) index[subs[i]] = static_cast<int>(i);

  std::vector<SubgroupInfo> out(subs.size());
  for (size_t i = 0; i < subs.size(); ++i) {
    out[i].sub = SubgroupRef{g, subs[i]};
    int cls = static_cast<int>(i);
    bool normal = true;
    for (int x = 0; x < n; ++x) {
      SubgroupRef cj = conjugate_subgroup(out[i].sub, x);
      if (cj.elems != subs[i]) normal = false;
      cls = std::min(cls, index.at(cj.elems));
    }
    out[i].normal = normal;
    out[i].conj_class = cls;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Homs into Z/N, abelian invariants
// ---------------------------------------------------------------------------

namespace {

// Generator chain of a group: greedy minimal-index generators together with,
// for abelian groups, exponent normal forms used by hom enumeration.
struct AbelianChain {
  std::vector<int> gens;
  std::vector<int> coset_order;          // r_i: least r with g_i^r in previous
  std::vector<std::vector<int>> power_expr;  // g_i^{r_i} as exponent vector
  std::vector<std::vector<int>> nf;      // element -> exponent vector
};

AbelianChain abelian_chain(const GroupPtr& a) {
  require(a->is_abelian(), "abelian_chain on nonabelian group");
  int n = a->order();
  AbelianChain ch;
  std::vector<int> sub{0};              // current subgroup, sorted
  ch.nf.assign(n, {});
  ch.nf[0] = {};
  while (static_cast<int>(sub.size()) < n) {
    int gnew = -1;
    for (int x = 1; x < n; ++x)
      if (!std::binary_search(sub.begin(), sub.end(), x)) { gnew = x; break; }
    int r = 1, p = gnew;
    while (!std::binary_search(sub.begin(), sub.end(), p)) { p = a->mul(p, gnew); ++r; }
    int gi = static_cast<int>(ch.gens.size());
    ch.gens.push_back(gnew);
    ch.coset_order.push_back(r);
    std::vector<int> pe = ch.nf[p];
    pe.resize(gi, 0);
    ch.power_expr.push_back(pe);
    std::vector<int> next;
    for (int e = 0, pw = 0; e < r; ++e) {
      for (int s : std::vector<int>(sub)) {
        int y = a->mul(s, pw);
        next.push_back(y);
        std::vector<int> v = ch.nf[s];
        v.resize(gi + 1, 0);
        v[gi] = e;
        ch.nf[y] = v;
      }
      pw = a->mul(pw, gnew);
    }
    std::sort(next.begin(), next.end());
    sub = next;
  }
  for (auto& v : ch.nf) v.resize(ch.gens.size(), 0);
  return ch;
}

long long gcdll(long long a, long long b) { return std::gcd(a, b); }

// Modular inverse of a mod m for gcd(a, m) = 1.
long long inv_mod(long long a, long long m) {
  long long t = 0, newt = 1, r = m, newr = ((a % m) + m) % m;
  while (newr != 0) {
    long long q = r / newr;
    std::swap(t, newt); newt -= q * t;
    std::swap(r, newr); newr -= q * r;
  }
  check_internal(r == 1, "inv_mod: not invertible");
  return ((t % m) + m) % m;
}

}  // namespace

std::vector<AHom> homs_to_cyclic(const SubgroupRef& h, long long N) {
  require(N >= 1, "modulus must be >= 1");
  EmbeddedGroup sub = subgroup_as_group(h);
  CharacteristicData cd = characteristic_data(sub.group);
  AbelianChain ch = abelian_chain(cd.abelianization);
  int m = static_cast<int>(ch.gens.size());

  // Enumerate value assignments v_i for the chain generators.
  std::vector<std::vector<long long>> assigns{{}};
  for (int i = 0; i < m; ++i) {
    std::vector<std::vector<long long>> next;
    for (const auto& partial : assigns) {
      // r_i * v == value of g_i^{r_i} under the partial assignment (mod N).
      long long target = 0;
      for (int j = 0; j < i; ++j)
        target = (target + static_cast<long long>(ch.power_expr[i][j]) * partial[j]) % N;
      long long r = ch.coset_order[i];
      long long d = gcdll(r, N);
      if (target % d != 0) continue;
      long long base = ((target / d) % (N / d)) * inv_mod((r / d) % (N / d), N / d) % (N / d);
      for (long long t = 0; t < d; ++t) {
        auto v = partial;
        v.push_back((base + t * (N / d)) % N);
        next.push_back(std::move(v));
      }
    }
    assigns = std::move(next);
  }

  std::vector<AHom> out;
  out.reserve(assigns.size());
  for (const auto& v : assigns) {
    AHom hom{h, N, std::vector<long long>(h.elems.size(), 0)};
    for (size_t i = 0; i < h.elems.size(); ++i) {
      int ab = cd.ab_proj(static_cast<int>(i));
      long long val = 0;
      for (int j = 0; j < m; ++j)
        val = (val + static_cast<long long>(ch.nf[ab][j]) * v[j]) % N;
      hom.vals[i] = val;
    }
    out.push_back(std::move(hom));
  }
  std::sort(out.begin(), out.end(),
            [](const AHom& a, const AHom& b) { return a.vals < b.vals; });
  out.erase(std::unique(out.begin(), out.end(),
                        [](const AHom& a, const AHom& b) { return a.vals == b.vals; }),
            out.end());
  return out;
}

std::vector<long long> invariant_factors(const GroupPtr& abelian) {
  AbelianChain ch = abelian_chain(abelian);
  int m = static_cast<int>(ch.gens.size());
  if (m == 0) return {};
  zlin::Mat rel(m, std::vector<long long>(m, 0));
  for (int i = 0; i < m; ++i) {
    rel[i][i] = ch.coset_order[i];
    for (int j = 0; j < i; ++j) rel[i][j] = -ch.power_expr[i][j];
  }
  auto snf = zlin::smith_normal_form(rel, false, false);
  std::vector<long long> out;
  for (long long d : snf.diag())
    if (d > 1) out.push_back(d);
  if (out.empty()) out.push_back(1);
  return out;
}

// ---------------------------------------------------------------------------
// Automorphisms / isomorphism
// ---------------------------------------------------------------------------

namespace {

std::vector<int> generator_chain(const GroupPtr& g) {
  std::vector<int> gens;
  SubgroupRef cur = trivial_subgroup(g);
  while (cur.order() < g->order()) {
    for (int x = 1; x < g->order(); ++x)
      if (!cur.contains(x)) {
        gens.push_back(x);
        auto ge = cur.elems;
        ge.push_back(x);
        cur = closure(g, ge);
        break;
      }
  }
  return gens;
}

// Extends the partial injective map gens[i] -> images[i] multiplicatively over
// the subgroup the assigned generators span. Returns the (possibly partial,
// -1 padded) image vector, or nullopt on any inconsistency.
std::optional<std::vector<int>> extend_hom(const GroupPtr& dom, const GroupPtr& cod,
                                           const std::vector<int>& gens,
                                           const std::vector<int>& images) {
  int n = dom->order();
  std::vector<int> img(n, -1), pre(cod->order(), -1);
  std::vector<int> known;
  auto assign = [&](int x, int v) -> bool {
    if (img[x] >= 0) return img[x] == v;
    if (pre[v] >= 0) return false;
    img[x] = v;
    pre[v] = x;
    known.push_back(x);
    return true;
  };
  if (!assign(0, 0)) return std::nullopt;
  for (size_t i = 0; i < images.size(); ++i)
    if (!assign(gens[i], images[i])) return std::nullopt;
  for (size_t i = 0; i < known.size(); ++i) {
    int a = known[i];
    for (size_t j = 0; j <= i; ++j) {
      int b = known[j];
      if (!assign(dom->mul(a, b), cod->mul(img[a], img[b]))) return std::nullopt;
      if (!assign(dom->mul(b, a), cod->mul(img[b], img[a]))) return std::nullopt;
    }
  }
  return img;
}

void search_isos(const GroupPtr& dom, const GroupPtr& cod, const std::vector<int>& gens,
                 std::vector<int>& images, std::vector<std::vector<int>>& out,
                 bool first_only) {
  size_t i = images.size();
  if (i >= gens.size()) return;
  for (int v = 0; v < cod->order(); ++v) {
    if (cod->element_order(v) != dom->element_order(gens[i])) continue;
    images.push_back(v);
    auto img = extend_hom(dom, cod, gens, images);
    if (img.has_value()) {
      if (images.size() == gens.size())
        out.push_back(*img);
      else
        search_isos(dom, cod, gens, images, out, first_only);
    }
    images.pop_back();
    if (first_only && !out.empty()) return;
  }
}

}  // namespace

AutomorphismData automorphism_group(const GroupPtr& g, const AutOptions& opt) {
  if (g->order() > opt.max_order)
    throw ResourceError("automorphism_group: order exceeds configured bound");
  std::vector<int> gens = generator_chain(g);
  std::vector<std::vector<int>> maps;
  std::vector<int> images;
  search_isos(g, g, gens, images, maps, false);
  if (g->order() == 1) maps.push_back({0});
  std::sort(maps.begin(), maps.end());
  maps.erase(std::unique(maps.begin(), maps.end()), maps.end());

  int m = static_cast<int>(maps.size());
  std::map<std::vector<int>, int> index;
  for (int i = 0; i < m; ++i) index[maps[i]] = i;
  std::vector<int> mul(static_cast<size_t>(m) * m);
  std::vector<int> comp(g->order());
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) {
      for (int x = 0; x < g->order(); ++x) comp[x] = maps[a][maps[b][x]];
      mul[a * m + b] = index.at(comp);
    }
  AutomorphismData out;
  out.aut = GroupTable::make("Aut(" + g->name() + ")", std::move(mul));
  for (int i = 0; i < m; ++i)
    out.maps.push_back(GroupHom{g, g, maps[i]});
  // Inner automorphisms.
  std::set<int> inner;
  for (int x = 0; x < g->order(); ++x) {
    std::vector<int> cmap(g->order());
    for (int a = 0; a < g->order(); ++a) cmap[a] = g->conj(x, a);
    inner.insert(index.at(cmap));
  }
  out.inner = SubgroupRef{out.aut, std::vector<int>(inner.begin(), inner.end())};
  // Minimal-index coset representatives of Inn in Aut.
  std::vector<char> covered(m, 0);
  for (int a = 0; a < m; ++a) {
    if (covered[a]) continue;
    out.out_transversal.push_back(a);
    for (int i : out.inner.elems) covered[out.aut->mul(a, i)] = 1;
  }
  return out;
}

std::optional<GroupHom> isomorphic(const GroupPtr& g, const GroupPtr& h) {
  if (g->order() != h->order()) return std::nullopt;
  if (g->is_abelian() != h->is_abelian()) return std::nullopt;
  auto order_profile = [](const GroupPtr& x) {
    std::vector<int> p(x->order());
    for (int i = 0; i < x->order(); ++i) p[i] = x->element_order(i);
    std::sort(p.begin(), p.end());
    return p;
  };
  if (order_profile(g) != order_profile(h)) return std::nullopt;
  if (center(g).order() != center(h).order()) return std::nullopt;
  if (derived_subgroup(g).order() != derived_subgroup(h).order()) return std::nullopt;

  if (g->order() == 1) return GroupHom{g, h, {0}};
  std::vector<int> gens = generator_chain(g);
  std::vector<std::vector<int>> found;
  std::vector<int> images;
  search_isos(g, h, gens, images, found, true);
  if (found.empty()) return std::nullopt;
  return GroupHom{g, h, found.front()};
}

// ---------------------------------------------------------------------------
// Catalog
// ---------------------------------------------------------------------------

Catalog small_catalog(int max_order) {
  require(max_order >= 1, "max_order must be positive");
  std::vector<GroupPtr> all;
  auto add = [&](GroupPtr p) {
    if (p->order() <= max_order) all.push_back(std::move(p));
  };
  add(cyclic_group(1));
  for (int n = 2; n <= std::min(max_order, 15); ++n) {
    add(cyclic_group(n));
    switch (n) {
      case 4: add(abelian_group({2, 2})); break;
      case 6: add(symmetric_group(3)); break;
      case 8:
        add(abelian_group({4, 2}));
        add(abelian_group({2, 2, 2}));
        add(dihedral_group(8));
        add(dicyclic_group(2));
        break;
      case 9: add(abelian_group({3, 3})); break;
      case 10: add(dihedral_group(10)); break;
      case 12:
        add(abelian_group({6, 2}));
        add(dihedral_group(12));
        add(alternating_group(4));
        add(dicyclic_group(3));
        break;
      case 14: add(dihedral_group(14)); break;
      default: break;
    }
  }
  // Beyond order 15 the list is not complete; only well-known families.
  for (int n = 16; n <= max_order; ++n) {
    add(cyclic_group(n));
    if (n % 2 == 0) add(dihedral_group(n));
    if (n == 16) add(dicyclic_group(4));
  }
  std::stable_sort(all.begin(), all.end(),
                   [](const GroupPtr& a, const GroupPtr& b) { return a->order() < b->order(); });
  Catalog cat;
  cat.groups = std::move(all);
  cat.max_order = max_order;
  cat.complete = max_order <= 15;
  return cat;
}

}  // namespace fibrum
