#include "fibrum/fibered.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <queue>
#include <set>

namespace fibrum {

// ---------------------------------------------------------------------------
// RingSpec / Coeff
// ---------------------------------------------------------------------------

RingSpec RingSpec::prime_field(long long p) {
  require(p >= 2, "Fp needs a prime p");
  for (long long d = 2; d * d <= p; ++d)
    require(p % d != 0, "Fp modulus must be prime");
  return {RingTag::Fp, p};
}

std::string RingSpec::str() const {
  switch (tag) {
    case RingTag::Z: return "Z";
    case RingTag::Q: return "Q";
    case RingTag::Fp: return "F" + std::to_string(p);
  }
  return "?";
}

Coeff Coeff::zero(const RingSpec& r) {
  Coeff c;
  c.ring_ = r;
  return c;
}

Coeff Coeff::one(const RingSpec& r) { return from_integer(r, 1); }

Coeff Coeff::from_integer(const RingSpec& r, long long v) {
  Coeff c;
  c.ring_ = r;
  if (r.tag == RingTag::Fp)
    c.r_ = ((v % r.p) + r.p) % r.p;
  else
    c.q_ = mpq_class(static_cast<long>(v));
  return c;
}

Coeff Coeff::from_string(const RingSpec& r, const std::string& s) {
  Coeff c;
  c.ring_ = r;
  if (r.tag == RingTag::Fp) {
    mpz_class z(s, 10);
    mpz_class m(static_cast<long>(r.p));
    mpz_class red = ((z % m) + m) % m;
    c.r_ = red.get_si();
  } else {
    c.q_ = mpq_class(s, 10);
    c.q_.canonicalize();
    if (r.tag == RingTag::Z && c.q_.get_den() != 1)
      throw FormatError("integer coefficient has a denominator");
  }
  return c;
}

void Coeff::check_same(const Coeff& o) const {
  if (!(ring_ == o.ring_)) throw PreconditionError("coefficient ring mismatch");
}

bool Coeff::is_zero() const {
  return ring_.tag == RingTag::Fp ? r_ == 0 : q_ == 0;
}

Coeff Coeff::operator+(const Coeff& o) const {
  check_same(o);
  Coeff c = *this;
  if (ring_.tag == RingTag::Fp) c.r_ = (r_ + o.r_) % ring_.p;
  else c.q_ += o.q_;
  return c;
}

Coeff Coeff::operator-(const Coeff& o) const {
  check_same(o);
  Coeff c = *this;
  if (ring_.tag == RingTag::Fp) c.r_ = ((r_ - o.r_) % ring_.p + ring_.p) % ring_.p;
  else c.q_ -= o.q_;
  return c;
}

Coeff Coeff::operator*(const Coeff& o) const {
  check_same(o);
  Coeff c = *this;
  if (ring_.tag == RingTag::Fp) c.r_ = (r_ * o.r_) % ring_.p;
  else c.q_ *= o.q_;
  return c;
}

Coeff Coeff::operator-() const {
  Coeff c = *this;
  if (ring_.tag == RingTag::Fp) c.r_ = (ring_.p - r_) % ring_.p;
  else c.q_ = -c.q_;
  return c;
}

bool Coeff::operator==(const Coeff& o) const {
  if (!(ring_ == o.ring_)) return false;
  return ring_.tag == RingTag::Fp ? r_ == o.r_ : q_ == o.q_;
}

std::string Coeff::str() const {
  if (ring_.tag == RingTag::Fp) return std::to_string(r_);
  return q_.get_str();
}

// ---------------------------------------------------------------------------
// Pair-index arithmetic (no product table)
// ---------------------------------------------------------------------------

namespace {

inline int pmul(const GroupTable& g, const GroupTable& h, int e1, int e2) {
  int nh = h.order();
  return g.mul(e1 / nh, e2 / nh) * nh + h.mul(e1 % nh, e2 % nh);
}

inline int pinv(const GroupTable& g, const GroupTable& h, int e) {
  int nh = h.order();
  return g.inv(e / nh) * nh + h.inv(e % nh);
}

inline int pconj(const GroupTable& g, const GroupTable& h, int a, int b, int e) {
  int nh = h.order();
  return g.conj(a, e / nh) * nh + h.conj(b, e % nh);
}

bool pair_set_is_subgroup(const GroupTable& g, const GroupTable& h,
                          const std::vector<int>& elems) {
  if (elems.empty() || elems[0] != 0) return false;
  auto has = [&](int x) { return std::binary_search(elems.begin(), elems.end(), x); };
  for (int a : elems) {
    if (!has(pinv(g, h, a))) return false;
    for (int b : elems)
      if (!has(pmul(g, h, a, b))) return false;
  }
  return true;
}

// Generator chain memo keyed by owning pointers (keeps the tables alive, so
// addresses can never be recycled while the memo holds them).
std::mutex g_chain_mutex;
std::map<const GroupTable*, std::pair<GroupPtr, std::vector<int>>>& chain_memo() {
  static auto* m = new std::map<const GroupTable*, std::pair<GroupPtr, std::vector<int>>>();
  return *m;
}

std::vector<int> compute_generator_chain(const GroupPtr& g) {
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

std::vector<int> cached_generators(const GroupPtr& g) {
  {
    std::lock_guard<std::mutex> lock(g_chain_mutex);
    auto it = chain_memo().find(g.get());
    if (it != chain_memo().end()) return it->second.second;
  }
  std::vector<int> gens = compute_generator_chain(g);
  std::lock_guard<std::mutex> lock(g_chain_mutex);
  return chain_memo().emplace(g.get(), std::make_pair(g, gens)).first->second.second;
}

}  // namespace

GroupPtr pair_subgroup_table(const GroupPtr& g, const GroupPtr& h,
                             const std::vector<int>& u_elems) {
  int m = static_cast<int>(u_elems.size());
  std::map<int, int> index;
  for (int i = 0; i < m; ++i) index[u_elems[i]] = i;
  std::vector<int> mul(static_cast<size_t>(m) * m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      auto it = index.find(pmul(*g, *h, u_elems[i], u_elems[j]));
      require(it != index.end(), "pair element set is not closed");
      mul[i * m + j] = it->second;
    }
  std::vector<std::string> labels(m);
  int nh = h->order();
  for (int i = 0; i < m; ++i)
    labels[i] = "(" + g->label(u_elems[i] / nh) + "," + h->label(u_elems[i] % nh) + ")";
  return GroupTable::make("U", std::move(mul), std::move(labels));
}

// ---------------------------------------------------------------------------
// FiberPair
// ---------------------------------------------------------------------------

long long FiberPair::phi_at(int pair_elem) const {
  auto it = std::lower_bound(u_elems_.begin(), u_elems_.end(), pair_elem);
  require(it != u_elems_.end() && *it == pair_elem, "element outside U");
  return phi_vals_[it - u_elems_.begin()];
}

FiberPair::FiberPair(GroupPtr g, GroupPtr h, long long n, std::vector<int> u_elems,
                     std::vector<long long> phi_vals)
    : g_(std::move(g)), h_(std::move(h)), n_(n) {
  require(n_ >= 1, "fiber modulus must be >= 1");
  require(u_elems.size() == phi_vals.size(), "phi values must match the subgroup");
  std::vector<size_t> idx(u_elems.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(),
            [&](size_t a, size_t b) { return u_elems[a] < u_elems[b]; });
  u_elems_.resize(idx.size());
  phi_vals_.resize(idx.size());
  for (size_t i = 0; i < idx.size(); ++i) {
    u_elems_[i] = u_elems[idx[i]];
    phi_vals_[i] = ((phi_vals[idx[i]] % n_) + n_) % n_;
  }
  int total = g_->order() * h_->order();
  for (int e : u_elems_) require(e >= 0 && e < total, "pair element out of range");
  require(pair_set_is_subgroup(*g_, *h_, u_elems_), "U is not a subgroup of G x H");
  for (size_t i = 0; i < u_elems_.size(); ++i)
    for (size_t j = 0; j < u_elems_.size(); ++j) {
      int pr = pmul(*g_, *h_, u_elems_[i], u_elems_[j]);
      if ((phi_vals_[i] + phi_vals_[j]) % n_ != phi_at(pr))
        throw PreconditionError("phi is not a homomorphism");
    }

  int nh = h_->order();
  std::set<int> p1s, p2s;
  std::vector<int> k1s, k2s;
  for (int e : u_elems_) {
    p1s.insert(e / nh);
    p2s.insert(e % nh);
    if (e % nh == 0) k1s.push_back(e / nh);
    if (e / nh == 0) k2s.push_back(e % nh);
  }
  p1_ = SubgroupRef{g_, std::vector<int>(p1s.begin(), p1s.end())};
  p2_ = SubgroupRef{h_, std::vector<int>(p2s.begin(), p2s.end())};
  k1_ = SubgroupRef{g_, k1s};
  k2_ = SubgroupRef{h_, k2s};
  phi1_ = AHom{k1_, n_, {}};
  for (int k : k1s) phi1_.vals.push_back(phi_at(k * nh + 0));
  phi2_ = AHom{k2_, n_, {}};
  for (int l : k2s) phi2_.vals.push_back((n_ - phi_at(0 * nh + l)) % n_);
}

bool FiberPair::covering() const {
  return p1_.order() == g_->order() && p2_.order() == h_->order();
}

bool FiberPair::same_ambient(const FiberPair& o) const {
  return g_.get() == o.g_.get() && h_.get() == o.h_.get() && n_ == o.n_;
}

std::pair<std::vector<int>, std::vector<long long>> FiberPair::key() const {
  return {u_elems_, phi_vals_};
}

FiberPair FiberPair::conjugate(int a, int b) const {
  std::vector<int> elems(u_elems_.size());
  for (size_t i = 0; i < u_elems_.size(); ++i)
    elems[i] = pconj(*g_, *h_, a, b, u_elems_[i]);
  return FiberPair(g_, h_, n_, elems, phi_vals_);
}

FiberPair FiberPair::opposite() const {
  int nh = h_->order(), ng = g_->order();
  std::vector<int> elems;
  std::vector<long long> vals;
  for (size_t i = 0; i < u_elems_.size(); ++i) {
    int e = u_elems_[i];
    elems.push_back((e % nh) * ng + e / nh);
    vals.push_back((n_ - phi_vals_[i]) % n_);
  }
  return FiberPair(h_, g_, n_, elems, vals);
}

// ---------------------------------------------------------------------------
// Canonical form
// ---------------------------------------------------------------------------

namespace {

using PairKey = std::pair<std::vector<int>, std::vector<long long>>;

PairKey conj_key(const GroupTable& g, const GroupTable& h, const PairKey& k,
                 int a, int b) {
  size_t m = k.first.size();
  std::vector<std::pair<int, long long>> tmp(m);
  for (size_t i = 0; i < m; ++i)
    tmp[i] = {pconj(g, h, a, b, k.first[i]), k.second[i]};
  std::sort(tmp.begin(), tmp.end());
  PairKey out;
  out.first.resize(m);
  out.second.resize(m);
  for (size_t i = 0; i < m; ++i) {
    out.first[i] = tmp[i].first;
    out.second[i] = tmp[i].second;
  }
  return out;
}

std::vector<std::pair<int, int>> conj_moves(const GroupPtr& g, const GroupPtr& h) {
  std::vector<std::pair<int, int>> moves;
  for (int a : cached_generators(g)) moves.push_back({a, 0});
  for (int b : cached_generators(h)) moves.push_back({0, b});
  return moves;
}

std::set<PairKey> key_orbit(const GroupTable& g, const GroupTable& h,
                            const std::vector<std::pair<int, int>>& moves,
                            const PairKey& start) {
  std::set<PairKey> seen{start};
  std::queue<const PairKey*> todo;
  todo.push(&*seen.begin());
  while (!todo.empty()) {
    const PairKey* cur = todo.front();
    todo.pop();
    for (auto [a, b] : moves) {
      PairKey nxt = conj_key(g, h, *cur, a, b);
      auto [it, fresh] = seen.insert(std::move(nxt));
      if (fresh) todo.push(&*it);
    }
  }
  return seen;
}

}  // namespace

CanonicalPair::CanonicalPair(const FiberPair& p)
    : pair_([&] {
        auto orbit = key_orbit(*p.g(), *p.h(), conj_moves(p.g(), p.h()), p.key());
        const PairKey& least = *orbit.begin();
        return FiberPair(p.g(), p.h(), p.n(), least.first, least.second);
      }()) {}

std::strong_ordering CanonicalPair::operator<=>(const CanonicalPair& o) const {
  const auto& ua = pair_.u_elems();
  const auto& ub = o.pair_.u_elems();
  if (ua != ub) return ua < ub ? std::strong_ordering::less : std::strong_ordering::greater;
  const auto& va = pair_.phi_vals();
  const auto& vb = o.pair_.phi_vals();
  if (va != vb) return va < vb ? std::strong_ordering::less : std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

bool CanonicalPair::operator==(const CanonicalPair& o) const {
  return (*this <=> o) == std::strong_ordering::equal;
}

CanonicalPair canonicalize(const FiberPair& p) { return CanonicalPair(p); }

// ---------------------------------------------------------------------------
// Pair invariants (eta, zeta, hats and tildes)
// ---------------------------------------------------------------------------

PairInvariants pair_invariants(const FiberPair& p) {
  PairInvariants out;
  out.l = p.l();
  out.r = p.r();
  const GroupPtr& G = p.g();
  const GroupPtr& H = p.h();

  out.k_hat = p.phi1().kernel();
  out.l_hat = p.phi2().kernel();
  EmbeddedGroup ep = subgroup_as_group(p.p1());
  SubgroupRef pder_in = derived_subgroup(ep.group);
  SubgroupRef pder{G, {}};
  for (int i : pder_in.elems) pder.elems.push_back(ep.to_parent[i]);
  std::sort(pder.elems.begin(), pder.elems.end());
  out.k_tilde = intersect(product_subgroup(out.k_hat, pder), p.k1());

  EmbeddedGroup eq = subgroup_as_group(p.p2());
  SubgroupRef qder_in = derived_subgroup(eq.group);
  SubgroupRef qder{H, {}};
  for (int i : qder_in.elems) qder.elems.push_back(eq.to_parent[i]);
  std::sort(qder.elems.begin(), qder.elems.end());
  out.l_tilde = intersect(product_subgroup(out.l_hat, qder), p.k2());

  SubgroupRef k_in_ep{ep.group, {}};
  for (int k : p.k1().elems) k_in_ep.elems.push_back(ep.from_parent(k));
  std::sort(k_in_ep.elems.begin(), k_in_ep.elems.end());
  QuotientData pk = quotient_group(ep.group, k_in_ep);
  SubgroupRef l_in_eq{eq.group, {}};
  for (int l : p.k2().elems) l_in_eq.elems.push_back(eq.from_parent(l));
  std::sort(l_in_eq.elems.begin(), l_in_eq.elems.end());
  QuotientData ql = quotient_group(eq.group, l_in_eq);
  out.pk = pk.group;
  out.ql = ql.group;
  check_internal(pk.group->order() == ql.group->order(),
                 "P/K and Q/L have different orders");

  int nh = H->order();
  GroupHom eta{ql.group, pk.group, std::vector<int>(ql.group->order(), -1)};
  for (int e : p.u_elems()) {
    int pg = e / nh, qh = e % nh;
    int qc = ql.proj(eq.from_parent(qh));
    int pc = pk.proj(ep.from_parent(pg));
    if (eta.img[qc] < 0) eta.img[qc] = pc;
    else check_internal(eta.img[qc] == pc, "eta is not well defined");
  }
  for (int v : eta.img) check_internal(v >= 0, "eta is not total");
  check_internal(eta.is_bijective(), "eta is not bijective");
  for (int a = 0; a < ql.group->order(); ++a)
    for (int b = 0; b < ql.group->order(); ++b)
      check_internal(eta(ql.group->mul(a, b)) == pk.group->mul(eta(a), eta(b)),
                     "eta is not a homomorphism");
  out.eta = eta;

  EmbeddedGroup ekt = subgroup_as_group(out.k_tilde);
  SubgroupRef khat_in{ekt.group, {}};
  for (int k : out.k_hat.elems) khat_in.elems.push_back(ekt.from_parent(k));
  std::sort(khat_in.elems.begin(), khat_in.elems.end());
  QuotientData ktm = quotient_group(ekt.group, khat_in);
  EmbeddedGroup elt = subgroup_as_group(out.l_tilde);
  SubgroupRef lhat_in{elt.group, {}};
  for (int l : out.l_hat.elems) lhat_in.elems.push_back(elt.from_parent(l));
  std::sort(lhat_in.elems.begin(), lhat_in.elems.end());
  QuotientData ltm = quotient_group(elt.group, lhat_in);
  out.ktilde_mod = ktm.group;
  out.ltilde_mod = ltm.group;
  check_internal(ktm.group->order() == ltm.group->order(),
                 "Ktilde/Khat and Ltilde/Lhat have different orders");

  GroupHom zeta{ltm.group, ktm.group, std::vector<int>(ltm.group->order(), -1)};
  for (int lc = 0; lc < ltm.group->order(); ++lc) {
    int l_parent = elt.to_parent[ltm.coset_rep[lc]];
    long long lv = p.phi2()(l_parent) % p.n();
    for (int k_parent : out.k_tilde.elems) {
      if (p.phi1()(k_parent) % p.n() == lv) {
        zeta.img[lc] = ktm.proj(ekt.from_parent(k_parent));
        break;
      }
    }
    check_internal(zeta.img[lc] >= 0, "zeta is not total");
  }
  check_internal(zeta.is_bijective(), "zeta is not bijective");
  for (int a = 0; a < ltm.group->order(); ++a)
    for (int b = 0; b < ltm.group->order(); ++b)
      check_internal(zeta(ltm.group->mul(a, b)) == ktm.group->mul(zeta(a), zeta(b)),
                     "zeta is not a homomorphism");
  out.zeta = zeta;
  return out;
}

// ---------------------------------------------------------------------------
// FiberedElement
// ---------------------------------------------------------------------------

FiberedElement::FiberedElement(GroupPtr g, GroupPtr h, long long n, RingSpec ring)
    : g_(std::move(g)), h_(std::move(h)), n_(n), ring_(ring) {}

FiberedElement FiberedElement::basis(const CanonicalPair& p, RingSpec ring) {
  FiberedElement e(p.pair().g(), p.pair().h(), p.pair().n(), ring);
  e.add_term(p, Coeff::one(ring));
  return e;
}

void FiberedElement::add_term(const CanonicalPair& p, const Coeff& c) {
  require(p.pair().g().get() == g_.get() && p.pair().h().get() == h_.get() &&
              p.pair().n() == n_,
          "term ambient mismatch");
  auto it = terms_.find(p);
  if (it == terms_.end()) {
    if (!c.is_zero()) terms_.emplace(p, c);
    return;
  }
  Coeff s = it->second + c;
  if (s.is_zero()) terms_.erase(it);
  else it->second = s;
}

FiberedElement FiberedElement::operator+(const FiberedElement& o) const {
  require(ring_ == o.ring_, "ring mismatch");
  require(g_.get() == o.g_.get() && h_.get() == o.h_.get() && n_ == o.n_,
          "ambient mismatch");
  FiberedElement out = *this;
  for (const auto& [p, c] : o.terms_) out.add_term(p, c);
  return out;
}

FiberedElement FiberedElement::operator-(const FiberedElement& o) const {
  require(ring_ == o.ring_, "ring mismatch");
  require(g_.get() == o.g_.get() && h_.get() == o.h_.get() && n_ == o.n_,
          "ambient mismatch");
  FiberedElement out = *this;
  for (const auto& [p, c] : o.terms_) out.add_term(p, -c);
  return out;
}

FiberedElement FiberedElement::scaled(const Coeff& c) const {
  FiberedElement out(g_, h_, n_, ring_);
  if (c.is_zero()) return out;
  for (const auto& [p, v] : terms_) out.add_term(p, v * c);
  return out;
}

bool FiberedElement::operator==(const FiberedElement& o) const {
  if (!(ring_ == o.ring_) || n_ != o.n_) return false;
  if (terms_.size() != o.terms_.size()) return false;
  auto it = o.terms_.begin();
  for (const auto& [p, c] : terms_) {
    if (!(p == it->first) || !(c == it->second)) return false;
    ++it;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Construction helpers
// ---------------------------------------------------------------------------

FiberPair make_pair(const GroupPtr& g, const GroupPtr& h, long long n,
                    const std::vector<std::pair<int, int>>& u_elems,
                    const std::vector<long long>& phi_vals) {
  std::vector<int> flat;
  flat.reserve(u_elems.size());
  for (auto [a, b] : u_elems) {
    require(a >= 0 && a < g->order() && b >= 0 && b < h->order(),
            "element out of range");
    flat.push_back(a * h->order() + b);
  }
  return FiberPair(g, h, n, flat, phi_vals);
}

FiberPair identity_pair(const GroupPtr& g, long long n) {
  std::vector<int> elems;
  for (int x = 0; x < g->order(); ++x) elems.push_back(x * g->order() + x);
  return FiberPair(g, g, n, elems, std::vector<long long>(g->order(), 0));
}

FiberedElement identity_element(const GroupPtr& g, long long n, const RingSpec& ring) {
  return FiberedElement::basis(canonicalize(identity_pair(g, n)), ring);
}

// ---------------------------------------------------------------------------
// Standard basis (Goursat enumeration)
// ---------------------------------------------------------------------------

namespace {

struct Section {
  SubgroupRef p;       // subgroup of the ambient group
  EmbeddedGroup ep;
  QuotientData quot;   // of ep.group by a normal subgroup
};

std::vector<Section> sections_of(const GroupPtr& g, int lattice_bound, bool only_full) {
  std::vector<Section> out;
  std::vector<SubgroupInfo> lat;
  if (only_full) {
    lat.push_back({full_subgroup(g), true, 0});
  } else {
    LatticeOptions lo;
    lo.max_order = lattice_bound;
    lat = subgroup_lattice(g, lo);
  }
  for (const auto& info : lat) {
    EmbeddedGroup ep = subgroup_as_group(info.sub);
    LatticeOptions lo;
    lo.max_order = ep.group->order();
    for (const auto& sub : subgroup_lattice(ep.group, lo)) {
      if (!sub.normal) continue;
      Section s;
      s.p = info.sub;
      s.ep = ep;
      s.quot = quotient_group(ep.group, sub.sub);
      out.push_back(std::move(s));
    }
  }
  return out;
}

std::vector<GroupHom> all_isomorphisms(const GroupPtr& a, const GroupPtr& b) {
  std::vector<GroupHom> out;
  if (a->order() == 1) {
    if (b->order() == 1) out.push_back(GroupHom{a, b, {0}});
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

}  // namespace

std::vector<CanonicalPair> standard_basis(const GroupPtr& g, const GroupPtr& h,
                                          long long n, const BasisOptions& opt) {
  auto secs_g = sections_of(g, opt.lattice_bound, opt.require_p1_full);
  auto secs_h = sections_of(h, opt.lattice_bound, opt.require_p2_full);
  auto moves = conj_moves(g, h);

  std::set<PairKey> seen;
  std::set<PairKey> reps;
  long long emitted = 0;
  for (const auto& sg : secs_g) {
    for (const auto& sh : secs_h) {
      if (sg.quot.group->order() != sh.quot.group->order()) continue;
      for (const auto& iso : all_isomorphisms(sg.quot.group, sh.quot.group)) {
        std::vector<int> elems;
        for (int pi = 0; pi < sg.ep.group->order(); ++pi) {
          int target = iso(sg.quot.proj(pi));
          int p_parent = sg.ep.to_parent[pi];
          for (int qi = 0; qi < sh.ep.group->order(); ++qi)
            if (sh.quot.proj(qi) == target)
              elems.push_back(p_parent * h->order() + sh.ep.to_parent[qi]);
        }
        std::sort(elems.begin(), elems.end());
        GroupPtr usub = pair_subgroup_table(g, h, elems);
        for (const auto& phi : homs_to_cyclic(full_subgroup(usub), n)) {
          PairKey key{elems, phi.vals};
          if (seen.count(key)) continue;
          auto orbit = key_orbit(*g, *h, moves, key);
          reps.insert(*orbit.begin());
          if (++emitted > opt.max_basis)
            throw ResourceError("standard_basis: size guard exceeded");
          for (auto& k : orbit) seen.insert(k);
        }
      }
    }
  }
  std::vector<CanonicalPair> out;
  for (const auto& k : reps)
    out.emplace_back(FiberPair(g, h, n, k.first, k.second));
  return out;
}

// ---------------------------------------------------------------------------
// Opposite / star / Mackey
// ---------------------------------------------------------------------------

FiberedElement opposite(const FiberedElement& x) {
  FiberedElement out(x.h(), x.g(), x.n(), x.ring());
  for (const auto& [p, c] : x.terms())
    out.add_term(canonicalize(p.pair().opposite()), c);
  return out;
}

std::optional<FiberPair> star_product(const FiberPair& p, const FiberPair& q) {
  require(p.h().get() == q.g().get(), "star product needs a shared middle group");
  require(p.n() == q.n(), "modulus mismatch");
  for (int x : intersect(p.k2(), q.k1()).elems)
    if ((p.phi2()(x) - q.phi1()(x)) % p.n() != 0) return std::nullopt;

  int nh = p.h()->order(), nk = q.h()->order();
  std::vector<std::vector<std::pair<int, long long>>> fan(nh);
  for (size_t i = 0; i < q.u_elems().size(); ++i) {
    int e = q.u_elems()[i];
    fan[e / nk].push_back({e % nk, q.phi_vals()[i]});
  }
  std::map<int, long long> w;
  for (size_t i = 0; i < p.u_elems().size(); ++i) {
    int e = p.u_elems()[i];
    int gidx = e / nh, hidx = e % nh;
    for (auto [kidx, val] : fan[hidx]) {
      long long v = (p.phi_vals()[i] + val) % p.n();
      auto [it, fresh] = w.emplace(gidx * nk + kidx, v);
      check_internal(fresh || it->second == v, "star product character ill-defined");
    }
  }
  std::vector<int> elems;
  std::vector<long long> vals;
  for (auto& [e, v] : w) {
    elems.push_back(e);
    vals.push_back(v);
  }
  return FiberPair(p.g(), q.h(), p.n(), elems, vals);
}

FiberedElement mackey_product_pairs(const FiberPair& p, const FiberPair& q,
                                    const RingSpec& ring) {
  require(p.h().get() == q.g().get(), "mackey product needs a shared middle group");
  require(p.n() == q.n(), "modulus mismatch");
  const GroupPtr& H = p.h();
  FiberedElement out(p.g(), q.h(), p.n(), ring);

  int nh = H->order();
  std::vector<char> visited(nh, 0);
  for (int t = 0; t < nh; ++t) {
    if (visited[t]) continue;
    for (int a : p.p2().elems)
      for (int b : q.p1().elems) visited[H->mul(H->mul(a, t), b)] = 1;
    bool ok = true;
    for (int hh : p.k2().elems) {
      int back = H->mul(H->mul(H->inv(t), hh), t);  // t^-1 h t
      if (!q.k1().contains(back)) continue;
      if ((p.phi2()(hh) - q.phi1()(back)) % p.n() != 0) { ok = false; break; }
    }
    if (!ok) continue;
    FiberPair conj_q = q.conjugate(t, 0);
    auto sp = star_product(p, conj_q);
    check_internal(sp.has_value(), "mackey term failed the star compatibility");
    out.add_term(canonicalize(*sp), Coeff::one(ring));
  }
  return out;
}

FiberedElement mackey_product(const FiberedElement& x, const FiberedElement& y) {
  require(x.ring() == y.ring(), "ring mismatch");
  require(x.h().get() == y.g().get(), "middle group mismatch");
  require(x.n() == y.n(), "modulus mismatch");
  FiberedElement out(x.g(), y.h(), x.n(), x.ring());
  for (const auto& [p, cp] : x.terms())
    for (const auto& [q, cq] : y.terms()) {
      FiberedElement prod = mackey_product_pairs(p.pair(), q.pair(), x.ring());
      Coeff scale = cp * cq;
      for (const auto& [r, cr] : prod.terms()) out.add_term(r, cr * scale);
    }
  return out;
}

// ---------------------------------------------------------------------------
// Elementary pairs
// ---------------------------------------------------------------------------

FiberPair elementary_ind(const GroupPtr& g, const SubgroupRef& h, long long n) {
  EmbeddedGroup eh = subgroup_as_group(h);
  std::vector<int> elems;
  for (int i = 0; i < eh.group->order(); ++i)
    elems.push_back(eh.to_parent[i] * eh.group->order() + i);
  return FiberPair(g, eh.group, n, elems, std::vector<long long>(elems.size(), 0));
}

FiberPair elementary_res(const GroupPtr& g, const SubgroupRef& h, long long n) {
  EmbeddedGroup eh = subgroup_as_group(h);
  std::vector<int> elems;
  for (int i = 0; i < eh.group->order(); ++i)
    elems.push_back(i * g->order() + eh.to_parent[i]);
  return FiberPair(eh.group, g, n, elems, std::vector<long long>(elems.size(), 0));
}

FiberPair elementary_inf(const GroupPtr& g, const SubgroupRef& nsub, long long n) {
  QuotientData q = quotient_group(g, nsub);
  std::vector<int> elems;
  for (int x = 0; x < g->order(); ++x)
    elems.push_back(x * q.group->order() + q.proj(x));
  return FiberPair(g, q.group, n, elems, std::vector<long long>(elems.size(), 0));
}

FiberPair elementary_def(const GroupPtr& g, const SubgroupRef& nsub, long long n) {
  QuotientData q = quotient_group(g, nsub);
  std::vector<int> elems;
  for (int x = 0; x < g->order(); ++x)
    elems.push_back(q.proj(x) * g->order() + x);
  return FiberPair(q.group, g, n, elems, std::vector<long long>(elems.size(), 0));
}

FiberPair elementary_iso(const GroupHom& iso, long long n) {
  require(iso.is_bijective(), "elementary_iso needs an isomorphism");
  std::vector<int> elems;
  for (int x = 0; x < iso.dom->order(); ++x)
    elems.push_back(iso(x) * iso.dom->order() + x);
  return FiberPair(iso.cod, iso.dom, n, elems, std::vector<long long>(elems.size(), 0));
}

// ---------------------------------------------------------------------------
// Standard five-factor decomposition
// ---------------------------------------------------------------------------

StandardDecomposition decompose_standard(const FiberPair& p) {
  const GroupPtr& G = p.g();
  const GroupPtr& H = p.h();
  long long n = p.n();

  FiberPair ind = elementary_ind(G, p.p1(), n);
  GroupPtr eP = ind.h();
  SubgroupRef khat = p.phi1().kernel();
  SubgroupRef khat_in_ep{eP, {}};
  for (size_t i = 0; i < p.p1().elems.size(); ++i)
    if (khat.contains(p.p1().elems[i])) khat_in_ep.elems.push_back(static_cast<int>(i));
  FiberPair inf = elementary_inf(eP, khat_in_ep, n);
  GroupPtr pk = inf.h();

  FiberPair res = elementary_res(H, p.p2(), n);
  GroupPtr eQ = res.g();
  SubgroupRef lhat = p.phi2().kernel();
  SubgroupRef lhat_in_eq{eQ, {}};
  for (size_t i = 0; i < p.p2().elems.size(); ++i)
    if (lhat.contains(p.p2().elems[i])) lhat_in_eq.elems.push_back(static_cast<int>(i));
  FiberPair def = elementary_def(eQ, lhat_in_eq, n);
  GroupPtr ql = def.g();

  QuotientData qp = quotient_group(eP, khat_in_ep);
  QuotientData qq = quotient_group(eQ, lhat_in_eq);

  std::map<int, long long> mid;
  int nh = H->order();
  for (size_t i = 0; i < p.u_elems().size(); ++i) {
    int e = p.u_elems()[i];
    int pg = e / nh, qh = e % nh;
    int pbar = qp.proj(p.p1().index_of(pg));
    int qbar = qq.proj(p.p2().index_of(qh));
    int key = pbar * ql->order() + qbar;
    long long v = p.phi_vals()[i];
    auto [it, fresh] = mid.emplace(key, v);
    check_internal(fresh || it->second == v, "middle character ill-defined");
  }
  std::vector<int> elems;
  std::vector<long long> vals;
  for (auto& [e, v] : mid) {
    elems.push_back(e);
    vals.push_back(v);
  }
  FiberPair middle(pk, ql, n, elems, vals);
  check_internal(middle.p1().order() == pk->order() &&
                     middle.p2().order() == ql->order(),
                 "middle projections are not surjective");
  check_internal(middle.phi1().is_faithful() && middle.phi2().is_faithful(),
                 "middle characters are not faithful");
  return StandardDecomposition{ind, inf, middle, def, res};
}

// ---------------------------------------------------------------------------
// Change of fiber group
// ---------------------------------------------------------------------------

FiberedElement change_of_fiber(const FiberedElement& x, long long new_n,
                               long long image_of_one) {
  require(new_n >= 1, "target modulus must be >= 1");
  require((x.n() * image_of_one) % new_n == 0,
          "image of 1 must have order dividing the source modulus");
  FiberedElement out(x.g(), x.h(), new_n, x.ring());
  for (const auto& [p, c] : x.terms()) {
    std::vector<long long> vals;
    for (long long v : p.pair().phi_vals())
      vals.push_back((v * image_of_one) % new_n);
    FiberPair q(x.g(), x.h(), new_n, p.pair().u_elems(), vals);
    out.add_term(canonicalize(q), c);
  }
  return out;
}

}  // namespace fibrum
