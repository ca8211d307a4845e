#include "fibrum/serialize.hpp"

namespace fibrum::serial {

void check_schema(const json& j) {
  if (j.contains("schema") && j["schema"].get<int>() != kSchema)
    throw FormatError("unsupported schema version");
}

json group_to_json(const GroupPtr& g) {
  json j;
  j["schema"] = kSchema;
  j["name"] = g->name();
  j["order"] = g->order();
  json mul = json::array();
  for (int a = 0; a < g->order(); ++a) {
    json row = json::array();
    for (int b = 0; b < g->order(); ++b) row.push_back(g->mul(a, b));
    mul.push_back(std::move(row));
  }
  j["mul"] = std::move(mul);
  json labels = json::array();
  for (int a = 0; a < g->order(); ++a) labels.push_back(g->label(a));
  j["labels"] = std::move(labels);
  return j;
}

GroupPtr group_from_json(const json& j) {
  if (!j.is_object() || !j.contains("mul")) throw FormatError("expected a Cayley document");
  check_schema(j);
  std::string name = j.value("name", "G");
  std::vector<std::vector<int>> rows;
  for (const auto& r : j.at("mul")) rows.push_back(r.get<std::vector<int>>());
  std::vector<std::string> labels;
  if (j.contains("labels")) labels = j.at("labels").get<std::vector<std::string>>();
  if (j.contains("order") && static_cast<int>(rows.size()) != j.at("order").get<int>())
    throw FormatError("order field does not match the table");
  return GroupTable::make_from_rows(name, rows, labels);
}

GroupPtr group_from_ref(const json& j) {
  if (j.is_string()) return build_group(j.get<std::string>());
  return group_from_json(j);
}

json group_ref(const GroupPtr& g) {
  try {
    GroupPtr named = build_group(g->name());
    bool same = named->order() == g->order();
    for (int a = 0; same && a < g->order(); ++a)
      for (int b = 0; same && b < g->order(); ++b)
        if (named->mul(a, b) != g->mul(a, b)) same = false;
    if (same) return json(g->name());
  } catch (const std::exception&) {
  }
  return group_to_json(g);
}

json subgroup_to_json(const SubgroupRef& s) { return json(s.elems); }

SubgroupRef subgroup_from_json(const GroupPtr& g, const json& j) {
  SubgroupRef s{g, j.get<std::vector<int>>()};
  if (!is_subgroup(g, s.elems)) throw FormatError("index array is not a subgroup");
  return s;
}

json hom_to_json(const GroupHom& h) { return json(h.img); }

json ahom_to_json(const AHom& a) {
  json j;
  j["modulus"] = a.modulus;
  j["domain"] = a.dom.elems;
  j["vals"] = a.vals;
  return j;
}

std::string ring_to_string(const RingSpec& r) { return r.str(); }

RingSpec ring_from_string(const std::string& s) {
  if (s == "Z") return RingSpec::integers();
  if (s == "Q") return RingSpec::rationals();
  if (s.size() > 1 && s[0] == 'F') return RingSpec::prime_field(std::stoll(s.substr(1)));
  throw FormatError("unknown ring tag: " + s);
}

json pair_to_json(const FiberPair& p) {
  json j;
  j["schema"] = kSchema;
  j["g"] = group_ref(p.g());
  j["h"] = group_ref(p.h());
  j["N"] = p.n();
  json u = json::array();
  int nh = p.h()->order();
  for (int e : p.u_elems()) u.push_back(json::array({e / nh, e % nh}));
  j["u"] = std::move(u);
  j["phi"] = p.phi_vals();
  return j;
}

FiberPair pair_from_json(const json& j) {
  check_schema(j);
  GroupPtr g = group_from_ref(j.at("g"));
  GroupPtr h = group_from_ref(j.at("h"));
  long long n = j.at("N").get<long long>();
  std::vector<std::pair<int, int>> u;
  for (const auto& e : j.at("u")) u.push_back({e.at(0).get<int>(), e.at(1).get<int>()});
  std::vector<long long> phi = j.at("phi").get<std::vector<long long>>();
  return make_pair(g, h, n, u, phi);
}

json element_to_json(const FiberedElement& x) {
  json j;
  j["schema"] = kSchema;
  j["ring"] = ring_to_string(x.ring());
  j["g"] = group_ref(x.g());
  j["h"] = group_ref(x.h());
  j["N"] = x.n();
  json terms = json::array();
  int nh = x.h()->order();
  for (const auto& [p, c] : x.terms()) {
    json t;
    json u = json::array();
    for (int e : p.pair().u_elems()) u.push_back(json::array({e / nh, e % nh}));
    t["pair"] = json{{"u", std::move(u)}, {"phi", p.pair().phi_vals()}};
    t["coeff"] = c.str();
    terms.push_back(std::move(t));
  }
  j["terms"] = std::move(terms);
  return j;
}

FiberedElement element_from_json(const json& j) {
  check_schema(j);
  RingSpec ring = ring_from_string(j.at("ring").get<std::string>());
  GroupPtr g = group_from_ref(j.at("g"));
  GroupPtr h = group_from_ref(j.at("h"));
  long long n = j.at("N").get<long long>();
  FiberedElement x(g, h, n, ring);
  for (const auto& t : j.at("terms")) {
    std::vector<std::pair<int, int>> u;
    for (const auto& e : t.at("pair").at("u"))
      u.push_back({e.at(0).get<int>(), e.at(1).get<int>()});
    std::vector<long long> phi = t.at("pair").at("phi").get<std::vector<long long>>();
    FiberPair p = make_pair(g, h, n, u, phi);
    x.add_term(canonicalize(p), Coeff::from_string(ring, t.at("coeff").get<std::string>()));
  }
  return x;
}

namespace {

json central_pair_json(const idem::CentralPair& p) {
  json j;
  j["k"] = p.k.elems;
  j["kappa"] = p.kappa.vals;
  return j;
}

}  // namespace

json linkage_classes_to_json(const idem::LinkageClasses& lc) {
  json j;
  json pairs = json::array();
  for (const auto& p : lc.pairs) pairs.push_back(central_pair_json(p));
  j["pairs"] = std::move(pairs);
  j["class_of"] = lc.class_of;
  j["classes"] = lc.classes;
  return j;
}

json covering_report_to_json(const idem::CoveringReport& r) {
  json j;
  j["schema"] = kSchema;
  j["N"] = r.n;
  j["dim_covering"] = r.dim;
  j["linkage"] = linkage_classes_to_json(r.classes);
  json blocks = json::array();
  for (const auto& b : r.blocks) {
    blocks.push_back(json{{"class", b.class_id},
                          {"members", b.members},
                          {"gamma_order", b.gamma_order},
                          {"block_dim", b.block_dim}});
  }
  j["blocks"] = std::move(blocks);
  j["dimension_identity"] = r.dimension_identity;
  j["structure_constants_ok"] = r.structure_constants_ok;
  return j;
}

json ses_report_to_json(const idem::SesReport& r) {
  json j;
  j["schema"] = kSchema;
  j["pair"] = central_pair_json(r.base);
  j["gamma_order"] = r.gamma_order;
  j["quotient_characters"] = r.quot_chars;
  j["iota_image_order"] = r.iota_order;
  j["im_pi_order"] = r.impi_order;
  j["orders_match"] = r.orders_match;
  j["refined_orders_match"] = r.refined_orders_match;
  j["kernel_is_image"] = r.kernel_is_image;
  j["im_pi_out_reps"] = r.impi_out_reps;
  j["split_found"] = r.split_found;
  return j;
}

json gamma_to_json(const idem::GammaGroup& g) {
  json j;
  j["schema"] = kSchema;
  j["base"] = central_pair_json(g.base);
  j["order"] = g.table->order();
  json mul = json::array();
  for (int a = 0; a < g.table->order(); ++a) {
    json row = json::array();
    for (int b = 0; b < g.table->order(); ++b) row.push_back(g.table->mul(a, b));
    mul.push_back(std::move(row));
  }
  j["mul"] = std::move(mul);
  json elems = json::array();
  for (const auto& e : g.elements) elems.push_back(pair_to_json(e.pair()));
  j["elements"] = std::move(elems);
  return j;
}

json h2_to_json(const cohom::H2Group& h2) {
  json j;
  j["schema"] = kSchema;
  j["order"] = h2.order();
  j["invariant_factors"] = h2.invariant_factors();
  j["coefficients"] = h2.b.factors;
  j["z2_basis_size"] = h2.z2_basis.size();
  j["b2_basis_size"] = h2.b2_basis.size();
  return j;
}

json squeeze_to_json(const cohom::SqueezeResult& s) {
  json j;
  j["schema"] = kSchema;
  j["gtilde"] = group_to_json(s.gtilde);
  j["k_tilde"] = s.k_tilde.elems;
  j["ins"] = pair_to_json(s.ins);
  j["alpha_class"] = s.alpha_class;
  j["beta_class"] = s.beta_class;
  j["gamma_class"] = s.gamma_class;
  return j;
}

json linkage_result_to_json(const cohom::LinkageResult& r) {
  json j;
  j["schema"] = kSchema;
  j["linked"] = r.linked;
  if (r.eta.has_value()) j["eta"] = r.eta->img;
  if (r.witness.has_value()) j["witness"] = pair_to_json(*r.witness);
  return j;
}

json reduced_pairs_to_json(const simp::ReducedPairs& r) {
  json j;
  j["schema"] = kSchema;
  j["N"] = r.n;
  j["catalog_complete"] = r.catalog_complete;
  json flags = json::array();
  for (const auto& f : r.flags) {
    json e = central_pair_json(f.pair);
    e["reduced"] = f.reduced;
    if (f.witness.has_value()) e["witness"] = pair_to_json(f.witness->pair());
    flags.push_back(std::move(e));
  }
  j["pairs"] = std::move(flags);
  return j;
}

json essential_to_json(const simp::EssentialReport& r) {
  json j;
  j["schema"] = kSchema;
  j["N"] = r.n;
  j["ring"] = ring_to_string(r.ring);
  j["dim_endomorphism"] = r.dim_e;
  j["dim_ideal"] = r.dim_ideal;
  j["dim_essential"] = r.dim_essential;
  j["block_dims"] = r.block_dims;
  j["decomposition_ok"] = r.decomposition_ok;
  j["reduced"] = reduced_pairs_to_json(r.reduced);
  return j;
}

json class_function_to_json(const lin::ClassFunction& f) {
  json j;
  j["schema"] = kSchema;
  j["p"] = f.p;
  j["values"] = f.vals;
  return j;
}

json probe_to_json(const lin::ProbeReport& r) {
  json j;
  j["schema"] = kSchema;
  j["N"] = r.n;
  j["condition_unit"] = r.cond_unit;
  json groups = json::array();
  for (const auto& g : r.groups) {
    groups.push_back(json{{"group", g.name},
                          {"p", g.p},
                          {"classes", g.classes},
                          {"lin_rank", g.lin_rank},
                          {"pairing_rank", g.pairing_rank},
                          {"surjective", g.cond_surjective},
                          {"kernel_trivial", g.cond_kernel}});
  }
  j["groups"] = std::move(groups);
  j["all_pass"] = r.all_pass;
  return j;
}

json burnside_to_json(const lin::BurnsideKernelReport& r) {
  json j;
  j["schema"] = kSchema;
  j["p"] = r.prime;
  j["element_nonzero"] = r.element_nonzero;
  j["annihilates_all"] = r.annihilates_all;
  j["functional_values"] = r.functional_values;
  return j;
}

json verify_results_to_json(const std::vector<verify::CriterionResult>& rs) {
  json j;
  j["schema"] = kSchema;
  json list = json::array();
  bool all = true;
  for (const auto& r : rs) {
    list.push_back(json{{"id", r.id}, {"name", r.name}, {"pass", r.pass}, {"details", r.details}});
    all = all && r.pass;
  }
  j["criteria"] = std::move(list);
  j["all_pass"] = all;
  return j;
}

}  // namespace fibrum::serial
