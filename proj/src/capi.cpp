#include "fibrum/fibrum.h"

#include <cstring>
#include <string>

#include "fibrum/serialize.hpp"

using namespace fibrum;
using serial::json;

struct fibrum_group {
  GroupPtr ptr;
};

struct fibrum_element {
  FiberedElement value;
};

namespace {

thread_local std::string t_last_error;

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

template <typename Fn>
fibrum_status guarded(Fn&& fn) {
  try {
    fn();
    return FIBRUM_OK;
  } catch (const FormatError& e) {
    t_last_error = e.what();
    return FIBRUM_ERR_ARGUMENT;
  } catch (const PreconditionError& e) {
    t_last_error = e.what();
    return FIBRUM_ERR_PRECONDITION;
  } catch (const ResourceError& e) {
    t_last_error = e.what();
    return FIBRUM_ERR_RESOURCE;
  } catch (const InternalError& e) {
    t_last_error = e.what();
    return FIBRUM_ERR_INTERNAL;
  } catch (const json::exception& e) {
    t_last_error = e.what();
    return FIBRUM_ERR_ARGUMENT;
  } catch (const std::exception& e) {
    t_last_error = e.what();
    return FIBRUM_ERR_INTERNAL;
  }
}

json parse(const char* text) {
  if (text == nullptr) throw FormatError("null JSON input");
  return json::parse(text);
}

idem::CentralPair triple_from_json(const json& j) {
  GroupPtr g = serial::group_from_ref(j.at("g"));
  long long n = j.at("n").get<long long>();
  if (j.contains("pair_index")) {
    auto pairs = idem::mgg_pairs(g, n);
    size_t idx = j.at("pair_index").get<size_t>();
    require(idx < pairs.size(), "pair_index out of range");
    return pairs[idx];
  }
  SubgroupRef k = serial::subgroup_from_json(g, j.at("k"));
  AHom kappa{k, n, j.at("kappa").get<std::vector<long long>>()};
  // validate against M_G^G
  for (const auto& cand : idem::mgg_pairs(g, n))
    if (cand.k.elems == k.elems && cand.kappa.vals == kappa.vals) return cand;
  throw PreconditionError("(K, kappa) is not a G-stable pair on a normal subgroup");
}

simp::Quadruple quadruple_from_json(const json& j) {
  idem::CentralPair triple = triple_from_json(j.at("triple"));
  long long p = j.at("p").get<long long>();
  idem::GammaGroup gamma = idem::gamma_group(triple);
  simp::GammaModule mod;
  if (j.at("module").is_string() && j.at("module").get<std::string>() == "trivial") {
    mod = simp::trivial_module(gamma, p);
  } else {
    const json& m = j.at("module");
    mod.p = p;
    mod.dim = m.at("dim").get<int>();
    for (const auto& mat : m.at("mats"))
      mod.mats.push_back(mat.get<std::vector<std::vector<long long>>>());
    require(simp::validate_module(gamma, mod), "module relations fail over Gamma");
    if (mod.p <= 7 && mod.dim <= 4) mod.simple_checked = simp::spin_simple(gamma, mod);
  }
  return simp::make_quadruple(triple, mod);
}

Catalog catalog_from_json(const char* text) {
  if (text == nullptr || std::strlen(text) == 0) return small_catalog(15);
  json j = json::parse(text);
  serial::check_schema(j);
  Catalog cat;
  for (const auto& g : j.at("groups")) cat.groups.push_back(serial::group_from_ref(g));
  cat.max_order = j.value("complete_to", 0);
  cat.complete = cat.max_order > 0;
  return cat;
}

}  // namespace

extern "C" {

const char* fibrum_version(void) { return "1.0.0"; }

const char* fibrum_last_error(void) { return t_last_error.c_str(); }

void fibrum_string_free(char* s) { std::free(s); }

fibrum_status fibrum_group_build(const char* spec, fibrum_group** out) {
  return guarded([&] {
    require(spec != nullptr && out != nullptr, "null argument");
    *out = new fibrum_group{build_group(spec)};
  });
}

fibrum_status fibrum_group_from_json(const char* text, fibrum_group** out) {
  return guarded([&] {
    require(out != nullptr, "null argument");
    *out = new fibrum_group{serial::group_from_json(parse(text))};
  });
}

fibrum_status fibrum_group_to_json(const fibrum_group* g, char** out_json) {
  return guarded([&] {
    require(g != nullptr && out_json != nullptr, "null argument");
    *out_json = dup_string(serial::group_to_json(g->ptr).dump());
  });
}

int fibrum_group_order(const fibrum_group* g) {
  return g == nullptr ? 0 : g->ptr->order();
}

void fibrum_group_free(fibrum_group* g) { delete g; }

fibrum_status fibrum_element_from_json(const char* text, fibrum_element** out) {
  return guarded([&] {
    require(out != nullptr, "null argument");
    *out = new fibrum_element{serial::element_from_json(parse(text))};
  });
}

fibrum_status fibrum_element_to_json(const fibrum_element* x, char** out_json) {
  return guarded([&] {
    require(x != nullptr && out_json != nullptr, "null argument");
    *out_json = dup_string(serial::element_to_json(x->value).dump());
  });
}

fibrum_status fibrum_element_product(const fibrum_element* x, const fibrum_element* y,
                                     fibrum_element** out) {
  return guarded([&] {
    require(x != nullptr && y != nullptr && out != nullptr, "null argument");
    // elements deserialized separately carry distinct middle-group tables;
    // rebuild y over x's right-hand group when the tables agree
    const FiberedElement& a = x->value;
    const FiberedElement& b = y->value;
    FiberedElement b2(a.h(), b.h(), b.n(), b.ring());
    if (a.h().get() == b.g().get()) {
      b2 = b;
    } else {
      require(a.h()->order() == b.g()->order(), "middle group mismatch");
      for (int i = 0; i < a.h()->order(); ++i)
        for (int j = 0; j < a.h()->order(); ++j)
          require(a.h()->mul(i, j) == b.g()->mul(i, j), "middle group mismatch");
      for (const auto& [p, c] : b.terms())
        b2.add_term(canonicalize(FiberPair(a.h(), b.h(), b.n(), p.pair().u_elems(),
                                           p.pair().phi_vals())),
                    c);
    }
    *out = new fibrum_element{mackey_product(a, b2)};
  });
}

void fibrum_element_free(fibrum_element* x) { delete x; }

fibrum_status fibrum_standard_basis(const fibrum_group* g, const fibrum_group* h,
                                    long long n, char** out_json) {
  return guarded([&] {
    require(g != nullptr && h != nullptr && out_json != nullptr, "null argument");
    json out;
    out["schema"] = serial::kSchema;
    json list = json::array();
    for (const auto& b : standard_basis(g->ptr, h->ptr, n))
      list.push_back(serial::pair_to_json(b.pair()));
    out["basis"] = std::move(list);
    *out_json = dup_string(out.dump());
  });
}

fibrum_status fibrum_idem_report(const fibrum_group* g, long long n,
                                 int check_blocks, char** out_json) {
  return guarded([&] {
    require(g != nullptr && out_json != nullptr, "null argument");
    idem::CoveringReport rep = idem::covering_algebra_report(
        g->ptr, n, RingSpec::integers(), check_blocks != 0);
    json out = serial::covering_report_to_json(rep);
    json idems = json::array();
    for (const auto& p : idem::mgg_pairs(g->ptr, n)) {
      json e;
      e["k"] = p.k.elems;
      e["kappa"] = p.kappa.vals;
      e["e"] = serial::element_to_json(idem::e_element(p, RingSpec::integers()));
      e["f"] = serial::element_to_json(idem::f_element(p, RingSpec::integers()));
      idems.push_back(std::move(e));
    }
    out["idempotents"] = std::move(idems);
    *out_json = dup_string(out.dump());
  });
}

fibrum_status fibrum_mgg_list(const fibrum_group* g, long long n, char** out_json) {
  return guarded([&] {
    require(g != nullptr && out_json != nullptr, "null argument");
    json out;
    out["schema"] = serial::kSchema;
    json list = json::array();
    for (const auto& p : idem::mgg_pairs(g->ptr, n))
      list.push_back(json{{"k", p.k.elems},
                          {"kappa", p.kappa.vals},
                          {"faithful", p.kappa.is_faithful()}});
    out["pairs"] = std::move(list);
    *out_json = dup_string(out.dump());
  });
}

fibrum_status fibrum_linkage(const char* triple_a, const char* triple_b,
                             char** out_json) {
  return guarded([&] {
    require(out_json != nullptr, "null argument");
    idem::CentralPair a = triple_from_json(parse(triple_a));
    idem::CentralPair b = triple_from_json(parse(triple_b));
    cohom::LinkageResult via_h2 = cohom::linkage_via_cohomology(a, b);
    auto via_search = idem::linkage_witness_bruteforce(a, b);
    json out = serial::linkage_result_to_json(via_h2);
    out["bruteforce_linked"] = via_search.has_value();
    if (via_search.has_value())
      out["bruteforce_witness"] = serial::pair_to_json(via_search->pair());
    out["routes_agree"] = (via_h2.linked == via_search.has_value());
    *out_json = dup_string(out.dump());
  });
}

fibrum_status fibrum_gamma_report(const char* triple, char** out_json) {
  return guarded([&] {
    require(out_json != nullptr, "null argument");
    idem::GammaGroup gamma = idem::gamma_group(triple_from_json(parse(triple)));
    *out_json = dup_string(serial::gamma_to_json(gamma).dump());
  });
}

fibrum_status fibrum_ses_report(const char* triple, char** out_json) {
  return guarded([&] {
    require(out_json != nullptr, "null argument");
    idem::SesReport rep = idem::ses_report(triple_from_json(parse(triple)));
    *out_json = dup_string(serial::ses_report_to_json(rep).dump());
  });
}

fibrum_status fibrum_reduced_report(const fibrum_group* g, long long n,
                                    const char* catalog_json, char** out_json) {
  return guarded([&] {
    require(g != nullptr && out_json != nullptr, "null argument");
    Catalog cat = catalog_from_json(catalog_json);
    simp::ReducedPairs red = simp::reduced_pairs_bruteforce(g->ptr, n, cat);
    *out_json = dup_string(serial::reduced_pairs_to_json(red).dump());
  });
}

fibrum_status fibrum_squeeze_report(const char* triple, char** out_json) {
  return guarded([&] {
    require(out_json != nullptr, "null argument");
    cohom::SqueezeResult s = cohom::squeeze(triple_from_json(parse(triple)));
    *out_json = dup_string(serial::squeeze_to_json(s).dump());
  });
}

fibrum_status fibrum_decompose(const char* pair_json, int full, char** out_json) {
  return guarded([&] {
    require(out_json != nullptr, "null argument");
    FiberPair p = serial::pair_from_json(parse(pair_json));
    json out;
    out["schema"] = serial::kSchema;
    json factors = json::array();
    if (full != 0) {
      cohom::FullDecomposition fd = cohom::full_decomposition(p);
      for (const auto& f : fd.factors) factors.push_back(serial::pair_to_json(f));
      out["kind"] = "seven-factor";
    } else {
      StandardDecomposition sd = decompose_standard(p);
      for (const FiberPair* f : {&sd.ind, &sd.inf, &sd.middle, &sd.def, &sd.res})
        factors.push_back(serial::pair_to_json(*f));
      out["kind"] = "five-factor";
    }
    out["factors"] = std::move(factors);
    *out_json = dup_string(out.dump());
  });
}

fibrum_status fibrum_simple_eval(const char* quadruple_json, const char* group_spec,
                                 char** out_json) {
  return guarded([&] {
    require(group_spec != nullptr && out_json != nullptr, "null argument");
    simp::Quadruple q = quadruple_from_json(parse(quadruple_json));
    GroupPtr h = build_group(group_spec);
    long long dim = simp::simple_evaluation(q, h);
    json out;
    out["schema"] = serial::kSchema;
    out["group"] = group_spec;
    out["p"] = q.v.p;
    out["dimension"] = dim;
    *out_json = dup_string(out.dump());
  });
}

fibrum_status fibrum_linearize(const char* element_json, long long p,
                               char** out_json) {
  return guarded([&] {
    require(out_json != nullptr, "null argument");
    FiberedElement x = serial::element_from_json(parse(element_json));
    lin::Embedding e = lin::make_embedding(x.n(), p);
    lin::ClassFunction f = lin::linearize(x, e);
    *out_json = dup_string(serial::class_function_to_json(f).dump());
  });
}

fibrum_status fibrum_simplicity_probe(const char* group_specs_json, long long n,
                                      char** out_json) {
  return guarded([&] {
    require(out_json != nullptr, "null argument");
    std::vector<GroupPtr> groups;
    for (const auto& s : parse(group_specs_json))
      groups.push_back(serial::group_from_ref(s));
    lin::ProbeReport rep = lin::simplicity_probe(groups, n);
    *out_json = dup_string(serial::probe_to_json(rep).dump());
  });
}

fibrum_status fibrum_burnside_kernel(int p, char** out_json) {
  return guarded([&] {
    require(out_json != nullptr, "null argument");
    lin::BurnsideKernelReport rep = lin::burnside_kernel_check(p);
    *out_json = dup_string(serial::burnside_to_json(rep).dump());
  });
}

fibrum_status fibrum_h2(const fibrum_group* q, const char* factors_json,
                        char** out_json) {
  return guarded([&] {
    require(q != nullptr && out_json != nullptr, "null argument");
    cohom::FinAb b{parse(factors_json).get<std::vector<long long>>()};
    cohom::H2Group h2 = cohom::h2_group(q->ptr, b);
    *out_json = dup_string(serial::h2_to_json(h2).dump());
  });
}

fibrum_status fibrum_verify(const char* suite, const char* config_json,
                            char** out_json) {
  return guarded([&] {
    require(suite != nullptr && out_json != nullptr, "null argument");
    verify::VerifyConfig cfg;
    if (config_json != nullptr && std::strlen(config_json) > 0) {
      json j = json::parse(config_json);
      if (j.contains("seed")) cfg.seed = j.at("seed").get<unsigned>();
      if (j.contains("samples")) cfg.sample_decompositions = j.at("samples").get<int>();
      if (j.contains("max_order")) cfg.mackey_max_order = j.at("max_order").get<int>();
      if (j.contains("moduli"))
        cfg.mackey_moduli = j.at("moduli").get<std::vector<long long>>();
    }
    std::vector<verify::CriterionResult> results;
    std::string name(suite);
    if (name == "all") {
      results = verify::run_all(cfg);
    } else {
      auto names = verify::criterion_names();
      int id = -1;
      for (size_t i = 0; i < names.size(); ++i)
        if (names[i] == name) id = static_cast<int>(i) + 1;
      require(id >= 1, "unknown suite name");
      results.push_back(verify::run_criterion(id, cfg));
    }
    json out = serial::verify_results_to_json(results);
    out["seed"] = cfg.seed;
    *out_json = dup_string(out.dump());
  });
}

}  // extern "C"
