#pragma once

#include <json.hpp>

#include "fibrum/cohomology.hpp"
#include "fibrum/linearize.hpp"
#include "fibrum/simple.hpp"
#include "fibrum/verify.hpp"

namespace fibrum::serial {

using json = nlohmann::ordered_json;
inline constexpr int kSchema = 1;

void check_schema(const json& j);

// groups
json group_to_json(const GroupPtr& g);
GroupPtr group_from_json(const json& j);
/// Accepts a named constructor string ("Q8", "C2xC2") or a Cayley document.
GroupPtr group_from_ref(const json& j);
json group_ref(const GroupPtr& g);  // name when reconstructible, else table

// subgroups and homs
json subgroup_to_json(const SubgroupRef& s);
SubgroupRef subgroup_from_json(const GroupPtr& g, const json& j);
json hom_to_json(const GroupHom& h);
json ahom_to_json(const AHom& a);

// ring tags
std::string ring_to_string(const RingSpec& r);
RingSpec ring_from_string(const std::string& s);

// pairs and elements
json pair_to_json(const FiberPair& p);
FiberPair pair_from_json(const json& j);
json element_to_json(const FiberedElement& x);
FiberedElement element_from_json(const json& j);

// reports
json covering_report_to_json(const idem::CoveringReport& r);
json ses_report_to_json(const idem::SesReport& r);
json gamma_to_json(const idem::GammaGroup& g);
json linkage_classes_to_json(const idem::LinkageClasses& lc);
json h2_to_json(const cohom::H2Group& h2);
json squeeze_to_json(const cohom::SqueezeResult& s);
json linkage_result_to_json(const cohom::LinkageResult& r);
json reduced_pairs_to_json(const simp::ReducedPairs& r);
json essential_to_json(const simp::EssentialReport& r);
json class_function_to_json(const lin::ClassFunction& f);
json probe_to_json(const lin::ProbeReport& r);
json burnside_to_json(const lin::BurnsideKernelReport& r);
json verify_results_to_json(const std::vector<verify::CriterionResult>& rs);

}  // namespace fibrum::serial
