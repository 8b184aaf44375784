#pragma once

#include <nlohmann/json.hpp>

#include "commprobe/neumann.hpp"
#include "commprobe/report.hpp"

namespace commprobe {

using Json = nlohmann::ordered_json;

inline Json to_json(const ElementSet& s) {
  Json a = Json::array();
  for (auto i = s.find_first(); i != ElementSet::npos; i = s.find_next(i)) a.push_back(i);
  return a;
}

inline Json to_json(const Subgroup& h) { return to_json(h.members()); }

inline Json to_json(const std::vector<Check>& checks) {
  Json a = Json::array();
  for (const auto& c : checks) {
    Json j{{"name", c.name}, {"passed", c.passed}};
    if (!c.detail.empty()) j["detail"] = c.detail;
    a.push_back(std::move(j));
  }
  return a;
}

inline Json to_json(const TheoremReport& r) {
  Json j;
  j["theorem_id"] = r.theorem_id;
  j["group"] = {{"name", r.group}, {"order", r.group_order}};
  j["parameters"] = r.parameters;
  Json hyp;
  hyp["epsilon"] = r.epsilon ? Json(r.epsilon->str()) : Json(nullptr);
  hyp["holds"] = r.hypothesis_holds;
  Json qs = Json::array();
  for (const auto& q : r.hypothesis) {
    Json e{{"name", q.name}, {"value", q.value}};
    e["holds"] = q.holds ? Json(*q.holds) : Json(nullptr);
    qs.push_back(std::move(e));
  }
  hyp["quantities"] = std::move(qs);
  j["hypothesis"] = std::move(hyp);
  if (r.witness) {
    const Witness& w = *r.witness;
    j["witness"] = {{"label", w.label},
                    {"elements", to_json(w.subgroup)},
                    {"order", w.subgroup.order()},
                    {"index", w.index()},
                    {"class", w.nilpotency_class ? Json(*w.nilpotency_class) : Json(nullptr)},
                    {"derived", w.derived_label},
                    {"derived_order", w.derived_order},
                    {"revalidated", w.revalidated}};
    if (!w.failures.empty()) j["witness"]["failures"] = w.failures;
  } else {
    j["witness"] = nullptr;
  }
  Json dp = Json::array();
  for (const auto& d : r.data_points) dp.push_back({{"name", d.name}, {"value", d.value}});
  j["data_points"] = std::move(dp);
  j["checks"] = to_json(r.checks);
  j["all_checks_pass"] = r.all_checks_pass();
  return j;
}

inline Json to_json(const DecompositionReport& r) {
  Json j;
  j["group"] = {{"name", r.group().name()}, {"order", r.group().order()}};
  j["epsilon"] = r.epsilon.str();
  j["actual_pr"] = r.actual_pr.str();
  j["hypothesis_holds"] = r.hypothesis_holds;
  j["K"] = to_json(r.K);
  j["X"] = to_json(r.X);
  j["B"] = to_json(r.B);
  j["Y"] = to_json(r.Y);
  j["E"] = to_json(r.E);
  j["T"] = to_json(r.T);
  j["index_K_B"] = r.index_K_B;
  j["index_G_E"] = r.index_G_E;
  j["index_G_T"] = r.index_G_T;
  j["TB_commutator"] = to_json(r.TB_commutator);
  j["TB_commutator_order"] = r.TB_commutator.order();
  j["N"] = to_json(r.N);
  j["B0"] = to_json(r.B0);
  j["B0_in_K"] = r.B0_in_K;
  j["H"] = r.H ? to_json(*r.H) : Json(nullptr);
  j["max_class_b_in_G"] = r.max_class_b_in_G;
  j["max_class_e_under_B"] = r.max_class_e_under_B;
  j["product_length_r"] = r.product_length_r;
  j["exponent_bound"] = r.exponent_bound;
  j["class_bound"] = r.class_bound.str();
  if (r.quotient_view) {
    const QuotientView& v = *r.quotient_view;
    j["quotient_view"] = {{"LL_order", v.LL_order},       {"order", v.order},
                          {"actual_pr", v.actual_pr.str()}, {"hypothesis_holds", v.hypothesis_holds},
                          {"index_K_B", v.index_K_B},     {"index_G_E", v.index_G_E},
                          {"index_G_T", v.index_G_T},     {"TB_order", v.TB_order},
                          {"N_order", v.N_order},         {"checks", to_json(v.checks)}};
  }
  j["checks"] = to_json(r.checks);
  j["all_checks_pass"] = r.all_checks_pass();
  return j;
}

}  // namespace commprobe
