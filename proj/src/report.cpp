#include "hermcubic/report.hpp"

#include <sstream>

namespace hermcubic {

namespace {

Json histogram_json(const std::map<std::uint64_t, std::uint64_t>& h) {
  Json rows = Json::array();
  for (const auto& [value, count] : h) rows.push_back({value, count});
  return rows;
}

std::string big(const BigInt& v) { return v.str(); }

}  // namespace

Json to_json(const Arrangement& a, std::uint64_t count) {
  Json covectors = Json::array();
  for (const auto& h : a.hyperplanes) {
    Json row = Json::array();
    for (Elem e : h.covector) row.push_back(e.index);
    covectors.push_back(std::move(row));
  }
  Json tangency = Json::array();
  for (Tangency t : a.tangency) tangency.push_back(to_string(t));
  return Json{{"n", a.n},
              {"q", a.q},
              {"covectors", std::move(covectors)},
              {"tangency", std::move(tangency)},
              {"pi_section", {{"v", a.common_section.v}, {"s", a.common_section.s}}},
              {"count", count}};
}

Json to_json(const SearchReport& r) {
  Json argmax = Json::array();
  for (const auto& e : r.argmax) {
    Json j = to_json(e.arrangement, e.formula_count);
    j["enumerated"] = e.enumerated_count;
    argmax.push_back(std::move(j));
  }
  Json structure = Json::object();
  for (const auto& [k, v] : r.argmax_structure) structure[k] = v;
  return Json{{"n", r.n},
              {"q", r.q},
              {"mode", r.mode},
              {"triples", r.triples},
              {"global_max", r.global_max},
              {"max_formula", r.max_formula_value},
              {"reaches_max_formula", r.reaches_max_formula},
              {"argmax_count", r.argmax.size()},
              {"argmax_verified", r.argmax_verified},
              {"argmax_structure", std::move(structure)},
              {"method_mix",
               {{"formula", r.formula_resolved},
                {"enumeration", r.enumeration_resolved},
                {"cross_checked", r.cross_checked},
                {"cross_check_mismatches", r.cross_check_mismatches}}},
              {"histogram", histogram_json(r.histogram)},
              {"argmax", std::move(argmax)}};
}

Json to_json(const IncidenceReport& r) {
  return Json{{"n", r.n},
              {"q", r.q},
              {"points", r.points},
              {"hyperplanes", r.hyperplanes},
              {"tangent_hyperplanes", r.tangent_hyperplanes},
              {"nontangent_hyperplanes", r.nontangent_hyperplanes},
              {"tangents_per_point", histogram_json(r.tangents_per_point)},
              {"hyperplanes_per_point", histogram_json(r.hyperplanes_per_point)},
              {"expected_tangents_per_point", r.expected_tangents_per_point},
              {"expected_hyperplanes_per_point", r.expected_hyperplanes_per_point},
              {"tangent_uniform", r.tangent_uniform},
              {"left_sum", r.left_sum},
              {"right_sum", r.right_sum},
              {"sums_agree", r.sums_agree}};
}

Json to_json(const RandomSampleReport& r) {
  Json exceedances = Json::array();
  for (const auto& e : r.exceedances) exceedances.push_back({{"polynomial", e.polynomial}, {"count", e.count}});
  return Json{{"n", r.n},
              {"q", r.q},
              {"trials", r.trials},
              {"seed", r.seed},
              {"drawn", r.drawn},
              {"discarded_linear_factor", r.discarded_linear_factor},
              {"threshold_B", r.threshold},
              {"in_range", r.in_range},
              {"max_observed", r.max_observed},
              {"exceedances", std::move(exceedances)},
              {"histogram", histogram_json(r.histogram)}};
}

Json to_json(const BoundTable& t) {
  Json rows = Json::array();
  for (const auto& r : t.rows) {
    rows.push_back({{"n", r.n},
                    {"A_rec", big(r.a_rec)},
                    {"A_closed", big(r.a_closed)},
                    {"B_rec", big(r.b_rec)},
                    {"B_closed", big(r.b_closed)},
                    {"U_n", big(r.hermitian)},
                    {"U_n_minus_2", big(r.nondegenerate_codim2)},
                    {"cone0", big(r.cone0)},
                    {"cone1", big(r.cone1)}});
  }
  return Json{{"q", t.q}, {"rows", std::move(rows)}};
}

std::string histogram_csv(const std::map<std::uint64_t, std::uint64_t>& h) {
  std::ostringstream out;
  out << "value,count\n";
  for (const auto& [value, count] : h) out << value << ',' << count << '\n';
  return out.str();
}

}  // namespace hermcubic
