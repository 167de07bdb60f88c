#pragma once
// JSON views of rings, series, lattices, verdicts and verifier reports.
// Timing never appears here; callers add a single "timing" object.

#include <string>

#include "json.hpp"
#include "ringlab/analysis.hpp"
#include "ringlab/classify.hpp"
#include "ringlab/groups.hpp"
#include "ringlab/ring.hpp"
#include "ringlab/verify.hpp"

namespace ringlab {

using Json = nlohmann::ordered_json;

inline Json to_json(const Ring& r) {
  return Json{{"order", r.order()},
              {"char", r.characteristic()},
              {"zero", r.zero()},
              {"one", r.one()},
              {"provenance", to_string(r.provenance())}};
}

inline Json to_json(const DerivedSeriesReport& s) {
  return Json{{"orders", s.orders}, {"terminal", to_string(s.terminal)}};
}

inline Json to_json(const LatticeReport& rep) {
  Json maximal = Json::array();
  for (const auto& m : rep.maximal) maximal.push_back(Json{{"order", m.order}, {"units", m.units}, {"solvable", m.solvable}});
  Json j{{"exhaustive", rep.exhaustive},
         {"subring_count", rep.subring_count},
         {"maximal", std::move(maximal)},
         {"budget",
          Json{{"max_subrings", rep.budget.max_subrings},
               {"max_millis", rep.budget.max_millis},
               {"stop", to_string(rep.stop)},
               {"closures", rep.closures},
               {"levels", rep.levels}}}};
  if (rep.witness)
    j["witness"] = Json{{"order", rep.witness->order},
                        {"units", rep.witness->units},
                        {"solvable", rep.witness->solvable},
                        {"generators", rep.witness->generators},
                        {"note", "a witness"}};
  return j;
}

inline Json to_json(const Witness& w) {
  Json j{{"kind", w.kind}, {"description", w.description}, {"order", w.order}};
  if (w.units) j["units"] = *w.units;
  if (w.units_solvable) j["units_solvable"] = *w.units_solvable;
  j["validated"] = w.mask.has_value();
  if (!w.generators.empty()) j["generators"] = w.generators;
  if (!w.plan.empty()) {
    Json plan = Json::array();
    for (const auto& p : w.plan) {
      Json e{{"action", to_string(p.action)}};
      if (p.action == FactorAction::Subfield) e["subfield_degree"] = p.subfield_degree;
      plan.push_back(std::move(e));
    }
    j["plan"] = std::move(plan);
  }
  return j;
}

inline Json to_json(const Verdict& v) {
  Json cert{{"type", to_string(v.certificate)}};
  switch (v.certificate) {
    case CertificateType::TheoremPath:
      cert["gamma"] = to_string(v.gamma ? v.gamma->family : GammaFamily::None);
      cert["decomposition"] = v.decomposition;
      if (v.review) cert["review"] = "cyclic factor shares a prime with the characteristic";
      break;
    case CertificateType::Structure:
      cert["decomposition"] = v.decomposition;
      cert["reason"] = v.reason;
      break;
    case CertificateType::DerivedSeries:
      if (v.series) cert["series"] = to_json(*v.series);
      break;
    case CertificateType::ExhaustiveLattice:
      if (v.lattice) cert["lattice"] = to_json(*v.lattice);
      break;
    case CertificateType::Witness:
      if (v.witness) cert["witness"] = to_json(*v.witness);
      if (!v.decomposition.empty()) cert["decomposition"] = v.decomposition;
      if (v.lattice) cert["lattice"] = to_json(*v.lattice);
      break;
    case CertificateType::Reason:
      cert["reason"] = v.reason;
      if (v.lattice) cert["lattice"] = to_json(*v.lattice);
      break;
  }
  Json j{{"kind", to_string(v.kind)}, {"certificate", std::move(cert)}};
  if (v.series && v.certificate != CertificateType::DerivedSeries) j["unit_series"] = to_json(*v.series);
  return j;
}

inline Json to_json(const VerifierReport& r) {
  Json checks = Json::array();
  for (const auto& c : r.checks) {
    Json e{{"name", c.name}, {"passed", c.passed}};
    if (!c.detail.empty()) e["detail"] = c.detail;
    checks.push_back(std::move(e));
  }
  Json values = Json::object();
  for (const auto& [k, v] : r.values) values[k] = v;
  Json rows = Json::array();
  for (const auto& row : r.rows) {
    Json e = Json::object();
    for (const auto& [k, v] : row) e[k] = v;
    rows.push_back(std::move(e));
  }
  Json j{{"verifier", r.verifier}, {"subject", r.subject}, {"passed", r.passed()}, {"checks", std::move(checks)},
         {"values", std::move(values)}};
  if (!rows.empty()) j["rows"] = std::move(rows);
  return j;
}

/// Removes every "timing" member, recursively.
inline Json strip_timing(Json j) {
  if (j.is_object()) {
    j.erase("timing");
    for (auto& [k, v] : j.items()) v = strip_timing(v);
  } else if (j.is_array()) {
    for (auto& v : j) v = strip_timing(v);
  }
  return j;
}

}  // namespace ringlab
