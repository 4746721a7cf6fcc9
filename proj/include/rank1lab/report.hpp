#pragma once

// JSON rendering of verdicts, estimates and tables. Key order is fixed so
// reports for identical inputs are byte-identical.

#include "rank1lab/criteria.hpp"
#include "rank1lab/registry.hpp"
#include "rank1lab/simulator.hpp"

#include "json.hpp"

#include <string>
#include <vector>

namespace rank1lab {

using Json = nlohmann::ordered_json;

inline constexpr const char* kToolVersion = "0.1.0";

inline Json rational_json(const Rational& r) {
  Json j;
  j["exact"] = to_string(r);
  j["decimal"] = to_decimal(r);
  return j;
}

inline Json element_json(const GroupElement& g) {
  Json j = Json::array();
  for (const auto& v : g.coords()) j.push_back(v.str());
  return j;
}

inline Json vector_json(const ExtendedVector& v) { return v.to_string(); }

inline Json certificate_json(const SpanCertificate& c) {
  Json j = Json::array();
  for (const auto& v : c.coefficients) j.push_back(v.str());
  return j;
}

inline Json to_json(const Condition1Evidence& ev) {
  Json j;
  Json diffs = Json::array();
  for (const auto& d : ev.differences) diffs.push_back(d.to_string());
  j["differences"] = diffs;
  j["differences_generate"] = ev.differences_generate;
  j["labels_generate"] = ev.labels_generate;
  return j;
}

inline Json to_json(const Condition2Evidence& ev) {
  Json j;
  Json positions = Json::array();
  for (const auto& p : ev.positions) {
    Json pj;
    pj["position"] = p.position;
    pj["D"] = p.line_generator.str();
    Json rs = Json::array();
    for (const auto& r : p.residues) {
      Json rj;
      rj["residue"] = r.residue.str();
      rj["first_generation"] = r.first_generation;
      rj["in_span"] = r.certificate.has_value();
      if (r.certificate) rj["certificate"] = certificate_json(*r.certificate);
      rs.push_back(rj);
    }
    pj["residues"] = rs;
    positions.push_back(pj);
  }
  j["positions"] = positions;
  if (ev.failing_generation) {
    j["failing_generation"] = *ev.failing_generation;
    j["obstruction"] = ev.obstruction.str();
  }
  return j;
}

inline Json to_json(const CriterionTable& t) {
  Json j;
  j["dimension"] = t.dimension;
  Json rows = Json::array();
  for (const auto& r : t.rows) {
    Json rj;
    rj["n"] = r.n;
    rj["height"] = r.height.str();
    rj["cut_product"] = r.cut_product.str();
    rj["value"] = rational_json(r.value);
    rows.push_back(rj);
  }
  j["rows"] = rows;
  j["strictly_decreasing"] = t.strictly_decreasing;
  if (t.hook) {
    Json hj;
    hj["name"] = t.hook->name;
    hj["passed"] = t.hook->passed;
    hj["lines"] = t.hook->lines;
    j["proof_hook"] = hj;
  }
  return j;
}

inline Json to_json(const ParityEvidence& ev) {
  Json j;
  j["modulus"] = ev.modulus.str();
  Json gens = Json::array();
  for (const auto& g : ev.generations) {
    Json gj;
    gj["generation"] = g.generation;
    Json self = Json::array(), cross = Json::array();
    for (const auto& r : g.self_residues) self.push_back(r.str());
    for (const auto& r : g.cross_residues) cross.push_back(r.str());
    gj["self_residues"] = self;
    gj["cross_residues"] = cross;
    gens.push_back(gj);
  }
  j["generations"] = gens;
  if (ev.residue) j["residue"] = ev.residue->str();
  return j;
}

inline Json to_json(const Verdict& v) {
  Json j;
  j["property"] = to_string(v.property);
  j["value"] = to_string(v.value);
  j["reason"] = v.reason;
  if (!v.notes.empty()) j["notes"] = v.notes;
  if (v.condition1) j["condition1"] = to_json(*v.condition1);
  if (v.condition2) j["condition2"] = to_json(*v.condition2);
  if (v.criterion) j["criterion"] = to_json(*v.criterion);
  if (v.parity) j["parity"] = to_json(*v.parity);
  return j;
}

inline Json to_json(const MeasureEstimate& m) {
  Json j;
  j["resolved"] = rational_json(m.resolved);
  j["unresolved"] = rational_json(m.unresolved);
  return j;
}

inline Json to_json(const EquivClassReport& r) {
  Json j;
  j["height"] = r.height;
  j["powers"] = r.powers;
  j["count"] = r.count.str();
  j["bound"] = r.bound.str();
  j["within_bound"] = r.count <= r.bound;
  j["representatives"] = r.representatives;
  return j;
}

inline Json to_json(const EntryOutcome& e) {
  Json j;
  j["name"] = e.name;
  j["matches"] = e.matches();
  Json checks = Json::array();
  for (const auto& o : e.outcomes) {
    Json cj;
    cj["property"] = to_string(o.expectation.property);
    cj["expected"] = to_string(o.expectation.expected);
    cj["actual"] = to_string(o.verdict.value);
    cj["matches"] = o.matches;
    if (!o.matches) cj["mismatch"] = o.mismatch;
    checks.push_back(cj);
  }
  j["checks"] = checks;
  return j;
}

inline Json make_report(const std::string& construction, const std::string& operation, Json parameters,
                        Json results) {
  Json j;
  j["tool"] = "rank1lab";
  j["version"] = kToolVersion;
  j["construction"] = construction;
  j["operation"] = operation;
  j["parameters"] = std::move(parameters);
  j["results"] = std::move(results);
  return j;
}

}  // namespace rank1lab
