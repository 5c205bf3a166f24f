#pragma once

// Machine-readable reports: every checker's output rendered as deterministic
// JSON (keys sorted, exact rationals as strings), one object per line on a
// stream, plus human-oriented one-line summaries.

#include <cstddef>
#include <ostream>
#include <string>

#include "entwine/entwine.hpp"
#include "entwine/opcore.hpp"
#include "entwine/rigidity.hpp"
#include "entwine/specfile.hpp"

namespace entwine {

inline Json check_entry_to_json(const CheckEntry& entry) {
  Json j;
  j["axiom"] = entry.axiom;
  j["arity"] = entry.arity;
  j["status"] = entry.ok ? "pass" : "fail";
  if (!entry.ok && !entry.witness.empty()) j["witness_label"] = entry.witness;
  return j;
}

// One JSON object per line; returns whether every entry passed.
inline bool emit_report(std::ostream& out, const CheckReport& report) {
  for (const auto& entry : report.entries) out << check_entry_to_json(entry).dump() << "\n";
  return report.ok();
}

inline void summarize_report(std::ostream& err, const std::string& what,
                             const CheckReport& report) {
  const auto failures = report.failures();
  if (failures.empty()) {
    err << what << ": all " << report.entries.size() << " checks pass\n";
    return;
  }
  err << what << ": " << failures.size() << " of " << report.entries.size() << " checks fail\n";
  for (const auto& entry : failures) {
    err << "  " << entry.axiom << " at arity " << entry.arity;
    if (!entry.witness.empty()) err << " (witness: " << entry.witness << ")";
    err << "\n";
  }
}

inline Json antipode_to_json(const AntipodeResult& result) {
  Json j;
  if (result.antipode) {
    j["status"] = "pass";
    j["antipode"] = detail::morphism_to_json(*result.antipode);
  } else {
    j["status"] = "fail";
    j["failed_arity"] = result.failed_arity;
    j["certificate"] = result.certificate;
  }
  return j;
}

inline Json primitives_to_json(const PrimitiveSubspace& prim) {
  Json j;
  j["prim_dim"] = prim.dimension;
  Json dims = Json::array();
  for (std::size_t d : prim.dims) dims.push_back(d);
  j["prim_dims"] = std::move(dims);
  j["inclusion"] = matrix_to_json(prim.inclusion);
  return j;
}

inline Json phi_to_json(const SeqMorphism& phi, bool component_iso) {
  Json j;
  j["phi"] = detail::morphism_to_json(phi);
  j["component_iso"] = component_iso;
  return j;
}

inline Json rigidity_to_json(const RigidityReport& report) {
  Json hyp;
  hyp["entwining"] = report.entwining_ok;
  hyp["unit_split"] = report.unit_split;
  hyp["grouplike"] = report.grouplike_ok;
  hyp["component_iso"] = report.component_iso;
  hyp["bimodule"] = report.bimodule_ok;

  Json rec;
  rec["invertible"] = report.reconstruction_invertible;
  rec["checked_arity"] = report.checked_arity;
  rec["source_dim"] = report.source_dim;
  rec["target_dim"] = report.target_dim;
  rec["morphism_action"] = report.morphism_action;
  rec["morphism_coaction"] = report.morphism_coaction;

  Json j;
  j["hypotheses"] = std::move(hyp);
  j["prim_dim"] = report.prim_dim;
  Json dims = Json::array();
  for (std::size_t d : report.prim_dims) dims.push_back(d);
  j["prim_dims"] = std::move(dims);
  j["reconstruction"] = std::move(rec);
  j["unit_direction"] = report.unit_direction;
  j["status"] = report.ok() ? "pass" : (report.hypotheses_ok() ? "fail" : "hypothesis-failure");
  return j;
}

}  // namespace entwine
