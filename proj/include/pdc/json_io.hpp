#pragma once

#include <string>
#include <vector>

#include "pdc/curves.hpp"
#include "pdc/indices.hpp"
#include "pdc/oracle.hpp"
#include "pdc/planning.hpp"

namespace pdc {

// Report rendering. The JSON writer sorts keys and prints doubles with their
// shortest round-trip form, so a given input and seed produces byte-identical
// files regardless of thread count or platform scheduling.

std::string render_curve_json(const ProbCurve& curve);
std::string render_indices_json(const IndexBundle& ix);
std::string render_plan_json(const Plan& plan, const std::vector<ResourceSpec>& resources);
std::string render_oracle_json(const OracleReport& rep);

// Per-period quantile fan: t, mean, then a lo/hi column pair per central
// interval (alphas in percent).
std::string render_fan_csv(const ProbCurve& curve, const std::vector<double>& alphas);

// mou_mw,s_mwh,ds_mwh_per_mw rows.
std::string render_sweep_csv(const std::vector<SweepRow>& sweep);

// Writes via a temp file in the same directory plus an atomic rename, so a
// crash cannot leave a half-written report behind.
void write_text_atomic(const std::string& path, const std::string& content);

// Reads resource specs from a JSON file: either a bare array of objects or
// {"resources": [...]}. Required per resource: name, capex_per_mw, rarr,
// benefit_per_mwh, mw_limit. Optional: kind, storage_hours.
std::vector<ResourceSpec> load_resources_json(const std::string& path);

}  // namespace pdc
