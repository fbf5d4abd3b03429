#include "pdc/json_io.hpp"

#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <system_error>

#include <json.hpp>

#include "pdc/errors.hpp"

namespace pdc {

namespace {

using nlohmann::json;  // std::map-backed, so keys come out sorted

std::string fmt_double(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

json dps_to_json(const Dps& d) {
  json j;
  j["origin_mw"] = d.origin;
  j["step_mw"] = d.step;
  j["masses"] = d.masses;
  j["mean_mw"] = d.mean();
  return j;
}

json copula_to_json(const CopulaRecord& r) {
  json j;
  j["pair"] = r.pair;
  j["t"] = r.t;
  j["tau"] = r.tau;
  j["rho"] = r.rho;
  j["degenerate"] = r.degenerate;
  return j;
}

double require_number(const json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_number())
    throw SchemaError(std::string("resource entry missing numeric field '") + key + "'");
  return j[key].get<double>();
}

}  // namespace

std::string render_curve_json(const ProbCurve& curve) {
  json j;
  j["kind"] = curve.kind;
  j["step_mw"] = curve.step;
  j["periods"] = json::array();
  for (std::size_t t = 0; t < curve.periods.size(); ++t) {
    json p = dps_to_json(curve.periods[t]);
    p["t"] = static_cast<int>(t);
    j["periods"].push_back(std::move(p));
  }
  j["copulas"] = json::array();
  for (const auto& r : curve.copulas) j["copulas"].push_back(copula_to_json(r));
  return j.dump(2) + "\n";
}

std::string render_indices_json(const IndexBundle& ix) {
  json j;
  j["expected_netload_mw"] = ix.expected_netload_mw;
  j["expected_ramp_mw_per_h"] = ix.expected_ramp_mw_per_h;
  j["confidence_levels"] = json::object();
  j["confidence_levels"]["alphas_pct"] = ix.alphas;
  j["confidence_levels"]["pdc_width_mw"] = ix.cl_pdc;
  j["confidence_levels"]["prc_width_mw"] = ix.cl_prc;
  j["peak_period"] = ix.peak_period;
  j["valley_period"] = ix.valley_period;
  j["degenerate_extremes"] = ix.degenerate_extremes;
  j["peak_to_valley"] = dps_to_json(ix.ptv);
  j["peak_valley_copula"] = copula_to_json(ix.ptv_copula);
  return j.dump(2) + "\n";
}

std::string render_plan_json(const Plan& plan, const std::vector<ResourceSpec>& resources) {
  json j;
  j["base_mou_mw"] = plan.base_mou_mw;
  j["base_s_mwh"] = plan.base_s_mwh;
  j["residual_s_mwh"] = plan.residual_s_mwh;
  j["grid_step_mw"] = plan.grid_step_mw;
  j["resources"] = json::array();
  for (std::size_t i = 0; i < plan.rows.size(); ++i) {
    const PlanRow& r = plan.rows[i];
    json row;
    row["name"] = r.name;
    row["kind"] = r.kind;
    row["daily_cost_per_mw"] = r.daily_cost_per_mw;
    row["breakeven_mwh_per_mw"] = r.breakeven_mwh_per_mw;
    row["start_mou_mw"] = r.start_mou_mw;
    row["final_mou_mw"] = r.final_mou_mw;
    row["allocated_mw"] = r.allocated_mw;
    row["gain_mwh_per_day"] = r.gain_mwh_per_day;
    row["adequacy_warning"] = r.adequacy_warning;
    if (i < resources.size()) {
      row["mw_limit"] = resources[i].mw_limit;
      row["capex_per_mw"] = resources[i].capex_per_mw;
    }
    j["resources"].push_back(std::move(row));
  }
  return j.dump(2) + "\n";
}

std::string render_oracle_json(const OracleReport& rep) {
  json j;
  j["seed"] = rep.seed;
  j["sample_count"] = rep.sample_count;
  j["step_mw"] = rep.step_mw;
  j["all_pass"] = rep.all_pass;
  const auto quantity = [](const QuantityCheck& q) {
    json o;
    o["name"] = q.name;
    o["wasserstein1"] = q.wasserstein1;
    o["ks"] = q.ks_stat;
    o["threshold"] = q.threshold;
    o["pass"] = q.pass;
    return o;
  };
  j["pdc"] = json::array();
  for (const auto& q : rep.pdc_checks) j["pdc"].push_back(quantity(q));
  j["prc"] = json::array();
  for (const auto& q : rep.prc_checks) j["prc"].push_back(quantity(q));
  j["areas"] = json::array();
  for (const auto& a : rep.area_checks) {
    json o;
    o["mou_mw"] = a.mou_mw;
    o["s_model_mwh"] = a.s_model_mwh;
    o["s_mc_mwh"] = a.s_mc_mwh;
    o["rel_err"] = a.rel_err;
    o["threshold"] = a.threshold;
    o["pass"] = a.pass;
    j["areas"].push_back(std::move(o));
  }
  j["history_distance"] = json::array();
  for (const auto& q : rep.empirical) j["history_distance"].push_back(quantity(q));
  return j.dump(2) + "\n";
}

std::string render_fan_csv(const ProbCurve& curve, const std::vector<double>& alphas) {
  std::ostringstream out;
  out << "t,mean_mw";
  for (const double a : alphas) out << ",lo" << fmt_double(a) << ",hi" << fmt_double(a);
  out << "\n";
  for (std::size_t t = 0; t < curve.periods.size(); ++t) {
    const Dps& d = curve.periods[t];
    out << t << "," << fmt_double(d.mean());
    for (const double a : alphas) {
      const double lo = (50.0 - a / 2.0) / 100.0;
      const double hi = (50.0 + a / 2.0) / 100.0;
      out << "," << fmt_double(d.quantile(lo)) << "," << fmt_double(d.quantile(hi));
    }
    out << "\n";
  }
  return out.str();
}

std::string render_sweep_csv(const std::vector<SweepRow>& sweep) {
  std::ostringstream out;
  out << "mou_mw,s_mwh,ds_mwh_per_mw\n";
  for (const auto& row : sweep)
    out << fmt_double(row.mou_mw) << "," << fmt_double(row.s_mwh) << ","
        << fmt_double(row.ds_mwh_per_mw) << "\n";
  return out.str();
}

void write_text_atomic(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot open for writing: " + tmp);
    out << content;
    if (!out.flush()) throw Error("write failed: " + tmp);
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw Error("rename failed for " + path + ": " + ec.message());
}

std::vector<ResourceSpec> load_resources_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open resources file: " + path);
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw SchemaError(std::string("resources file is not valid JSON: ") + e.what());
  }
  const json* arr = nullptr;
  if (doc.is_array()) {
    arr = &doc;
  } else if (doc.is_object() && doc.contains("resources") && doc["resources"].is_array()) {
    arr = &doc["resources"];
  } else {
    throw SchemaError("resources file must be an array or {\"resources\": [...]}");
  }
  std::vector<ResourceSpec> out;
  for (const auto& e : *arr) {
    if (!e.is_object()) throw SchemaError("resource entries must be objects");
    ResourceSpec r;
    if (!e.contains("name") || !e["name"].is_string())
      throw SchemaError("resource entry missing string field 'name'");
    r.name = e["name"].get<std::string>();
    r.kind = e.value("kind", std::string("generic"));
    r.capex_per_mw = require_number(e, "capex_per_mw");
    r.rarr = require_number(e, "rarr");
    r.benefit_per_mwh = require_number(e, "benefit_per_mwh");
    r.mw_limit = require_number(e, "mw_limit");
    r.storage_hours = e.value("storage_hours", 0.0);
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace pdc
