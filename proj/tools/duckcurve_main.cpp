#include <cstdio>
#include <exception>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "pdc/curves.hpp"
#include "pdc/errors.hpp"
#include "pdc/indices.hpp"
#include "pdc/json_io.hpp"
#include "pdc/oracle.hpp"
#include "pdc/panel.hpp"
#include "pdc/planning.hpp"
#include "pdc/synth.hpp"

namespace {

struct PanelArgs {
  std::string pv_path, load_path;
  int periods = 24;
  std::string from, to;
  double step_mw = 0.0;  // 0: derive from bin count
  int bins = 500;
};

void add_panel_options(CLI::App* cmd, PanelArgs& a, bool with_grid = true) {
  cmd->add_option("--input-pv", a.pv_path, "PV generation CSV (timestamp,plant,...)")->required();
  cmd->add_option("--input-load", a.load_path, "Load CSV (timestamp,meter,...)")->required();
  cmd->add_option("--periods", a.periods, "Periods per day")->default_val(24);
  cmd->add_option("--from", a.from, "First date to include (YYYY-MM-DD)");
  cmd->add_option("--to", a.to, "Last date to include (YYYY-MM-DD)");
  if (with_grid) {
    cmd->add_option("--step-mw", a.step_mw, "Grid step in MW (overrides --bins)");
    cmd->add_option("--bins", a.bins, "Grid bins across the load peak")->default_val(500);
  }
}

struct LoadedInput {
  pdc::TimePanel panel;
  int dropped = 0;
  double step = 0.0;
};

LoadedInput read_input(const PanelArgs& a) {
  LoadedInput in;
  pdc::LoadResult r = pdc::load_panel(a.pv_path, a.load_path, a.periods, a.from, a.to);
  in.panel = std::move(r.panel);
  in.dropped = r.dropped_days;
  in.step = a.step_mw > 0.0 ? a.step_mw : pdc::default_step(in.panel, a.bins);
  if (in.dropped > 0)
    std::fprintf(stderr, "note: dropped %d incomplete day(s)\n", in.dropped);
  return in;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Probabilistic duck curve and ramp curve toolkit"};
  app.require_subcommand(1);

  PanelArgs pdc_args, prc_args, idx_args, plan_args, val_args;
  std::string out_path, fan_path, sweep_path;
  std::vector<double> alphas = {50.0, 90.0, 99.0};
  double mou_min = 0.0, mou_max = 0.0, mou_step = 0.0;

  auto* cmd_pdc = app.add_subcommand("pdc", "Per-period net-load distributions");
  add_panel_options(cmd_pdc, pdc_args);
  cmd_pdc->add_option("--out", out_path, "Output JSON path")->required();
  cmd_pdc->add_option("--fan", fan_path, "Optional quantile-fan CSV path");
  cmd_pdc->add_option("--alpha", alphas, "Central interval widths, percent")->delimiter(',');

  auto* cmd_prc = app.add_subcommand("prc", "Period-to-period ramp distributions");
  add_panel_options(cmd_prc, prc_args);
  cmd_prc->add_option("--out", out_path, "Output JSON path")->required();
  cmd_prc->add_option("--fan", fan_path, "Optional quantile-fan CSV path");
  cmd_prc->add_option("--alpha", alphas, "Central interval widths, percent")->delimiter(',');

  auto* cmd_idx = app.add_subcommand("indices", "Characteristic indices of both curves");
  add_panel_options(cmd_idx, idx_args);
  cmd_idx->add_option("--out", out_path, "Output JSON path")->required();
  cmd_idx->add_option("--alpha", alphas, "Central interval widths, percent")->delimiter(',');
  cmd_idx->add_option("--sweep", sweep_path, "Optional MOU area-sweep CSV path");
  cmd_idx->add_option("--mou-min", mou_min, "Sweep lower bound, MW");
  cmd_idx->add_option("--mou-max", mou_max, "Sweep upper bound, MW");
  cmd_idx->add_option("--mou-step", mou_step, "Sweep step, MW");

  std::string resources_path;
  double mou_start = 0.0, grid_step = 0.0;
  auto* cmd_plan = app.add_subcommand("plan", "Break-even flexibility allocation");
  add_panel_options(cmd_plan, plan_args);
  cmd_plan->add_option("--resources", resources_path, "Resource spec JSON")->required();
  cmd_plan->add_option("--mou-start", mou_start, "Current MOU level, MW")->required();
  cmd_plan->add_option("--grid-step", grid_step, "Allocation step, MW (default: grid step)");
  cmd_plan->add_option("--out", out_path, "Output JSON path")->required();

  std::uint64_t seed = 42;
  std::size_t samples = 1000000;
  auto* cmd_val = app.add_subcommand("validate", "Monte Carlo cross-check of the curves");
  add_panel_options(cmd_val, val_args);
  cmd_val->add_option("--samples", samples, "Monte Carlo draws per period")->default_val(1000000);
  cmd_val->add_option("--seed", seed, "Simulation seed")->default_val(42);
  cmd_val->add_option("--out", out_path, "Report JSON path")->required();

  pdc::SynthConfig synth_cfg;
  std::string synth_pv = "pv.csv", synth_load = "load.csv";
  auto* cmd_synth = app.add_subcommand("synth", "Generate a synthetic example fleet");
  cmd_synth->add_option("--out-pv", synth_pv, "PV CSV output path")->required();
  cmd_synth->add_option("--out-load", synth_load, "Load CSV output path")->required();
  cmd_synth->add_option("--days", synth_cfg.days)->default_val(180);
  cmd_synth->add_option("--periods", synth_cfg.periods_per_day)->default_val(24);
  cmd_synth->add_option("--seed", synth_cfg.seed)->default_val(42);
  cmd_synth->add_option("--start", synth_cfg.start_date)->default_val("2021-03-01");
  cmd_synth->add_option("--pv-caps", synth_cfg.pv_caps_mw, "Plant capacities, MW")->delimiter(',');
  cmd_synth->add_option("--load-bases", synth_cfg.load_bases_mw, "Meter base loads, MW")->delimiter(',');
  cmd_synth->add_option("--cloud-tau", synth_cfg.cloud_tau, "Pairwise cloud rank correlation");

  CLI11_PARSE(app, argc, argv);

  try {
    if (cmd_synth->parsed()) {
      const pdc::TimePanel panel = pdc::make_synth_panel(synth_cfg);
      pdc::write_panel(panel, synth_pv, synth_load);
      std::printf("wrote %s and %s: %d day(s), %d period(s), %zu series\n", synth_pv.c_str(),
                  synth_load.c_str(), panel.day_count(), panel.periods_per_day,
                  panel.series.size());
      return 0;
    }

    if (cmd_pdc->parsed() || cmd_prc->parsed()) {
      const bool want_prc = cmd_prc->parsed();
      const LoadedInput in = read_input(want_prc ? prc_args : pdc_args);
      const pdc::FittedModel model = pdc::fit_model(in.panel, in.step);
      const pdc::ProbCurve pdc_curve = pdc::build_pdc(model);
      const pdc::ProbCurve chosen = want_prc ? pdc::build_prc(pdc_curve, model) : pdc_curve;
      pdc::write_text_atomic(out_path, pdc::render_curve_json(chosen));
      if (!fan_path.empty())
        pdc::write_text_atomic(fan_path, pdc::render_fan_csv(chosen, alphas));
      std::printf("%s: %zu period(s), step %.6g MW -> %s\n", chosen.kind.c_str(),
                  chosen.periods.size(), chosen.step, out_path.c_str());
      return 0;
    }

    if (cmd_idx->parsed()) {
      const LoadedInput in = read_input(idx_args);
      const pdc::FittedModel model = pdc::fit_model(in.panel, in.step);
      const pdc::ProbCurve pdc_curve = pdc::build_pdc(model);
      const pdc::ProbCurve prc_curve = pdc::build_prc(pdc_curve, model);
      const pdc::IndexBundle ix = pdc::compute_indices(pdc_curve, prc_curve, model, alphas);
      pdc::write_text_atomic(out_path, pdc::render_indices_json(ix));
      if (!sweep_path.empty()) {
        if (mou_step <= 0.0)
          throw pdc::EmptySweep("--sweep requires --mou-min/--mou-max/--mou-step");
        const auto sweep =
            pdc::area_sweep(pdc_curve, mou_min, mou_max, mou_step, in.panel.period_hours());
        pdc::write_text_atomic(sweep_path, pdc::render_sweep_csv(sweep));
      }
      std::printf("indices: peak t=%d valley t=%d -> %s\n", ix.peak_period, ix.valley_period,
                  out_path.c_str());
      return 0;
    }

    if (cmd_plan->parsed()) {
      const LoadedInput in = read_input(plan_args);
      const pdc::FittedModel model = pdc::fit_model(in.panel, in.step);
      const pdc::ProbCurve pdc_curve = pdc::build_pdc(model);
      const auto resources = pdc::load_resources_json(resources_path);
      const double gstep = grid_step > 0.0 ? grid_step : in.step;
      const pdc::Plan plan = pdc::stack_resources(pdc_curve, mou_start, resources, gstep,
                                                  in.panel.period_hours());
      pdc::write_text_atomic(out_path, pdc::render_plan_json(plan, resources));
      std::printf("plan: S %.4g -> %.4g MWh/day over %zu resource(s) -> %s\n", plan.base_s_mwh,
                  plan.residual_s_mwh, plan.rows.size(), out_path.c_str());
      return 0;
    }

    if (cmd_val->parsed()) {
      const LoadedInput in = read_input(val_args);
      const pdc::FittedModel model = pdc::fit_model(in.panel, in.step);
      const pdc::ProbCurve pdc_curve = pdc::build_pdc(model);
      const pdc::ProbCurve prc_curve = pdc::build_prc(pdc_curve, model);
      const pdc::OracleReport rep =
          pdc::run_validation(model, pdc_curve, prc_curve, samples, seed);
      pdc::write_text_atomic(out_path, pdc::render_oracle_json(rep));
      int failed = 0;
      for (const auto& q : rep.pdc_checks) failed += q.pass ? 0 : 1;
      for (const auto& q : rep.prc_checks) failed += q.pass ? 0 : 1;
      for (const auto& a : rep.area_checks) failed += a.pass ? 0 : 1;
      std::printf("validate: %s (%d failing check(s)) -> %s\n", rep.all_pass ? "PASS" : "FAIL",
                  failed, out_path.c_str());
      return rep.all_pass ? 0 : 1;
    }
  } catch (const pdc::Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 0;
}
