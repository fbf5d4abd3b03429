#include "pdc/curves.hpp"

#include <algorithm>
#include <cmath>

namespace pdc {

namespace {

constexpr double kNightPv = 1e-6;  // MW; below this a PV slice is "all dark"

bool all_below(const std::vector<double>& xs, double cap) {
  for (double x : xs) {
    if (x >= cap) return false;
  }
  return true;
}

MarginalModel fit_marginal(const std::vector<double>& samples, SeriesKind kind) {
  MarginalModel m;
  if (kind == SeriesKind::pv && all_below(samples, kNightPv)) {
    m.zero_point_mass = true;
    return m;
  }
  m.kde = fit_kde(samples);
  return m;
}

Dps marginal_dps(const MarginalModel& m, SeriesKind kind, double step) {
  if (m.zero_point_mass) return point_mass(0.0, step);
  Dps d = discretize(m.kde, step);
  if (kind == SeriesKind::pv) d = fold_below_zero(d);
  return d;
}

struct FleetFit {
  std::vector<MarginalModel> marginals;
  std::vector<GaussianCopula> folds;
  std::vector<CopulaRecord> records;
};

FleetFit fit_fleet(const TimePanel& panel, SeriesKind kind, int t) {
  FleetFit f;
  const auto idx = panel.of_kind(kind);
  const char* tag = (kind == SeriesKind::pv) ? "pv_fold_" : "load_fold_";
  std::vector<double> partial;
  for (std::size_t k = 0; k < idx.size(); ++k) {
    const auto& xs = panel.slice_period(idx[k], t);
    f.marginals.push_back(fit_marginal(xs, kind));
    if (k == 0) {
      partial = xs;
      continue;
    }
    const TauResult tr = kendall_tau(partial, xs);
    f.folds.push_back(copula_from_tau(tr.tau));
    f.records.push_back({tag + std::to_string(k), t, tr.tau, f.folds.back().rho, tr.degenerate});
    for (std::size_t j = 0; j < partial.size(); ++j) partial[j] += xs[j];
  }
  return f;
}

Dps fold_fleet(const std::vector<MarginalModel>& marginals,
               const std::vector<GaussianCopula>& folds, SeriesKind kind, double step) {
  Dps acc = marginal_dps(marginals[0], kind, step);
  for (std::size_t k = 1; k < marginals.size(); ++k) {
    acc = ddc_add(acc, marginal_dps(marginals[k], kind, step), folds[k - 1]);
  }
  return acc;
}

}  // namespace

double default_step(const TimePanel& panel, int bins) {
  if (bins < 2) throw StepTooCoarse("default_step: need at least 2 bins");
  double peak = 0.0;
  for (int t = 0; t < panel.periods_per_day; ++t) {
    for (double v : panel.kind_total(SeriesKind::load, t)) peak = std::max(peak, v);
  }
  if (peak <= 0.0) throw EmptyPanel("default_step: no positive load in panel");
  return peak / static_cast<double>(bins);
}

FittedModel fit_model(const TimePanel& panel, double step) {
  if (panel.of_kind(SeriesKind::pv).empty() || panel.of_kind(SeriesKind::load).empty())
    throw EmptyPanel("fit_model: need at least one PV and one load series");
  FittedModel m;
  m.periods_per_day = panel.periods_per_day;
  m.step = step;
  m.period_hours = panel.period_hours();
  m.period.resize(static_cast<std::size_t>(panel.periods_per_day));
  m.net_samples.resize(static_cast<std::size_t>(panel.periods_per_day));

  for (int t = 0; t < panel.periods_per_day; ++t) {
    auto& pm = m.period[static_cast<std::size_t>(t)];
    FleetFit pv = fit_fleet(panel, SeriesKind::pv, t);
    FleetFit ld = fit_fleet(panel, SeriesKind::load, t);
    pm.pv = std::move(pv.marginals);
    pm.pv_fold = std::move(pv.folds);
    pm.load = std::move(ld.marginals);
    pm.load_fold = std::move(ld.folds);
    for (auto& r : pv.records) m.records.push_back(std::move(r));
    for (auto& r : ld.records) m.records.push_back(std::move(r));

    const TauResult tr = kendall_tau(panel.kind_total(SeriesKind::load, t),
                                     panel.kind_total(SeriesKind::pv, t));
    pm.pv_load = copula_from_tau(tr.tau);
    m.records.push_back({"pv_load", t, tr.tau, pm.pv_load.rho, tr.degenerate});

    m.net_samples[static_cast<std::size_t>(t)] = panel.net_load(t);
  }
  for (int t = 0; t + 1 < panel.periods_per_day; ++t) {
    const TauResult tr = kendall_tau(m.net_samples[static_cast<std::size_t>(t) + 1],
                                     m.net_samples[static_cast<std::size_t>(t)]);
    m.adjacent.push_back(copula_from_tau(tr.tau));
    m.records.push_back({"net_adjacent", t, tr.tau, m.adjacent.back().rho, tr.degenerate});
  }
  return m;
}

FittedModel decorrelated(FittedModel m) {
  const GaussianCopula indep = copula_from_tau(0.0);
  for (auto& pm : m.period) {
    for (auto& c : pm.pv_fold) c = indep;
    for (auto& c : pm.load_fold) c = indep;
    pm.pv_load = indep;
  }
  for (auto& c : m.adjacent) c = indep;
  return m;
}

Dps aggregate_fleet(const TimePanel& panel, SeriesKind kind, int t, double step) {
  if (t < 0 || t >= panel.periods_per_day) throw PeriodOutOfRange("aggregate_fleet: bad period");
  const FleetFit f = fit_fleet(panel, kind, t);
  if (f.marginals.empty()) throw EmptyPanel("aggregate_fleet: no series of this kind");
  return fold_fleet(f.marginals, f.folds, kind, step);
}

ProbCurve build_pdc(const FittedModel& model) {
  ProbCurve curve;
  curve.kind = "PDC";
  curve.step = model.step;
  const int T = model.periods_per_day;
  curve.periods.resize(static_cast<std::size_t>(T));
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
  for (int t = 0; t < T; ++t) {
    const auto& pm = model.period[static_cast<std::size_t>(t)];
    const Dps pv_total = fold_fleet(pm.pv, pm.pv_fold, SeriesKind::pv, model.step);
    const Dps load_total = fold_fleet(pm.load, pm.load_fold, SeriesKind::load, model.step);
    curve.periods[static_cast<std::size_t>(t)] = ddc_sub(load_total, pv_total, pm.pv_load);
  }
  for (const auto& r : model.records) {
    if (r.pair != "net_adjacent") curve.copulas.push_back(r);
  }
  return curve;
}

ProbCurve build_pdc(const TimePanel& panel, double step) {
  return build_pdc(fit_model(panel, step));
}

ProbCurve build_prc(const ProbCurve& pdc, const FittedModel& model) {
  if (pdc.periods.size() != static_cast<std::size_t>(model.periods_per_day))
    throw LengthMismatch("build_prc: curve/model period mismatch");
  ProbCurve curve;
  curve.kind = "PRC";
  curve.step = pdc.step;
  const int T = model.periods_per_day;
  curve.periods.resize(static_cast<std::size_t>(T) - 1);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
  for (int t = 0; t < T - 1; ++t) {
    curve.periods[static_cast<std::size_t>(t)] =
        ddc_sub(pdc.periods[static_cast<std::size_t>(t) + 1],
                pdc.periods[static_cast<std::size_t>(t)],
                model.adjacent[static_cast<std::size_t>(t)]);
  }
  for (const auto& r : model.records) {
    if (r.pair == "net_adjacent") curve.copulas.push_back(r);
  }
  return curve;
}

ProbCurve build_prc(const ProbCurve& pdc, const TimePanel& panel) {
  return build_prc(pdc, fit_model(panel, pdc.step));
}

}  // namespace pdc
