#pragma once

#include <string>
#include <vector>

#include "pdc/copula.hpp"
#include "pdc/dps.hpp"
#include "pdc/kde.hpp"
#include "pdc/panel.hpp"

namespace pdc {

// Fitted dependence parameters, kept for reporting.
struct CopulaRecord {
  std::string pair;  // e.g. "pv_fold_2", "pv_load", "net_adjacent"
  int t = 0;
  double tau = 0.0;
  double rho = 0.0;
  bool degenerate = false;
};

// Per-period probability curve: one mass sequence per period (net load for
// kind "PDC", period-to-period ramp for kind "PRC").
struct ProbCurve {
  std::string kind;
  double step = 0.0;
  std::vector<Dps> periods;
  std::vector<CopulaRecord> copulas;
};

// A series marginal at one period: a KDE, or a point mass at 0 when every
// sample is below 1e-6 MW (PV outside daylight).
struct MarginalModel {
  KdeModel kde;
  bool zero_point_mass = false;
};

struct PeriodModel {
  std::vector<MarginalModel> pv, load;
  // Copula between the partial fleet sum over series 0..k and series k+1.
  std::vector<GaussianCopula> pv_fold, load_fold;
  GaussianCopula pv_load;  // total load vs total PV
};

// Everything estimated from the panel that the curve assembly (and the
// Monte Carlo checker) consumes.
struct FittedModel {
  int periods_per_day = 0;
  double step = 0.0;
  double period_hours = 0.0;
  std::vector<PeriodModel> period;
  std::vector<GaussianCopula> adjacent;        // net load at t+1 vs t
  std::vector<std::vector<double>> net_samples;  // per period, per day
  std::vector<CopulaRecord> records;
};

// Grid step giving `bins` bins at the observed total-load peak.
double default_step(const TimePanel& panel, int bins = 500);

FittedModel fit_model(const TimePanel& panel, double step);

// Same model with every dependence parameter forced to independence
// (sensitivity rebuilds).
FittedModel decorrelated(FittedModel m);

// Distribution of the summed fleet of one kind at period t: marginals are
// discretized KDEs (PV leakage below 0 folded into the 0 bin), combined by a
// left fold with partial-sum copulas.
Dps aggregate_fleet(const TimePanel& panel, SeriesKind kind, int t, double step);

ProbCurve build_pdc(const FittedModel& model);
ProbCurve build_pdc(const TimePanel& panel, double step);

// Ramp curve between consecutive periods; one entry fewer than the PDC.
ProbCurve build_prc(const ProbCurve& pdc, const FittedModel& model);
ProbCurve build_prc(const ProbCurve& pdc, const TimePanel& panel);

}  // namespace pdc
