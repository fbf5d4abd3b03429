#pragma once

#include <vector>

#include "pdc/curves.hpp"
#include "pdc/dps.hpp"

namespace pdc {

// Curtailment-area evaluation at one MOU (minimum-output-unit) profile.
struct AreaResult {
  std::vector<double> mou_curve;  // MW per period
  double s_mwh = 0.0;             // expected energy below the MOU profile, per day
  int t_min = -1, t_max = -1;     // longest contiguous span with mass below the profile
  double ds_mwh_per_mw = 0.0;     // marginal area per MW of MOU reduction
};

struct SweepRow {
  double mou_mw = 0.0;
  double s_mwh = 0.0;
  double ds_mwh_per_mw = 0.0;
};

struct IndexBundle {
  std::vector<double> expected_netload_mw;    // per period
  std::vector<double> expected_ramp_mw_per_h;  // per ramp
  std::vector<double> alphas;                  // requested central intervals, percent
  std::vector<std::vector<double>> cl_pdc;     // [alpha][period], MW
  std::vector<std::vector<double>> cl_prc;     // [alpha][ramp], MW
  int peak_period = -1;
  int valley_period = -1;
  bool degenerate_extremes = false;  // expected curve constant; valley reassigned
  Dps ptv;                           // peak-to-valley difference distribution
  CopulaRecord ptv_copula;
};

// Per-period means of the curve.
std::vector<double> expected_curve(const ProbCurve& curve);

// Central interval width: quantile((50+a/2)%) - quantile((50-a/2)%), per period.
std::vector<double> confidence_level(const ProbCurve& curve, double alpha_pct);

// Expected daily energy below the MOU profile. The sum runs over all periods
// (bins above the profile contribute zero), which keeps S exactly convex in
// the profile level; t_min/t_max report where the PDC actually dips below it.
AreaResult probabilistic_area(const ProbCurve& pdc, const std::vector<double>& mou,
                              double period_hours, double marginal_delta = 0.0);
AreaResult probabilistic_area(const ProbCurve& pdc, double mou, double period_hours,
                              double marginal_delta = 0.0);

// (S(mou) - S(mou - delta)) / delta with a flat profile.
double marginal_area(const ProbCurve& pdc, double mou, double period_hours, double delta = 0.0);

// Area table over a flat-MOU grid; ds uses the grid step as the marginal delta.
// Throws EmptySweep when the grid is empty.
std::vector<SweepRow> area_sweep(const ProbCurve& pdc, double mou_min, double mou_max,
                                 double step, double period_hours);

IndexBundle compute_indices(const ProbCurve& pdc, const ProbCurve& prc, const FittedModel& model,
                            const std::vector<double>& alphas = {50.0, 90.0, 99.0});

}  // namespace pdc
