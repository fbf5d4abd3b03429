#include "pdc/indices.hpp"

#include <algorithm>
#include <cmath>

namespace pdc {

namespace {

constexpr double kLowerBoundary = 1e-5;  // cumulative level defining the curve floor

double area_at(const ProbCurve& pdc, const std::vector<double>& mou, double period_hours) {
  double s = 0.0;
  for (std::size_t t = 0; t < pdc.periods.size(); ++t) {
    s += expected_shortfall_below(pdc.periods[t], mou[t]);
  }
  return s * period_hours;
}

}  // namespace

std::vector<double> expected_curve(const ProbCurve& curve) {
  std::vector<double> out(curve.periods.size());
  for (std::size_t t = 0; t < curve.periods.size(); ++t) out[t] = curve.periods[t].mean();
  return out;
}

std::vector<double> confidence_level(const ProbCurve& curve, double alpha_pct) {
  if (!(alpha_pct > 0.0 && alpha_pct < 100.0))
    throw ProbabilityOutOfRange("confidence_level: alpha must be in (0,100)");
  const double q_hi = (50.0 + alpha_pct / 2.0) / 100.0;
  const double q_lo = (50.0 - alpha_pct / 2.0) / 100.0;
  std::vector<double> out(curve.periods.size());
  for (std::size_t t = 0; t < curve.periods.size(); ++t) {
    out[t] = curve.periods[t].quantile(q_hi) - curve.periods[t].quantile(q_lo);
  }
  return out;
}

AreaResult probabilistic_area(const ProbCurve& pdc, const std::vector<double>& mou,
                              double period_hours, double marginal_delta) {
  if (mou.size() != pdc.periods.size())
    throw LengthMismatch("probabilistic_area: MOU profile length mismatch");
  if (marginal_delta <= 0.0) marginal_delta = pdc.step;

  AreaResult r;
  r.mou_curve = mou;
  r.s_mwh = area_at(pdc, mou, period_hours);

  // Longest contiguous run of periods whose floor lies below the profile.
  int best_len = 0, run_start = -1;
  for (std::size_t t = 0; t <= pdc.periods.size(); ++t) {
    const bool below =
        t < pdc.periods.size() && pdc.periods[t].quantile(kLowerBoundary) < mou[t];
    if (below && run_start < 0) run_start = static_cast<int>(t);
    if (!below && run_start >= 0) {
      const int len = static_cast<int>(t) - run_start;
      if (len > best_len) {
        best_len = len;
        r.t_min = run_start;
        r.t_max = static_cast<int>(t) - 1;
      }
      run_start = -1;
    }
  }

  std::vector<double> lowered = mou;
  for (double& m : lowered) m -= marginal_delta;
  r.ds_mwh_per_mw = (r.s_mwh - area_at(pdc, lowered, period_hours)) / marginal_delta;
  return r;
}

AreaResult probabilistic_area(const ProbCurve& pdc, double mou, double period_hours,
                              double marginal_delta) {
  return probabilistic_area(pdc, std::vector<double>(pdc.periods.size(), mou), period_hours,
                            marginal_delta);
}

double marginal_area(const ProbCurve& pdc, double mou, double period_hours, double delta) {
  return probabilistic_area(pdc, mou, period_hours, delta).ds_mwh_per_mw;
}

std::vector<SweepRow> area_sweep(const ProbCurve& pdc, double mou_min, double mou_max,
                                 double step, double period_hours) {
  if (!(step > 0.0) || mou_max < mou_min) throw EmptySweep("area_sweep: empty grid");
  std::vector<SweepRow> rows;
  const int n = static_cast<int>(std::floor((mou_max - mou_min) / step + 1e-9)) + 1;
  rows.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const double mou = mou_min + step * i;
    const AreaResult a = probabilistic_area(pdc, mou, period_hours, step);
    rows.push_back({mou, a.s_mwh, a.ds_mwh_per_mw});
  }
  if (rows.empty()) throw EmptySweep("area_sweep: empty grid");
  return rows;
}

IndexBundle compute_indices(const ProbCurve& pdc, const ProbCurve& prc, const FittedModel& model,
                            const std::vector<double>& alphas) {
  IndexBundle b;
  b.expected_netload_mw = expected_curve(pdc);
  b.expected_ramp_mw_per_h = expected_curve(prc);
  for (double& r : b.expected_ramp_mw_per_h) r /= model.period_hours;
  b.alphas = alphas;
  for (double a : alphas) {
    b.cl_pdc.push_back(confidence_level(pdc, a));
    b.cl_prc.push_back(confidence_level(prc, a));
  }

  const auto& e = b.expected_netload_mw;
  b.peak_period = static_cast<int>(std::max_element(e.begin(), e.end()) - e.begin());
  b.valley_period = static_cast<int>(std::min_element(e.begin(), e.end()) - e.begin());
  if (b.peak_period == b.valley_period) {
    // Constant expected curve; pick the neighbor so the pair stays distinct.
    b.degenerate_extremes = true;
    b.valley_period = (b.peak_period + 1 < static_cast<int>(e.size())) ? b.peak_period + 1
                                                                       : b.peak_period - 1;
  }

  const auto& peak_net = model.net_samples[static_cast<std::size_t>(b.peak_period)];
  const auto& valley_net = model.net_samples[static_cast<std::size_t>(b.valley_period)];
  const TauResult tr = kendall_tau(peak_net, valley_net);
  const GaussianCopula cop = copula_from_tau(tr.tau);
  b.ptv_copula = {"peak_valley", b.peak_period, tr.tau, cop.rho, tr.degenerate};
  b.ptv = ddc_sub(pdc.periods[static_cast<std::size_t>(b.peak_period)],
                  pdc.periods[static_cast<std::size_t>(b.valley_period)], cop);
  return b;
}

}  // namespace pdc
