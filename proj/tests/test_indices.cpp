#include <doctest.h>

#include <cmath>
#include <vector>

#include "pdc/curves.hpp"
#include "pdc/indices.hpp"
#include "pdc/synth.hpp"

using namespace pdc;

namespace {

ProbCurve one_period_curve(Dps d) {
  ProbCurve c;
  c.kind = "PDC";
  c.step = d.step;
  c.periods.push_back(std::move(d));
  return c;
}

ProbCurve fitted_curve(int days = 50, int periods = 8, int bins = 150) {
  SynthConfig cfg;
  cfg.days = days;
  cfg.periods_per_day = periods;
  const TimePanel panel = make_synth_panel(cfg);
  return build_pdc(panel, default_step(panel, bins));
}

}  // namespace

TEST_CASE("central interval widths on a hand-checked sequence") {
  const ProbCurve c = one_period_curve(Dps{0.0, 1.0, {0.05, 0.45, 0.45, 0.05}});
  CHECK(confidence_level(c, 99.0) == std::vector<double>{3.0});  // q(.995)-q(.005)
  CHECK(confidence_level(c, 50.0) == std::vector<double>{1.0});  // q(.75)-q(.25)
  CHECK_THROWS_AS(confidence_level(c, 0.0), ProbabilityOutOfRange);
  CHECK_THROWS_AS(confidence_level(c, 100.0), ProbabilityOutOfRange);
}

TEST_CASE("central intervals widen with the coverage requirement") {
  const ProbCurve pdc = fitted_curve();
  std::vector<double> prev(pdc.periods.size(), 0.0);
  for (double alpha : {10.0, 30.0, 50.0, 70.0, 90.0, 99.0}) {
    const auto w = confidence_level(pdc, alpha);
    for (std::size_t t = 0; t < w.size(); ++t) {
      CHECK(w[t] >= prev[t]);
      prev[t] = w[t];
    }
  }
}

TEST_CASE("area below a floor on a hand-checked sequence") {
  const ProbCurve c = one_period_curve(Dps{0.0, 100.0, {0.2, 0.3, 0.5}});
  const AreaResult r = probabilistic_area(c, 150.0, 1.0);
  CHECK(r.s_mwh == 45.0);
  CHECK(r.t_min == 0);
  CHECK(r.t_max == 0);

  // A floor below the entire support has nothing beneath it.
  const AreaResult zero = probabilistic_area(c, -10.0, 1.0);
  CHECK(zero.s_mwh == 0.0);
  CHECK(zero.t_min == -1);
  CHECK(zero.t_max == -1);

  // Period weighting scales linearly.
  const AreaResult hourly = probabilistic_area(c, 150.0, 3.0);
  CHECK(hourly.s_mwh == 135.0);
}

TEST_CASE("area accepts per-period profiles and checks their length") {
  const ProbCurve pdc = fitted_curve();
  std::vector<double> profile(pdc.periods.size(), 500.0);
  const AreaResult flat = probabilistic_area(pdc, 500.0, 3.0);
  const AreaResult prof = probabilistic_area(pdc, profile, 3.0);
  CHECK(flat.s_mwh == prof.s_mwh);
  profile.pop_back();
  CHECK_THROWS_AS(probabilistic_area(pdc, profile, 3.0), LengthMismatch);
}

TEST_CASE("area is convex and nondecreasing along a floor sweep") {
  const ProbCurve pdc = fitted_curve();
  double lo = 1e300, hi = -1e300;
  for (const auto& d : pdc.periods) {
    lo = std::min(lo, d.quantile(0.001));
    hi = std::max(hi, d.quantile(0.2));
  }
  const auto sweep = area_sweep(pdc, lo, hi, (hi - lo) / 49.0, 3.0);
  REQUIRE(sweep.size() == 50);
  for (std::size_t i = 1; i < sweep.size(); ++i) {
    CHECK(sweep[i].s_mwh >= sweep[i - 1].s_mwh);            // nondecreasing
    CHECK(sweep[i].ds_mwh_per_mw >= sweep[i - 1].ds_mwh_per_mw - 1e-9);  // convex
    if (i >= 2) {
      const double d2 = sweep[i].s_mwh - 2.0 * sweep[i - 1].s_mwh + sweep[i - 2].s_mwh;
      CHECK(d2 >= -1e-9);
    }
  }
  CHECK_THROWS_AS(area_sweep(pdc, 10.0, 0.0, 1.0, 3.0), EmptySweep);
}

TEST_CASE("marginal area matches its finite difference") {
  const ProbCurve pdc = fitted_curve();
  const double mou = pdc.periods[0].quantile(0.1);
  const double delta = 25.0;
  const double lhs = marginal_area(pdc, mou, 3.0, delta);
  const double s1 = probabilistic_area(pdc, mou, 3.0).s_mwh;
  const double s0 = probabilistic_area(pdc, mou - delta, 3.0).s_mwh;
  CHECK(lhs == doctest::Approx((s1 - s0) / delta).epsilon(1e-12));
}

TEST_CASE("index bundle identifies the shape of the day") {
  SynthConfig cfg;
  cfg.days = 60;
  cfg.periods_per_day = 24;
  const TimePanel panel = make_synth_panel(cfg);
  const double step = default_step(panel, 200);
  const FittedModel m = fit_model(panel, step);
  const ProbCurve pdc = build_pdc(m);
  const ProbCurve prc = build_prc(pdc, m);
  const IndexBundle ix = compute_indices(pdc, prc, m);

  REQUIRE(ix.expected_netload_mw.size() == 24);
  REQUIRE(ix.expected_ramp_mw_per_h.size() == 23);
  for (int t = 0; t < 23; ++t) {
    CHECK(ix.expected_ramp_mw_per_h[t] ==
          doctest::Approx(prc.periods[t].mean() / m.period_hours).epsilon(1e-12));
  }
  // The synthetic fleet has a midday trough and an evening peak.
  CHECK(ix.valley_period >= 10);
  CHECK(ix.valley_period <= 14);
  CHECK(ix.peak_period >= 18);
  CHECK(ix.peak_period <= 21);
  CHECK_FALSE(ix.degenerate_extremes);

  // Peak-to-valley distribution is consistent with the period means.
  const double want = pdc.periods[ix.peak_period].mean() - pdc.periods[ix.valley_period].mean();
  CHECK(ix.ptv.mean() == doctest::Approx(want).epsilon(0.02));
  CHECK(ix.ptv_copula.pair == "peak_valley");

  REQUIRE(ix.cl_pdc.size() == ix.alphas.size());
  REQUIRE(ix.cl_prc.size() == ix.alphas.size());
  CHECK(ix.cl_pdc[0].size() == 24);
  CHECK(ix.cl_prc[0].size() == 23);
}

TEST_CASE("flat expected curve falls back to a neighboring valley") {
  // Three identical periods: the peak wins by first occurrence, the valley
  // would coincide, so it is reassigned next door and flagged.
  const Dps d{0.0, 1.0, {0.25, 0.5, 0.25}};
  ProbCurve pdc;
  pdc.kind = "PDC";
  pdc.step = 1.0;
  pdc.periods = {d, d, d};
  ProbCurve prc;
  prc.kind = "PRC";
  prc.step = 1.0;
  prc.periods = {Dps{-1.0, 1.0, {0.25, 0.5, 0.25}}, Dps{-1.0, 1.0, {0.25, 0.5, 0.25}}};

  FittedModel m;
  m.periods_per_day = 3;
  m.step = 1.0;
  m.period_hours = 8.0;
  m.net_samples = {{0.0, 1.0, 2.0}, {0.0, 1.0, 2.0}, {0.0, 1.0, 2.0}};
  m.adjacent = {copula_from_tau(0.0), copula_from_tau(0.0)};

  const IndexBundle ix = compute_indices(pdc, prc, m);
  CHECK(ix.degenerate_extremes);
  CHECK(ix.peak_period == 0);
  CHECK(ix.valley_period == 1);
}
