#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pdc/curves.hpp"
#include "pdc/dps.hpp"

namespace pdc {

// L1 distance between the sequence's CDF and the empirical CDF of the samples,
// integrated over the merged breakpoint grid (exact for step functions).
double wasserstein1_sorted(const Dps& d, const std::vector<double>& sorted_samples);
double wasserstein1(const Dps& d, std::vector<double> samples);

// Kolmogorov-Smirnov statistic against the empirical CDF.
double ks_stat_sorted(const Dps& d, const std::vector<double>& sorted_samples);

// Monte Carlo sampler over the fitted model. Draws mirror the model structure
// directly: KDE marginals are sampled exactly, fleet partial sums are coupled
// step by step with the fitted copulas through empirical-quantile transforms,
// and net load couples the two fleet totals. Entirely counter-based: a given
// (seed, n) reproduces bit-identically, independent of thread count.
class ModelSampler {
 public:
  ModelSampler(const FittedModel& model, std::size_t n, std::uint64_t seed);

  const FittedModel& model() const { return *model_; }
  std::size_t sample_count() const { return n_; }

  // Sorted per-period pool of net-load draws.
  const std::vector<double>& net_pool(int t) const;

  // Pool of net(t+1) - net(t) coupled by the fitted adjacent-period copula.
  std::vector<double> ramp_pool(int t) const;

  // Pool of net(t_a) - net(t_b) under an arbitrary copula (peak-to-valley checks).
  std::vector<double> diff_pool(int t_a, int t_b, const GaussianCopula& cop) const;

  // One day's net-load vector via the latent Gaussian chain across periods.
  std::vector<double> sample_day(std::uint64_t day_index) const;

 private:
  const FittedModel* model_;
  std::size_t n_;
  std::uint64_t seed_;
  std::vector<std::vector<double>> nets_;  // [period], sorted
};

struct QuantityCheck {
  std::string name;
  double wasserstein1 = 0.0;
  double ks_stat = 0.0;
  double threshold = 0.0;  // W1 bound; <= 0 means informational only
  bool pass = true;
};

struct AreaCheck {
  double mou_mw = 0.0;
  double s_model_mwh = 0.0;
  double s_mc_mwh = 0.0;
  double rel_err = 0.0;
  double threshold = 0.0;
  bool pass = true;
};

struct OracleReport {
  std::uint64_t seed = 0;
  std::size_t sample_count = 0;
  double step_mw = 0.0;
  std::vector<QuantityCheck> pdc_checks;
  std::vector<QuantityCheck> prc_checks;
  std::vector<AreaCheck> area_checks;
  // Distance of each period's curve to the raw per-day history (no gating;
  // model misfit is not a numerical failure).
  std::vector<QuantityCheck> empirical;
  bool all_pass = true;
};

// Runs the full model-vs-Monte-Carlo comparison: every PDC and PRC period must
// be within 2 grid steps in Wasserstein-1 distance, and the curtailment area
// must agree with sampled expected curtailment within 3% at five MOU levels.
OracleReport run_validation(const FittedModel& model, const ProbCurve& pdc, const ProbCurve& prc,
                            std::size_t n, std::uint64_t seed);

}  // namespace pdc
