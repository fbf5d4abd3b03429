#include "pdc/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "pdc/errors.hpp"
#include "pdc/indices.hpp"
#include "pdc/normal.hpp"
#include "pdc/rng.hpp"

namespace pdc {

namespace {

// Substream layout: one stream per (period, role, index-within-role), so every
// draw is addressable and the whole simulation is order-independent.
enum StreamGroup : int {
  kPvLeaf = 0,
  kLoadLeaf = 1,
  kPvFold = 2,
  kLoadFold = 3,
  kPvLoad = 4,
  kAdjacent = 5,
  kDayChain = 6,
  kDiff = 7,
};

std::uint64_t stream_id(int t, int group, std::uint32_t k) {
  return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(t)) << 36) |
         (static_cast<std::uint64_t>(static_cast<std::uint32_t>(group)) << 32) |
         static_cast<std::uint64_t>(k);
}

double pool_quantile(const std::vector<double>& sorted, double u) {
  auto idx = static_cast<std::size_t>(u * static_cast<double>(sorted.size()));
  if (idx >= sorted.size()) idx = sorted.size() - 1;
  return sorted[idx];
}

// One block -> a dependent pair of uniforms via the latent Gaussian pair.
std::pair<double, double> coupled_uniforms(const GaussianCopula& c, std::uint64_t seed,
                                           std::uint64_t stream, std::uint64_t j) {
  const auto [u1, u2] = u01_pair_at(seed, stream, j);
  const double z2 = c.rho * normal_quantile(u1) +
                    std::sqrt(1.0 - c.rho * c.rho) * normal_quantile(u2);
  return {u1, normal_cdf(z2)};
}

std::vector<double> leaf_pool(const MarginalModel& m, bool clamp_zero, std::size_t n,
                              std::uint64_t seed, std::uint64_t stream) {
  std::vector<double> out(n, 0.0);
  if (m.zero_point_mass) return out;
#pragma omp parallel for schedule(static)
  for (std::int64_t j = 0; j < static_cast<std::int64_t>(n); ++j) {
    const auto [u1, u2] = u01_pair_at(seed, stream, static_cast<std::uint64_t>(j));
    double x = sample(m.kde, u1, normal_quantile(u2));
    if (clamp_zero && x < 0.0) x = 0.0;
    out[static_cast<std::size_t>(j)] = x;
  }
  return out;
}

// Fleet total: draw each series pool, then fold them together left to right,
// coupling each partial sum with the next series through the fitted copula and
// empirical quantile transforms. Returned sorted.
std::vector<double> fleet_pool(const std::vector<MarginalModel>& ms,
                               const std::vector<GaussianCopula>& folds, bool clamp_zero, int t,
                               int leaf_group, int fold_group, std::size_t n, std::uint64_t seed) {
  if (ms.empty()) return std::vector<double>(n, 0.0);
  std::vector<double> total = leaf_pool(ms[0], clamp_zero, n, seed, stream_id(t, leaf_group, 0));
  std::sort(total.begin(), total.end());
  for (std::size_t k = 1; k < ms.size(); ++k) {
    std::vector<double> leaf =
        leaf_pool(ms[k], clamp_zero, n, seed, stream_id(t, leaf_group, static_cast<std::uint32_t>(k)));
    std::sort(leaf.begin(), leaf.end());
    const GaussianCopula& c = folds.at(k - 1);
    const std::uint64_t stream = stream_id(t, fold_group, static_cast<std::uint32_t>(k - 1));
    std::vector<double> next(n);
#pragma omp parallel for schedule(static)
    for (std::int64_t j = 0; j < static_cast<std::int64_t>(n); ++j) {
      const auto [u, v] = coupled_uniforms(c, seed, stream, static_cast<std::uint64_t>(j));
      next[static_cast<std::size_t>(j)] = pool_quantile(total, u) + pool_quantile(leaf, v);
    }
    std::sort(next.begin(), next.end());
    total = std::move(next);
  }
  return total;
}

}  // namespace

double wasserstein1_sorted(const Dps& d, const std::vector<double>& sorted_samples) {
  if (d.size() == 0 || sorted_samples.empty()) throw TooFewSamples("empty distribution comparison");
  const std::size_t nb = d.size();
  const std::size_t ns = sorted_samples.size();
  const double inv_n = 1.0 / static_cast<double>(ns);
  double w = 0.0, f1 = 0.0, f2 = 0.0;
  std::size_t i = 0, j = 0;
  double x_prev = std::min(d.value(0), sorted_samples.front());
  while (i < nb || j < ns) {
    double x = std::numeric_limits<double>::infinity();
    if (i < nb) x = d.value(i);
    if (j < ns) x = std::min(x, sorted_samples[j]);
    w += std::abs(f1 - f2) * (x - x_prev);
    while (i < nb && d.value(i) <= x) f1 += d.masses[i++];
    while (j < ns && sorted_samples[j] <= x) ++j;
    f2 = static_cast<double>(j) * inv_n;
    x_prev = x;
  }
  return w;
}

double wasserstein1(const Dps& d, std::vector<double> samples) {
  std::sort(samples.begin(), samples.end());
  return wasserstein1_sorted(d, samples);
}

double ks_stat_sorted(const Dps& d, const std::vector<double>& sorted_samples) {
  if (d.size() == 0 || sorted_samples.empty()) throw TooFewSamples("empty distribution comparison");
  const std::size_t nb = d.size();
  const std::size_t ns = sorted_samples.size();
  const double inv_n = 1.0 / static_cast<double>(ns);
  double ks = 0.0, f1 = 0.0;
  std::size_t i = 0, j = 0;
  while (i < nb || j < ns) {
    double x = std::numeric_limits<double>::infinity();
    if (i < nb) x = d.value(i);
    if (j < ns) x = std::min(x, sorted_samples[j]);
    while (i < nb && d.value(i) <= x) f1 += d.masses[i++];
    while (j < ns && sorted_samples[j] <= x) ++j;
    ks = std::max(ks, std::abs(f1 - static_cast<double>(j) * inv_n));
  }
  return ks;
}

ModelSampler::ModelSampler(const FittedModel& model, std::size_t n, std::uint64_t seed)
    : model_(&model), n_(n), seed_(seed) {
  if (n == 0) throw TooFewSamples("sample count must be positive");
  const int T = model.periods_per_day;
  nets_.resize(static_cast<std::size_t>(T));
  for (int t = 0; t < T; ++t) {
    const PeriodModel& pm = model.period[static_cast<std::size_t>(t)];
    const std::vector<double> pv =
        fleet_pool(pm.pv, pm.pv_fold, /*clamp_zero=*/true, t, kPvLeaf, kPvFold, n_, seed_);
    const std::vector<double> load =
        fleet_pool(pm.load, pm.load_fold, /*clamp_zero=*/false, t, kLoadLeaf, kLoadFold, n_, seed_);
    std::vector<double> net(n_);
    const std::uint64_t stream = stream_id(t, kPvLoad, 0);
#pragma omp parallel for schedule(static)
    for (std::int64_t j = 0; j < static_cast<std::int64_t>(n_); ++j) {
      const auto [u, v] = coupled_uniforms(pm.pv_load, seed_, stream, static_cast<std::uint64_t>(j));
      net[static_cast<std::size_t>(j)] = pool_quantile(load, u) - pool_quantile(pv, v);
    }
    std::sort(net.begin(), net.end());
    nets_[static_cast<std::size_t>(t)] = std::move(net);
  }
}

const std::vector<double>& ModelSampler::net_pool(int t) const {
  if (t < 0 || t >= static_cast<int>(nets_.size())) throw PeriodOutOfRange("period out of range");
  return nets_[static_cast<std::size_t>(t)];
}

std::vector<double> ModelSampler::ramp_pool(int t) const {
  if (t < 0 || t + 1 >= static_cast<int>(nets_.size()))
    throw PeriodOutOfRange("ramp period out of range");
  const GaussianCopula& c = model_->adjacent.at(static_cast<std::size_t>(t));
  const std::vector<double>& hi = nets_[static_cast<std::size_t>(t) + 1];
  const std::vector<double>& lo = nets_[static_cast<std::size_t>(t)];
  std::vector<double> out(n_);
  const std::uint64_t stream = stream_id(t, kAdjacent, 0);
#pragma omp parallel for schedule(static)
  for (std::int64_t j = 0; j < static_cast<std::int64_t>(n_); ++j) {
    const auto [u, v] = coupled_uniforms(c, seed_, stream, static_cast<std::uint64_t>(j));
    out[static_cast<std::size_t>(j)] = pool_quantile(hi, u) - pool_quantile(lo, v);
  }
  return out;
}

std::vector<double> ModelSampler::diff_pool(int t_a, int t_b, const GaussianCopula& cop) const {
  if (t_a < 0 || t_a >= static_cast<int>(nets_.size()) || t_b < 0 ||
      t_b >= static_cast<int>(nets_.size()))
    throw PeriodOutOfRange("period out of range");
  const std::vector<double>& a = nets_[static_cast<std::size_t>(t_a)];
  const std::vector<double>& b = nets_[static_cast<std::size_t>(t_b)];
  std::vector<double> out(n_);
  const std::uint64_t stream = stream_id(t_a, kDiff, static_cast<std::uint32_t>(t_b));
#pragma omp parallel for schedule(static)
  for (std::int64_t j = 0; j < static_cast<std::int64_t>(n_); ++j) {
    const auto [u, v] = coupled_uniforms(cop, seed_, stream, static_cast<std::uint64_t>(j));
    out[static_cast<std::size_t>(j)] = pool_quantile(a, u) - pool_quantile(b, v);
  }
  return out;
}

std::vector<double> ModelSampler::sample_day(std::uint64_t day_index) const {
  const int T = static_cast<int>(nets_.size());
  std::vector<double> out(static_cast<std::size_t>(T));
  double z = normal_quantile(u01_pair_at(seed_, stream_id(0, kDayChain, 0), day_index).first);
  out[0] = pool_quantile(nets_[0], normal_cdf(z));
  for (int t = 0; t + 1 < T; ++t) {
    const double rho = model_->adjacent.at(static_cast<std::size_t>(t)).rho;
    const double zeta =
        normal_quantile(u01_pair_at(seed_, stream_id(t + 1, kDayChain, 0), day_index).first);
    z = rho * z + std::sqrt(1.0 - rho * rho) * zeta;
    out[static_cast<std::size_t>(t) + 1] = pool_quantile(nets_[static_cast<std::size_t>(t) + 1],
                                                         normal_cdf(z));
  }
  return out;
}

OracleReport run_validation(const FittedModel& model, const ProbCurve& pdc, const ProbCurve& prc,
                            std::size_t n, std::uint64_t seed) {
  OracleReport rep;
  rep.seed = seed;
  rep.sample_count = n;
  rep.step_mw = pdc.step;

  const ModelSampler sampler(model, n, seed);
  const int T = model.periods_per_day;

  for (int t = 0; t < T; ++t) {
    const std::vector<double>& pool = sampler.net_pool(t);
    QuantityCheck q;
    q.name = "net_t" + std::to_string(t);
    q.wasserstein1 = wasserstein1_sorted(pdc.periods[static_cast<std::size_t>(t)], pool);
    q.ks_stat = ks_stat_sorted(pdc.periods[static_cast<std::size_t>(t)], pool);
    q.threshold = 2.0 * pdc.step;
    q.pass = q.wasserstein1 <= q.threshold;
    rep.pdc_checks.push_back(q);
  }

  for (int t = 0; t + 1 < T; ++t) {
    std::vector<double> pool = sampler.ramp_pool(t);
    std::sort(pool.begin(), pool.end());
    QuantityCheck q;
    q.name = "ramp_t" + std::to_string(t);
    q.wasserstein1 = wasserstein1_sorted(prc.periods[static_cast<std::size_t>(t)], pool);
    q.ks_stat = ks_stat_sorted(prc.periods[static_cast<std::size_t>(t)], pool);
    q.threshold = 2.0 * prc.step;
    q.pass = q.wasserstein1 <= q.threshold;
    rep.prc_checks.push_back(q);
  }

  // Curtailment-area agreement, probed at quantiles of the lowest-mean period
  // so every level sits inside the meaningful MOU range.
  int trough = 0;
  double best = pdc.periods[0].mean();
  for (int t = 1; t < T; ++t) {
    const double m = pdc.periods[static_cast<std::size_t>(t)].mean();
    if (m < best) {
      best = m;
      trough = t;
    }
  }
  const Dps& base = pdc.periods[static_cast<std::size_t>(trough)];
  for (const double p : {0.2, 0.35, 0.5, 0.65, 0.8}) {
    const double mou = base.quantile(p);
    AreaCheck a;
    a.mou_mw = mou;
    a.s_model_mwh = probabilistic_area(pdc, mou, model.period_hours).s_mwh;
    double s_mc = 0.0;
    for (int t = 0; t < T; ++t) {
      const std::vector<double>& pool = sampler.net_pool(t);
      double acc = 0.0;
      for (const double x : pool)
        if (x < mou) acc += mou - x;
      s_mc += acc / static_cast<double>(n);
    }
    a.s_mc_mwh = s_mc * model.period_hours;
    a.rel_err = std::abs(a.s_model_mwh - a.s_mc_mwh) / std::max(std::abs(a.s_mc_mwh), 1e-12);
    a.threshold = 0.03;
    a.pass = a.rel_err <= a.threshold;
    rep.area_checks.push_back(a);
  }

  // Informational: distance from the curve to the raw per-day history.
  for (int t = 0; t < T; ++t) {
    QuantityCheck q;
    q.name = "net_t" + std::to_string(t) + "_vs_history";
    q.wasserstein1 =
        wasserstein1(pdc.periods[static_cast<std::size_t>(t)], model.net_samples[static_cast<std::size_t>(t)]);
    std::vector<double> sorted = model.net_samples[static_cast<std::size_t>(t)];
    std::sort(sorted.begin(), sorted.end());
    q.ks_stat = ks_stat_sorted(pdc.periods[static_cast<std::size_t>(t)], sorted);
    q.threshold = 0.0;
    q.pass = true;
    rep.empirical.push_back(q);
  }

  rep.all_pass = true;
  for (const auto& q : rep.pdc_checks) rep.all_pass = rep.all_pass && q.pass;
  for (const auto& q : rep.prc_checks) rep.all_pass = rep.all_pass && q.pass;
  for (const auto& a : rep.area_checks) rep.all_pass = rep.all_pass && a.pass;
  return rep;
}

}  // namespace pdc
