#include "pdc/kde.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>

#include "pdc/normal.hpp"

namespace pdc {

namespace {

double sample_sd(const std::vector<double>& xs) {
  const std::size_t n = xs.size();
  double mean = 0.0;
  for (double x : xs) mean += x;
  mean /= static_cast<double>(n);
  double ss = 0.0;
  for (double x : xs) ss += (x - mean) * (x - mean);
  return std::sqrt(ss / static_cast<double>(n - 1));
}

// Linear-interpolation quantile of a sorted sample (position (n-1)*p).
double sorted_quantile(const std::vector<double>& sorted, double p) {
  const double pos = p * static_cast<double>(sorted.size() - 1);
  const std::size_t lo = static_cast<std::size_t>(pos);
  if (lo + 1 >= sorted.size()) return sorted.back();
  const double frac = pos - static_cast<double>(lo);
  return sorted[lo] + frac * (sorted[lo + 1] - sorted[lo]);
}

}  // namespace

KdeModel fit_kde(std::vector<double> samples) {
  if (samples.size() < 2) throw TooFewSamples("fit_kde: need at least 2 samples");
  for (double x : samples) {
    if (!std::isfinite(x)) throw NonFiniteInput("fit_kde: non-finite sample");
  }
  std::vector<double> sorted = samples;
  std::sort(sorted.begin(), sorted.end());
  const double sd = sample_sd(samples);
  const double iqr = sorted_quantile(sorted, 0.75) - sorted_quantile(sorted, 0.25);
  const double spread = std::min(sd, iqr / 1.34);
  const double l = static_cast<double>(samples.size());
  const double h_rule = 0.9 * spread * std::pow(l, -0.2);
  const double h_floor = std::max(1e-6, 1e-3 * (sorted.back() - sorted.front() + 1e-6));
  KdeModel m;
  m.samples = std::move(samples);
  m.bandwidth = std::max(h_rule, h_floor);
  return m;
}

double pdf(const KdeModel& m, double x) {
  const double h = m.bandwidth;
  double acc = 0.0;
  for (double xi : m.samples) acc += normal_pdf((x - xi) / h);
  return acc / (static_cast<double>(m.samples.size()) * h);
}

double cdf(const KdeModel& m, double x) {
  const double h = m.bandwidth;
  double acc = 0.0;
  for (double xi : m.samples) acc += normal_cdf((x - xi) / h);
  return acc / static_cast<double>(m.samples.size());
}

double inverse_cdf(const KdeModel& m, double p) {
  if (!(p > 0.0 && p < 1.0)) throw ProbabilityOutOfRange("inverse_cdf: p must be in (0,1)");
  const auto [mn, mx] = std::minmax_element(m.samples.begin(), m.samples.end());
  double lo = *mn - 10.0 * m.bandwidth;
  double hi = *mx + 10.0 * m.bandwidth;
  // Widen until the bracket straddles p; the CDF is strictly increasing.
  double width = hi - lo + 1.0;
  while (cdf(m, lo) > p) lo -= width;
  while (cdf(m, hi) < p) hi += width;
  double mid = 0.5 * (lo + hi);
  for (int it = 0; it < 400; ++it) {
    mid = 0.5 * (lo + hi);
    const double c = cdf(m, mid);
    if (std::fabs(c - p) <= 1e-10) return mid;
    if (c < p) {
      lo = mid;
    } else {
      hi = mid;
    }
    if (hi - lo <= 1e-15 * (std::fabs(lo) + std::fabs(hi) + 1.0)) break;
  }
  return mid;
}

double sample(const KdeModel& m, double u, double z) {
  const std::size_t n = m.samples.size();
  std::size_t idx = static_cast<std::size_t>(u * static_cast<double>(n));
  if (idx >= n) idx = n - 1;
  return m.samples[idx] + m.bandwidth * z;
}

}  // namespace pdc
