#include "pdc/dps.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "pdc/normal.hpp"

namespace pdc {

namespace {

constexpr double kTailQuantile = 1e-5;
constexpr double kTrim = 1e-12;
constexpr double kU01Clamp = 1e-10;

void check_steps(const Dps& a, const Dps& b) {
  const double tol = 1e-9 * std::max(a.step, b.step);
  if (std::fabs(a.step - b.step) > tol)
    throw StepMismatch("ddc: grid steps differ");
}

Dps shifted(const Dps& a, double delta) {
  Dps out = a;
  out.origin += delta;
  return out;
}

// Normalizes, trims end bins below kTrim, renormalizes.
void finalize(Dps& d) {
  double sum = 0.0;
  for (double m : d.masses) sum += m;
  for (double& m : d.masses) m /= sum;
  std::size_t lo = 0, hi = d.masses.size();
  while (hi - lo > 1 && d.masses[lo] < kTrim) ++lo;
  while (hi - lo > 1 && d.masses[hi - 1] < kTrim) --hi;
  if (lo > 0 || hi < d.masses.size()) {
    d.origin += d.step * static_cast<double>(lo);
    d.masses = std::vector<double>(d.masses.begin() + static_cast<std::ptrdiff_t>(lo),
                                   d.masses.begin() + static_cast<std::ptrdiff_t>(hi));
    double s2 = 0.0;
    for (double m : d.masses) s2 += m;
    for (double& m : d.masses) m /= s2;
  }
}

// Latent-normal scores of the per-bin mass centers: Phi^-1 of the cumulative
// up to the middle of each bin, clamped away from 0 and 1. Evaluating at the
// mass center keeps the copula density finite at the end bins, where the
// inclusive cumulative would be exactly 1.
void center_scores(const std::vector<double>& masses, std::vector<double>& gamma) {
  gamma.resize(masses.size());
  double cum = 0.0;
  for (std::size_t i = 0; i < masses.size(); ++i) {
    const double mid = cum + 0.5 * masses[i];
    gamma[i] = normal_quantile(std::clamp(mid, kU01Clamp, 1.0 - kU01Clamp));
    cum += masses[i];
  }
}

}  // namespace

double Dps::mean() const {
  double acc = 0.0;
  for (std::size_t i = 0; i < masses.size(); ++i) acc += masses[i] * value(i);
  return acc;
}

double Dps::variance() const {
  const double mu = mean();
  double acc = 0.0;
  for (std::size_t i = 0; i < masses.size(); ++i) {
    const double d = value(i) - mu;
    acc += masses[i] * d * d;
  }
  return acc;
}

double Dps::quantile(double q) const {
  if (!(q > 0.0 && q < 1.0)) throw ProbabilityOutOfRange("Dps::quantile: q must be in (0,1)");
  double cum = 0.0;
  for (std::size_t i = 0; i < masses.size(); ++i) {
    cum += masses[i];
    if (cum >= q) return value(i);
  }
  return top();
}

Dps point_mass(double value, double step) {
  Dps d;
  d.origin = value;
  d.step = step;
  d.masses = {1.0};
  return d;
}

Dps discretize(const KdeModel& m, double step) {
  if (!(step > 0.0)) throw StepTooCoarse("discretize: step must be positive");
  const double q_lo = inverse_cdf(m, kTailQuantile);
  const double q_hi = inverse_cdf(m, 1.0 - kTailQuantile);
  const long long lo_idx = static_cast<long long>(std::floor(q_lo / step));
  const long long hi_idx = static_cast<long long>(std::ceil(q_hi / step));
  const long long nbins = hi_idx - lo_idx + 1;
  if (nbins < 3) throw StepTooCoarse("discretize: fewer than 3 bins in support");

  Dps d;
  d.step = step;
  d.origin = static_cast<double>(lo_idx) * step;
  d.masses.resize(static_cast<std::size_t>(nbins));
  for (long long i = 0; i < nbins; ++i) {
    const double center = d.origin + step * static_cast<double>(i);
    d.masses[static_cast<std::size_t>(i)] =
        cdf(m, center + 0.5 * step) - cdf(m, center - 0.5 * step);
  }
  d.masses.front() += cdf(m, d.origin - 0.5 * step);
  d.masses.back() += 1.0 - cdf(m, d.top() + 0.5 * step);
  finalize(d);
  return d;
}

Dps negate(const Dps& a) {
  Dps out;
  out.step = a.step;
  out.origin = -a.top();
  out.masses.assign(a.masses.rbegin(), a.masses.rend());
  return out;
}

Dps fold_below_zero(const Dps& a) {
  if (a.origin >= 0.0) return a;
  const long long zero_idx = static_cast<long long>(std::llround(-a.origin / a.step));
  if (zero_idx >= static_cast<long long>(a.masses.size()))
    throw LengthMismatch("fold_below_zero: support entirely negative");
  Dps out;
  out.step = a.step;
  out.origin = 0.0;
  out.masses.assign(a.masses.begin() + zero_idx, a.masses.end());
  for (long long i = 0; i < zero_idx; ++i) out.masses.front() += a.masses[static_cast<std::size_t>(i)];
  return out;
}

Dps ddc_add(const Dps& a, const Dps& b, const GaussianCopula& cop, DdcInfo* info) {
  check_steps(a, b);
  if (info) *info = DdcInfo{1.0, false};
  if (a.size() == 1) return shifted(b, a.origin);
  if (b.size() == 1) return shifted(a, b.origin);

  std::vector<double> ga, gb;
  center_scores(a.masses, ga);
  center_scores(b.masses, gb);
  std::vector<double> ga2(ga.size()), gb2(gb.size());
  for (std::size_t i = 0; i < ga.size(); ++i) ga2[i] = ga[i] * ga[i];
  for (std::size_t i = 0; i < gb.size(); ++i) gb2[i] = gb[i] * gb[i];

  const double rho = cop.rho;
  const double one_m = 1.0 - rho * rho;
  const double inv2 = 1.0 / (2.0 * one_m);
  const double pref = 1.0 / std::sqrt(one_m);

  const long long na = static_cast<long long>(a.size());
  const long long nb = static_cast<long long>(b.size());
  const long long nout = na + nb - 1;
  std::vector<double> out(static_cast<std::size_t>(nout), 0.0);

#ifdef _OPENMP
#pragma omp parallel for schedule(static) if (nout >= 512 && !omp_in_parallel())
#endif
  for (long long i = 0; i < nout; ++i) {
    const long long ia_lo = std::max(0ll, i - (nb - 1));
    const long long ia_hi = std::min(na - 1, i);
    double acc = 0.0;
    for (long long ia = ia_lo; ia <= ia_hi; ++ia) {
      const long long ib = i - ia;
      const double expo =
          -(rho * rho * (ga2[static_cast<std::size_t>(ia)] + gb2[static_cast<std::size_t>(ib)]) -
            2.0 * rho * ga[static_cast<std::size_t>(ia)] * gb[static_cast<std::size_t>(ib)]) *
          inv2;
      acc += pref * std::exp(expo) * a.masses[static_cast<std::size_t>(ia)] *
             b.masses[static_cast<std::size_t>(ib)];
    }
    out[static_cast<std::size_t>(i)] = acc;
  }

  Dps d;
  d.step = a.step;
  d.origin = a.origin + b.origin;
  d.masses = std::move(out);
  double prenorm = 0.0;
  for (double m : d.masses) prenorm += m;
  const bool warn = std::fabs(prenorm - 1.0) > 0.05;
  if (info) *info = DdcInfo{prenorm, warn};
  if (warn)
    std::fprintf(stderr, "ddc_add: pre-normalization mass %.6f deviates from 1\n", prenorm);
  finalize(d);
  return d;
}

Dps ddc_add_reference(const Dps& a, const Dps& b, const GaussianCopula& cop, DdcInfo* info) {
  check_steps(a, b);
  if (info) *info = DdcInfo{1.0, false};
  if (a.size() == 1) return shifted(b, a.origin);
  if (b.size() == 1) return shifted(a, b.origin);

  std::vector<double> fa(a.size()), fb(b.size());
  double cum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    fa[i] = cum + 0.5 * a.masses[i];
    cum += a.masses[i];
  }
  cum = 0.0;
  for (std::size_t i = 0; i < b.size(); ++i) {
    fb[i] = cum + 0.5 * b.masses[i];
    cum += b.masses[i];
  }

  Dps d;
  d.step = a.step;
  d.origin = a.origin + b.origin;
  d.masses.assign(a.size() + b.size() - 1, 0.0);
  for (std::size_t ia = 0; ia < a.size(); ++ia) {
    for (std::size_t ib = 0; ib < b.size(); ++ib) {
      d.masses[ia + ib] += density(cop, fa[ia], fb[ib]) * a.masses[ia] * b.masses[ib];
    }
  }
  double prenorm = 0.0;
  for (double m : d.masses) prenorm += m;
  const bool warn = std::fabs(prenorm - 1.0) > 0.05;
  if (info) *info = DdcInfo{prenorm, warn};
  finalize(d);
  return d;
}

Dps ddc_sub(const Dps& a, const Dps& b, const GaussianCopula& cop, DdcInfo* info) {
  return ddc_add(a, negate(b), negate(cop), info);
}

double expected_shortfall_below(const Dps& a, double level) {
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double v = a.value(i);
    if (v < level) acc += a.masses[i] * (level - v);
  }
  return acc;
}

}  // namespace pdc
