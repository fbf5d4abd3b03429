#pragma once

#include <vector>

#include "pdc/errors.hpp"

namespace pdc {

// One-dimensional Gaussian kernel density estimate over historical samples.
struct KdeModel {
  std::vector<double> samples;
  double bandwidth = 0.0;  // MW
};

// Fits the bandwidth with the rule-of-thumb h = 0.9 * min(sd, iqr/1.34) * L^(-1/5),
// floored at max(1e-6, 1e-3 * (max - min + 1e-6)) so degenerate samples stay usable.
// Throws TooFewSamples (L < 2) or NonFiniteInput.
KdeModel fit_kde(std::vector<double> samples);

// Density (1/(L*h)) * sum K((x - X_i)/h).
double pdf(const KdeModel& m, double x);

// CDF (1/L) * sum Phi((x - X_i)/h); monotone, limits 0 and 1.
double cdf(const KdeModel& m, double x);

// Smallest x with |cdf(x) - p| <= 1e-10, by bracketed bisection.
// Throws ProbabilityOutOfRange unless 0 < p < 1.
double inverse_cdf(const KdeModel& m, double p);

// Deterministic draw: picks sample floor(u*L) and perturbs it by bandwidth * z.
// u in (0,1), z a standard normal.
double sample(const KdeModel& m, double u, double z);

}  // namespace pdc
