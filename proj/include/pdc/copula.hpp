#pragma once

#include <utility>
#include <vector>

#include "pdc/errors.hpp"
#include "pdc/rng.hpp"

namespace pdc {

enum class CopulaFamily { gaussian };

// Tie-adjusted Kendall rank correlation. `degenerate` flags inputs where every
// x or every y is tied (tau is then reported as 0).
struct TauResult {
  double tau = 0.0;
  bool degenerate = false;
};

// O(n log n) merge-sort pair counting with tie adjustment.
// Throws LengthMismatch, TooFewSamples (n < 2), NonFiniteInput.
TauResult kendall_tau(const std::vector<double>& x, const std::vector<double>& y);

// Bivariate Gaussian copula parameterized by Kendall tau; rho = sin(pi*tau/2),
// clamped to [-0.9999, 0.9999].
struct GaussianCopula {
  CopulaFamily family = CopulaFamily::gaussian;
  double tau = 0.0;
  double rho = 0.0;
};

GaussianCopula copula_from_tau(double tau);

// Rank-fits tau on paired samples and maps it to rho.
GaussianCopula fit_copula(const std::vector<double>& x, const std::vector<double>& y);

// Copula density c(u, v); u and v are clamped to [1e-10, 1 - 1e-10] first.
double density(const GaussianCopula& c, double u, double v);

// Copula of (X, -Y): flips the sign of tau and rho.
GaussianCopula negate(const GaussianCopula& c);

// Draws (u, v) with the copula's dependence via the latent Gaussian pair.
std::pair<double, double> sample_pair(const GaussianCopula& c, CounterRng& rng);

}  // namespace pdc
