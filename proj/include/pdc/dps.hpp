#pragma once

#include <cstddef>
#include <vector>

#include "pdc/copula.hpp"
#include "pdc/errors.hpp"
#include "pdc/kde.hpp"

namespace pdc {

// Discrete probability sequence: probability masses on a uniform MW grid.
// Invariants: step > 0, masses nonnegative and summing to 1 (within 1e-9),
// first and last mass strictly positive.
struct Dps {
  double origin = 0.0;  // MW value of masses[0]
  double step = 1.0;    // MW spacing
  std::vector<double> masses;

  std::size_t size() const { return masses.size(); }
  double value(std::size_t i) const { return origin + step * static_cast<double>(i); }
  double top() const { return value(masses.size() - 1); }

  double mean() const;
  double variance() const;
  // Smallest grid value whose cumulative mass reaches q. q in (0,1).
  double quantile(double q) const;
};

// Single bin of mass 1 at `value`.
Dps point_mass(double value, double step);

// Projects a KDE onto the grid: support [q(1e-5), q(1-1e-5)] snapped outward
// to multiples of step, bin mass = cdf difference across the bin, residual
// tails folded into the end bins, then normalized.
// Throws StepTooCoarse if the snapped support has fewer than 3 bins.
Dps discretize(const KdeModel& m, double step);

// Distribution of -X: reversed masses, origin = -(old top value).
Dps negate(const Dps& a);

// Moves any mass at negative grid values into the bin at 0 MW
// (used for PV quantities, which cannot be negative).
Dps fold_below_zero(const Dps& a);

// Diagnostics from a dependent convolution.
struct DdcInfo {
  double prenorm_sum = 0.0;   // mass before renormalization
  bool renorm_warning = false;  // |prenorm_sum - 1| > 0.05
};

// Dependent discrete convolution: distribution of X + Y where X ~ a, Y ~ b and
// the pair is coupled by the Gaussian copula. Each cell contributes
// c_density(F_a(ia), F_b(ib)) * a(ia) * b(ib) to the output bin ia + ib; the
// result is renormalized and trailing masses below 1e-12 are trimmed.
// A single-bin operand is a constant, so it shifts the other operand exactly.
// Throws StepMismatch if grid steps differ.
Dps ddc_add(const Dps& a, const Dps& b, const GaussianCopula& cop, DdcInfo* info = nullptr);

// Straightforward textbook loop kept as the reference for the optimized kernel.
Dps ddc_add_reference(const Dps& a, const Dps& b, const GaussianCopula& cop,
                      DdcInfo* info = nullptr);

// Distribution of X - Y: ddc_add(a, negate(b), negate(cop)).
Dps ddc_sub(const Dps& a, const Dps& b, const GaussianCopula& cop, DdcInfo* info = nullptr);

// E[max(0, level - X)]: mass-weighted distance of bins strictly below `level`.
double expected_shortfall_below(const Dps& a, double level);

}  // namespace pdc
