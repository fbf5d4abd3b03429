#include "pdc/copula.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numeric>

#include "pdc/normal.hpp"

namespace pdc {

namespace {

constexpr double kPi = 3.1415926535897932385;
constexpr double kRhoCap = 0.9999;
constexpr double kU01Clamp = 1e-10;

// Counts strict inversions of `v` (pairs i < j with v[i] > v[j]) by merge sort.
std::uint64_t count_inversions(std::vector<double>& v, std::vector<double>& scratch) {
  const std::size_t n = v.size();
  std::uint64_t inv = 0;
  for (std::size_t width = 1; width < n; width *= 2) {
    for (std::size_t lo = 0; lo + width < n; lo += 2 * width) {
      const std::size_t mid = lo + width;
      const std::size_t hi = std::min(lo + 2 * width, n);
      std::size_t i = lo, j = mid, k = lo;
      while (i < mid && j < hi) {
        if (v[i] <= v[j]) {
          scratch[k++] = v[i++];
        } else {
          inv += mid - i;
          scratch[k++] = v[j++];
        }
      }
      while (i < mid) scratch[k++] = v[i++];
      while (j < hi) scratch[k++] = v[j++];
      std::copy(scratch.begin() + static_cast<std::ptrdiff_t>(lo),
                scratch.begin() + static_cast<std::ptrdiff_t>(hi),
                v.begin() + static_cast<std::ptrdiff_t>(lo));
    }
  }
  return inv;
}

// Sum over runs of equal values of run*(run-1)/2, i.e. the number of tied pairs.
template <typename Eq>
std::uint64_t tied_pairs(std::size_t n, Eq equal_at) {
  std::uint64_t total = 0;
  std::size_t run = 1;
  for (std::size_t i = 1; i <= n; ++i) {
    if (i < n && equal_at(i)) {
      ++run;
    } else {
      total += static_cast<std::uint64_t>(run) * (run - 1) / 2;
      run = 1;
    }
  }
  return total;
}

}  // namespace

TauResult kendall_tau(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size()) throw LengthMismatch("kendall_tau: length mismatch");
  const std::size_t n = x.size();
  if (n < 2) throw TooFewSamples("kendall_tau: need at least 2 pairs");
  for (std::size_t i = 0; i < n; ++i) {
    if (!std::isfinite(x[i]) || !std::isfinite(y[i]))
      throw NonFiniteInput("kendall_tau: non-finite input");
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (x[a] != x[b]) return x[a] < x[b];
    return y[a] < y[b];
  });

  std::vector<double> ys(n);
  for (std::size_t i = 0; i < n; ++i) ys[i] = y[order[i]];

  const std::uint64_t tot = static_cast<std::uint64_t>(n) * (n - 1) / 2;
  const std::uint64_t tx =
      tied_pairs(n, [&](std::size_t i) { return x[order[i]] == x[order[i - 1]]; });
  const std::uint64_t txy = tied_pairs(n, [&](std::size_t i) {
    return x[order[i]] == x[order[i - 1]] && y[order[i]] == y[order[i - 1]];
  });

  std::vector<double> y_sorted = ys;
  std::sort(y_sorted.begin(), y_sorted.end());
  const std::uint64_t ty =
      tied_pairs(n, [&](std::size_t i) { return y_sorted[i] == y_sorted[i - 1]; });

  TauResult r;
  if (tx == tot || ty == tot) {
    r.degenerate = true;
    return r;  // all x or all y tied; rank dependence undefined
  }

  // Sorting by (x, y asc) makes inversions of the y-sequence exactly the
  // discordant pairs: x-tied pairs are already ascending in y, y-tied pairs
  // are never counted by the strict comparison.
  std::vector<double> scratch(n);
  const std::uint64_t discordant = count_inversions(ys, scratch);

  const double num = static_cast<double>(tot) - static_cast<double>(tx) -
                     static_cast<double>(ty) + static_cast<double>(txy) -
                     2.0 * static_cast<double>(discordant);
  // Single square root of the product: with perfectly concordant inputs the
  // product is an exact square, so tau comes out as exactly +/-1.
  const double den =
      std::sqrt(static_cast<double>(tot - tx) * static_cast<double>(tot - ty));
  r.tau = std::clamp(num / den, -1.0, 1.0);
  return r;
}

GaussianCopula copula_from_tau(double tau) {
  GaussianCopula c;
  c.tau = tau;
  c.rho = std::clamp(std::sin(kPi * tau / 2.0), -kRhoCap, kRhoCap);
  return c;
}

GaussianCopula fit_copula(const std::vector<double>& x, const std::vector<double>& y) {
  return copula_from_tau(kendall_tau(x, y).tau);
}

double density(const GaussianCopula& c, double u, double v) {
  u = std::clamp(u, kU01Clamp, 1.0 - kU01Clamp);
  v = std::clamp(v, kU01Clamp, 1.0 - kU01Clamp);
  const double rho = c.rho;
  const double g1 = normal_quantile(u);
  const double g2 = normal_quantile(v);
  const double one_m = 1.0 - rho * rho;
  const double expo = -(rho * rho * (g1 * g1 + g2 * g2) - 2.0 * rho * g1 * g2) / (2.0 * one_m);
  return std::exp(expo) / std::sqrt(one_m);
}

GaussianCopula negate(const GaussianCopula& c) {
  GaussianCopula out = c;
  out.tau = -c.tau;
  out.rho = -c.rho;
  return out;
}

std::pair<double, double> sample_pair(const GaussianCopula& c, CounterRng& rng) {
  const double z1 = rng.normal();
  const double z2 = c.rho * z1 + std::sqrt(1.0 - c.rho * c.rho) * rng.normal();
  return {normal_cdf(z1), normal_cdf(z2)};
}

}  // namespace pdc
