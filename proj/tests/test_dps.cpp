#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "pdc/dps.hpp"
#include "pdc/normal.hpp"
#include "pdc/oracle.hpp"
#include "pdc/rng.hpp"

using namespace pdc;

namespace {

Dps make(double origin, double step, std::vector<double> masses) {
  return Dps{origin, step, std::move(masses)};
}

// Independent convolution, written the obvious way.
Dps plain_conv(const Dps& a, const Dps& b) {
  std::vector<double> out(a.size() + b.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a.masses[i] * b.masses[j];
  return Dps{a.origin + b.origin, a.step, std::move(out)};
}

// Largest |mass difference| across the union of both supports.
double max_abs_diff(const Dps& a, const Dps& b) {
  const std::int64_t off = std::llround((b.origin - a.origin) / a.step);
  double worst = 0.0;
  const std::int64_t n = std::max<std::int64_t>(static_cast<std::int64_t>(a.size()),
                                                off + static_cast<std::int64_t>(b.size()));
  const std::int64_t lo = std::min<std::int64_t>(0, off);
  for (std::int64_t i = lo; i < n; ++i) {
    const double ma = (i >= 0 && i < static_cast<std::int64_t>(a.size())) ? a.masses[i] : 0.0;
    const std::int64_t j = i - off;
    const double mb = (j >= 0 && j < static_cast<std::int64_t>(b.size())) ? b.masses[j] : 0.0;
    worst = std::max(worst, std::abs(ma - mb));
  }
  return worst;
}

Dps random_dps(std::uint64_t seed, std::uint64_t stream, double step) {
  CounterRng rng(seed, stream);
  const std::size_t n = 20 + static_cast<std::size_t>(rng.u01() * 120);
  std::vector<double> m(n);
  double s = 0.0;
  for (auto& x : m) {
    x = rng.u01();
    s += x;
  }
  for (auto& x : m) x /= s;
  const double origin = (rng.u01() - 0.5) * 300.0;
  return Dps{origin, step, std::move(m)};
}

}  // namespace

TEST_CASE("moments and quantiles of a small sequence") {
  const Dps d = make(0.0, 100.0, {0.2, 0.3, 0.5});
  CHECK(d.mean() == doctest::Approx(0.3 * 100 + 0.5 * 200).epsilon(1e-15));
  CHECK(d.variance() == doctest::Approx(0.2 * 130 * 130 + 0.3 * 30 * 30 + 0.5 * 70 * 70)
                            .epsilon(1e-12));
  CHECK(d.value(2) == 200.0);
  CHECK(d.top() == 200.0);
}

TEST_CASE("quantile picks the smallest value whose cumulative mass reaches q") {
  const Dps d = make(0.0, 100.0, {0.2, 0.3, 0.5});
  // The first two masses sum to exactly one half in binary arithmetic, so the
  // 0.5-quantile must land on the second bin, not the third.
  REQUIRE(0.2 + 0.3 == 0.5);
  CHECK(d.quantile(0.5) == 100.0);
  CHECK(d.quantile(std::nextafter(0.5, 1.0)) == 200.0);
  CHECK(d.quantile(0.1) == 0.0);
  CHECK(d.quantile(0.2) == 0.0);
  CHECK(d.quantile(std::nextafter(0.2, 1.0)) == 100.0);
  CHECK(d.quantile(0.9999) == 200.0);
  CHECK_THROWS_AS(d.quantile(0.0), ProbabilityOutOfRange);
  CHECK_THROWS_AS(d.quantile(1.0), ProbabilityOutOfRange);
}

TEST_CASE("shortfall below a level is the mass-weighted gap") {
  const Dps d = make(0.0, 100.0, {0.2, 0.3, 0.5});
  CHECK(expected_shortfall_below(d, 150.0) == 45.0);
  CHECK(expected_shortfall_below(d, 0.0) == 0.0);     // nothing strictly below
  CHECK(expected_shortfall_below(d, -50.0) == 0.0);
  CHECK(expected_shortfall_below(d, 100.0) == 0.2 * 100.0);
  CHECK(expected_shortfall_below(d, 1000.0) ==
        doctest::Approx(0.2 * 1000 + 0.3 * 900 + 0.5 * 800).epsilon(1e-15));
}

TEST_CASE("point mass behaves as a constant") {
  const Dps p = point_mass(42.5, 0.5);
  CHECK(p.size() == 1);
  CHECK(p.mean() == 42.5);
  CHECK(p.variance() == 0.0);
  CHECK(p.quantile(0.001) == 42.5);
  CHECK(p.quantile(0.999) == 42.5);
}

TEST_CASE("negation mirrors the support") {
  const Dps d = make(10.0, 5.0, {0.1, 0.2, 0.7});
  const Dps n = negate(d);
  CHECK(n.origin == -20.0);
  CHECK(n.top() == -10.0);
  CHECK(n.masses == std::vector<double>{0.7, 0.2, 0.1});
  const Dps back = negate(n);
  CHECK(back.origin == d.origin);
  CHECK(back.masses == d.masses);
}

TEST_CASE("negative support folds into the zero bin") {
  const Dps d = make(-10.0, 10.0, {0.25, 0.25, 0.5});
  const Dps f = fold_below_zero(d);
  CHECK(f.origin == 0.0);
  CHECK(f.masses == std::vector<double>{0.5, 0.5});
  // Entirely nonnegative input is returned unchanged.
  const Dps g = make(0.0, 10.0, {0.5, 0.5});
  const Dps h = fold_below_zero(g);
  CHECK(h.origin == 0.0);
  CHECK(h.masses == g.masses);
}

TEST_CASE("independent convolution of two coins") {
  const Dps coin = make(0.0, 1.0, {0.5, 0.5});
  const Dps sum = ddc_add(coin, coin, copula_from_tau(0.0));
  CHECK(sum.origin == 0.0);
  REQUIRE(sum.size() == 3);
  CHECK(sum.masses[0] == doctest::Approx(0.25).epsilon(1e-14));
  CHECK(sum.masses[1] == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(sum.masses[2] == doctest::Approx(0.25).epsilon(1e-14));
}

TEST_CASE("zero-dependence convolution equals the plain convolution") {
  const GaussianCopula ind = copula_from_tau(0.0);
  for (std::uint64_t rep = 0; rep < 5; ++rep) {
    const Dps a = random_dps(100 + rep, 0, 2.5);
    const Dps b = random_dps(100 + rep, 1, 2.5);
    DdcInfo info;
    const Dps got = ddc_add(a, b, ind, &info);
    const Dps want = plain_conv(a, b);
    CHECK(max_abs_diff(got, want) <= 1e-12);
    CHECK(info.prenorm_sum == doctest::Approx(1.0).epsilon(1e-12));
    CHECK_FALSE(info.renorm_warning);
    // Means add under independence.
    CHECK(got.mean() == doctest::Approx(a.mean() + b.mean()).epsilon(1e-9));
    // Subtraction against the mirrored operand.
    const Dps diff = ddc_sub(a, b, ind);
    const Dps want_diff = plain_conv(a, negate(b));
    CHECK(max_abs_diff(diff, want_diff) <= 1e-12);
  }
}

TEST_CASE("optimized kernel equals the reference loop, dependence included") {
  for (double tau : {-0.7, 0.0, 0.45, 0.85}) {
    const GaussianCopula c = copula_from_tau(tau);
    for (std::uint64_t rep = 0; rep < 3; ++rep) {
      const Dps a = random_dps(300 + rep, 2, 1.25);
      const Dps b = random_dps(300 + rep, 3, 1.25);
      const Dps fast = ddc_add(a, b, c);
      const Dps ref = ddc_add_reference(a, b, c);
      CHECK(fast.origin == ref.origin);
      CHECK(max_abs_diff(fast, ref) <= 1e-12);
    }
  }
}

TEST_CASE("adding a constant shifts the support exactly") {
  const Dps a = random_dps(7, 0, 2.0);
  const Dps c = point_mass(34.0, 2.0);
  for (double tau : {0.0, 0.6}) {
    const Dps s = ddc_add(a, c, copula_from_tau(tau));
    CHECK(s.origin == a.origin + 34.0);
    CHECK(s.masses == a.masses);  // bitwise: dependence on a constant is vacuous
    const Dps s2 = ddc_add(c, a, copula_from_tau(tau));
    CHECK(s2.origin == a.origin + 34.0);
    CHECK(s2.masses == a.masses);
  }
}

TEST_CASE("mismatched grids are rejected") {
  const Dps a = make(0.0, 1.0, {0.5, 0.5});
  const Dps b = make(0.0, 1.5, {0.5, 0.5});
  CHECK_THROWS_AS(ddc_add(a, b, copula_from_tau(0.0)), StepMismatch);
}

TEST_CASE("discretized estimate keeps its mass, mean, and spread") {
  std::vector<double> xs(1500);
  for (std::size_t j = 0; j < xs.size(); ++j)
    xs[j] = 40.0 + 6.0 * normal_quantile(u01_pair_at(88, 4, j).first);
  const KdeModel k = fit_kde(xs);
  const double step = 0.25;
  const Dps d = discretize(k, step);
  double total = 0.0;
  for (double m : d.masses) total += m;
  CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(d.masses.front() > 0.0);
  CHECK(d.masses.back() > 0.0);

  double mean = 0.0;
  for (double x : xs) mean += x;
  mean /= xs.size();
  CHECK(d.mean() == doctest::Approx(mean).epsilon(0.01));
  // Support endpoints sit at the snapped extreme quantiles.
  CHECK(d.origin <= inverse_cdf(k, 1e-5));
  CHECK(d.origin >= inverse_cdf(k, 1e-5) - step);
  CHECK(d.top() >= inverse_cdf(k, 1.0 - 1e-5));
  CHECK(d.top() <= inverse_cdf(k, 1.0 - 1e-5) + step);

  CHECK_THROWS_AS(discretize(k, 1e6), StepTooCoarse);
}

TEST_CASE("dependent convolution tracks a Monte Carlo draw of the coupling") {
  std::vector<double> xa(3000), xb(3000);
  for (std::size_t j = 0; j < xa.size(); ++j) {
    xa[j] = 10.0 + 2.0 * normal_quantile(u01_pair_at(91, 0, j).first);
    xb[j] = 30.0 + 3.5 * normal_quantile(u01_pair_at(91, 1, j).first);
  }
  const KdeModel ka = fit_kde(xa), kb = fit_kde(xb);
  const double step = 0.2;
  const Dps da = discretize(ka, step), db = discretize(kb, step);
  const GaussianCopula cop = copula_from_tau(0.6);
  const Dps sum = ddc_add(da, db, cop);

  const std::size_t n = 200000;
  std::vector<double> pa(n), pb(n);
  for (std::size_t j = 0; j < n; ++j) {
    pa[j] = sample(ka, u01_pair_at(92, 0, j).first, normal_quantile(u01_pair_at(92, 1, j).first));
    pb[j] = sample(kb, u01_pair_at(92, 2, j).first, normal_quantile(u01_pair_at(92, 3, j).first));
  }
  std::sort(pa.begin(), pa.end());
  std::sort(pb.begin(), pb.end());
  std::vector<double> draws(n);
  for (std::size_t j = 0; j < n; ++j) {
    const auto [u1, u2] = u01_pair_at(92, 4, j);
    const double z2 =
        cop.rho * normal_quantile(u1) + std::sqrt(1.0 - cop.rho * cop.rho) * normal_quantile(u2);
    const std::size_t iu = std::min(static_cast<std::size_t>(u1 * n), n - 1);
    const std::size_t iv = std::min(static_cast<std::size_t>(normal_cdf(z2) * n), n - 1);
    draws[j] = pa[iu] + pb[iv];
  }
  CHECK(wasserstein1(sum, std::move(draws)) <= 2.0 * step);
}
