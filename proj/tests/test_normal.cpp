#include <doctest.h>

#include <cmath>

#include "pdc/errors.hpp"
#include "pdc/normal.hpp"

using namespace pdc;

TEST_CASE("normal pdf and cdf at reference points") {
  CHECK(normal_pdf(0.0) == doctest::Approx(0.39894228040143268).epsilon(1e-15));
  CHECK(normal_cdf(0.0) == 0.5);
  CHECK(normal_cdf(1.0) == doctest::Approx(0.84134474606854295).epsilon(1e-15));
  CHECK(normal_cdf(2.0) == doctest::Approx(0.97724986805182079).epsilon(1e-15));
  CHECK(normal_cdf(-1.96) == doctest::Approx(0.024997895148220436).epsilon(1e-14));
  CHECK(normal_cdf(-40.0) == 0.0);
  CHECK(normal_cdf(40.0) == 1.0);
}

TEST_CASE("normal cdf is symmetric and monotone") {
  for (double x : {0.1, 0.7, 1.3, 2.9, 5.5}) {
    CHECK(normal_cdf(x) + normal_cdf(-x) == doctest::Approx(1.0).epsilon(1e-15));
  }
  double prev = 0.0;
  for (double x = -8.0; x <= 8.0; x += 0.25) {
    const double c = normal_cdf(x);
    CHECK(c >= prev);
    prev = c;
  }
}

TEST_CASE("normal quantile at reference points") {
  CHECK(normal_quantile(0.5) == 0.0);
  CHECK(normal_quantile(0.975) == doctest::Approx(1.9599639845400542).epsilon(1e-14));
  CHECK(normal_quantile(0.025) == doctest::Approx(-1.9599639845400542).epsilon(1e-14));
  CHECK(normal_quantile(0.01) == doctest::Approx(-2.3263478740408411).epsilon(1e-14));
  CHECK(normal_quantile(1e-10) == doctest::Approx(-6.3613409024040562).epsilon(1e-13));
}

TEST_CASE("normal quantile round trip across the full range") {
  // |Phi(Phi^-1(p)) - p| stays at the approximation's advertised accuracy.
  for (double p = 1e-12; p < 1.0; p *= 3.7) {
    CHECK(normal_cdf(normal_quantile(p)) == doctest::Approx(p).epsilon(1e-10));
    const double q = 1.0 - p;
    CHECK(normal_cdf(normal_quantile(q)) == doctest::Approx(q).epsilon(1e-12));
  }
  for (double p = 0.05; p < 1.0; p += 0.05) {
    CHECK(std::abs(normal_cdf(normal_quantile(p)) - p) <= 1e-13);
  }
}

TEST_CASE("normal quantile rejects probabilities outside (0,1)") {
  CHECK_THROWS_AS(normal_quantile(0.0), ProbabilityOutOfRange);
  CHECK_THROWS_AS(normal_quantile(1.0), ProbabilityOutOfRange);
  CHECK_THROWS_AS(normal_quantile(-0.2), ProbabilityOutOfRange);
  CHECK_THROWS_AS(normal_quantile(1.7), ProbabilityOutOfRange);
}
