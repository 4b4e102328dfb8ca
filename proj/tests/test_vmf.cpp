#include <cmath>
#include <stdexcept>
#include <vector>

#include <doctest.h>

#include "orient/errors.hpp"
#include "orient/rng.hpp"
#include "orient/vmf.hpp"
#include "support/oracles.hpp"
#include "support/quadrature.hpp"

using namespace orient;

namespace {

const UnitVec3 kMu = normalize({0.27, 0.93, 0.24});

}  // namespace

TEST_CASE("vmf_pdf at kappa = 0 is the uniform density") {
  const RandomStream rng(21);
  for (std::uint64_t i = 0; i < 20; ++i) {
    const UnitVec3 rho = testsupport::uniform_direction(rng, i);
    CHECK(vmf_pdf(rho, {kMu, 0.0}) == 1.0 / (4.0 * kPi));
  }
}

TEST_CASE("vmf_pdf at the mode, kappa = 1") {
  // Independent route: direct exp/sinh evaluation.
  const double expected = std::exp(1.0) / (4.0 * kPi * std::sinh(1.0));
  const double got = vmf_pdf(kMu, {kMu, 1.0});
  CHECK(got == doctest::Approx(expected).epsilon(1e-13));
  CHECK(got == doctest::Approx(0.184065).epsilon(1e-5));
}

TEST_CASE("vmf_pdf antipodal ratio at kappa = 2") {
  const UnitVec3 anti = UnitVec3::unchecked(-kMu.x, -kMu.y, -kMu.z);
  const double ratio = vmf_pdf(anti, {kMu, 2.0}) / vmf_pdf(kMu, {kMu, 2.0});
  CHECK(ratio == doctest::Approx(std::exp(-4.0)).epsilon(1e-12));
}

TEST_CASE("vmf_pdf stays finite for extreme concentrations") {
  const UnitVec3 anti = UnitVec3::unchecked(-kMu.x, -kMu.y, -kMu.z);
  for (double kappa : {700.0, 1e4, 1e6}) {
    CHECK(std::isfinite(vmf_pdf(kMu, {kMu, kappa})));
    CHECK(std::isfinite(vmf_pdf(anti, {kMu, kappa})));
    CHECK(vmf_pdf(kMu, {kMu, kappa}) > 0.0);
  }
  CHECK_THROWS_AS(vmf_pdf(kMu, {kMu, -1.0}), std::domain_error);
}

TEST_CASE("vmf_pdf normalizes over the sphere") {
  for (double kappa : {0.0, 0.5, 1.0, 3.23, 10.0, 100.0}) {
    const double integral = testsupport::integrate_sphere(
        [&](const UnitVec3& rho) { return vmf_pdf(rho, {kMu, kappa}); });
    CHECK(std::abs(integral - 1.0) < 1e-6);
  }
}

TEST_CASE("vmf_pdf depends on rho only through the projection") {
  const RandomStream rng(22);
  for (double kappa : {0.5, 3.23}) {
    for (std::uint64_t i = 0; i < 100; ++i) {
      const double t = 2.0 * rng.uniform01(i, 0) - 1.0;
      const double r = std::sqrt(std::max(0.0, 1.0 - t * t));
      const double p1 = 2.0 * kPi * rng.uniform01(i, 1);
      const double p2 = 2.0 * kPi * rng.uniform01(i, 2);
      const UnitVec3 a =
          rotate_pole_to(kMu, UnitVec3::unchecked(r * std::cos(p1), r * std::sin(p1), t));
      const UnitVec3 b =
          rotate_pole_to(kMu, UnitVec3::unchecked(r * std::cos(p2), r * std::sin(p2), t));
      const double fa = vmf_pdf(a, {kMu, kappa});
      const double fb = vmf_pdf(b, {kMu, kappa});
      CHECK(fa == doctest::Approx(fb).epsilon(1e-12));
    }
  }
}

TEST_CASE("log_likelihood closed form and consistency") {
  const std::vector<UnitVec3> one{kMu};
  const double expected = std::log(std::exp(1.0) / (4.0 * kPi * std::sinh(1.0)));
  CHECK(log_likelihood(one, {kMu, 1.0}) == doctest::Approx(expected).epsilon(1e-12));
  CHECK(log_likelihood(one, {kMu, 1.0}) == doctest::Approx(-1.69246).epsilon(1e-5));

  const std::vector<UnitVec3> draws = sample_vmf({kMu, 2.5}, 100, 4242);
  CHECK(log_likelihood(draws, {kMu, 0.0}) ==
        doctest::Approx(100.0 * std::log(1.0 / (4.0 * kPi))).epsilon(1e-13));

  const VmfParams params{kMu, 2.5};
  double direct = 0.0;
  for (const UnitVec3& rho : draws) {
    direct += std::log(vmf_pdf(rho, params));
  }
  CHECK(log_likelihood(draws, params) == doctest::Approx(direct).epsilon(1e-11));

  CHECK_THROWS_AS(log_likelihood({}, params), std::invalid_argument);
}

TEST_CASE("bessel_ratio_a3 against the series oracle") {
  for (double kappa : {0.25, 0.5, 1.0, 2.0, 3.23, 5.0, 10.0, 20.0}) {
    CHECK(bessel_ratio_a3(kappa) ==
          doctest::Approx(testsupport::a3_series(kappa)).epsilon(1e-12));
  }
  CHECK(bessel_ratio_a3(2.0) == doctest::Approx(0.537315).epsilon(1e-6));
}

TEST_CASE("bessel_ratio_a3 limits and domain") {
  CHECK(bessel_ratio_a3(1e-6) == doctest::Approx(1e-6 / 3.0).epsilon(1e-9));
  CHECK(bessel_ratio_a3(100.0) == doctest::Approx(0.99).epsilon(1e-12));
  CHECK_THROWS_AS(bessel_ratio_a3(0.0), std::domain_error);
  CHECK_THROWS_AS(bessel_ratio_a3(-2.0), std::domain_error);
}

TEST_CASE("bessel_ratio_a3 is strictly increasing") {
  double prev = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const double kappa = std::pow(10.0, -3.0 + 5.7 * i / 999.0);  // 1e-3 .. ~500
    const double value = bessel_ratio_a3(kappa);
    CHECK(value > prev);
    CHECK(value < 1.0);
    prev = value;
  }
}

TEST_CASE("invert_a3 inverts bessel_ratio_a3") {
  for (int i = 0; i <= 200; ++i) {
    const double kappa = std::pow(10.0, -3.0 + (std::log10(500.0) + 3.0) * i / 200.0);
    const double rbar = bessel_ratio_a3(kappa);
    const InvertResult inv = invert_a3(rbar);
    CHECK(std::abs(inv.kappa - kappa) / kappa < 1e-9);
  }
}

TEST_CASE("invert_a3 edge cases") {
  CHECK(invert_a3(0.0).kappa == 0.0);
  CHECK_THROWS_AS(invert_a3(1.0), DataError);
  CHECK_THROWS_AS(invert_a3(1.5), DataError);
  CHECK_THROWS_AS(invert_a3(-0.1), std::domain_error);
}

TEST_CASE("invert_a3 Newton iteration counts stay small") {
  for (int i = 1; i <= 99; ++i) {
    const double rbar = static_cast<double>(i) / 100.0;
    const InvertResult inv = invert_a3(rbar);
    CHECK(inv.iterations <= 6);
    CHECK(std::abs(bessel_ratio_a3(inv.kappa) - rbar) < 1e-12);
  }
}

TEST_CASE("two-step shortcut lands near the converged root at moderate rbar") {
  // kappa0 = rbar*(3-rbar^2)/(1-rbar^2); two Newton updates.
  const InvertResult two = invert_a3(0.5, NewtonMode::kTwoStep);
  const InvertResult full = invert_a3(0.5);
  CHECK(two.iterations == 2);
  CHECK(std::abs(two.kappa - full.kappa) / full.kappa < 1e-7);
}

TEST_CASE("fit_vmf hand-computed resultant") {
  const std::vector<UnitVec3> samples{UnitVec3::unchecked(0.0, 0.0, 1.0),
                                      UnitVec3::unchecked(0.0, 0.0, 1.0),
                                      UnitVec3::unchecked(1.0, 0.0, 0.0)};
  const FitReport fit = fit_vmf(samples);
  CHECK(fit.params.mu.x == doctest::Approx(1.0 / std::sqrt(5.0)).epsilon(1e-12));
  CHECK(fit.params.mu.y == 0.0);
  CHECK(fit.params.mu.z == doctest::Approx(2.0 / std::sqrt(5.0)).epsilon(1e-12));
  CHECK(fit.rbar == doctest::Approx(std::sqrt(5.0) / 3.0).epsilon(1e-12));
  CHECK(bessel_ratio_a3(fit.params.kappa) == doctest::Approx(fit.rbar).epsilon(1e-11));
  CHECK(fit.n == 3);
}

TEST_CASE("fit_vmf error paths") {
  CHECK_THROWS_AS(fit_vmf(std::vector<UnitVec3>{kMu}), std::invalid_argument);

  const std::vector<UnitVec3> antipodal{UnitVec3::unchecked(0.0, 0.0, 1.0),
                                        UnitVec3::unchecked(0.0, 0.0, -1.0)};
  CHECK_THROWS_AS(fit_vmf(antipodal), DataError);

  const std::vector<UnitVec3> identical{kMu, kMu, kMu};
  CHECK_THROWS_AS(fit_vmf(identical), DataError);
}

TEST_CASE("fit_vmf recovers sampling parameters") {
  int row = 0;
  for (double kappa : {1.0, 2.0, 5.0}) {
    const std::vector<UnitVec3> draws =
        sample_vmf({kMu, kappa}, 50000, 9000 + static_cast<std::uint64_t>(row++));
    const FitReport fit = fit_vmf(draws);
    CHECK(std::abs(fit.params.kappa - kappa) / kappa < 0.03);
    CHECK(angle_between(fit.params.mu, kMu) < kRadPerDeg);
  }
}

TEST_CASE("fit_vmf maximizes the log-likelihood") {
  const RandomStream tangent_rng(23);
  for (std::uint64_t d = 0; d < 10; ++d) {
    const double kappa = 0.5 + 0.7 * static_cast<double>(d);
    const UnitVec3 mu = testsupport::uniform_direction(tangent_rng, d);
    const std::vector<UnitVec3> draws = sample_vmf({mu, kappa}, 400, 100 + d);
    const FitReport fit = fit_vmf(draws);
    const double best = fit.log_likelihood;
    CHECK(best == doctest::Approx(log_likelihood(draws, fit.params)).epsilon(1e-12));

    for (double eps : {1e-3, 1e-2}) {
      // nudge kappa both ways
      CHECK(log_likelihood(draws, {fit.params.mu, fit.params.kappa * (1.0 + eps)}) <= best);
      CHECK(log_likelihood(draws, {fit.params.mu, fit.params.kappa * (1.0 - eps)}) <= best);
      // nudge mu in two tangent directions
      const UnitVec3 t1 = normalize(cross(fit.params.mu.vec(), Vec3{0.3, -0.5, 0.8}));
      const UnitVec3 t2 = normalize(cross(fit.params.mu.vec(), t1.vec()));
      for (const UnitVec3& t : {t1, t2}) {
        const UnitVec3 nudged = normalize(fit.params.mu.vec() + eps * t.vec());
        CHECK(log_likelihood(draws, {nudged, fit.params.kappa}) <= best);
      }
    }
  }
}

TEST_CASE("sample_vmf basic contracts") {
  CHECK(sample_vmf({kMu, 3.0}, 0, 7).empty());

  const std::vector<UnitVec3> a = sample_vmf({kMu, 3.0}, 512, 7);
  const std::vector<UnitVec3> b = sample_vmf({kMu, 3.0}, 512, 7);
  CHECK(a == b);
  const std::vector<UnitVec3> c = sample_vmf({kMu, 3.0}, 512, 8);
  CHECK(a != c);

  for (const UnitVec3& v : a) {
    CHECK(std::abs(norm(v.vec()) - 1.0) < 1e-9);
  }
}

TEST_CASE("sample_vmf uniform case has a vanishing resultant") {
  const std::vector<UnitVec3> draws = sample_vmf({kMu, 0.0}, 100000, 31);
  Vec3 sum;
  for (const UnitVec3& v : draws) {
    sum += v.vec();
  }
  CHECK(norm(sum) / 100000.0 < 0.01);
}

TEST_CASE("sample_vmf mean projection matches A3") {
  const double kappa = 5.0;
  const std::vector<UnitVec3> draws = sample_vmf({kMu, kappa}, 100000, 32);
  double mean = 0.0;
  for (const UnitVec3& v : draws) {
    mean += dot(kMu, v);
  }
  mean /= 100000.0;
  CHECK(std::abs(mean - bessel_ratio_a3(kappa)) < 0.005);
  CHECK(bessel_ratio_a3(5.0) == doctest::Approx(1.0 / std::tanh(5.0) - 0.2).epsilon(1e-12));
}
