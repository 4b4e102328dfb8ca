#include <cmath>
#include <map>
#include <stdexcept>
#include <vector>

#include <doctest.h>

#include "orient/errors.hpp"
#include "orient/mixture.hpp"
#include "orient/rng.hpp"
#include "support/oracles.hpp"
#include "support/quadrature.hpp"
#include "support/reference_params.hpp"

using namespace orient;

namespace {

std::vector<UsageFit> reference_fits() {
  std::vector<UsageFit> fits;
  for (const testsupport::ReferenceFit& row : testsupport::reference_table()) {
    fits.push_back({UsageType::from_string(row.usage),
                    {normalize({row.mu_x, row.mu_y, row.mu_z}), row.kappa},
                    row.n_samples});
  }
  return fits;
}

std::map<UsageType, std::size_t> reference_counts() {
  std::map<UsageType, std::size_t> counts;
  for (const testsupport::ReferenceFit& row : testsupport::reference_table()) {
    counts[UsageType::from_string(row.usage)] = row.n_samples;
  }
  return counts;
}

}  // namespace

TEST_CASE("heuristic_weights reproduces the published mixture weights") {
  const auto weights = heuristic_weights(reference_counts());
  for (const testsupport::ReferenceFit& row : testsupport::reference_table()) {
    CHECK(std::abs(weights.at(UsageType::from_string(row.usage)) - row.weight) < 1e-3);
  }
  double total = 0.0;
  for (const auto& [usage, w] : weights) {
    total += w;
  }
  CHECK(std::abs(total - 1.0) < 1e-12);
}

TEST_CASE("heuristic_weights edge cases") {
  std::map<UsageType, std::size_t> single{{UsageType::from_string("0000"), 10}};
  CHECK(heuristic_weights(single).at(UsageType::from_string("0000")) == 1.0);

  std::map<UsageType, std::size_t> pair{{UsageType::from_string("0000"), 47988},
                                        {UsageType::from_string("1000"), 6134}};
  const auto weights = heuristic_weights(pair);
  CHECK(weights.at(UsageType::from_string("0000")) == doctest::Approx(0.88666).epsilon(1e-4));
  CHECK(weights.at(UsageType::from_string("1000")) == doctest::Approx(0.11334).epsilon(1e-4));

  std::map<UsageType, std::size_t> zero{{UsageType::from_string("0000"), 0}};
  CHECK_THROWS_AS(heuristic_weights(zero), DataError);
}

TEST_CASE("build_mixture with and without a subset") {
  const std::vector<UsageFit> fits = reference_fits();

  const MixtureModel full = build_mixture(fits);
  CHECK(full.components().size() == 7);
  double total = 0.0;
  for (const MixtureComponent& c : full.components()) {
    total += c.weight;
  }
  CHECK(std::abs(total - 1.0) < 1e-12);

  const std::set<UsageType> subset{UsageType::from_string("0000"), UsageType::from_string("1000")};
  const MixtureModel pair = build_mixture(fits, subset);
  REQUIRE(pair.components().size() == 2);
  CHECK(pair.components()[0].weight == doctest::Approx(0.88666).epsilon(1e-4));
  CHECK(pair.components()[1].weight == doctest::Approx(0.11334).epsilon(1e-4));

  const std::set<UsageType> one{UsageType::from_string("0000")};
  const MixtureModel single = build_mixture(fits, one);
  REQUIRE(single.components().size() == 1);
  CHECK(single.components()[0].weight == 1.0);

  const std::set<UsageType> none{UsageType::from_string("1111")};
  CHECK_THROWS_AS(build_mixture(fits, none), DataError);
}

TEST_CASE("subset renormalization holds for any subset") {
  const std::vector<UsageFit> fits = reference_fits();
  for (unsigned mask = 1; mask < (1u << 7); mask += 13) {
    std::set<UsageType> subset;
    for (unsigned b = 0; b < 7; ++b) {
      if (mask & (1u << b)) {
        subset.insert(fits[b].usage);
      }
    }
    const MixtureModel model = build_mixture(fits, subset);
    double total = 0.0;
    for (const MixtureComponent& c : model.components()) {
      total += c.weight;
    }
    CHECK(std::abs(total - 1.0) < 1e-12);
  }
}

TEST_CASE("mixture rejects invalid construction") {
  CHECK_THROWS_AS(MixtureModel(std::vector<MixtureComponent>{}), DataError);

  std::vector<MixtureComponent> negative{
      {UsageType::from_string("0000"), {normalize({0.0, 0.0, 1.0}), 1.0}, -0.25, 10}};
  CHECK_THROWS_AS(MixtureModel(std::move(negative)), std::invalid_argument);
}

TEST_CASE("mixture_pdf single component equals the component density") {
  const std::vector<UsageFit> fits = reference_fits();
  const MixtureModel single = build_mixture(fits, std::set<UsageType>{fits[0].usage});
  const RandomStream rng(41);
  for (std::uint64_t i = 0; i < 50; ++i) {
    const UnitVec3 rho = testsupport::uniform_direction(rng, i);
    const double a = mixture_pdf(rho, single);
    const double b = vmf_pdf(rho, fits[0].params);
    CHECK(a == doctest::Approx(b).epsilon(1e-15));
  }
}

TEST_CASE("uniform mixture of uniforms is uniform") {
  std::vector<MixtureComponent> comps{
      {UsageType::from_string("0000"), {normalize({0.0, 0.0, 1.0}), 0.0}, 0.5, 1},
      {UsageType::from_string("1000"), {normalize({1.0, 0.0, 0.0}), 0.0}, 0.5, 1}};
  const MixtureModel model(std::move(comps));
  const RandomStream rng(42);
  for (std::uint64_t i = 0; i < 20; ++i) {
    const UnitVec3 rho = testsupport::uniform_direction(rng, i);
    CHECK(mixture_pdf(rho, model) == doctest::Approx(1.0 / (4.0 * kPi)).epsilon(1e-15));
  }
}

TEST_CASE("mixture_pdf equals the hand-summed component densities") {
  const std::vector<UsageFit> fits = reference_fits();
  const MixtureModel model = build_mixture(fits);
  const RandomStream rng(43);
  for (std::uint64_t i = 0; i < 40; ++i) {
    const UnitVec3 rho =
        i == 0 ? UnitVec3::unchecked(0.0, 0.0, 1.0) : testsupport::uniform_direction(rng, i);
    double by_hand = 0.0;
    for (const MixtureComponent& c : model.components()) {
      by_hand += c.weight * vmf_pdf(rho, c.params);
    }
    CHECK(mixture_pdf(rho, model) == doctest::Approx(by_hand).epsilon(1e-12));
  }
}

TEST_CASE("mixture_pdf integrates to one") {
  const MixtureModel model = build_mixture(reference_fits());
  const double integral = testsupport::integrate_sphere(
      [&](const UnitVec3& rho) { return mixture_pdf(rho, model); });
  CHECK(std::abs(integral - 1.0) < 1e-6);
}

TEST_CASE("mixture_pdf coarse bounds against its components") {
  const MixtureModel model = build_mixture(reference_fits());
  const RandomStream rng(44);
  for (std::uint64_t i = 0; i < 50; ++i) {
    const UnitVec3 rho = testsupport::uniform_direction(rng, i);
    double min_term = 1e300;
    double max_density = 0.0;
    for (const MixtureComponent& c : model.components()) {
      min_term = std::min(min_term, c.weight * vmf_pdf(rho, c.params));
      max_density = std::max(max_density, vmf_pdf(rho, c.params));
    }
    const double value = mixture_pdf(rho, model);
    CHECK(value >= min_term);
    CHECK(value <= max_density * static_cast<double>(model.components().size()));
  }
}

TEST_CASE("sample_mixture labels and determinism") {
  const std::vector<UsageFit> fits = reference_fits();
  const MixtureModel single = build_mixture(fits, std::set<UsageType>{fits[0].usage});
  for (const LabeledSample& s : sample_mixture(single, 200, 5)) {
    CHECK(s.usage == fits[0].usage);
  }

  CHECK(sample_mixture(single, 0, 5).empty());

  const MixtureModel model = build_mixture(fits);
  const auto a = sample_mixture(model, 333, 6);
  const auto b = sample_mixture(model, 333, 6);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].usage == b[i].usage);
    CHECK(a[i].rho == b[i].rho);
  }
}

TEST_CASE("sample_mixture frequencies match the weights") {
  const MixtureModel model = build_mixture(reference_fits());
  const std::size_t n = 100000;
  const auto draws = sample_mixture(model, n, 7);
  std::map<UsageType, std::size_t> counts;
  for (const LabeledSample& s : draws) {
    ++counts[s.usage];
  }
  for (const MixtureComponent& c : model.components()) {
    const double freq = static_cast<double>(counts[c.usage]) / static_cast<double>(n);
    const double sigma = std::sqrt(c.weight * (1.0 - c.weight) / static_cast<double>(n));
    CHECK(std::abs(freq - c.weight) <= 3.0 * sigma);
  }
}
