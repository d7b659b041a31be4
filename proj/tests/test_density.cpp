#include <gtest/gtest.h>

#include <random>

#include <diffrakt/density.hpp>

#include "oracles.hpp"

using namespace diffrakt;

namespace {

const std::vector<double> first{11, 25, 42, 45, 31, 14};
const std::vector<double> second{10, 17, 35, 46, 39, 21};

Density z6(const std::vector<double>& w) { return Density::real(FiniteAbelianGroup({6}), w); }

}  // namespace

TEST(Density, WeightCountChecked) {
  EXPECT_THROW(Density::real(FiniteAbelianGroup({6}), {1, 2}), ValidationError);
  EXPECT_THROW(PointMeasure(FiniteAbelianGroup({2}), {1, -1}), ValidationError);
}

TEST(Density, CoefficientsMatchOracle) {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> nd;
  FiniteAbelianGroup g({3, 4});
  std::vector<cplx> w(g.order());
  for (auto& z : w)
    z = {nd(rng), nd(rng)};
  Density rho(g, w);
  auto ref = oracle::plus_coefficients(g.moduli(), w);
  auto c = phase_coefficients(rho);
  for (std::size_t k = 0; k < g.order(); ++k) {
    EXPECT_LT(std::abs(c[k] - ref[k]), 1e-12);
    EXPECT_LT(std::abs(phase_coefficient(rho, k) - ref[k]), 1e-12);
  }
}

TEST(Density, Z6CoefficientsFromFactoredPolynomial) {
  auto c = phase_coefficients(z6(first));
  for (int k = 0; k < 6; ++k) {
    cplx w = std::polar(1.0, 2 * std::numbers::pi * k / 6.0);
    EXPECT_LT(std::abs(c[static_cast<std::size_t>(k)] - oracle::z6_polynomial(w) / 6.0), 1e-12);
  }
}

TEST(Density, Z6Diffraction) {
  PointMeasure w = diffraction(z6(first));
  EXPECT_NEAR(w[0], 784.0, 1e-9);
  EXPECT_NEAR(w[1], 247.0 / 3.0, 1e-9);
  EXPECT_NEAR(w[5], 247.0 / 3.0, 1e-9);
  for (std::size_t k : {2, 3, 4})
    EXPECT_LT(w[k], 1e-9 * w.max());
  BraggSpectrum s = bragg_spectrum(w);
  EXPECT_EQ(s.elements, (std::vector<std::size_t>{0, 1, 5}));
  EXPECT_TRUE(s.contains_zero());
}

TEST(Density, Z6AutocorrelationAtZero) {
  // gamma(0) = (1/6) sum w_x^2 = 5692 / 6
  GroupFunction g = autocorrelation(z6(first));
  EXPECT_NEAR(g.values[0].real(), 5692.0 / 6.0, 1e-9);
  auto ref = oracle::autocorrelation({6}, std::vector<cplx>(first.begin(), first.end()));
  for (std::size_t t = 0; t < 6; ++t)
    EXPECT_LT(std::abs(g.values[t] - ref[t]), 1e-10);
  // Plancherel: gamma(0) = sum omega
  EXPECT_NEAR(g.values[0].real(), diffraction(z6(first)).total(), 1e-9);
}

TEST(Density, WienerKhinchin) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0, 5);
  FiniteAbelianGroup g({2, 6});
  std::vector<double> w(g.order());
  for (auto& x : w)
    x = u(rng);
  Density rho = Density::real(g, w);
  EXPECT_LT(wiener_khinchin_residual(rho), 1e-12);
  GroupFunction back = autocorrelation_of(diffraction(rho));
  GroupFunction direct = autocorrelation(rho);
  for (std::size_t t = 0; t < g.order(); ++t)
    EXPECT_LT(std::abs(back.values[t] - direct.values[t]), 1e-10);
}

TEST(Density, TransformIdentity) {
  std::mt19937_64 rng(12);
  std::normal_distribution<double> nd;
  FiniteAbelianGroup g({6});
  std::vector<cplx> f(6);
  for (auto& z : f)
    z = {nd(rng), nd(rng)};
  EXPECT_LT(transform_identity_check(z6(first), GroupFunction(g, f)), 1e-12);
}

TEST(Density, HomometricPair) {
  EXPECT_TRUE(homometric(z6(first), z6(second)));
  EXPECT_FALSE(homometric(z6(first), z6({1, 0, 0, 0, 0, 0})));
  // translates and reflections are homometric
  Density t = translate(z6(first), 2);
  EXPECT_TRUE(homometric(z6(first), t));
  EXPECT_EQ(t.weights[2].real(), 11.0);
}

TEST(Density, SpectrumErrors) {
  FiniteAbelianGroup g({4});
  EXPECT_THROW(bragg_spectrum(PointMeasure(g, {0, 0, 0, 0})), ValidationError);
  EXPECT_THROW(bragg_spectrum(PointMeasure(g, {1, 1, 0, 0})), ValidationError);
  EXPECT_FALSE(is_symmetric(PointMeasure(g, {1, 2, 0, 1})));
  EXPECT_TRUE(is_symmetric(PointMeasure(g, {1, 2, 5, 2})));
}
