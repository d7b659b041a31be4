#include <gtest/gtest.h>

#include <random>

#include <diffrakt/diffrakt.hpp>

#include "instances.hpp"
#include "oracles.hpp"

using namespace diffrakt;

namespace {

constexpr int trials = 220;

template <class Body>
void for_instances(std::uint64_t seed, Body body) {
  std::mt19937_64 rng(seed);
  for (int t = 0; t < trials; ++t) {
    auto in = instances::random_instance(rng, 48);
    SCOPED_TRACE(in.group.str() + " trial " + std::to_string(t));
    body(in, rng);
  }
}

}  // namespace

TEST(Properties, WienerKhinchin) {
  for_instances(101, [](const instances::Instance& in, std::mt19937_64&) {
    Density rho = density_from_phase(in.omega, in.a);
    EXPECT_LT(wiener_khinchin_residual(rho), 1e-9);
    // independent oracle: gamma = rho * rho~ by direct summation
    auto rg = in.group.moduli();
    auto gamma = oracle::autocorrelation(rg, rho.weights);
    GroupFunction lib = autocorrelation(rho);
    double scale = std::max(1.0, std::abs(gamma[0]));
    for (std::size_t x = 0; x < gamma.size(); ++x)
      EXPECT_LT(std::abs(lib[x] - gamma[x]), 1e-9 * scale);
  });
}

TEST(Properties, SolutionsHaveTheGivenDiffraction) {
  for_instances(102, [](const instances::Instance& in, std::mt19937_64&) {
    Density rho = density_from_phase(in.omega, in.a);
    auto c = oracle::plus_coefficients(in.group.moduli(), rho.weights);
    for (std::size_t k = 0; k < c.size(); ++k)
      EXPECT_NEAR(std::norm(c[k]), in.omega[k], 1e-9 * std::max(1.0, in.omega.max()));
  });
}

TEST(Properties, ThetaIsometryAndSpectralMeasure) {
  for_instances(103, [](const instances::Instance& in, std::mt19937_64& rng) {
    ProcessModel m = build_process(in.omega, in.a);
    std::normal_distribution<double> nd;
    std::vector<cplx> h(in.group.order());
    for (auto& z : h)
      z = {nd(rng), nd(rng)};
    double expect = 0;
    for (std::size_t k : m.support())
      expect += std::norm(h[k]) * in.omega[k];
    StateVector v = theta(m, h);
    EXPECT_LT(relative_gap(norm_sq(v), expect), 1e-10);
    SpectralMeasure sm = spectral_measure(m, v);
    for (std::size_t k = 0; k < h.size(); ++k) {
      double want = m.spectrum.contains(k) ? std::norm(h[k]) * in.omega[k] : 0.0;
      EXPECT_NEAR(sm.mass[k], want, 1e-10 * std::max(1.0, expect));
    }
  });
}

TEST(Properties, SecondMoment) {
  for_instances(104, [](const instances::Instance& in, std::mt19937_64& rng) {
    ProcessModel m = build_process(in.omega, in.a);
    GroupFunction f = instances::random_function(in.group, rng), g = instances::random_function(in.group, rng);
    EXPECT_LT(second_moment_check(m, f, g), 1e-9);
  });
}

TEST(Properties, ExtractRoundtrip) {
  for_instances(105, [](const instances::Instance& in, std::mt19937_64&) {
    RelatorLattice lat = relator_lattice(in.basis);
    Density rho = density_from_phase(in.omega, in.a);
    PhaseExtraction ex = extract_phase_from_density(rho);
    EXPECT_FALSE(ex.negated);
    EXPECT_TRUE(same_phase_form(in.a, ex.a, lat));
    for (std::size_t k : in.basis->spectrum)
      EXPECT_LT(std::abs(evaluate(in.a, k) - evaluate(ex.a, k)), 1e-8);
    ProcessModel m = build_process(in.omega, in.a);
    PhaseData pd = extract_phase_data(m, std::make_shared<const RelatorLattice>(lat));
    EXPECT_TRUE(same_phase_form(in.a, pd.form.rep, lat));
  });
}

TEST(Properties, TwistIsTranslation) {
  for_instances(106, [](const instances::Instance& in, std::mt19937_64& rng) {
    std::uniform_int_distribution<std::size_t> pick(0, in.group.order() - 1);
    std::size_t u = pick(rng);
    ElementaryPhaseForm b = twist_by_group_element(in.a, u);
    RelatorLattice lat = relator_lattice(in.basis);
    EXPECT_TRUE(same_phase_form(in.a, b, lat));
    Density ra = density_from_phase(in.omega, in.a), rb = density_from_phase(in.omega, b);
    Density shifted = translate(ra, u);
    double scale = std::max(1.0, ra.max_abs());
    for (std::size_t x = 0; x < in.group.order(); ++x)
      EXPECT_LT(std::abs(rb.weights[x] - shifted.weights[x]), 1e-9 * scale);
    ProcessModel ma = build_process(in.omega, in.a), mb = build_process(in.omega, b);
    GroupFunction f = instances::random_function(in.group, rng);
    StateVector na = apply_N(ma, f), nb = apply_N(mb, f);
    StateVector back = translate(ma, na, in.group.neg(u));
    for (std::size_t c = 0; c < na.size(); ++c)
      EXPECT_LT(std::abs(nb[c] - back[c]), 1e-9 * std::max(1.0, std::sqrt(in.omega.max())));
    auto found = find_translation(ma, mb, lat);
    ASSERT_TRUE(found.has_value());
    // the translation is determined modulo the annihilator of E
    EXPECT_EQ(ma.states.coset_of[*found], ma.states.coset_of[u]);
  });
}

TEST(Properties, HomometryClassMatchesRelatorPhases) {
  for_instances(107, [](const instances::Instance& in, std::mt19937_64& rng) {
    RelatorLattice lat = relator_lattice(in.basis);
    ElementaryPhaseForm b = instances::random_phase_form(in.basis, rng);
    Density ra = density_from_phase(in.omega, in.a), rb = density_from_phase(in.omega, b);
    EXPECT_TRUE(homometric(ra, rb, 1e-8));
    bool same = same_phase_form(in.a, b, lat);
    bool translate_found = find_translation(build_process(in.omega, in.a), build_process(in.omega, b), lat).has_value();
    EXPECT_EQ(same, translate_found);
  });
}
