#include <gtest/gtest.h>

#include <random>

#include <diffrakt/inverse.hpp>

#include "instances.hpp"

using namespace diffrakt;

namespace {

const std::vector<double> first{11, 25, 42, 45, 31, 14};
const std::vector<double> second{10, 17, 35, 46, 39, 21};

Density z6(const std::vector<double>& w) { return Density::real(FiniteAbelianGroup({6}), w); }

double max_gap(const Density& d, const std::vector<double>& w) {
  double e = 0;
  for (std::size_t i = 0; i < w.size(); ++i)
    e = std::max(e, std::abs(d.weights[i] - w[i]));
  return e;
}

}  // namespace

TEST(Inverse, Z6Reconstruction) {
  PointMeasure omega = diffraction(z6(first));
  FamilyDescription fam = solve_family(omega);
  EXPECT_LT(max_gap(fam.sample({Turn::approx(0.443099)}, {}), first), 1e-3);
  EXPECT_LT(max_gap(fam.sample({Turn::approx(0.520310)}, {}), second), 1e-3);
}

TEST(Inverse, Z6PhaseExtraction) {
  PhaseExtraction a = extract_phase_from_density(z6(first));
  PhaseExtraction b = extract_phase_from_density(z6(second));
  EXPECT_FALSE(a.negated);
  EXPECT_NEAR(a.a.free[0].value(), 0.443099, 1e-5);
  EXPECT_NEAR(b.a.free[0].value(), 0.520310, 1e-5);
  // factored polynomial at the primitive sixth root
  cplx p = oracle::z6_polynomial(std::polar(1.0, std::numbers::pi / 3));
  EXPECT_NEAR(a.a.free[0].value(), Turn::of(p).value(), 1e-12);
  EXPECT_LT(max_gap(density_from_phase(a.omega, a.a), first), 1e-9);
}

TEST(Inverse, NegativeMean) {
  std::vector<double> neg;
  for (double w : first)
    neg.push_back(-w);
  PhaseExtraction ex = extract_phase_from_density(z6(neg));
  EXPECT_TRUE(ex.negated);
  EXPECT_LT(max_gap(density_from_phase(ex.omega, ex.a), first), 1e-9);
}

TEST(Inverse, NonRealRejected) {
  Density rho(FiniteAbelianGroup({2}), {cplx(1, 1), cplx(0, 0)});
  EXPECT_THROW(extract_phase_from_density(rho), ValidationError);
}

TEST(Inverse, M2Solutions) {
  FiniteAbelianGroup g({2});
  PointMeasure omega(g, {1, 1});
  FamilyDescription fam = solve_family(omega);
  EXPECT_EQ(fam.p(), 0u);
  EXPECT_EQ(fam.q(), 1u);
  EXPECT_EQ(fam.class_group.str(), "trivial");
  EXPECT_LT(max_gap(fam.sample({}, {1}), {2, 0}), 1e-12);
  EXPECT_LT(max_gap(fam.sample({}, {-1}), {0, 2}), 1e-12);
  PhaseExtraction ex = extract_phase_from_density(Density::real(g, {2, 0}));
  EXPECT_EQ(ex.a.signs, std::vector<int>{1});
}

TEST(Inverse, M3Family) {
  FiniteAbelianGroup g({3});
  PointMeasure omega(g, {1, 1, 1});
  FamilyDescription fam = solve_family(omega);
  EXPECT_EQ(fam.p(), 1u);
  EXPECT_EQ(fam.q(), 0u);
  for (double t : {0.0, 0.1, 0.3, 0.77}) {
    Density rho = fam.sample({Turn::approx(t)}, {});
    cplx u = std::polar(1.0, 2 * std::numbers::pi * t);
    cplx z3 = unit_root(1, 3);
    EXPECT_NEAR(rho.weights[0].real(), (1.0 + u + std::conj(u)).real(), 1e-12);
    EXPECT_LT(std::abs(rho.weights[1] - (1.0 + u * z3 * z3 + std::conj(u) * z3)), 1e-12);
    EXPECT_LT(std::abs(rho.weights[2] - (1.0 + u * z3 + std::conj(u) * z3 * z3)), 1e-12);
  }
  EXPECT_LT(max_gap(fam.sample({Turn()}, {}), {3, 0, 0}), 1e-12);
}

TEST(Inverse, SmallMCounts) {
  FamilyDescription f1 = solve_family(PointMeasure(FiniteAbelianGroup({1}), {1}));
  EXPECT_EQ(f1.p() + f1.q(), 0u);
  EXPECT_LT(max_gap(f1.sample({}, {}), {1}), 1e-15);
  FamilyDescription f4 = solve_family(PointMeasure(FiniteAbelianGroup({4}), {1, 1, 1, 1}));
  EXPECT_EQ(f4.p(), 1u);
  EXPECT_EQ(f4.q(), 1u);
  FamilyDescription f5 = solve_family(PointMeasure(FiniteAbelianGroup({5}), {1, 1, 1, 1, 1}));
  EXPECT_EQ(f5.p(), 2u);
  EXPECT_EQ(f5.q(), 0u);
}

TEST(Inverse, PeriodicSolutions) {
  // S = {0} in Z/2: the solution is constant, periodic under all of G
  PointMeasure omega(FiniteAbelianGroup({2}), {1, 0});
  EXPECT_TRUE(periodic_solutions(omega));
  FamilyDescription fam = solve_family(omega);
  EXPECT_LT(max_gap(fam.sample({}, {}), {1, 1}), 1e-15);
  EXPECT_FALSE(periodic_solutions(PointMeasure(FiniteAbelianGroup({2}), {1, 1})));
}

TEST(Inverse, FamilySamplesHaveDiffractionOmega) {
  std::mt19937_64 rng(51);
  for (int trial = 0; trial < 40; ++trial) {
    auto in = instances::random_instance(rng);
    FamilyDescription fam = solve_family(in.omega);
    Density rho = density_from_phase(in.omega, instances::random_phase_form(fam.basis, rng));
    PointMeasure w = diffraction(rho);
    for (std::size_t k = 0; k < w.weights.size(); ++k)
      EXPECT_NEAR(w[k], in.omega[k], 1e-9 * in.omega.max());
  }
}

TEST(Inverse, RationalityTest) {
  EXPECT_TRUE(is_rational(0.5));
  EXPECT_TRUE(is_rational(-7.0 / 3.0));
  EXPECT_TRUE(is_rational(42));
  EXPECT_FALSE(is_rational(std::sqrt(2.0)));
  EXPECT_FALSE(is_rational(std::numbers::pi));
  EXPECT_FALSE(is_rational(std::sqrt(3.0) / 7.0));
  EXPECT_FALSE(is_rational(std::exp(1.0)));
  for (std::int64_t d = 1; d <= 200; d += 7)
    for (std::int64_t n = -300; n <= 300; n += 13)
      EXPECT_TRUE(is_rational(static_cast<double>(n) / static_cast<double>(d))) << n << "/" << d;
}

TEST(Inverse, UnitOrbitClosure) {
  EXPECT_TRUE(unit_orbit_closure(6, {0, 1, 5}).empty());
  EXPECT_TRUE(unit_orbit_closure(7, {0}).empty());
  auto v = unit_orbit_closure(5, {1, 4});
  std::set<std::pair<std::int64_t, std::int64_t>> got;
  for (auto& o : v)
    got.insert({o.k, o.j});
  EXPECT_EQ(got, oracle::orbit_violations(5, {1, 4}));
  EXPECT_TRUE(got.count({1, 2}));
  EXPECT_EQ(got.size(), 4u);
  for (std::int64_t M = 1; M <= 16; ++M)
    for (std::int64_t mask = 0; mask < (std::int64_t{1} << std::min<std::int64_t>(M, 8)); mask += 3) {
      std::set<std::int64_t> s;
      std::vector<std::int64_t> sv;
      for (std::int64_t k = 0; k < std::min<std::int64_t>(M, 8); ++k)
        if (mask >> k & 1) {
          s.insert(k);
          sv.push_back(k);
        }
      std::set<std::pair<std::int64_t, std::int64_t>> lib;
      for (auto& o : unit_orbit_closure(M, sv))
        lib.insert({o.k, o.j});
      EXPECT_EQ(lib, oracle::orbit_violations(M, s)) << M << " " << mask;
    }
}

TEST(Inverse, GmRationalCheck) {
  RationalDensityReport r = gm_rational_check(z6(first));
  EXPECT_TRUE(r.is_rational);
  EXPECT_TRUE(r.closed);
  EXPECT_EQ(r.moment_bound, 6);
  EXPECT_EQ(r.support, (std::vector<std::int64_t>{0, 1, 5}));
  // 2 cos(2 pi x / 5) has support {1, 4} and irrational weights
  std::vector<double> w;
  for (int x = 0; x < 5; ++x)
    w.push_back(2 * std::cos(2 * std::numbers::pi * x / 5.0));
  RationalDensityReport q = gm_rational_check(Density::real(FiniteAbelianGroup({5}), w));
  EXPECT_FALSE(q.is_rational);
  EXPECT_FALSE(q.closed);
  EXPECT_EQ(q.moment_bound, 4);
  EXPECT_THROW(gm_rational_check(Density::real(FiniteAbelianGroup({2, 3}), std::vector<double>(6, 1.0))),
               ValidationError);
}

TEST(Inverse, CircleFamily) {
  CircleFamilyReport r = circle_family_check({{1, cplx(0, 1)}, {-1, cplx(0, -1)}});
  EXPECT_TRUE(r.passed());
  EXPECT_EQ(r.window, 3);
  for (auto& [k, z] : r.coefficients) {
    cplx expect = k == 1 ? cplx(0, 1) : k == -1 ? cplx(0, -1) : cplx(1, 0);
    EXPECT_LT(std::abs(z - expect), 1e-12);
  }
  CircleFamilyReport e = circle_family_check({});
  EXPECT_TRUE(e.passed());
  EXPECT_EQ(e.coefficients.size(), 5u);
  EXPECT_THROW(circle_family_check({{1, cplx(0, 1)}}), ValidationError);
  EXPECT_THROW(circle_family_check({{1, cplx(0, 1)}, {-1, cplx(0, 1)}}), ValidationError);
  EXPECT_THROW(circle_family_check({{0, cplx(1, 0)}}), ValidationError);
}
