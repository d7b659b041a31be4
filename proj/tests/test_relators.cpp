#include <gtest/gtest.h>

#include <random>
#include <set>

#include <diffrakt/relators.hpp>

#include "oracles.hpp"

using namespace diffrakt;

namespace {

BasisPtr full_basis(std::vector<std::int64_t> moduli) {
  FiniteAbelianGroup g(std::move(moduli));
  std::vector<std::size_t> all(g.order());
  for (std::size_t i = 0; i < all.size(); ++i)
    all[i] = i;
  return canonical_basis(g, all);
}

}  // namespace

TEST(Basis, Z6Example) {
  BasisPtr b = canonical_basis(FiniteAbelianGroup({6}), {5, 0, 1});
  EXPECT_TRUE(b->has_zero);
  EXPECT_EQ(b->free, (std::vector<std::size_t>{1}));
  EXPECT_TRUE(b->torsion.empty());
  EXPECT_EQ(b->slot(5).kind, GeneratorBasis::Kind::minus);
  EXPECT_THROW(b->slot(2), ValidationError);
}

TEST(Basis, SmallM) {
  EXPECT_EQ(full_basis({1})->dim(), 0u);
  auto b2 = full_basis({2});
  EXPECT_EQ(b2->p(), 0u);
  EXPECT_EQ(b2->q(), 1u);
  auto b4 = full_basis({4});
  EXPECT_EQ(b4->p(), 1u);
  EXPECT_EQ(b4->q(), 1u);
  auto b5 = full_basis({5});
  EXPECT_EQ(b5->p(), 2u);
  EXPECT_EQ(b5->q(), 0u);
  auto b22 = full_basis({2, 2});
  EXPECT_EQ(b22->p(), 0u);
  EXPECT_EQ(b22->q(), 3u);
}

TEST(Basis, AsymmetricRejected) {
  EXPECT_THROW(canonical_basis(FiniteAbelianGroup({5}), {0, 1}), ValidationError);
}

TEST(FSVector, TupleImageAndLength) {
  BasisPtr b = full_basis({4});  // free {1}, torsion {2}
  std::vector<std::size_t> t{1, 1, 3, 2, 2, 2, 0};
  FSVector v = tuple_to_vector(*b, t);
  EXPECT_EQ(v.free, (IntRow{1}));
  EXPECT_EQ(v.torsion, (std::vector<std::uint8_t>{1}));
  EXPECT_EQ(reduced_length(v), 2);
  EXPECT_EQ(sum_map(*b, v), 3u);
  EXPECT_EQ(tuple_to_vector(*b, shortest_tuple(*b, v)), v);
}

TEST(Relators, Z6LatticeIs6Z) {
  BasisPtr b = canonical_basis(FiniteAbelianGroup({6}), {0, 1, 5});
  RelatorLattice lat = relator_lattice(b);
  ASSERT_EQ(lat.generators.size(), 1u);
  EXPECT_EQ(lat.generators[0].free, (IntRow{6}));
  EXPECT_EQ(lat.index(), 6);
  EXPECT_FALSE(generated_equals(lat, 5));
  EXPECT_TRUE(generated_equals(lat, 6));
  EXPECT_EQ(n_zero(lat, 12), 6);
  CoveringNumber r = covering_number(*b, lat.span);
  EXPECT_EQ(r.r, 3);
  EXPECT_EQ(r.bound(), 7);
}

TEST(Relators, SmallM) {
  auto l2 = relator_lattice(full_basis({2}));
  EXPECT_TRUE(l2.trivial());
  EXPECT_EQ(n_zero(l2, 12), 0);
  auto l3 = relator_lattice(full_basis({3}));
  ASSERT_EQ(l3.generators.size(), 1u);
  EXPECT_EQ(l3.generators[0].free, (IntRow{3}));
  EXPECT_EQ(covering_number(*l3.basis, l3.span).r, 1);
}

TEST(Relators, EnumerationMatchesTupleOracle) {
  // every relator of reduced length <= m is the image of a zero-sum tuple of
  // length <= m and conversely
  for (auto moduli : {std::vector<std::int64_t>{6}, {4}, {2, 2}, {2, 3}, {7}}) {
    FiniteAbelianGroup g(moduli);
    std::vector<std::size_t> all(g.order());
    for (std::size_t i = 0; i < all.size(); ++i)
      all[i] = i;
    BasisPtr b = canonical_basis(g, all);
    RelatorLattice lat = relator_lattice(b);
    const int m = 4;
    std::set<FSVector> expect;
    for (int len = 0; len <= m; ++len)
      for (const auto& counts : oracle::zero_sum_counts(g.moduli(), b->spectrum, len)) {
        std::vector<std::size_t> t;
        for (std::size_t i = 0; i < counts.size(); ++i)
          for (int c = 0; c < counts[i]; ++c)
            t.push_back(b->spectrum[i]);
        expect.insert(tuple_to_vector(*b, t));
      }
    auto got = relators_up_to(lat, m);
    std::set<FSVector> got_set(got.begin(), got.end());
    EXPECT_EQ(got_set.size(), got.size());
    EXPECT_EQ(got_set, expect) << g.str();
    for (std::size_t i = 1; i < got.size(); ++i)
      EXPECT_LE(reduced_length(got[i - 1]), reduced_length(got[i]));
  }
}

TEST(Relators, IndexEqualsSpanOrder) {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 40; ++trial) {
    FiniteAbelianGroup g(oracle::random_moduli(rng, 36));
    std::vector<std::size_t> s;
    std::bernoulli_distribution coin(0.4);
    for (std::size_t k = 0; k < g.order(); ++k)
      if (k <= g.neg(k) && coin(rng)) {
        s.push_back(k);
        if (g.neg(k) != k)
          s.push_back(g.neg(k));
      }
    if (s.empty())
      s.push_back(0);
    BasisPtr b = canonical_basis(g, s);
    RelatorLattice lat = relator_lattice(b);
    EXPECT_EQ(lat.index(), static_cast<std::int64_t>(lat.span.order()));
    for (const FSVector& v : lat.generators)
      EXPECT_EQ(sum_map(*b, v), 0u);
  }
}

TEST(Relators, WrongSpanRejected) {
  FiniteAbelianGroup g({6});
  BasisPtr b = canonical_basis(g, {0, 2, 4});
  EXPECT_THROW(relator_lattice(b, subgroup_generated(g, {1})), ValidationError);
  EXPECT_NO_THROW(relator_lattice(b, subgroup_generated(g, {2})));
}

TEST(Relators, Caps) {
  BasisPtr b = canonical_basis(FiniteAbelianGroup({6}), {0, 1, 5});
  RelatorLattice lat = relator_lattice(b);
  EXPECT_THROW(relators_up_to(lat, 13), CapError);
  EXPECT_THROW(relators_up_to(lat, -1), ValidationError);
  auto big = full_basis({26});
  EXPECT_THROW(relators_up_to(relator_lattice(big), 2), CapError);
}

TEST(Covering, WithoutZeroMayNeverCover) {
  // S = {1, 3} in Z/4: r-fold sums alternate between odd and even classes
  FiniteAbelianGroup g({4});
  BasisPtr b = canonical_basis(g, {1, 3});
  EXPECT_FALSE(covering_number(*b, subgroup_generated(g, {1})).r.has_value());
}
