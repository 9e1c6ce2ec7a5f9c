#include <gtest/gtest.h>

#include <numbers>
#include <random>

#include "bisemi/lfunc.hpp"

using namespace bisemi;

namespace {

constexpr double kZeta2 = std::numbers::pi * std::numbers::pi / 6.0;

SeriesSpec unit_series(std::int64_t n_max, std::int64_t N = 1) {
  SeriesSpec spec;
  spec.branch = Branch::minus;  // lambda_-(n_N^2, 0) = 1
  spec.N = N;
  spec.n_max = n_max;
  return spec;
}

// Direct oracle: sum 1/n^2 in reverse order (small terms first).
double reverse_zeta2(std::int64_t n_max) {
  long double s = 0;
  for (std::int64_t n = n_max; n >= 1; --n) s += 1.0L / (static_cast<long double>(n) * n);
  return static_cast<double>(s);
}

}  // namespace

TEST(PartialSum, UnitCoefficientsGiveZeta2) {
  const auto v = partial_sum(unit_series(1'000'000), 2.0);
  EXPECT_NEAR(v.value.real(), reverse_zeta2(1'000'000), 1e-13);
  EXPECT_NEAR(v.value.real(), 1.6449331, 1e-7);
  EXPECT_EQ(v.value.imag(), 0.0);
}

TEST(PartialSum, PlusBranchShiftsIndex) {
  // lambda_+(n^2, 0) = n^2, so sum n^{2-s} at s = 4 is a zeta(2) partial sum.
  SeriesSpec spec = unit_series(200'000);
  spec.branch = Branch::plus;
  EXPECT_NEAR(partial_sum(spec, 4.0).value.real(), reverse_zeta2(200'000), 1e-12);
  EXPECT_NEAR(partial_sum(spec, 4.0).value.real(), kZeta2, 1e-5);
}

TEST(PartialSum, SingleTermIsTheEigenvalue) {
  SeriesSpec spec;
  spec.branch = Branch::plus;
  spec.N = 1;
  spec.n_max = 1;
  spec.m_rule = MultiplicityRule::constant(1);
  // lambda_+(1, 1) = (3 + sqrt 5) / 2
  EXPECT_NEAR(partial_sum(spec, Complex(0.3, 7.0)).value.real(), (3.0 + std::sqrt(5.0)) / 2.0, 1e-15);
}

TEST(PartialSum, ComplexArgumentMatchesDirectSum) {
  SeriesSpec spec = unit_series(50, 3);
  spec.branch = Branch::plus;
  spec.m_rule = MultiplicityRule::constant(2);
  const Complex s(3.5, 2.0);
  Complex direct = 0;
  for (int n = 1; n <= 50; ++n) {
    const auto e = eigen_pair(BigInt(3 * n), BigInt(6));
    direct += e.plus.to_complex().real() * std::pow(Complex(n), -s);
  }
  EXPECT_LT(std::abs(partial_sum(spec, s).value - direct), 1e-12 * std::abs(direct));
}

TEST(PartialSum, Validation) {
  SeriesSpec spec;
  spec.n_max = 0;
  EXPECT_THROW(partial_sum(spec, 2.0), Error);
}

TEST(DegenerateProduct, Examples) {
  EXPECT_NEAR(degenerate_product(unit_series(100'000), unit_series(100'000), 1.0), reverse_zeta2(100'000), 1e-13);

  SeriesSpec single;
  single.n_max = 2;
  single.coefficient_table = std::map<std::int64_t, double>{{2, 3.0}};
  for (double x : {0.5, 1.0, 2.5}) EXPECT_NEAR(degenerate_product(single, single, x), 9.0 * std::pow(2.0, -2 * x), 1e-15);

  SeriesSpec empty = unit_series(10);
  empty.classes = std::set<std::int64_t>{};
  EXPECT_EQ(degenerate_product(empty, empty, 1.0), 0.0);

  try {
    degenerate_product(unit_series(10), unit_series(11), 1.0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::GridMismatch);
  }
}

TEST(EulerProduct, Examples) {
  const auto full = euler_product(unit_series(1), 2.0, 100'000, DirichletCharacter::trivial(1));
  EXPECT_NEAR(full.value.real(), kZeta2, 1e-5);
  EXPECT_FALSE(full.diverging);
  EXPECT_EQ(full.factors.size(), 9592u);

  const auto two = euler_product(unit_series(1), 2.0, 2, DirichletCharacter::trivial(1));
  EXPECT_NEAR(two.value.real(), 4.0 / 3.0, 1e-15);

  // Level 2: the factor at q = 2 is taken from the q | N branch.
  const auto level2 = euler_product(unit_series(1, 2), 2.0, 3, DirichletCharacter::trivial(2));
  ASSERT_EQ(level2.factors.size(), 2u);
  EXPECT_EQ(level2.factors[0].prime, 2);
  EXPECT_TRUE(level2.factors[0].divides_level);
  EXPECT_NEAR(level2.factors[0].factor.real(), 1.0 / (1.0 - std::pow(2.0, -2.0)), 1e-15);
  EXPECT_FALSE(level2.factors[1].divides_level);
  EXPECT_NEAR(level2.value.real(), (4.0 / 3.0) * (9.0 / 8.0), 1e-15);
}

TEST(EulerProduct, CharacterAppliesToPrimesNotDividingLevel) {
  // Character mod 4 with chi(1) = 1, chi(3) = i: chi(3)^2 = -1 flips the q = 3 factor.
  const DirichletCharacter chi(4, {0.0, 1.0, 0.0, Complex(0.0, 1.0)});
  const auto r = euler_product(unit_series(1, 4), 2.0, 3, chi);
  ASSERT_EQ(r.factors.size(), 2u);
  EXPECT_NEAR(r.factors[0].factor.real(), 4.0 / 3.0, 1e-15);
  EXPECT_NEAR(r.factors[1].factor.real(), 1.0 / (1.0 + 1.0 / 9.0), 1e-15);
  EXPECT_THROW(DirichletCharacter(4, {0.0, 2.0, 0.0, 1.0}), Error);
}

TEST(EulerProduct, DivergenceIsReported) {
  // lambda = 1 at s = 0: every denominator is 1 - 1 = 0.
  const auto r = euler_product(unit_series(1), 0.0, 10, DirichletCharacter::trivial(1));
  EXPECT_TRUE(r.diverging);
}

TEST(EulerProduct, AgreesWithPartialSum) {
  const double sum = partial_sum(unit_series(1'000'000), 2.0).value.real();
  const double prod = euler_product(unit_series(1), 2.0, 100'000, DirichletCharacter::trivial(1)).value.real();
  EXPECT_LT(std::abs(sum - prod), 1e-5);
}

TEST(Partition, Examples) {
  SeriesSpec spec = unit_series(20);
  spec.branch = Branch::plus;
  spec.m_rule = MultiplicityRule::constant(1);
  const Complex s(1.5, 3.0);
  const Complex whole = partial_sum(spec, s).value;

  std::set<std::int64_t> all;
  for (int n = 1; n <= 20; ++n) all.insert(n);
  auto p = partition_series(spec, all);
  EXPECT_TRUE(p.complement.class_list().empty());
  EXPECT_EQ(partial_sum(p.complement, s).value, Complex(0.0));

  p = partition_series(spec, {});
  EXPECT_EQ(partial_sum(p.kept, s).value, Complex(0.0));

  p = partition_series(spec, {3, 5, 7, 11, 13, 17, 19});
  const Complex parts = partial_sum(p.kept, s).value + partial_sum(p.complement, s).value;
  EXPECT_LT(std::abs(parts - whole), 1e-12 * std::abs(whole));

  try {
    partition_series(spec, {0, 3});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::ClassOutOfRange);
  }
  EXPECT_THROW(partition_series(spec, {21}), Error);
}

TEST(Partition, AdditivityProperty) {
  std::mt19937_64 rng(4);
  std::uniform_int_distribution<int> coin(0, 1);
  std::uniform_real_distribution<double> re(0.6, 3.0), im(-30.0, 30.0);
  for (int trial = 0; trial < 50; ++trial) {
    SeriesSpec spec = unit_series(500, 1 + trial % 3);
    spec.branch = trial % 2 ? Branch::plus : Branch::minus;
    spec.m_rule = MultiplicityRule::constant(trial % 4);
    std::set<std::int64_t> kept;
    for (int n = 1; n <= 500; ++n)
      if (coin(rng)) kept.insert(n);
    const Complex s(re(rng) + (spec.branch == Branch::plus ? 2.0 : 0.0), im(rng));
    const auto p = partition_series(spec, kept);
    const Complex whole = partial_sum(spec, s).value;
    const Complex parts = partial_sum(p.kept, s).value + partial_sum(p.complement, s).value;
    EXPECT_LT(std::abs(parts - whole), 1e-12 * std::abs(whole));
  }
}

TEST(ZeroCandidate, RiemannExamples) {
  const auto c = nontrivial_candidate(1, Rat(1), ZeroVariant::riemann);
  EXPECT_EQ(c.plus, QuadNum(Rat(1, 2), Rat(1, 2), BigInt(-15)));
  EXPECT_EQ(c.minus, QuadNum(Rat(1, 2), Rat(-1, 2), BigInt(-15)));
  EXPECT_EQ(c.product, 4);
  EXPECT_EQ(c.product, Rat((-2) * (-2)));
  EXPECT_EQ(c.sigma, Rat(1, 2));
  EXPECT_EQ(c.plus.rational_part(), Rat(1, 2));
  EXPECT_NEAR(c.tau, std::sqrt(15.0) / 2, 1e-15);
  EXPECT_EQ(zero_element(1, Rat(1), ZeroVariant::riemann).det(), QuadNum(4));
}

TEST(ZeroCandidate, BsdExample) {
  const auto c = nontrivial_candidate(1, Rat(1), ZeroVariant::bsd);
  EXPECT_EQ(c.plus, QuadNum(Rat(1), Rat(1), BigInt(-7)));
  EXPECT_EQ(c.minus, QuadNum(Rat(1), Rat(-1), BigInt(-7)));
  EXPECT_EQ(c.product, 8);
  EXPECT_EQ(c.plus.rational_part(), 1);
  EXPECT_EQ(zero_element(1, Rat(1), ZeroVariant::bsd).det(), QuadNum(8));
}

TEST(ZeroCandidate, DecompositionElementIsUnimodular) {
  const Mat2K d = imaginary_decomposition_element();
  EXPECT_EQ(d, (Mat2K{QuadNum(0), QuadNum::i(), QuadNum::i(), QuadNum(1)}));
  EXPECT_EQ(d.det(), QuadNum(1));
}

TEST(ZeroCandidate, SubcriticalEnergy) {
  for (auto variant : {ZeroVariant::riemann, ZeroVariant::bsd}) {
    try {
      nontrivial_candidate(1, Rat(1, 100), variant);
      FAIL();
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), Errc::SubcriticalEnergy);
    }
    EXPECT_THROW(nontrivial_candidate(1, Rat(-1), variant), Error);
    EXPECT_THROW(nontrivial_candidate(1, -1.0, variant), Error);
  }
  // Boundary: 16 n^2 E = 1 gives a real double root 1/2.
  const auto edge = nontrivial_candidate(1, Rat(1, 16), ZeroVariant::riemann);
  EXPECT_EQ(edge.plus, QuadNum(Rat(1, 2)));
}

TEST(EnergyFromTau, Examples) {
  EXPECT_NEAR(energy_from_tau(1, 14.134725, ZeroVariant::riemann), 50.0101, 1e-4);
  EXPECT_NEAR(energy_from_tau(1, nontrivial_candidate(1, 1.0, ZeroVariant::riemann).tau, ZeroVariant::riemann), 1.0,
              1e-12);
  EXPECT_NEAR(energy_from_tau(2, 14.134725, ZeroVariant::riemann), energy_from_tau(1, 14.134725, ZeroVariant::riemann) / 4,
              1e-12);
  EXPECT_NEAR(energy_from_tau(2, 14.134725, ZeroVariant::riemann), 12.5025, 1e-4);
  EXPECT_THROW(energy_from_tau(1, 0.0, ZeroVariant::riemann), Error);
}

TEST(EnergyFromTau, RoundTripProperty) {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<std::int64_t> n_dist(1, 60);
  std::uniform_real_distribution<double> e_dist(0.0, 200.0);
  for (auto variant : {ZeroVariant::riemann, ZeroVariant::bsd})
    for (int i = 0; i < 200; ++i) {
      const auto n = n_dist(rng);
      const double E = 1.0 / (8.0 * n * n) + e_dist(rng);
      const auto c = nontrivial_candidate(n, E, variant);
      EXPECT_NEAR(c.plus.real(), variant == ZeroVariant::riemann ? 0.5 : 1.0, 0.0);
      EXPECT_NEAR(energy_from_tau(n, c.tau, variant), E, 1e-10 * std::max(1.0, E));
    }
}

TEST(ZeroMap, Examples) {
  auto r = zero_map_check(3, Rat(1), ZeroVariant::riemann);
  EXPECT_EQ(r.trivial_product, 36);
  EXPECT_EQ(r.matrix_det, 36);
  EXPECT_EQ(r.closed_form_product, 36);
  EXPECT_TRUE(r.det_matches_product);
  EXPECT_TRUE(r.matches_trivial);
  EXPECT_TRUE(r.eigenvalues_match);

  r = zero_map_check(1, Rat(2), ZeroVariant::riemann);
  EXPECT_EQ(r.trivial_product, 4);
  EXPECT_EQ(r.matrix_det, 8);
  EXPECT_TRUE(r.det_matches_product);
  EXPECT_FALSE(r.matches_trivial);

  r = zero_map_check(1, Rat(1), ZeroVariant::bsd);
  EXPECT_EQ(r.matrix_det, 8);
  EXPECT_EQ(r.closed_form_product, 8);
  EXPECT_TRUE(r.det_matches_product);

  EXPECT_THROW(zero_map_check(1, Rat(1, 50), ZeroVariant::riemann), Error);
}

TEST(ZeroMap, RationalEnergySweep) {
  for (std::int64_t n = 1; n <= 30; ++n)
    for (const Rat& E : {Rat(1, 2), Rat(1), Rat(7, 3), Rat(50)})
      for (auto v : {ZeroVariant::riemann, ZeroVariant::bsd}) {
        const auto r = zero_map_check(n, E, v);
        EXPECT_TRUE(r.det_matches_product);
        EXPECT_TRUE(r.eigenvalues_match);
        EXPECT_EQ(r.matrix_det, Rat(BigInt(n) * n * (v == ZeroVariant::riemann ? 4 : 8)) * E);
      }
}
