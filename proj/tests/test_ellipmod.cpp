#include <gtest/gtest.h>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <random>
#include <sstream>

#include "bisemi/ellipmod.hpp"

using namespace bisemi;

namespace {

using Big = boost::multiprecision::cpp_bin_float_50;

// 50-digit value of a real QuadNum, used as the reference sum at x = 0.
Big high_precision(const QuadNum& q) {
  Big a = Big(numerator(q.rational_part())) / Big(denominator(q.rational_part()));
  if (q.is_rational()) return a;
  Big b = Big(numerator(q.surd_coefficient())) / Big(denominator(q.surd_coefficient()));
  return a + b * boost::multiprecision::sqrt(Big(q.radicand()));
}

PlaceSpec real_spec(std::int64_t s, std::int64_t N, std::vector<std::int64_t> mult = {}) {
  return PlaceSpec::make(PlaceKind::real, s, N, std::move(mult));
}

}  // namespace

TEST(BuildPhi, SimpleRule) {
  const auto phi = build_phi(real_spec(3, 1), CoefficientRule::simple, Branch::plus);
  ASSERT_EQ(phi.size(), 3u);
  for (std::int64_t n = 1; n <= 3; ++n) {
    EXPECT_EQ(phi.terms()[n - 1].n, n);
    EXPECT_EQ(phi.terms()[n - 1].m, 0);
    EXPECT_EQ(phi.terms()[n - 1].coeff, QuadNum(n));
  }
}

TEST(BuildPhi, HeckeRule) {
  const auto phi = build_phi(real_spec(2, 1, {1, 2}), CoefficientRule::hecke, Branch::minus);
  ASSERT_EQ(phi.size(), 3u);
  EXPECT_EQ(phi.terms()[2].n, 2);
  EXPECT_EQ(phi.terms()[2].m, 1);
  EXPECT_EQ(phi.terms()[2].coeff, QuadNum(Rat(3), Rat(-1), BigInt(5)));

  const auto plus = build_phi(real_spec(4, 3), CoefficientRule::hecke, Branch::plus);
  for (const auto& t : plus.terms()) EXPECT_EQ(t.coeff, QuadNum(t.n * t.n * 9));
}

TEST(BuildPhi, UnknownRule) {
  try {
    parse_rule("eisenstein");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::UnknownRule);
  }
}

TEST(Semimodule, RejectsUnsortedOrDuplicateTerms) {
  EXPECT_THROW(FourierSemimodule(Side::left, 1, {{2, 0, QuadNum(1)}, {1, 0, QuadNum(1)}}), Error);
  EXPECT_THROW(FourierSemimodule(Side::left, 1, {{1, 0, QuadNum(1)}, {1, 0, QuadNum(2)}}), Error);
  EXPECT_THROW(FourierSemimodule(Side::left, 1, {{0, 0, QuadNum(1)}}), Error);
  EXPECT_THROW(FourierSemimodule(Side::left, 0, {}), Error);
}

TEST(Eval, Examples) {
  const FourierSemimodule single(Side::left, 1, {{1, 0, QuadNum(1)}});
  auto v = eval(single, 0.5);
  EXPECT_NEAR(v.real(), -1.0, 1e-15);
  EXPECT_NEAR(v.imag(), 0.0, 1e-15);

  v = eval(build_phi(real_spec(2, 1), CoefficientRule::simple, Branch::plus), 0.0);
  EXPECT_EQ(v, std::complex<double>(3.0, 0.0));

  v = eval(single.mirror(), 0.25);
  EXPECT_NEAR(v.real(), 0.0, 1e-15);
  EXPECT_NEAR(v.imag(), -1.0, 1e-15);
}

TEST(Eval, PeriodicAndConjugateSymmetric) {
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<std::int64_t> whole(-8, 8);
  std::uniform_int_distribution<std::uint32_t> frac;
  const auto phi = build_phi(real_spec(40, 2, std::vector<std::int64_t>(40, 3)), CoefficientRule::hecke, Branch::minus);
  const auto right = phi.mirror();
  for (int i = 0; i < 200; ++i) {
    const double x = static_cast<double>(whole(rng)) + std::ldexp(static_cast<double>(frac(rng)), -32);
    const auto a = eval(phi, x), b = eval(phi, x + 1.0);
    EXPECT_LT(std::abs(a - b), 1e-9);
    EXPECT_LT(std::abs(a - std::conj(eval(right, x))), 1e-9 * (1 + std::abs(a)));
  }
}

TEST(Eval, ValueAtZeroMatchesHighPrecisionSum) {
  const auto phi = build_phi(real_spec(20, 1, std::vector<std::int64_t>(20, 5)), CoefficientRule::hecke, Branch::plus);
  Big exact = 0;
  for (const auto& t : phi.terms()) exact += high_precision(t.coeff);
  const double ref = exact.convert_to<double>();
  EXPECT_LT(std::abs(eval(phi, 0.0).real() - ref), 1e-12 * std::abs(ref));
}

TEST(Eis, Examples) {
  EXPECT_EQ(eis_coefficient(6, 10).restricted, 60);
  EXPECT_EQ(eis_coefficient(6, 10).classical, 12);
  const auto unit = eis_coefficient(1, 1);
  EXPECT_EQ(unit.restricted, 1);
  EXPECT_EQ(unit.classical, 1);
  // Divisor-enumeration oracle.
  for (std::int64_t n = 1; n <= 300; ++n) {
    std::int64_t sigma = 0;
    for (std::int64_t d = 1; d <= n; ++d)
      if (n % d == 0) sigma += d;
    EXPECT_EQ(eis_coefficient(n, 7).classical, sigma);
    EXPECT_EQ(eis_coefficient(n, 7).restricted, n * 7);
  }
  EXPECT_THROW(eis_coefficient(0, 1), Error);
}

TEST(SemitorusSplit, Examples) {
  auto [r1, r2] = semitorus_split(Rat(60));
  EXPECT_EQ(r1, QuadNum(Rat(0), Rat(2), BigInt(15)));
  EXPECT_EQ(r1, r2);
  EXPECT_EQ(r1 * r2, QuadNum(60));
  auto zero = semitorus_split(Rat(0));
  EXPECT_EQ(zero.first, QuadNum(0));
  auto nine = semitorus_split(Rat(9));
  EXPECT_EQ(nine.first, QuadNum(3));
  auto [f1, f2] = semitorus_split(60.0);
  EXPECT_NEAR(f1 * f2, 60.0, 60.0 * 2.3e-16);
  try {
    semitorus_split(Rat(-1));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::NegativeInput);
  }
  EXPECT_THROW(semitorus_split(-0.5), Error);
}

TEST(DiagonalTensor, Examples) {
  const auto spec = real_spec(2, 1);
  const auto right = build_phi(spec, CoefficientRule::simple, Branch::minus, Side::right);
  const auto left = build_phi(spec, CoefficientRule::simple, Branch::plus, Side::left);
  const auto p = diagonal_tensor(right, left);
  EXPECT_EQ(p.terms, (std::vector<BisemiTerm>{{1, 0, QuadNum(1), QuadNum(1)}, {2, 0, QuadNum(2), QuadNum(2)}}));

  const FourierSemimodule r1(Side::right, 1, {{3, 1, QuadNum(5)}});
  const FourierSemimodule l1(Side::left, 1, {{3, 1, QuadNum(7)}});
  EXPECT_EQ(diagonal_tensor(r1, l1).terms.size(), 1u);

  const FourierSemimodule l2(Side::left, 1, {{3, 2, QuadNum(7)}});
  try {
    diagonal_tensor(r1, l2);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::GridMismatch);
  }
  EXPECT_THROW(diagonal_tensor(l1, l1), Error);
}

TEST(KernelBipoints, SimpleRuleGivesFourNSquared) {
  const auto spec = real_spec(50, 1);
  const auto p = diagonal_tensor(build_phi(spec, CoefficientRule::simple, Branch::minus, Side::right),
                                 build_phi(spec, CoefficientRule::simple, Branch::plus, Side::left));
  const auto k = kernel_bipoints(p);
  ASSERT_EQ(k.size(), 50u);
  EXPECT_EQ(k[0].second, 4);
  EXPECT_EQ(k[2].second, 36);
  EXPECT_EQ(k[1].second, (-2 * 2) * (-2 * 2));
  for (const auto& [n, v] : k) EXPECT_EQ(v, 4 * n * n);
}

TEST(KernelBipoints, RejectsOtherRules) {
  const auto spec = real_spec(3, 2);
  const auto p = diagonal_tensor(build_phi(spec, CoefficientRule::simple, Branch::minus, Side::right),
                                 build_phi(spec, CoefficientRule::simple, Branch::plus, Side::left));
  try {
    kernel_bipoints(p);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::WrongRule);
  }
}

TEST(Supercuspidal, NilpotentMultiplicity) {
  const SupercuspidalRep rep({{1, 1}, {2, 1}, {3, 2}});
  const auto out = apply_nilpotent_multiplicity(rep, 2, 5);
  EXPECT_EQ(out.multiplicity(2), 5);
  EXPECT_EQ(out.multiplicity(1), 1);
  EXPECT_EQ(out.multiplicity(3), 2);
  EXPECT_EQ(apply_nilpotent_multiplicity(rep, 3, 2), rep);
  EXPECT_EQ(apply_nilpotent_multiplicity(rep, 1, 1), rep);
  try {
    apply_nilpotent_multiplicity(rep, 9, 2);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::UnknownClass);
  }
  EXPECT_THROW(SupercuspidalRep({{2, 1}, {1, 1}}), Error);
}

TEST(Serialization, TextFormRoundTrip) {
  const auto phi = build_phi(real_spec(3, 2, {1, 2, 1}), CoefficientRule::hecke, Branch::minus, Side::right);
  std::ostringstream os;
  write_semimodule(os, phi);
  EXPECT_EQ(os.str().substr(0, os.str().find('\n')), "semimodule side=right N=2 terms=4");
  std::istringstream is(os.str());
  EXPECT_EQ(read_semimodule(is), phi);

  std::istringstream bad("semimodule side=up N=1 terms=0\n");
  EXPECT_THROW(read_semimodule(bad), Error);
}
