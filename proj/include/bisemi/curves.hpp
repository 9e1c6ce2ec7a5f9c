#pragma once

// Short Weierstrass curves over Q and their reductions mod odd primes.

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "bisemi/ellipmod.hpp"
#include "bisemi/lfunc.hpp"

namespace bisemi {

/// y^2 = x^3 + a x + b, nonsingular over Q.
class WeierstrassCurve {
 public:
  static WeierstrassCurve make(std::int64_t a, std::int64_t b) {
    WeierstrassCurve c(a, b);
    if (c.discriminant() == 0)
      throw Error(Errc::SingularCurve, "y^2 = x^3 + " + std::to_string(a) + "x + " + std::to_string(b) + " is singular");
    return c;
  }

  std::int64_t a() const noexcept { return a_; }
  std::int64_t b() const noexcept { return b_; }

  /// -16 (4 a^3 + 27 b^2)
  BigInt discriminant() const {
    const BigInt a(a_), b(b_);
    return -16 * (4 * a * a * a + 27 * b * b);
  }

 private:
  WeierstrassCurve(std::int64_t a, std::int64_t b) : a_(a), b_(b) {}
  std::int64_t a_;
  std::int64_t b_;
};

/// Odd primes not dividing the discriminant. p = 2 is always excluded.
inline bool good_reduction(const WeierstrassCurve& c, std::int64_t p) {
  if (p == 2) return false;
  if (!is_prime(BigInt(p))) throw Error(Errc::NotPrime, std::to_string(p) + " is not prime");
  return c.discriminant() % p != 0;
}

struct ReductionReport {
  std::int64_t p;
  bool good;
  std::int64_t count;  // #E(F_p) including the point at infinity
  std::int64_t a_p;    // p + 1 - count
};

/// Exhaustive count: for each x, 1 + legendre(x^3 + a x + b) points, plus infinity.
inline ReductionReport count_points_bruteforce(const WeierstrassCurve& c, std::int64_t p) {
  if (p == 2) throw Error(Errc::EvenCharacteristic, "short Weierstrass form degenerates at p = 2");
  if (p < 2 || !is_prime(BigInt(p))) throw Error(Errc::NotPrime, std::to_string(p) + " is not an odd prime");
  if (!good_reduction(c, p)) throw Error(Errc::BadReduction, std::to_string(p) + " divides the discriminant");

  std::vector<char> is_square(static_cast<std::size_t>(p), 0);
  for (std::int64_t y = 0; y < p; ++y) is_square[static_cast<std::size_t>(y * y % p)] = 1;
  const std::int64_t a = ((c.a() % p) + p) % p;
  const std::int64_t b = ((c.b() % p) + p) % p;
  std::int64_t count = 1;
  for (std::int64_t x = 0; x < p; ++x) {
    const std::int64_t rhs = ((x * x % p) * x % p + a * x % p + b) % p;
    if (rhs == 0) count += 1;
    else if (is_square[static_cast<std::size_t>(rhs)]) count += 2;
  }
  return {p, true, count, p + 1 - count};
}

struct MpFormulaReport {
  BigInt det;    // p_N^2
  BigInt trace;  // 1 + m^2 + p_N^2
  BigInt value;  // |det - trace + 1| = m^2
  BigInt root;   // sqrt(value)
  bool holds;    // root == m and root^2 == value
};

/// sqrt|det rho - trace rho + 1| for rho with trace 1 + m^2 + p_N^2 and det p_N^2.
inline MpFormulaReport mp_formula_check(std::int64_t p, std::int64_t N, std::int64_t m) {
  if (m < 0) throw Error(Errc::InvalidSpec, "m must be >= 0");
  MpFormulaReport r;
  const BigInt pN = BigInt(p) * N;
  r.det = pN * pN;
  r.trace = 1 + BigInt(m) * m + r.det;
  r.value = boost::multiprecision::abs(BigInt(r.det - r.trace + 1));
  const bool exact = exact_sqrt(r.value, r.root);
  r.holds = exact && r.root == m;
  return r;
}

/// One class per good odd prime p <= p_max, with representative index
/// m_p = #E(F_p) and coefficient lambda_branch(p_N^2, (m_p N)^2).
/// The minus branch is a right series, the plus branch a left one.
inline FourierSemimodule curve_to_semimodule(const WeierstrassCurve& c, std::int64_t p_max, std::int64_t N,
                                             Branch branch) {
  if (N < 1) throw Error(Errc::InvalidSpec, "N must be >= 1");
  std::vector<FourierTerm> terms;
  for (auto p : primes_up_to(p_max)) {
    if (!good_reduction(c, p)) continue;
    const auto report = count_points_bruteforce(c, p);
    const auto e = eigen_pair(BigInt(p) * N, BigInt(report.count) * N);
    terms.push_back({p, report.count, e.select(branch)});
  }
  return FourierSemimodule(branch == Branch::minus ? Side::right : Side::left, N, std::move(terms));
}

struct RestrictedPlaces {
  std::int64_t count;  // N_g
  std::vector<std::int64_t> places;
};

/// Good-reduction odd primes up to p_max.
inline RestrictedPlaces restricted_rank_count(const WeierstrassCurve& c, std::int64_t p_max) {
  RestrictedPlaces out{0, {}};
  for (auto p : primes_up_to(p_max))
    if (good_reduction(c, p)) out.places.push_back(p);
  out.count = static_cast<std::int64_t>(out.places.size());
  return out;
}

}  // namespace bisemi
