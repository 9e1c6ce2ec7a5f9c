#pragma once

// Numeric Riemann zeta: Euler-Maclaurin summation for Re(s) >= 0, the
// functional equation for Re(s) < 0, and zero location on the critical line.

#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "bisemi/rational.hpp"

namespace bisemi {

using Complex = std::complex<double>;

/// Complex Gamma via the Lanczos approximation (g = 7, 9 terms), reflected
/// for Re(z) < 1/2.
inline Complex gamma(Complex z) {
  static constexpr std::array<double, 9> coef = {
      0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
      771.32342877765313,   -176.61502916214059,   12.507343278686905,
      -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};
  constexpr double pi = std::numbers::pi;
  if (z.real() < 0.5) return pi / (std::sin(pi * z) * gamma(1.0 - z));
  z -= 1.0;
  Complex x = coef[0];
  for (std::size_t i = 1; i < coef.size(); ++i) x += coef[i] / (z + static_cast<double>(i));
  const Complex t = z + 7.5;
  return std::sqrt(2.0 * pi) * std::pow(t, z + 0.5) * std::exp(-t) * x;
}

namespace detail {

// B_{2k} / (2k)! for k = 1..count, from the exact Bernoulli recurrence.
inline const std::vector<double>& bernoulli_over_factorial() {
  static const std::vector<double> table = [] {
    constexpr int count = 40;
    const int top = 2 * count;
    std::vector<Rat> B(top + 1);
    B[0] = 1;
    for (int m = 1; m <= top; ++m) {
      Rat acc = 0;
      BigInt binom = 1;  // C(m+1, j)
      for (int j = 0; j < m; ++j) {
        acc += Rat(binom) * B[j];
        binom = binom * (m + 1 - j) / (j + 1);
      }
      B[m] = -acc / Rat(m + 1);
    }
    std::vector<double> out;
    BigInt fact = 1;
    for (int k = 1; k <= top; ++k) {
      fact *= k;
      if (k % 2 == 0) out.push_back(to_double(B[k] / Rat(fact)));
    }
    return out;
  }();
  return table;
}

struct ZetaSum {
  Complex value;
  double tail;  // magnitude of the last correction applied
};

inline ZetaSum zeta_euler_maclaurin(Complex s) {
  const int N = 40 + static_cast<int>(std::ceil(std::abs(s.imag())));
  Complex sum = 0.0;
  for (int n = 1; n < N; ++n) sum += std::exp(-s * std::log(static_cast<double>(n)));
  const double logN = std::log(static_cast<double>(N));
  const Complex N_pow = std::exp(-s * logN);  // N^{-s}
  sum += N_pow * static_cast<double>(N) / (s - 1.0) + 0.5 * N_pow;

  const auto& bf = bernoulli_over_factorial();
  Complex rising = s;                    // s (s+1) ... (s+2k-2)
  Complex power = N_pow / static_cast<double>(N);  // N^{-s-2k+1}
  double tail = 0.0;
  for (std::size_t k = 1; k <= bf.size(); ++k) {
    const Complex term = bf[k - 1] * rising * power;
    sum += term;
    tail = std::abs(term);
    if (tail < 1e-17 * std::abs(sum)) break;
    const double j = 2.0 * static_cast<double>(k);
    rising *= (s + j - 1.0) * (s + j);
    power /= static_cast<double>(N) * static_cast<double>(N);
  }
  return {sum, tail};
}

}  // namespace detail

struct ZetaValue {
  Complex value;
  double error_estimate;
};

/// Riemann zeta with an error estimate. Throws PoleAtOne at s = 1.
inline ZetaValue zeta_with_estimate(Complex s) {
  if (s == Complex(1.0, 0.0)) throw Error(Errc::PoleAtOne, "zeta has a pole at s = 1");
  if (s.real() >= 0.0) {
    const auto r = detail::zeta_euler_maclaurin(s);
    return {r.value, r.tail};
  }
  // zeta(s) = 2^s pi^{s-1} sin(pi s / 2) Gamma(1 - s) zeta(1 - s)
  constexpr double pi = std::numbers::pi;
  const auto r = detail::zeta_euler_maclaurin(1.0 - s);
  const Complex factor = std::pow(Complex(2.0), s) * std::pow(Complex(pi), s - 1.0) * std::sin(pi * s / 2.0) *
                         gamma(1.0 - s);
  return {factor * r.value, std::abs(factor) * r.tail};
}

inline Complex zeta_numeric(Complex s) { return zeta_with_estimate(s).value; }

/// xi(s) = (s - 1) pi^{-s/2} Gamma(s/2 + 1) zeta(s), symmetric under s -> 1 - s.
inline Complex xi(Complex s) {
  return (s - 1.0) * std::pow(Complex(std::numbers::pi), -s / 2.0) * gamma(s / 2.0 + 1.0) * zeta_numeric(s);
}

/// Hardy's Z(t) = e^{i theta(t)} zeta(1/2 + i t), real for real t.
inline double hardy_z(double t) {
  const Complex g = gamma(Complex(0.25, t / 2.0));
  const Complex rotation = (g / std::abs(g)) * std::exp(Complex(0.0, -0.5 * t * std::log(std::numbers::pi)));
  return (rotation * zeta_numeric(Complex(0.5, t))).real();
}

enum class ZeroVariant { riemann, bsd };

inline std::string to_string(ZeroVariant v) { return v == ZeroVariant::riemann ? "riemann" : "bsd"; }

struct ZeroScan {
  double t_max = 60.0;
  double step = 0.05;
};

struct ZeroLocation {
  std::int64_t index;
  double sigma;  // 1/2 (riemann) or 1 (bsd, shifted line)
  double tau;
  double abs_zeta;      // |zeta(1/2 + i tau)|
  double bracket_width;
};

/// k-th positive ordinate of a zero on the critical line, by sign changes of
/// Z(t) on a uniform grid followed by bisection. The bsd variant reports the
/// same ordinate with real part 1.
inline ZeroLocation locate_zeta_zero(std::int64_t k, ZeroVariant variant, ZeroScan scan = {}) {
  if (k < 1) throw Error(Errc::InvalidSpec, "zero index k must be >= 1");
  if (!(scan.step > 0.0) || !(scan.t_max > scan.step)) throw Error(Errc::InvalidSpec, "bad scan window");
  std::int64_t seen = 0;
  double lo = scan.step;
  double z_lo = hardy_z(lo);
  const auto steps = static_cast<std::int64_t>(std::floor(scan.t_max / scan.step));
  for (std::int64_t i = 2; i <= steps; ++i) {
    const double hi = static_cast<double>(i) * scan.step;
    const double z_hi = hardy_z(hi);
    if ((z_lo < 0.0) != (z_hi < 0.0) && ++seen == k) {
      double a = lo, b = hi, za = z_lo;
      for (int it = 0; it < 200 && b - a > 1e-13 * b; ++it) {
        const double mid = 0.5 * (a + b);
        const double zm = hardy_z(mid);
        if ((zm < 0.0) == (za < 0.0)) {
          a = mid;
          za = zm;
        } else {
          b = mid;
        }
      }
      const double tau = 0.5 * (a + b);
      return {k, variant == ZeroVariant::riemann ? 0.5 : 1.0, tau, std::abs(zeta_numeric(Complex(0.5, tau))), b - a};
    }
    lo = hi;
    z_lo = z_hi;
  }
  throw Error(Errc::SearchExhausted,
              "found only " + std::to_string(seen) + " zeros below t = " + std::to_string(scan.t_max));
}

}  // namespace bisemi
