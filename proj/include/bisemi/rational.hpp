#pragma once

// Arbitrary-precision integers and rationals, plus the integer factoring
// needed to reduce square roots to squarefree form.

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/multiprecision/miller_rabin.hpp>

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <limits>
#include <map>
#include <numeric>
#include <string>
#include <string_view>
#include <vector>

#include "bisemi/error.hpp"

namespace bisemi {

using BigInt = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline BigInt numerator(const Rat& r) { return boost::multiprecision::numerator(r); }
inline BigInt denominator(const Rat& r) { return boost::multiprecision::denominator(r); }

inline bool is_integer(const Rat& r) { return denominator(r) == 1; }

inline double to_double(const Rat& r) { return r.convert_to<double>(); }
inline double to_double(const BigInt& n) { return n.convert_to<double>(); }

/// "p" for integers, "p/q" otherwise.
inline std::string to_string(const Rat& r) {
  if (is_integer(r)) return numerator(r).str();
  return numerator(r).str() + "/" + denominator(r).str();
}

inline std::string to_string(const BigInt& n) { return n.str(); }

/// Parses an integer ("-12"), a fraction ("3/4") or a plain decimal
/// ("50.0101", "-1e-3") into an exact rational.
inline Rat parse_rat(std::string_view text) {
  auto fail = [&] { throw Error(Errc::ParseError, "not a rational number: '" + std::string(text) + "'"); };
  auto trim = [](std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
  };
  text = trim(text);
  if (text.empty()) fail();

  auto parse_int = [&](std::string_view s) -> BigInt {
    if (s.empty()) fail();
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) fail();
    for (std::size_t j = i; j < s.size(); ++j)
      if (!std::isdigit(static_cast<unsigned char>(s[j]))) fail();
    BigInt v(std::string(s.substr(i)));
    return s[0] == '-' ? BigInt(-v) : v;
  };

  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    BigInt num = parse_int(trim(text.substr(0, slash)));
    BigInt den = parse_int(trim(text.substr(slash + 1)));
    if (den == 0) throw Error(Errc::DivisionByZero, "zero denominator in '" + std::string(text) + "'");
    return Rat(num, den);
  }

  std::string_view mantissa = text;
  long long exponent = 0;
  if (auto e = text.find_first_of("eE"); e != std::string_view::npos) {
    mantissa = text.substr(0, e);
    exponent = static_cast<long long>(parse_int(text.substr(e + 1)));
  }
  bool negative = false;
  if (!mantissa.empty() && (mantissa[0] == '-' || mantissa[0] == '+')) {
    negative = mantissa[0] == '-';
    mantissa.remove_prefix(1);
  }
  std::string digits;
  long long frac_digits = 0;
  bool seen_point = false;
  for (char c : mantissa) {
    if (c == '.') {
      if (seen_point) fail();
      seen_point = true;
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      digits.push_back(c);
      if (seen_point) ++frac_digits;
    } else {
      fail();
    }
  }
  if (digits.empty()) fail();
  Rat value{BigInt(digits)};
  long long scale = exponent - frac_digits;
  BigInt ten_pow = boost::multiprecision::pow(BigInt(10), static_cast<unsigned>(scale < 0 ? -scale : scale));
  value = scale < 0 ? value / Rat(ten_pow) : value * Rat(ten_pow);
  return negative ? Rat(-value) : value;
}

/// Exact integer square root; returns false when n is not a perfect square.
inline bool exact_sqrt(const BigInt& n, BigInt& root) {
  if (n < 0) return false;
  root = boost::multiprecision::sqrt(n);
  return root * root == n;
}

namespace detail {

inline std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

inline std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
  std::uint64_t result = 1 % m;
  base %= m;
  while (exp > 0) {
    if (exp & 1) result = mul_mod(result, base, m);
    base = mul_mod(base, base, m);
    exp >>= 1;
  }
  return result;
}

// Deterministic for all 64-bit inputs.
inline bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  int r = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++r;
  }
  for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    std::uint64_t x = pow_mod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < r; ++i) {
      x = mul_mod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

// Brent's variant of Pollard rho; n must be odd and composite.
inline std::uint64_t pollard_brent_u64(std::uint64_t n) {
  for (std::uint64_t c = 1;; ++c) {
    std::uint64_t y = 2, x = 2, q = 1, g = 1, ys = 2;
    const std::uint64_t block = 128;
    std::uint64_t r = 1;
    auto f = [&](std::uint64_t v) { return (mul_mod(v, v, n) + c) % n; };
    do {
      x = y;
      for (std::uint64_t i = 0; i < r; ++i) y = f(y);
      std::uint64_t k = 0;
      do {
        ys = y;
        for (std::uint64_t i = 0; i < std::min(block, r - k); ++i) {
          y = f(y);
          q = mul_mod(q, x > y ? x - y : y - x, n);
        }
        g = std::gcd(q, n);
        k += block;
      } while (k < r && g == 1);
      r *= 2;
    } while (g == 1);
    if (g == n) {
      do {
        ys = f(ys);
        g = std::gcd(x > ys ? x - ys : ys - x, n);
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

inline void factor_u64(std::uint64_t n, std::map<BigInt, unsigned>& out) {
  if (n == 1) return;
  if (is_prime_u64(n)) {
    ++out[BigInt(n)];
    return;
  }
  std::uint64_t d = pollard_brent_u64(n);
  factor_u64(d, out);
  factor_u64(n / d, out);
}

inline BigInt pollard_rho_big(const BigInt& n) {
  for (unsigned c = 1;; ++c) {
    BigInt x = 2, y = 2, d = 1;
    auto f = [&](const BigInt& v) { return BigInt((v * v + c) % n); };
    while (d == 1) {
      x = f(x);
      y = f(f(y));
      d = boost::multiprecision::gcd(BigInt(x > y ? x - y : y - x), n);
    }
    if (d != n) return d;
  }
}

inline void factor_big(const BigInt& n, std::map<BigInt, unsigned>& out) {
  if (n == 1) return;
  if (n <= std::numeric_limits<std::uint64_t>::max()) {
    factor_u64(static_cast<std::uint64_t>(n), out);
    return;
  }
  if (boost::multiprecision::miller_rabin_test(n, 32)) {
    ++out[n];
    return;
  }
  BigInt root;
  if (exact_sqrt(n, root)) {
    std::map<BigInt, unsigned> half;
    factor_big(root, half);
    for (auto& [p, e] : half) out[p] += 2 * e;
    return;
  }
  BigInt d = pollard_rho_big(n);
  factor_big(d, out);
  factor_big(BigInt(n / d), out);
}

}  // namespace detail

/// Prime factorization of |n| (n != 0), as prime -> exponent.
inline std::map<BigInt, unsigned> factorize(BigInt n) {
  if (n == 0) throw Error(Errc::InvalidSpec, "cannot factor zero");
  if (n < 0) n = -n;
  std::map<BigInt, unsigned> out;
  for (unsigned p : {2u, 3u, 5u, 7u, 11u, 13u, 17u, 19u, 23u, 29u, 31u, 37u, 41u, 43u, 47u}) {
    while (n % p == 0) {
      ++out[BigInt(p)];
      n /= p;
    }
  }
  detail::factor_big(n, out);
  return out;
}

inline bool is_prime(const BigInt& n) {
  if (n < 2) return false;
  if (n <= std::numeric_limits<std::uint64_t>::max()) return detail::is_prime_u64(static_cast<std::uint64_t>(n));
  return boost::multiprecision::miller_rabin_test(n, 32);
}

/// n = root^2 * core with core squarefree and carrying the sign of n.
struct SquareSplit {
  BigInt root;
  BigInt core;
};

inline SquareSplit split_square(const BigInt& n) {
  if (n == 0) return {BigInt(0), BigInt(0)};
  SquareSplit s{BigInt(1), BigInt(n < 0 ? -1 : 1)};
  for (const auto& [p, e] : factorize(n)) {
    s.root *= boost::multiprecision::pow(p, e / 2);
    if (e % 2 == 1) s.core *= p;
  }
  return s;
}

}  // namespace bisemi
