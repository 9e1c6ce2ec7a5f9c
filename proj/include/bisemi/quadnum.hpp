#pragma once

#include <complex>
#include <ostream>
#include <string>

#include "bisemi/rational.hpp"

namespace bisemi {

/// Exact element a + b*sqrt(d) of a quadratic extension of Q.
///
/// Canonical form: d is squarefree and different from 1 whenever b != 0;
/// rational values always carry b = 0, d = 1. Two QuadNums are therefore
/// equal iff their fields are equal. A negative d means sqrt(d) = i*sqrt(|d|).
class QuadNum {
 public:
  QuadNum() = default;
  QuadNum(Rat a) : a_(std::move(a)) {}  // NOLINT(google-explicit-constructor)
  QuadNum(long long a) : a_(a) {}       // NOLINT(google-explicit-constructor)

  QuadNum(Rat a, Rat b, const BigInt& d) : a_(std::move(a)) {
    if (b == 0 || d == 0) return;
    auto [root, core] = split_square(d);
    b *= Rat(root);
    if (core == 1) {
      a_ += b;
      return;
    }
    b_ = std::move(b);
    d_ = std::move(core);
  }

  /// Exact square root of a rational: sqrt(p/q) = sqrt(p*q)/q.
  static QuadNum sqrt(const Rat& x) {
    if (x == 0) return {};
    const BigInt q = denominator(x);
    return QuadNum(Rat(0), Rat(BigInt(1), q), numerator(x) * q);
  }

  /// The unit sqrt(-1).
  static QuadNum i() { return QuadNum(Rat(0), Rat(1), BigInt(-1)); }

  const Rat& rational_part() const noexcept { return a_; }
  const Rat& surd_coefficient() const noexcept { return b_; }
  const BigInt& radicand() const noexcept { return d_; }

  bool is_rational() const noexcept { return b_ == 0; }
  bool is_imaginary() const noexcept { return b_ != 0 && d_ < 0; }

  /// a - b*sqrt(d); for negative d this is also the complex conjugate.
  QuadNum conjugate() const {
    QuadNum r = *this;
    r.b_ = -r.b_;
    return r;
  }

  /// a^2 - d*b^2, the field norm.
  Rat norm() const { return a_ * a_ - Rat(d_) * b_ * b_; }

  std::complex<double> to_complex() const {
    if (is_rational()) return {to_double(a_), 0.0};
    const double s = std::sqrt(std::abs(to_double(d_)));
    if (d_ < 0) return {to_double(a_), to_double(b_) * s};
    return {to_double(a_) + to_double(b_) * s, 0.0};
  }

  /// "a+b*sqrt(d)" with unit and zero parts elided, e.g. "3+sqrt(5)",
  /// "3/2-1/2*sqrt(5)", "sqrt(-15)".
  std::string to_string() const {
    if (is_rational()) return bisemi::to_string(a_);
    std::string out;
    if (a_ != 0) out = bisemi::to_string(a_);
    Rat mag = b_ < 0 ? Rat(-b_) : b_;
    if (b_ < 0) out += "-";
    else if (!out.empty()) out += "+";
    if (mag != 1) out += bisemi::to_string(mag) + "*";
    out += "sqrt(" + d_.str() + ")";
    return out;
  }

  friend bool operator==(const QuadNum& x, const QuadNum& y) {
    return x.a_ == y.a_ && x.b_ == y.b_ && x.d_ == y.d_;
  }

  QuadNum operator-() const {
    QuadNum r = *this;
    r.a_ = -r.a_;
    r.b_ = -r.b_;
    return r;
  }

  friend QuadNum operator+(const QuadNum& x, const QuadNum& y) {
    const BigInt& d = common_radicand(x, y);
    return QuadNum(x.a_ + y.a_, x.b_ + y.b_, d);
  }
  friend QuadNum operator-(const QuadNum& x, const QuadNum& y) { return x + (-y); }

  friend QuadNum operator*(const QuadNum& x, const QuadNum& y) {
    const BigInt& d = common_radicand(x, y);
    return QuadNum(x.a_ * y.a_ + x.b_ * y.b_ * Rat(d), x.a_ * y.b_ + x.b_ * y.a_, d);
  }

  friend QuadNum operator/(const QuadNum& x, const QuadNum& y) {
    const Rat n = y.norm();
    if (n == 0) throw Error(Errc::DivisionByZero, "division by zero QuadNum");
    const QuadNum num = x * y.conjugate();
    return QuadNum(num.a_ / n, num.b_ / n, num.d_);
  }

  QuadNum& operator+=(const QuadNum& y) { return *this = *this + y; }
  QuadNum& operator-=(const QuadNum& y) { return *this = *this - y; }
  QuadNum& operator*=(const QuadNum& y) { return *this = *this * y; }
  QuadNum& operator/=(const QuadNum& y) { return *this = *this / y; }

  friend std::ostream& operator<<(std::ostream& os, const QuadNum& q) { return os << q.to_string(); }

 private:
  static const BigInt& common_radicand(const QuadNum& x, const QuadNum& y) {
    if (x.is_rational()) return y.d_;
    if (y.is_rational() || x.d_ == y.d_) return x.d_;
    throw Error(Errc::IncompatibleRadicand,
                "sqrt(" + x.d_.str() + ") and sqrt(" + y.d_.str() + ") live in different fields");
  }

  Rat a_{0};
  Rat b_{0};
  BigInt d_{1};
};

inline std::string to_string(const QuadNum& q) { return q.to_string(); }

}  // namespace bisemi
