#pragma once

#include <ostream>
#include <string>
#include <utility>

#include "bisemi/quadnum.hpp"
#include "bisemi/rational.hpp"

namespace bisemi {

/// 2x2 matrix over an exact field (Rat or QuadNum).
template <class T>
struct Mat2 {
  T e11{}, e12{}, e21{}, e22{};

  static Mat2 identity() { return {T(1), T(0), T(0), T(1)}; }
  static Mat2 diag(T a, T d) { return {std::move(a), T(0), T(0), std::move(d)}; }

  T trace() const { return e11 + e22; }
  T det() const { return e11 * e22 - e12 * e21; }
  Mat2 transpose() const { return {e11, e21, e12, e22}; }

  bool is_upper_triangular() const { return e21 == T(0); }
  bool is_lower_triangular() const { return e12 == T(0); }

  friend Mat2 operator*(const Mat2& x, const Mat2& y) {
    return {x.e11 * y.e11 + x.e12 * y.e21, x.e11 * y.e12 + x.e12 * y.e22,
            x.e21 * y.e11 + x.e22 * y.e21, x.e21 * y.e12 + x.e22 * y.e22};
  }

  friend bool operator==(const Mat2& x, const Mat2& y) {
    return x.e11 == y.e11 && x.e12 == y.e12 && x.e21 == y.e21 && x.e22 == y.e22;
  }

  friend std::ostream& operator<<(std::ostream& os, const Mat2& m) {
    using bisemi::to_string;
    return os << "[[" << to_string(m.e11) << "," << to_string(m.e12) << "],[" << to_string(m.e21) << ","
              << to_string(m.e22) << "]]";
  }
};

using Mat2Q = Mat2<Rat>;
using Mat2K = Mat2<QuadNum>;

inline Mat2K lift(const Mat2Q& m) { return {m.e11, m.e12, m.e21, m.e22}; }

struct CharPoly {
  Rat trace;
  Rat det;
};

/// Coefficients of X^2 - trace*X + det.
inline CharPoly charpoly(const Mat2Q& m) { return {m.trace(), m.det()}; }

struct QuadRoots {
  QuadNum plus;
  QuadNum minus;
};

/// Roots (trace +- sqrt(trace^2 - 4 det)) / 2 of X^2 - trace*X + det.
inline QuadRoots quadratic_roots(const Rat& trace, const Rat& det) {
  const QuadNum half_sum(trace / 2);
  const QuadNum half_root = QuadNum::sqrt(trace * trace - 4 * det) / QuadNum(2);
  return {half_sum + half_root, half_sum - half_root};
}

inline QuadRoots eigen_quad(const Mat2Q& m) {
  const CharPoly cp = charpoly(m);
  return quadratic_roots(cp.trace, cp.det);
}

enum class Triangle { upper, lower };

struct GaussFactors {
  Mat2Q unipotent;
  Mat2Q diagonal;
};

/// Splits a triangular matrix into unipotent and diagonal parts.
///
/// Upper: t = unipotent * diagonal. Lower: t = diagonal * unipotent, the
/// transpose of the upper factorization of t^T.
inline GaussFactors gauss_decompose_triangular(const Mat2Q& t, Triangle side) {
  if (side == Triangle::upper && !t.is_upper_triangular())
    throw Error(Errc::NotTriangular, "expected upper triangular matrix, e21 != 0");
  if (side == Triangle::lower && !t.is_lower_triangular())
    throw Error(Errc::NotTriangular, "expected lower triangular matrix, e12 != 0");
  if (t.e11 == 0 || t.e22 == 0) throw Error(Errc::SingularDiagonal, "diagonal entry is zero");

  const Mat2Q diagonal = Mat2Q::diag(t.e11, t.e22);
  if (side == Triangle::upper) return {Mat2Q{Rat(1), t.e12 / t.e22, Rat(0), Rat(1)}, diagonal};
  return {Mat2Q{Rat(1), Rat(0), t.e21 / t.e22, Rat(1)}, diagonal};
}

inline Mat2Q recompose(const GaussFactors& f, Triangle side) {
  return side == Triangle::upper ? f.unipotent * f.diagonal : f.diagonal * f.unipotent;
}

struct BilinearGauss {
  GaussFactors right;  // from the lower triangular factor
  GaussFactors left;   // from the upper triangular factor
};

inline BilinearGauss bilinear_gauss(const Mat2Q& g_right, const Mat2Q& g_left) {
  return {gauss_decompose_triangular(g_right, Triangle::lower), gauss_decompose_triangular(g_left, Triangle::upper)};
}

/// Transposition, exchanging upper and lower Borel matrices.
template <class T>
Mat2<T> involution_first_kind(const Mat2<T>& t) {
  return t.transpose();
}

template <class T>
std::pair<Mat2<T>, Mat2<T>> exchange_involution(const std::pair<Mat2<T>, Mat2<T>>& pair) {
  return {pair.second, pair.first};
}

}  // namespace bisemi
