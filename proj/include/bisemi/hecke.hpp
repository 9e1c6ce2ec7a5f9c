#pragma once

// Hecke coset representatives, split Cartan and decomposition-group
// elements, and their exact eigenvalue algebra.

#include <cmath>
#include <cstdint>
#include <string>

#include "bisemi/mat2.hpp"

namespace bisemi {

enum class Branch { plus, minus };

inline std::string to_string(Branch b) { return b == Branch::plus ? "plus" : "minus"; }

/// Place cardinality q, sublattice index b and level N; q_N = q*N, b_N = b*N.
struct HeckeParams {
  std::int64_t q = 1;
  std::int64_t b = 0;
  std::int64_t N = 1;

  static HeckeParams make(std::int64_t q, std::int64_t b, std::int64_t N) {
    if (q < 1) throw Error(Errc::InvalidSpec, "q must be >= 1");
    if (b < 0) throw Error(Errc::InvalidSpec, "b must be >= 0");
    if (N < 1) throw Error(Errc::InvalidSpec, "N must be >= 1");
    return {q, b, N};
  }

  BigInt q_N() const { return BigInt(q) * N; }
  BigInt b_N() const { return BigInt(b) * N; }
};

struct EigenPair {
  QuadNum plus;
  QuadNum minus;
  Rat trace;
  Rat det;

  const QuadNum& select(Branch br) const { return br == Branch::plus ? plus : minus; }
};

/// Upper unipotent u(b) = [[1,b],[0,1]].
inline Mat2Q unipotent_upper(const BigInt& b) { return {Rat(1), Rat(b), Rat(0), Rat(1)}; }

/// alpha = diag(1, q_N^2).
inline Mat2Q split_cartan(const BigInt& q_N) { return Mat2Q::diag(Rat(1), Rat(q_N * q_N)); }

/// D = u(b_N) * u(b_N)^T = [[1+b_N^2, b_N],[b_N, 1]], unimodular.
inline Mat2Q decomposition_element(const BigInt& b_N) {
  if (b_N < 0) throw Error(Errc::InvalidSpec, "b_N must be >= 0");
  const Mat2Q u = unipotent_upper(b_N);
  return u * u.transpose();
}

/// g2(q_N^2, b_N) = [u(b_N) u(b_N)^T] diag(1, q_N^2)
///                = [[1+b_N^2, b_N q_N^2],[b_N, q_N^2]].
inline Mat2Q coset_matrix(const HeckeParams& p) { return decomposition_element(p.b_N()) * split_cartan(p.q_N()); }

/// Closed-form eigenvalues for given q_N and b_N:
/// trace = 1 + b_N^2 + q_N^2, det = q_N^2,
/// lambda_+- = (trace +- sqrt(trace^2 - 4 q_N^2)) / 2.
inline EigenPair eigen_pair(const BigInt& q_N, const BigInt& b_N) {
  const Rat q2(q_N * q_N);
  const Rat trace = 1 + Rat(b_N * b_N) + q2;
  const QuadRoots roots = quadratic_roots(trace, q2);
  return {roots.plus, roots.minus, trace, q2};
}

inline EigenPair eigenvalues(const HeckeParams& p) { return eigen_pair(p.q_N(), p.b_N()); }

/// Eigenvalues with the level fixed to 1 (Hecke and Frobenius eigenvalues coincide).
inline EigenPair frobenius_eigenvalues(std::int64_t q, std::int64_t b) {
  return eigenvalues(HeckeParams::make(q, b, 1));
}

/// Half-sum and half-difference of an eigenvalue pair.
struct Translation {
  QuadNum radius;  // (lambda_+ + lambda_-)/2
  QuadNum center;  // (lambda_+ - lambda_-)/2
};

inline Translation translate_to_origin(const EigenPair& e) {
  const QuadNum two(2);
  return {(e.plus + e.minus) / two, (e.plus - e.minus) / two};
}

/// Double-precision lambda_branch(q_N^2, b_N^2). The smaller root is taken
/// as det / lambda_+ to avoid cancellation.
inline double lambda_value(Branch br, double q_N, double b_N) {
  const double q2 = q_N * q_N;
  const double trace = 1.0 + b_N * b_N + q2;
  const double disc = (trace - 2.0 * q_N) * (trace + 2.0 * q_N);
  const double plus = 0.5 * (trace + std::sqrt(disc));
  return br == Branch::plus ? plus : q2 / plus;
}

}  // namespace bisemi
