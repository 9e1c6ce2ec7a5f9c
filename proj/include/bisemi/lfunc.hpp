#pragma once

// Hecke L-series: truncated Dirichlet sums, the diagonal (degenerate)
// product, finite Euler products, class partitions, and the determinant maps
// carrying trivial zeros to candidate non-trivial zeros.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <vector>

#include "bisemi/hecke.hpp"
#include "bisemi/zeta.hpp"

namespace bisemi {

/// Representative indices m contributing to class n; {0} unless configured.
struct MultiplicityRule {
  std::vector<std::int64_t> default_m{0};
  std::map<std::int64_t, std::vector<std::int64_t>> table;

  static MultiplicityRule constant(std::int64_t m) { return {{m}, {}}; }

  const std::vector<std::int64_t>& at(std::int64_t n) const {
    auto it = table.find(n);
    return it == table.end() ? default_m : it->second;
  }
};

/// A truncated Hecke L-series: sum over classes n <= n_max of
/// lambda_branch(n_N^2, m_N^2) n^{-s}, optionally restricted to a class set
/// or driven by an explicit coefficient table.
struct SeriesSpec {
  Branch branch = Branch::minus;
  std::int64_t N = 1;
  std::int64_t n_max = 1;
  MultiplicityRule m_rule;
  std::optional<std::set<std::int64_t>> classes;
  std::optional<std::map<std::int64_t, double>> coefficient_table;

  void validate() const {
    if (n_max < 1) throw Error(Errc::InvalidSpec, "n_max must be >= 1");
    if (N < 1) throw Error(Errc::InvalidSpec, "N must be >= 1");
  }

  bool includes(std::int64_t n) const {
    if (n < 1 || n > n_max) return false;
    if (classes && !classes->contains(n)) return false;
    if (coefficient_table && !coefficient_table->contains(n)) return false;
    return true;
  }

  std::vector<std::int64_t> class_list() const {
    std::vector<std::int64_t> out;
    if (classes || coefficient_table) {
      std::set<std::int64_t> candidates;
      if (classes) candidates = *classes;
      else
        for (const auto& [n, c] : *coefficient_table) candidates.insert(n);
      for (auto n : candidates)
        if (includes(n)) out.push_back(n);
      return out;
    }
    out.resize(static_cast<std::size_t>(n_max));
    std::iota(out.begin(), out.end(), std::int64_t{1});
    return out;
  }

  /// Sum over m of lambda_branch(n_N^2, m_N^2).
  double coefficient(std::int64_t n) const {
    if (coefficient_table) return coefficient_table->at(n);
    double c = 0.0;
    for (auto m : m_rule.at(n))
      c += lambda_value(branch, static_cast<double>(n * N), static_cast<double>(m * N));
    return c;
  }

  /// Sum over m of lambda_branch(n_N^2, m_N^2)^2.
  double coefficient_squared(std::int64_t n) const {
    if (coefficient_table) {
      const double c = coefficient_table->at(n);
      return c * c;
    }
    double c = 0.0;
    for (auto m : m_rule.at(n)) {
      const double l = lambda_value(branch, static_cast<double>(n * N), static_cast<double>(m * N));
      c += l * l;
    }
    return c;
  }
};

namespace detail {

// Neumaier compensated summation.
class CompensatedSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) comp_ += (sum_ - t) + x;
    else comp_ += (x - t) + sum_;
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

inline Complex power_minus(std::int64_t n, Complex s) { return std::exp(-s * std::log(static_cast<double>(n))); }

}  // namespace detail

struct SeriesValue {
  Complex value;
  double error_estimate;  // magnitude of the last included term
};

/// sum_{n in spec} lambda(n) n^{-s}, accumulated in ascending n.
inline SeriesValue partial_sum(const SeriesSpec& spec, Complex s) {
  spec.validate();
  detail::CompensatedSum re, im;
  double last = 0.0;
  for (auto n : spec.class_list()) {
    const Complex term = spec.coefficient(n) * detail::power_minus(n, s);
    re.add(term.real());
    im.add(term.imag());
    last = std::abs(term);
  }
  return {{re.value(), im.value()}, last};
}

/// Diagonal product sum_n lambda_R(n) lambda_L(n) n^{-2x}; off-diagonal terms are absent.
inline double degenerate_product(const SeriesSpec& right, const SeriesSpec& left, double x) {
  right.validate();
  left.validate();
  const auto classes = right.class_list();
  if (classes != left.class_list()) throw Error(Errc::GridMismatch, "right and left series have different classes");
  detail::CompensatedSum sum;
  for (auto n : classes) sum.add(right.coefficient(n) * left.coefficient(n) * std::pow(static_cast<double>(n), -2.0 * x));
  return sum.value();
}

/// Unit-modulus values on residues mod N; residues sharing a factor with N are unused.
class DirichletCharacter {
 public:
  static DirichletCharacter trivial(std::int64_t modulus) {
    return DirichletCharacter(modulus, std::vector<Complex>(static_cast<std::size_t>(modulus), Complex(1.0)));
  }

  DirichletCharacter(std::int64_t modulus, std::vector<Complex> values) : modulus_(modulus), values_(std::move(values)) {
    if (modulus_ < 1) throw Error(Errc::InvalidSpec, "character modulus must be >= 1");
    if (static_cast<std::int64_t>(values_.size()) != modulus_)
      throw Error(Errc::InvalidSpec, "character table needs one value per residue");
    for (std::int64_t r = 0; r < modulus_; ++r)
      if (std::gcd(r, modulus_) == 1 && std::abs(std::abs(values_[static_cast<std::size_t>(r)]) - 1.0) > 1e-12)
        throw Error(Errc::InvalidSpec, "character values on units must have modulus 1");
  }

  std::int64_t modulus() const noexcept { return modulus_; }
  Complex operator()(std::int64_t q) const { return values_[static_cast<std::size_t>(q % modulus_)]; }

 private:
  std::int64_t modulus_;
  std::vector<Complex> values_;
};

inline std::vector<std::int64_t> primes_up_to(std::int64_t limit) {
  std::vector<std::int64_t> primes;
  if (limit < 2) return primes;
  std::vector<bool> composite(static_cast<std::size_t>(limit) + 1, false);
  for (std::int64_t i = 2; i <= limit; ++i) {
    if (composite[static_cast<std::size_t>(i)]) continue;
    primes.push_back(i);
    for (std::int64_t j = i * i; j <= limit; j += i) composite[static_cast<std::size_t>(j)] = true;
  }
  return primes;
}

struct EulerFactor {
  std::int64_t prime;
  bool divides_level;
  Complex factor;  // (1 - c q^{-s})^{-1}
};

struct EulerProduct {
  Complex value;
  std::int64_t p_max;
  std::vector<EulerFactor> factors;
  double max_factor_abs;
  bool diverging;          // a factor was non-finite or its denominator vanished
  double error_estimate;   // |last factor - 1|
};

/// Finite Euler product over primes q <= p_max admitted by the spec.
/// Each factor is (1 - Lambda(q) c(q) q^{-s})^{-1} with Lambda(q) the sum of
/// squared eigenvalues over the m-grid; c(q) = 1 when q | N and chi(q)^2 otherwise.
inline EulerProduct euler_product(const SeriesSpec& spec, Complex s, std::int64_t p_max,
                                  const DirichletCharacter& chi) {
  spec.validate();
  EulerProduct out{Complex(1.0), p_max, {}, 0.0, false, 0.0};
  for (auto q : primes_up_to(p_max)) {
    if ((spec.classes && !spec.classes->contains(q)) || (spec.coefficient_table && !spec.coefficient_table->contains(q)))
      continue;
    const bool divides = spec.N % q == 0;
    const Complex weight = divides ? Complex(1.0) : chi(q) * chi(q);
    const Complex denom = 1.0 - spec.coefficient_squared(q) * weight * detail::power_minus(q, s);
    if (std::abs(denom) < 1e-300) {
      out.diverging = true;
      continue;
    }
    const Complex factor = 1.0 / denom;
    if (!std::isfinite(factor.real()) || !std::isfinite(factor.imag())) out.diverging = true;
    out.factors.push_back({q, divides, factor});
    out.value *= factor;
    out.max_factor_abs = std::max(out.max_factor_abs, std::abs(factor));
    out.error_estimate = std::abs(factor - 1.0);
  }
  if (!std::isfinite(std::abs(out.value))) out.diverging = true;
  return out;
}

struct PartitionResult {
  SeriesSpec kept;
  SeriesSpec complement;
};

/// Splits the series into the subseries on `kept_classes` and its complement.
inline PartitionResult partition_series(const SeriesSpec& spec, const std::set<std::int64_t>& kept_classes) {
  spec.validate();
  for (auto n : kept_classes)
    if (n < 1 || n > spec.n_max)
      throw Error(Errc::ClassOutOfRange,
                  "class " + std::to_string(n) + " outside [1, " + std::to_string(spec.n_max) + "]");
  std::set<std::int64_t> kept, rest;
  for (auto n : spec.class_list()) (kept_classes.contains(n) ? kept : rest).insert(n);
  PartitionResult out{spec, spec};
  out.kept.classes = std::move(kept);
  out.complement.classes = std::move(rest);
  return out;
}

// ---------------------------------------------------------------------------
// Trivial -> non-trivial zero maps.

/// D_{4n^2, i^2} = [[1, i],[0, 1]] [[1, 0],[i, 1]] = [[0, i],[i, 1]].
inline Mat2K imaginary_decomposition_element() {
  const QuadNum i = QuadNum::i();
  const Mat2K upper{QuadNum(1), i, QuadNum(0), QuadNum(1)};
  const Mat2K lower{QuadNum(1), QuadNum(0), i, QuadNum(1)};
  return upper * lower;
}

/// D * diag(E, 1) * diag(4n^2, 1), times M = diag(1, 2) for the bsd variant.
inline Mat2K zero_element(std::int64_t n, const Rat& energy, ZeroVariant variant) {
  const Mat2K energy_m = Mat2K::diag(QuadNum(energy), QuadNum(1));
  const Mat2K alpha = Mat2K::diag(QuadNum(Rat(4 * BigInt(n) * n)), QuadNum(1));
  Mat2K out = imaginary_decomposition_element() * energy_m * alpha;
  if (variant == ZeroVariant::bsd) out = out * Mat2K::diag(QuadNum(1), QuadNum(2));
  return out;
}

namespace detail {

// 16 n^2 E (riemann) or 8 n^2 E (bsd), which must be >= 1.
inline Rat zero_scale(std::int64_t n, const Rat& energy, ZeroVariant variant) {
  if (n < 1) throw Error(Errc::InvalidSpec, "class n must be >= 1");
  const Rat scale = Rat(BigInt(n) * n * (variant == ZeroVariant::riemann ? 16 : 8)) * energy;
  if (energy <= 0 || scale < 1)
    throw Error(Errc::SubcriticalEnergy, "energy " + to_string(energy) + " gives a negative radicand");
  return scale;
}

}  // namespace detail

struct ZeroCandidate {
  std::int64_t n;
  Rat energy;
  ZeroVariant variant;
  QuadNum plus;
  QuadNum minus;
  Rat product;   // lambda_+ lambda_-
  Rat sigma;     // common real part
  double tau;    // imaginary part of lambda_+
};

/// riemann: lambda_+- = (1 +- i sqrt(16 n^2 E - 1)) / 2, product 4 n^2 E.
/// bsd:     lambda_+- = 1 +- i sqrt(8 n^2 E - 1),       product 8 n^2 E.
inline ZeroCandidate nontrivial_candidate(std::int64_t n, const Rat& energy, ZeroVariant variant) {
  const Rat scale = detail::zero_scale(n, energy, variant);
  const QuadNum root = QuadNum::sqrt(1 - scale);  // i sqrt(scale - 1)
  ZeroCandidate c{n, energy, variant, {}, {}, {}, {}, 0.0};
  if (variant == ZeroVariant::riemann) {
    c.sigma = Rat(1, 2);
    c.plus = QuadNum(c.sigma) + root / QuadNum(2);
    c.minus = QuadNum(c.sigma) - root / QuadNum(2);
    c.tau = std::sqrt(to_double(scale - 1)) / 2.0;
  } else {
    c.sigma = Rat(1);
    c.plus = QuadNum(c.sigma) + root;
    c.minus = QuadNum(c.sigma) - root;
    c.tau = std::sqrt(to_double(scale - 1));
  }
  c.product = (c.plus * c.minus).rational_part();
  return c;
}

struct NumericZeroCandidate {
  std::int64_t n;
  double energy;
  ZeroVariant variant;
  Complex plus;
  Complex minus;
  double product;
  double tau;
};

inline NumericZeroCandidate nontrivial_candidate(std::int64_t n, double energy, ZeroVariant variant) {
  if (n < 1) throw Error(Errc::InvalidSpec, "class n must be >= 1");
  const double scale = static_cast<double>(n) * static_cast<double>(n) * (variant == ZeroVariant::riemann ? 16.0 : 8.0) * energy;
  if (!(energy > 0.0) || scale < 1.0)
    throw Error(Errc::SubcriticalEnergy, "energy gives a negative radicand");
  const double sigma = variant == ZeroVariant::riemann ? 0.5 : 1.0;
  const double tau = variant == ZeroVariant::riemann ? std::sqrt(scale - 1.0) / 2.0 : std::sqrt(scale - 1.0);
  const Complex plus(sigma, tau), minus(sigma, -tau);
  return {n, energy, variant, plus, minus, (plus * minus).real(), tau};
}

/// Inverse of the candidate map: the energy whose candidate has ordinate tau.
inline double energy_from_tau(std::int64_t n, double tau, ZeroVariant variant) {
  if (n < 1) throw Error(Errc::InvalidSpec, "class n must be >= 1");
  if (!(tau > 0.0)) throw Error(Errc::NegativeInput, "tau must be > 0");
  const double n2 = static_cast<double>(n) * static_cast<double>(n);
  return variant == ZeroVariant::riemann ? (4.0 * tau * tau + 1.0) / (16.0 * n2) : (tau * tau + 1.0) / (8.0 * n2);
}

struct ZeroMapReport {
  std::int64_t n;
  Rat energy;
  ZeroVariant variant;
  BigInt trivial_product;  // (-2n)^2
  Mat2K element;
  Rat matrix_det;
  Rat closed_form_product;
  bool det_matches_product;
  bool matches_trivial;  // reported, holds iff the energy makes the det equal 4n^2
  bool eigenvalues_match;
};

inline ZeroMapReport zero_map_check(std::int64_t n, const Rat& energy, ZeroVariant variant) {
  const ZeroCandidate c = nontrivial_candidate(n, energy, variant);
  ZeroMapReport r{n, energy, variant, BigInt(-2 * n) * BigInt(-2 * n), zero_element(n, energy, variant), {}, {},
                  false, false, false};
  const QuadNum det = r.element.det();
  const QuadNum trace = r.element.trace();
  if (!det.is_rational() || !trace.is_rational())
    throw Error(Errc::InvalidSpec, "composed element has non-rational characteristic polynomial");
  r.matrix_det = det.rational_part();
  r.closed_form_product = c.product;
  r.det_matches_product = r.matrix_det == r.closed_form_product;
  r.matches_trivial = r.matrix_det == Rat(r.trivial_product);
  const QuadRoots roots = quadratic_roots(trace.rational_part(), r.matrix_det);
  r.eigenvalues_match = roots.plus == c.plus && roots.minus == c.minus;
  return r;
}

}  // namespace bisemi
