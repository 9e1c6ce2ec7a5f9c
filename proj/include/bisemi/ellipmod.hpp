#pragma once

// Global elliptic semimodules as truncated Fourier series over exact
// coefficients, their diagonal tensor products and multiplicity bookkeeping.

#include <cmath>
#include <complex>
#include <cstdint>
#include <istream>
#include <numbers>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "bisemi/hecke.hpp"
#include "bisemi/placelat.hpp"

namespace bisemi {

/// Left series evaluate with e^{+2 pi i n x}, right series with e^{-2 pi i n x}.
enum class Side { left, right };

inline std::string to_string(Side s) { return s == Side::left ? "left" : "right"; }

struct FourierTerm {
  std::int64_t n;  // class index >= 1
  std::int64_t m;  // representative index >= 0
  QuadNum coeff;
  friend bool operator==(const FourierTerm&, const FourierTerm&) = default;
};

class FourierSemimodule {
 public:
  /// Terms must be sorted by (n, m) with n >= 1, m >= 0 and no duplicates.
  FourierSemimodule(Side side, std::int64_t N, std::vector<FourierTerm> terms)
      : side_(side), N_(N), terms_(std::move(terms)) {
    if (N_ < 1) throw Error(Errc::InvalidSpec, "level N must be >= 1");
    for (std::size_t i = 0; i < terms_.size(); ++i) {
      const auto& t = terms_[i];
      if (t.n < 1 || t.m < 0) throw Error(Errc::InvalidSpec, "term indices must satisfy n >= 1, m >= 0");
      if (i > 0) {
        const auto& prev = terms_[i - 1];
        if (std::pair(prev.n, prev.m) >= std::pair(t.n, t.m))
          throw Error(Errc::InvalidSpec, "terms must be strictly ascending in (n, m)");
      }
    }
  }

  Side side() const noexcept { return side_; }
  std::int64_t N() const noexcept { return N_; }
  const std::vector<FourierTerm>& terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }

  /// Same (n, m) grid.
  bool same_grid(const FourierSemimodule& other) const {
    if (terms_.size() != other.terms_.size()) return false;
    for (std::size_t i = 0; i < terms_.size(); ++i)
      if (terms_[i].n != other.terms_[i].n || terms_[i].m != other.terms_[i].m) return false;
    return true;
  }

  /// Same terms on the opposite side.
  FourierSemimodule mirror() const {
    return FourierSemimodule(side_ == Side::left ? Side::right : Side::left, N_, terms_);
  }

  friend bool operator==(const FourierSemimodule&, const FourierSemimodule&) = default;

 private:
  Side side_;
  std::int64_t N_;
  std::vector<FourierTerm> terms_;
};

enum class CoefficientRule { hecke, simple };

inline CoefficientRule parse_rule(std::string_view name) {
  if (name == "hecke") return CoefficientRule::hecke;
  if (name == "simple") return CoefficientRule::simple;
  throw Error(Errc::UnknownRule, "unknown coefficient rule '" + std::string(name) + "'");
}

inline std::string to_string(CoefficientRule r) { return r == CoefficientRule::hecke ? "hecke" : "simple"; }

/// Builds phi over the place grid of `spec`.
///
/// hecke:  for n = 1..s and m = 0..m(n)-1, coefficient lambda_branch(n_N^2, m_N^2).
/// simple: one term per class, m = 0, coefficient n*N.
inline FourierSemimodule build_phi(const PlaceSpec& spec, CoefficientRule rule, Branch branch,
                                   Side side = Side::left) {
  std::vector<FourierTerm> terms;
  const BigInt N(spec.N());
  for (std::int64_t n = 1; n <= spec.s(); ++n) {
    if (rule == CoefficientRule::simple) {
      terms.push_back({n, 0, QuadNum(Rat(BigInt(n) * N))});
      continue;
    }
    for (std::int64_t m = 0; m < spec.multiplicity(n); ++m)
      terms.push_back({n, m, eigen_pair(BigInt(n) * N, BigInt(m) * N).select(branch)});
  }
  return FourierSemimodule(side, spec.N(), std::move(terms));
}

/// e^{sign * 2 pi i n x}. The phase is reduced mod 1 before scaling so that
/// x and x + 1 give identical results whenever both are exact doubles.
inline std::complex<double> unit_phase(std::int64_t n, double x, double sign) {
  const double xr = x - std::floor(x);
  double t = static_cast<double>(n) * xr;
  t -= std::floor(t);
  const double angle = 2.0 * std::numbers::pi * t;
  return {std::cos(angle), sign * std::sin(angle)};
}

/// Sum of coeff * e^{+-2 pi i n x}, accumulated left to right by (n, m).
inline std::complex<double> eval(const FourierSemimodule& phi, double x) {
  const double sign = phi.side() == Side::left ? 1.0 : -1.0;
  std::complex<double> sum{0.0, 0.0};
  for (const auto& t : phi.terms()) sum += t.coeff.to_complex() * unit_phase(t.n, x, sign);
  return sum;
}

struct EisensteinCoefficient {
  BigInt restricted;  // n * N
  BigInt classical;   // sigma_1(n)
};

/// Weight-2 coefficients: the restricted value n*N and the divisor sum sigma_1(n).
inline EisensteinCoefficient eis_coefficient(std::int64_t n, std::int64_t N) {
  if (n < 1 || N < 1) throw Error(Errc::InvalidSpec, "eis_coefficient needs n >= 1 and N >= 1");
  BigInt sigma = 0;
  for (std::int64_t d = 1; d * d <= n; ++d) {
    if (n % d != 0) continue;
    sigma += d;
    if (d != n / d) sigma += n / d;
  }
  return {BigInt(n) * N, sigma};
}

/// Symmetric split of lambda into two equal semitorus radii sqrt(lambda).
inline std::pair<QuadNum, QuadNum> semitorus_split(const Rat& lambda) {
  if (lambda < 0) throw Error(Errc::NegativeInput, "semitorus_split needs lambda >= 0");
  QuadNum r = QuadNum::sqrt(lambda);
  return {r, r};
}

inline std::pair<double, double> semitorus_split(double lambda) {
  if (!(lambda >= 0.0)) throw Error(Errc::NegativeInput, "semitorus_split needs lambda >= 0");
  const double r = std::sqrt(lambda);
  return {r, r};
}

struct BisemiTerm {
  std::int64_t n;
  std::int64_t m;
  QuadNum coeff_right;
  QuadNum coeff_left;
  friend bool operator==(const BisemiTerm&, const BisemiTerm&) = default;
};

struct BisemiProduct {
  std::vector<BisemiTerm> terms;
};

/// Keeps only matched (n, m) pairs of phi_R (x) phi_L.
inline BisemiProduct diagonal_tensor(const FourierSemimodule& right, const FourierSemimodule& left) {
  if (right.side() != Side::right || left.side() != Side::left)
    throw Error(Errc::GridMismatch, "diagonal_tensor expects (right, left) semimodules");
  if (!right.same_grid(left)) throw Error(Errc::GridMismatch, "right and left (n, m) grids differ");
  BisemiProduct out;
  out.terms.reserve(right.size());
  for (std::size_t i = 0; i < right.size(); ++i) {
    const auto& r = right.terms()[i];
    out.terms.push_back({r.n, r.m, r.coeff, left.terms()[i].coeff});
  }
  return out;
}

/// Per class n, (2 coeff_R)(2 coeff_L) = 4n^2. Requires the simple rule at N = 1.
inline std::vector<std::pair<std::int64_t, BigInt>> kernel_bipoints(const BisemiProduct& p) {
  std::vector<std::pair<std::int64_t, BigInt>> out;
  out.reserve(p.terms.size());
  for (const auto& t : p.terms) {
    const QuadNum expected(Rat(t.n));
    if (t.m != 0 || t.coeff_right != expected || t.coeff_left != expected)
      throw Error(Errc::WrongRule, "class " + std::to_string(t.n) + " does not follow the simple rule at N = 1");
    const QuadNum value = (QuadNum(2) * t.coeff_right) * (QuadNum(2) * t.coeff_left);
    out.emplace_back(t.n, numerator(value.rational_part()));
  }
  return out;
}

struct ClassMultiplicity {
  std::int64_t n;
  std::int64_t multiplicity;
  friend bool operator==(const ClassMultiplicity&, const ClassMultiplicity&) = default;
};

/// Supercuspidal representation as a list of classes with multiplicities.
class SupercuspidalRep {
 public:
  explicit SupercuspidalRep(std::vector<ClassMultiplicity> classes) : classes_(std::move(classes)) {
    for (std::size_t i = 0; i < classes_.size(); ++i) {
      if (classes_[i].multiplicity < 1) throw Error(Errc::InvalidSpec, "multiplicities must be >= 1");
      if (i > 0 && classes_[i - 1].n >= classes_[i].n)
        throw Error(Errc::InvalidSpec, "classes must be unique and ascending");
    }
  }

  static SupercuspidalRep from_places(const PlaceSpec& spec) {
    std::vector<ClassMultiplicity> c;
    for (std::int64_t n = 1; n <= spec.s(); ++n) c.push_back({n, spec.multiplicity(n)});
    return SupercuspidalRep(std::move(c));
  }

  const std::vector<ClassMultiplicity>& classes() const noexcept { return classes_; }

  std::int64_t multiplicity(std::int64_t n) const {
    for (const auto& c : classes_)
      if (c.n == n) return c.multiplicity;
    throw Error(Errc::UnknownClass, "class " + std::to_string(n) + " not present");
  }

  friend bool operator==(const SupercuspidalRep&, const SupercuspidalRep&) = default;

 private:
  std::vector<ClassMultiplicity> classes_;
};

/// Sets the multiplicity of class n to m; other classes are untouched.
inline SupercuspidalRep apply_nilpotent_multiplicity(const SupercuspidalRep& rep, std::int64_t n, std::int64_t m) {
  if (m < 1) throw Error(Errc::InvalidSpec, "multiplicity must be >= 1");
  auto classes = rep.classes();
  for (auto& c : classes) {
    if (c.n == n) {
      c.multiplicity = m;
      return SupercuspidalRep(std::move(classes));
    }
  }
  throw Error(Errc::UnknownClass, "class " + std::to_string(n) + " not present");
}

// Line-oriented text form:
//   semimodule side=<left|right> N=<level> terms=<count>
//   <n> <m> <coeff_a> <coeff_b> <d>
inline void write_semimodule(std::ostream& os, const FourierSemimodule& phi) {
  os << "semimodule side=" << to_string(phi.side()) << " N=" << phi.N() << " terms=" << phi.size() << '\n';
  for (const auto& t : phi.terms())
    os << t.n << ' ' << t.m << ' ' << to_string(t.coeff.rational_part()) << ' '
       << to_string(t.coeff.surd_coefficient()) << ' ' << t.coeff.radicand() << '\n';
}

inline FourierSemimodule read_semimodule(std::istream& is) {
  auto fail = [](const std::string& why) { throw Error(Errc::ParseError, "semimodule text: " + why); };
  std::string line;
  if (!std::getline(is, line)) fail("missing header");
  std::istringstream header(line);
  std::string tag, side_kv, n_kv, terms_kv;
  header >> tag >> side_kv >> n_kv >> terms_kv;
  if (tag != "semimodule") fail("header must start with 'semimodule'");
  Side side;
  if (side_kv == "side=left") side = Side::left;
  else if (side_kv == "side=right") side = Side::right;
  else fail("bad side field '" + side_kv + "'");
  if (n_kv.rfind("N=", 0) != 0 || terms_kv.rfind("terms=", 0) != 0) fail("bad header '" + line + "'");
  const std::int64_t N = std::stoll(n_kv.substr(2));
  const std::size_t count = std::stoull(terms_kv.substr(6));

  std::vector<FourierTerm> terms;
  while (terms.size() < count && std::getline(is, line)) {
    if (line.empty()) continue;
    std::istringstream row(line);
    std::int64_t n, m;
    std::string a, b, d;
    if (!(row >> n >> m >> a >> b >> d)) fail("bad term line '" + line + "'");
    terms.push_back({n, m, QuadNum(parse_rat(a), parse_rat(b), BigInt(d))});
  }
  if (terms.size() != count) fail("expected " + std::to_string(count) + " terms");
  return FourierSemimodule(side, N, std::move(terms));
}

}  // namespace bisemi
