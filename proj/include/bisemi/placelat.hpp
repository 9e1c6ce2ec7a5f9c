#pragma once

// Places, pseudo-ramified extension ranks and lattice/bilattice grids.

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "bisemi/error.hpp"

namespace bisemi {

enum class PlaceKind { real, complex };

inline std::string to_string(PlaceKind k) { return k == PlaceKind::real ? "real" : "complex"; }

/// s places of one kind, each pseudo-ramified of order N, with a
/// multiplicity m(n) >= 1 of representatives per place index n.
class PlaceSpec {
 public:
  /// Empty multiplicities default to 1 for every place.
  static PlaceSpec make(PlaceKind kind, std::int64_t s, std::int64_t N, std::vector<std::int64_t> multiplicities = {}) {
    if (s < 1) throw Error(Errc::InvalidSpec, "place count s must be >= 1");
    if (N < 1) throw Error(Errc::InvalidSpec, "ramification order N must be >= 1");
    if (multiplicities.empty()) multiplicities.assign(static_cast<std::size_t>(s), 1);
    if (static_cast<std::int64_t>(multiplicities.size()) != s)
      throw Error(Errc::InvalidSpec, "expected " + std::to_string(s) + " multiplicities, got " +
                                         std::to_string(multiplicities.size()));
    for (auto m : multiplicities)
      if (m < 1) throw Error(Errc::InvalidSpec, "multiplicities must be >= 1");
    return PlaceSpec(kind, s, N, std::move(multiplicities));
  }

  PlaceKind kind() const noexcept { return kind_; }
  std::int64_t s() const noexcept { return s_; }
  std::int64_t N() const noexcept { return N_; }
  const std::vector<std::int64_t>& multiplicities() const noexcept { return mult_; }

  /// m(n) for 1 <= n <= s.
  std::int64_t multiplicity(std::int64_t n) const {
    check_index(n);
    return mult_[static_cast<std::size_t>(n - 1)];
  }

  void check_index(std::int64_t n) const {
    if (n < 1 || n > s_)
      throw Error(Errc::PlaceOutOfRange, "place index " + std::to_string(n) + " outside [1, " + std::to_string(s_) + "]");
  }

  friend bool operator==(const PlaceSpec&, const PlaceSpec&) = default;

 private:
  PlaceSpec(PlaceKind kind, std::int64_t s, std::int64_t N, std::vector<std::int64_t> mult)
      : kind_(kind), s_(s), N_(N), mult_(std::move(mult)) {}

  PlaceKind kind_;
  std::int64_t s_;
  std::int64_t N_;
  std::vector<std::int64_t> mult_;
};

/// Rank of the completion at place n: n*N (real) or n*N*m(n) (complex).
inline std::int64_t extension_degree(const PlaceSpec& spec, std::int64_t n) {
  spec.check_index(n);
  const std::int64_t base = n * spec.N();
  return spec.kind() == PlaceKind::real ? base : base * spec.multiplicity(n);
}

struct LatticeEntry {
  std::int64_t n;
  std::int64_t m;  // 1..m(n)
  std::int64_t rank;
  friend bool operator==(const LatticeEntry&, const LatticeEntry&) = default;
};

struct LatticeDecomposition {
  std::vector<LatticeEntry> entries;
};

inline LatticeDecomposition decompose_lattice(const PlaceSpec& spec) {
  LatticeDecomposition out;
  for (std::int64_t n = 1; n <= spec.s(); ++n) {
    const std::int64_t rank = extension_degree(spec, n);
    for (std::int64_t m = 1; m <= spec.multiplicity(n); ++m) out.entries.push_back({n, m, rank});
  }
  return out;
}

struct BilatticeEntry {
  std::int64_t n;
  std::int64_t m;
  std::int64_t rank_right;
  std::int64_t rank_left;
  friend bool operator==(const BilatticeEntry&, const BilatticeEntry&) = default;
};

/// Grid of right x left subbilattices; the two specs must correspond place by place.
inline std::vector<BilatticeEntry> decompose_bilattice(const PlaceSpec& right, const PlaceSpec& left) {
  if (right.s() != left.s() || right.N() != left.N() || right.multiplicities() != left.multiplicities())
    throw Error(Errc::AsymmetricSpecs, "right and left place specs disagree on s, N or multiplicities");
  const auto r = decompose_lattice(right);
  const auto l = decompose_lattice(left);
  std::vector<BilatticeEntry> out;
  out.reserve(r.entries.size());
  for (std::size_t i = 0; i < r.entries.size(); ++i)
    out.push_back({r.entries[i].n, r.entries[i].m, r.entries[i].rank, l.entries[i].rank});
  return out;
}

struct BorelSerreReport {
  bool equal_place_count = false;
  bool unit_complex_multiplicity = false;
  bool ranks_commensurable = false;

  bool all() const { return equal_place_count && unit_complex_multiplicity && ranks_commensurable; }
};

/// Arithmetic covering conditions between complex and real places:
/// (1) same number of places, (2) every complex multiplicity is 1,
/// (3) for each common n, the real ranks over m = 1..m_c(n) sum to the
/// complex rank n*N*m_c(n).
inline BorelSerreReport check_borel_serre(const PlaceSpec& complex_spec, const PlaceSpec& real_spec) {
  if (complex_spec.kind() != PlaceKind::complex || real_spec.kind() != PlaceKind::real)
    throw Error(Errc::InvalidSpec, "expected a complex spec and a real spec");
  BorelSerreReport report;
  report.equal_place_count = complex_spec.s() == real_spec.s();
  report.unit_complex_multiplicity = true;
  for (auto m : complex_spec.multiplicities())
    if (m != 1) report.unit_complex_multiplicity = false;

  report.ranks_commensurable = true;
  const std::int64_t common = std::min(complex_spec.s(), real_spec.s());
  for (std::int64_t n = 1; n <= common; ++n) {
    const std::int64_t mc = complex_spec.multiplicity(n);
    if (real_spec.multiplicity(n) < mc) {
      report.ranks_commensurable = false;
      break;
    }
    std::int64_t real_sum = 0;
    for (std::int64_t m = 1; m <= mc; ++m) real_sum += extension_degree(real_spec, n);
    if (real_sum != extension_degree(complex_spec, n)) {
      report.ranks_commensurable = false;
      break;
    }
  }
  return report;
}

}  // namespace bisemi
