#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "metrik/metric_space.hpp"

namespace metrik {

/// Exponent of the small-rough-angle condition, strictly inside (0, 1).
class SraParameter {
 public:
  explicit SraParameter(double alpha);

  double alpha() const noexcept { return alpha_; }

  /// Largest comparison angle an SRA(alpha) triple can have: pi - acos(alpha).
  double angle_bound() const;

 private:
  double alpha_;
};

/// Outcome of the SRA inequality for one labelled triple with middle vertex z:
///   d(x,y) <= max{d(x,z) + a d(z,y), a d(x,z) + d(z,y)} + tol.
struct TripleCheck {
  PointIndex x = 0;
  PointIndex z = 0;
  PointIndex y = 0;
  double lhs = 0.0;
  double rhs = 0.0;
  bool pass = true;
};

/// Throws DegenerateInput when the points are not distinct.
TripleCheck check_triple_sra(const FiniteMetricSpace& space, PointIndex x, PointIndex z,
                             PointIndex y, SraParameter alpha);

struct SraReport {
  bool pass = true;
  std::optional<TripleCheck> witness;
  std::size_t checked_triples = 0;
};

/// Every unordered triple of `subset` with each of its three points as the
/// middle vertex. The first failure in lexicographic position order is
/// returned as the witness. Subsets with fewer than three points pass.
SraReport verify_sra_set(const FiniteMetricSpace& space, std::span<const PointIndex> subset,
                         SraParameter alpha);
SraReport verify_sra_set(const FiniteMetricSpace& space, SraParameter alpha);

enum class SearchMode { kExact, kGreedy };

struct SraSubset {
  std::vector<PointIndex> points;
  bool optimal = false;
};

inline constexpr std::size_t kDefaultExactSraCap = 40;

/// Largest subset satisfying SRA(alpha).
///
/// Exact mode builds the 3-uniform hypergraph of violating triples once and
/// runs a branch-and-bound for a maximum independent set, seeded with the
/// greedy solution; the lexicographically smallest maximum subset is
/// returned. Spaces above `exact_cap` points are refused with
/// CapacityExceeded. Greedy mode inserts points in index order whenever the
/// new point closes no violating triple.
SraSubset max_sra_subset(const FiniteMetricSpace& space, SraParameter alpha,
                         SearchMode mode, std::size_t exact_cap = kDefaultExactSraCap);

/// Same search restricted to `pool`; returned indices refer to `space`.
SraSubset max_sra_subset(const FiniteMetricSpace& space, std::span<const PointIndex> pool,
                         SraParameter alpha, SearchMode mode,
                         std::size_t exact_cap = kDefaultExactSraCap);

struct AngleBoundReport {
  double max_angle = 0.0;
  std::optional<TripleCheck> argmax;  // lhs/rhs unused; x, z, y locate the angle
  double bound = 0.0;
  double margin = 0.0;  // bound - max_angle
  bool pass = true;
};

/// Largest comparison angle over all triples of `subset`, checked against
/// pi - acos(alpha) with the space tolerance.
AngleBoundReport sra_angle_bound(const FiniteMetricSpace& space,
                                 std::span<const PointIndex> subset, SraParameter alpha);

// ---------------------------------------------------------------------------
// Ramsey-recursion bound on SRA-free subsets and the doubling threshold.

using BigInt = boost::multiprecision::cpp_int;

struct RamseyValue {
  BigInt value;
  bool exact = false;
};

/// Two-colour Ramsey number R(a, b): exact from a table of known values, the
/// Erdos-Szekeres bound C(a+b-2, a-1) otherwise.
RamseyValue ramsey_upper_bound(const BigInt& a, const BigInt& b);

struct ChainEntry {
  int index = 0;
  BigInt value;
  bool exact = false;
};

/// H_L = R(2, L), H_{i-1} = R(H_i + 1, L), ..., H_2; N = H_2 + 1.
/// Chain entries are stored from H_L down to H_2.
struct RamseyCertificate {
  int L = 2;
  std::vector<ChainEntry> chain;
  BigInt N;

  bool exact() const;
};

RamseyCertificate compute_sra_free_bound(int L);

struct DoublingThreshold {
  double alpha = 1.0;
  long n_tilde = 5;
};

/// Smallest integer n with alpha * (n - 2) >= 3, for alpha in (0, 1].
DoublingThreshold doubling_threshold(double alpha);

}  // namespace metrik
