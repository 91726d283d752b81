#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "metrik/metric_space.hpp"
#include "metrik/sra.hpp"

namespace metrik {

enum class NormKind { kL1, kL2, kLinf, kP };

/// lp norm on R^n; kP uses `p` (>= 1).
struct Norm {
  NormKind kind = NormKind::kL2;
  double p = 2.0;

  static Norm l1() { return {NormKind::kL1, 1.0}; }
  static Norm l2() { return {NormKind::kL2, 2.0}; }
  static Norm linf() { return {NormKind::kLinf, 0.0}; }
  static Norm lp(double p);

  /// Accepts "l1", "l2", "linf", "lp:<p>" (also "p3" style "l3").
  static Norm parse(std::string_view tag);
  std::string tag() const;

  double operator()(std::span<const double> v) const;
  double distance(std::span<const double> a, std::span<const double> b) const;
};

/// An ordered sequence of points. Three backings are supported:
///   - indices into a FiniteMetricSpace,
///   - coordinates in R^n measured with a Norm,
///   - real parameters on a snowflaked line, d(s, t) = scale |s - t|^exponent.
/// Consecutive repeats are allowed.
class DiscreteCurve {
 public:
  struct OnSpace {
    std::shared_ptr<const FiniteMetricSpace> space;
    std::vector<PointIndex> order;
  };
  struct InNormedSpace {
    std::vector<std::vector<double>> coords;
    Norm norm;
  };
  struct OnSnowflakedLine {
    std::vector<double> params;
    double scale = 1.0;
    double exponent = 1.0;
  };

  static DiscreteCurve on_space(std::shared_ptr<const FiniteMetricSpace> space,
                                std::vector<PointIndex> order);
  static DiscreteCurve in_normed_space(std::vector<std::vector<double>> coords, Norm norm);
  static DiscreteCurve on_snowflaked_line(std::vector<double> params, double scale,
                                          double exponent);

  std::size_t size() const noexcept;
  double distance(std::size_t i, std::size_t j) const;

  /// Tolerance of the backing space, kDefaultTolerance otherwise.
  double native_tolerance() const noexcept;

  /// Finite metric space on the curve image at the given positions.
  FiniteMetricSpace image_space(std::span<const std::size_t> positions, double tolerance) const;

  const std::variant<OnSpace, InNormedSpace, OnSnowflakedLine>& backing() const noexcept {
    return backing_;
  }

  /// Visit with a callable taking a distance functor (size_t, size_t) -> double;
  /// lets hot loops avoid per-call dispatch.
  template <typename F>
  decltype(auto) with_distance(F&& f) const {
    return std::visit(
        [&](const auto& b) -> decltype(auto) { return f(distance_fn(b)); }, backing_);
  }

 private:
  explicit DiscreteCurve(std::variant<OnSpace, InNormedSpace, OnSnowflakedLine> b)
      : backing_(std::move(b)) {}

  static auto distance_fn(const OnSpace& b) {
    return [&b](std::size_t i, std::size_t j) { return (*b.space)(b.order[i], b.order[j]); };
  }
  static auto distance_fn(const InNormedSpace& b) {
    return [&b](std::size_t i, std::size_t j) {
      return b.norm.distance(b.coords[i], b.coords[j]);
    };
  }
  static auto distance_fn(const OnSnowflakedLine& b) {
    return [&b](std::size_t i, std::size_t j) {
      const double gap = b.params[i] > b.params[j] ? b.params[i] - b.params[j]
                                                   : b.params[j] - b.params[i];
      return b.exponent == 0.5 ? b.scale * std::sqrt(gap) : b.scale * std::pow(gap, b.exponent);
    };
  }

  std::variant<OnSpace, InNormedSpace, OnSnowflakedLine> backing_;
};

/// t1 <= t2 <= t3 with d(g(t2), g(t3)) > d(g(t1), g(t3)) + tol.
struct SelfContractionViolation {
  std::size_t t1 = 0;
  std::size_t t2 = 0;
  std::size_t t3 = 0;
  double near = 0.0;  // d(g(t2), g(t3))
  double far = 0.0;   // d(g(t1), g(t3))
};

struct SelfContractedReport {
  bool pass = true;
  std::optional<SelfContractionViolation> witness;
};

/// O(n^2) scan: for every t3, t -> d(g(t), g(t3)) must not rise above its
/// running minimum on t <= t3 by more than `tolerance`. The witness is the
/// first violation in (t3, t2, t1) lexicographic order, the same one the
/// O(n^3) triple definition produces. A negative tolerance means the curve's
/// native tolerance.
SelfContractedReport is_self_contracted(const DiscreteCurve& curve, double tolerance = -1.0);

struct LengthReport {
  double polygonal_length = 0.0;
  std::vector<double> prefix_lengths;  // prefix_lengths[0] == 0
};

LengthReport curve_length(const DiscreteCurve& curve);

struct CurveSraExtraction {
  bool found = false;
  std::vector<std::size_t> positions;  // curve positions of the subset
  std::size_t image_size = 0;          // distinct points in the curve image
  std::size_t best_size = 0;           // largest SRA subset encountered
};

/// Searches the curve image for an SRA(alpha) subset of `target_size`
/// points: exact search when the image has at most `window` points, greedy
/// over the whole image and exact search over sliding windows otherwise.
CurveSraExtraction extract_sra_from_curve(const DiscreteCurve& curve, SraParameter alpha,
                                          std::size_t target_size, std::size_t window = 40);

// ---------------------------------------------------------------------------
// Gradient descent and quasi-convexity sampling in R^n.

/// Dense symmetric matrix, row-major.
struct SquareMatrix {
  std::size_t n = 0;
  std::vector<double> a;

  static SquareMatrix from_rows(const std::vector<std::vector<double>>& rows);
  static SquareMatrix identity(std::size_t n);
  double operator()(std::size_t i, std::size_t j) const { return a[i * n + j]; }
};

/// Largest-magnitude eigenvalue of a symmetric matrix by power iteration.
double largest_eigenvalue(const SquareMatrix& m, std::size_t max_iterations = 10000);

/// A differentiable objective on R^n.
class Objective {
 public:
  /// f(x) = x^T A x / 2 for symmetric A (checked within `tolerance`).
  static Objective quadratic(SquareMatrix a, double tolerance = kDefaultTolerance);
  /// f(x) = |x|^2 / 2.
  static Objective half_squared_norm(std::size_t dimension);
  /// f(x) = sin(x_1): not quasi-convex on windows wider than a half period.
  static Objective sine_first_coordinate(std::size_t dimension);
  /// f(x) = sqrt(dist(x, B)^2 + s^2) - s with B the Euclidean ball of given
  /// radius at the origin: a smoothed distance to a convex set, convex.
  static Objective smoothed_ball_distance(std::size_t dimension, double radius,
                                          double smoothing = 1e-3);

  /// Named constructor used by the CLI: "half-sq-norm", "sin-x1", "ball-distance".
  static Objective named(std::string_view name, std::size_t dimension);

  const std::string& name() const noexcept { return name_; }
  std::size_t dimension() const noexcept { return dimension_; }
  const std::optional<SquareMatrix>& quadratic_form() const noexcept { return quadratic_; }

  double value(std::span<const double> x) const { return value_(x); }
  std::vector<double> gradient(std::span<const double> x) const { return gradient_(x); }

 private:
  Objective() = default;

  std::string name_;
  std::size_t dimension_ = 0;
  std::optional<SquareMatrix> quadratic_;
  std::function<double(std::span<const double>)> value_;
  std::function<std::vector<double>(std::span<const double>)> gradient_;
};

struct DescentSpec {
  Objective objective;
  Norm norm = Norm::l2();
  double step = 0.1;
  std::size_t iterations = 100;
  std::vector<double> start;
};

/// x_{k+1} = x_k - h grad f(x_k) with the Euclidean gradient; the returned
/// curve (iterations + 1 points) carries the requested norm for distance
/// evaluation. For quadratics the step must satisfy h <= 1 / lambda_max,
/// otherwise ParameterError reports the computed bound.
DiscreteCurve gradient_descent_trajectory(const DescentSpec& spec);

struct QuasiConvexityCounterexample {
  std::vector<double> x;
  std::vector<double> y;
  double t = 0.0;
  double value_mid = 0.0;
  double value_max = 0.0;
};

struct QuasiConvexityReport {
  bool pass = true;
  std::size_t trials = 0;
  std::uint64_t seed = 0;
  std::string norm;
  std::optional<QuasiConvexityCounterexample> counterexample;
};

/// Samples x, y uniformly in [-box, box]^n and t in (0, 1) and checks
/// f((1 - t) x + t y) <= max{f(x), f(y)} + tolerance. Straight segments are
/// geodesics for every norm, so the norm only labels the report.
QuasiConvexityReport quasi_convexity_sample(const Objective& f, const Norm& norm,
                                            std::size_t trials, std::uint64_t seed,
                                            double box = 4.0,
                                            double tolerance = kDefaultTolerance);

}  // namespace metrik
