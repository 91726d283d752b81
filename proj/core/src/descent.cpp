#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "metrik/curves.hpp"
#include "metrik/error.hpp"

namespace metrik {

SquareMatrix SquareMatrix::from_rows(const std::vector<std::vector<double>>& rows) {
  SquareMatrix m;
  m.n = rows.size();
  m.a.reserve(m.n * m.n);
  for (const auto& r : rows) {
    if (r.size() != m.n) throw MalformedInput("matrix is not square");
    m.a.insert(m.a.end(), r.begin(), r.end());
  }
  return m;
}

SquareMatrix SquareMatrix::identity(std::size_t n) {
  SquareMatrix m{n, std::vector<double>(n * n, 0.0)};
  for (std::size_t i = 0; i < n; ++i) m.a[i * n + i] = 1.0;
  return m;
}

double largest_eigenvalue(const SquareMatrix& m, std::size_t max_iterations) {
  const std::size_t n = m.n;
  if (n == 0) return 0.0;
  std::vector<double> v(n), w(n);
  // Fixed, non-degenerate start vector.
  for (std::size_t i = 0; i < n; ++i) v[i] = 1.0 + 0.1 * static_cast<double>(i + 1);
  double lambda = 0.0;
  for (std::size_t it = 0; it < max_iterations; ++it) {
    double vn = 0.0;
    for (const double x : v) vn += x * x;
    vn = std::sqrt(vn);
    if (vn == 0.0) return 0.0;
    for (double& x : v) x /= vn;
    for (std::size_t i = 0; i < n; ++i) {
      double s = 0.0;
      for (std::size_t j = 0; j < n; ++j) s += m(i, j) * v[j];
      w[i] = s;
    }
    double rayleigh = 0.0;
    for (std::size_t i = 0; i < n; ++i) rayleigh += v[i] * w[i];
    const bool converged = it > 0 && std::abs(rayleigh - lambda) <= 1e-14 * std::abs(rayleigh);
    lambda = rayleigh;
    if (converged) break;
    v.swap(w);
  }
  return lambda;
}

Objective Objective::quadratic(SquareMatrix a, double tolerance) {
  for (std::size_t i = 0; i < a.n; ++i) {
    for (std::size_t j = i + 1; j < a.n; ++j) {
      if (std::abs(a(i, j) - a(j, i)) > tolerance) {
        throw ParameterError("quadratic form matrix must be symmetric");
      }
    }
  }
  Objective f;
  f.name_ = "quadratic";
  f.dimension_ = a.n;
  f.quadratic_ = a;
  f.value_ = [a](std::span<const double> x) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.n; ++i) {
      for (std::size_t j = 0; j < a.n; ++j) s += x[i] * a(i, j) * x[j];
    }
    return 0.5 * s;
  };
  f.gradient_ = [a](std::span<const double> x) {
    std::vector<double> g(a.n, 0.0);
    for (std::size_t i = 0; i < a.n; ++i) {
      for (std::size_t j = 0; j < a.n; ++j) g[i] += a(i, j) * x[j];
    }
    return g;
  };
  return f;
}

Objective Objective::half_squared_norm(std::size_t dimension) {
  Objective f = quadratic(SquareMatrix::identity(dimension));
  f.name_ = "half-sq-norm";
  return f;
}

Objective Objective::sine_first_coordinate(std::size_t dimension) {
  if (dimension == 0) throw ParameterError("dimension must be positive");
  Objective f;
  f.name_ = "sin-x1";
  f.dimension_ = dimension;
  f.value_ = [](std::span<const double> x) { return std::sin(x[0]); };
  f.gradient_ = [dimension](std::span<const double> x) {
    std::vector<double> g(dimension, 0.0);
    g[0] = std::cos(x[0]);
    return g;
  };
  return f;
}

Objective Objective::smoothed_ball_distance(std::size_t dimension, double radius,
                                            double smoothing) {
  if (dimension == 0) throw ParameterError("dimension must be positive");
  if (!(radius >= 0.0) || !(smoothing > 0.0)) {
    throw ParameterError("ball radius must be nonnegative and smoothing positive");
  }
  Objective f;
  f.name_ = "ball-distance";
  f.dimension_ = dimension;
  auto outside = [radius](std::span<const double> x) {
    double r = 0.0;
    for (const double v : x) r += v * v;
    r = std::sqrt(r);
    return std::make_pair(r, std::max(0.0, r - radius));
  };
  f.value_ = [outside, smoothing](std::span<const double> x) {
    const double gap = outside(x).second;
    return std::sqrt(gap * gap + smoothing * smoothing) - smoothing;
  };
  f.gradient_ = [outside, smoothing, dimension](std::span<const double> x) {
    const auto [r, gap] = outside(x);
    std::vector<double> g(dimension, 0.0);
    if (gap <= 0.0 || r == 0.0) return g;
    const double scale = gap / std::sqrt(gap * gap + smoothing * smoothing) / r;
    for (std::size_t i = 0; i < dimension; ++i) g[i] = scale * x[i];
    return g;
  };
  return f;
}

Objective Objective::named(std::string_view name, std::size_t dimension) {
  if (name == "half-sq-norm") return half_squared_norm(dimension);
  if (name == "sin-x1") return sine_first_coordinate(dimension);
  if (name == "ball-distance") return smoothed_ball_distance(dimension, 1.0);
  throw ParameterError("unknown objective '" + std::string(name) + "'");
}

DiscreteCurve gradient_descent_trajectory(const DescentSpec& spec) {
  const Objective& f = spec.objective;
  if (!(spec.step > 0.0) || !std::isfinite(spec.step)) {
    throw ParameterError("step size must be positive");
  }
  if (spec.start.size() != f.dimension()) {
    throw ParameterError("start point dimension does not match the objective");
  }
  if (const auto& q = f.quadratic_form()) {
    const double lambda = std::abs(largest_eigenvalue(*q));
    if (lambda > 0.0) {
      const double bound = 1.0 / lambda;
      if (spec.step > bound * (1.0 + 1e-12)) {
        throw ParameterError("step " + std::to_string(spec.step) +
                             " exceeds the stability bound 1/lambda_max = " +
                             std::to_string(bound));
      }
    }
  }
  std::vector<std::vector<double>> coords;
  coords.reserve(spec.iterations + 1);
  coords.push_back(spec.start);
  std::vector<double> x = spec.start;
  for (std::size_t k = 0; k < spec.iterations; ++k) {
    const std::vector<double> g = f.gradient(x);
    for (std::size_t i = 0; i < x.size(); ++i) x[i] -= spec.step * g[i];
    coords.push_back(x);
  }
  return DiscreteCurve::in_normed_space(std::move(coords), spec.norm);
}

QuasiConvexityReport quasi_convexity_sample(const Objective& f, const Norm& norm,
                                            std::size_t trials, std::uint64_t seed,
                                            double box, double tolerance) {
  if (!(box > 0.0)) throw ParameterError("sampling box must be positive");
  QuasiConvexityReport report;
  report.seed = seed;
  report.norm = norm.tag();
  const std::size_t dim = f.dimension();
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coord(-box, box);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<double> x(dim), y(dim), mid(dim);
  for (std::size_t trial = 0; trial < trials; ++trial) {
    ++report.trials;
    for (std::size_t i = 0; i < dim; ++i) {
      x[i] = coord(rng);
      y[i] = coord(rng);
    }
    double t = 0.0;
    while (t == 0.0) t = unit(rng);
    for (std::size_t i = 0; i < dim; ++i) mid[i] = (1.0 - t) * x[i] + t * y[i];
    const double fm = f.value(mid);
    const double fmax = std::max(f.value(x), f.value(y));
    if (fm > fmax + tolerance) {
      report.pass = false;
      report.counterexample = QuasiConvexityCounterexample{x, y, t, fm, fmax};
      return report;
    }
  }
  return report;
}

}  // namespace metrik
