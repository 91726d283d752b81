#include "metrik/curves.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "metrik/error.hpp"

namespace metrik {

Norm Norm::lp(double p) {
  if (!(p >= 1.0) || !std::isfinite(p)) throw ParameterError("p-norm needs 1 <= p < inf");
  if (p == 1.0) return l1();
  if (p == 2.0) return l2();
  return {NormKind::kP, p};
}

Norm Norm::parse(std::string_view tag) {
  if (tag == "l1") return l1();
  if (tag == "l2") return l2();
  if (tag == "linf") return linf();
  std::string_view rest;
  if (tag.starts_with("lp:")) {
    rest = tag.substr(3);
  } else if (tag.starts_with("l") && tag.size() > 1) {
    rest = tag.substr(1);
  } else {
    throw ParameterError("unknown norm tag '" + std::string(tag) + "'");
  }
  try {
    std::size_t used = 0;
    const double p = std::stod(std::string(rest), &used);
    if (used != rest.size()) throw std::invalid_argument("trailing");
    return lp(p);
  } catch (const std::logic_error&) {
    throw ParameterError("unknown norm tag '" + std::string(tag) + "'");
  }
}

std::string Norm::tag() const {
  switch (kind) {
    case NormKind::kL1: return "l1";
    case NormKind::kL2: return "l2";
    case NormKind::kLinf: return "linf";
    case NormKind::kP: {
      std::string s = std::to_string(p);
      s.erase(s.find_last_not_of('0') + 1);
      if (!s.empty() && s.back() == '.') s.pop_back();
      return "lp:" + s;
    }
  }
  return "l2";
}

double Norm::operator()(std::span<const double> v) const {
  switch (kind) {
    case NormKind::kL1: {
      double s = 0.0;
      for (const double x : v) s += std::abs(x);
      return s;
    }
    case NormKind::kL2: {
      double s = 0.0;
      for (const double x : v) s += x * x;
      return std::sqrt(s);
    }
    case NormKind::kLinf: {
      double s = 0.0;
      for (const double x : v) s = std::max(s, std::abs(x));
      return s;
    }
    case NormKind::kP: {
      double s = 0.0;
      for (const double x : v) s += std::pow(std::abs(x), p);
      return std::pow(s, 1.0 / p);
    }
  }
  return 0.0;
}

double Norm::distance(std::span<const double> a, std::span<const double> b) const {
  if (a.size() != b.size()) throw MalformedInput("coordinate dimensions differ");
  double buf[8];
  std::vector<double> heap;
  std::span<double> diff;
  if (a.size() <= 8) {
    diff = std::span<double>(buf, a.size());
  } else {
    heap.resize(a.size());
    diff = heap;
  }
  for (std::size_t i = 0; i < a.size(); ++i) diff[i] = a[i] - b[i];
  return (*this)(diff);
}

DiscreteCurve DiscreteCurve::on_space(std::shared_ptr<const FiniteMetricSpace> space,
                                      std::vector<PointIndex> order) {
  if (!space) throw MalformedInput("curve needs a backing space");
  space->check_indices(order);
  return DiscreteCurve(OnSpace{std::move(space), std::move(order)});
}

DiscreteCurve DiscreteCurve::in_normed_space(std::vector<std::vector<double>> coords,
                                             Norm norm) {
  if (!coords.empty()) {
    const std::size_t dim = coords.front().size();
    for (const auto& c : coords) {
      if (c.size() != dim) throw MalformedInput("curve coordinates have mixed dimensions");
      for (const double x : c) {
        if (!std::isfinite(x)) throw MalformedInput("curve coordinates must be finite");
      }
    }
  }
  return DiscreteCurve(InNormedSpace{std::move(coords), norm});
}

DiscreteCurve DiscreteCurve::on_snowflaked_line(std::vector<double> params, double scale,
                                                double exponent) {
  if (!(scale > 0.0)) throw ParameterError("line scale must be positive");
  if (!(exponent > 0.0 && exponent <= 1.0)) {
    throw ParameterError("line exponent must lie in (0, 1]");
  }
  return DiscreteCurve(OnSnowflakedLine{std::move(params), scale, exponent});
}

std::size_t DiscreteCurve::size() const noexcept {
  return std::visit(
      [](const auto& b) -> std::size_t {
        using T = std::decay_t<decltype(b)>;
        if constexpr (std::is_same_v<T, OnSpace>) return b.order.size();
        else if constexpr (std::is_same_v<T, InNormedSpace>) return b.coords.size();
        else return b.params.size();
      },
      backing_);
}

double DiscreteCurve::distance(std::size_t i, std::size_t j) const {
  if (i >= size() || j >= size()) throw MalformedInput("curve position out of range");
  return with_distance([&](auto d) { return d(i, j); });
}

double DiscreteCurve::native_tolerance() const noexcept {
  if (const auto* b = std::get_if<OnSpace>(&backing_)) return b->space->tolerance();
  return kDefaultTolerance;
}

FiniteMetricSpace DiscreteCurve::image_space(std::span<const std::size_t> positions,
                                             double tolerance) const {
  for (const std::size_t p : positions) {
    if (p >= size()) throw MalformedInput("curve position out of range");
  }
  std::vector<std::string> labels;
  labels.reserve(positions.size());
  for (const std::size_t p : positions) labels.push_back(std::to_string(p));
  return with_distance([&](auto d) {
    return FiniteMetricSpace::from_function(
        positions.size(), [&](std::size_t a, std::size_t b) { return d(positions[a], positions[b]); },
        std::move(labels), tolerance);
  });
}

SelfContractedReport is_self_contracted(const DiscreteCurve& curve, double tolerance) {
  const std::size_t n = curve.size();
  if (n == 0) throw MalformedInput("empty curve");
  const double tol = tolerance < 0.0 ? curve.native_tolerance() : tolerance;
  return curve.with_distance([&](auto d) {
    SelfContractedReport report;
    for (std::size_t t3 = 0; t3 < n; ++t3) {
      double running_min = std::numeric_limits<double>::infinity();
      for (std::size_t t2 = 0; t2 <= t3; ++t2) {
        const double near = d(t2, t3);
        if (near > running_min + tol) {
          for (std::size_t t1 = 0; t1 < t2; ++t1) {
            const double far = d(t1, t3);
            if (near > far + tol) {
              report.pass = false;
              report.witness = SelfContractionViolation{t1, t2, t3, near, far};
              return report;
            }
          }
        }
        running_min = std::min(running_min, near);
      }
    }
    return report;
  });
}

LengthReport curve_length(const DiscreteCurve& curve) {
  const std::size_t n = curve.size();
  if (n == 0) throw MalformedInput("empty curve");
  LengthReport report;
  report.prefix_lengths.assign(n, 0.0);
  curve.with_distance([&](auto d) {
    double total = 0.0;
    for (std::size_t i = 1; i < n; ++i) {
      total += d(i - 1, i);
      report.prefix_lengths[i] = total;
    }
    report.polygonal_length = total;
    return 0;
  });
  return report;
}

CurveSraExtraction extract_sra_from_curve(const DiscreteCurve& curve, SraParameter alpha,
                                          std::size_t target_size, std::size_t window) {
  if (window < 3) throw ParameterError("search window must hold at least 3 points");
  const double tol = curve.native_tolerance();
  CurveSraExtraction out;

  // Distinct image points, first occurrence wins.
  std::vector<std::size_t> image;
  curve.with_distance([&](auto d) {
    for (std::size_t i = 0; i < curve.size(); ++i) {
      const bool repeat = std::any_of(image.begin(), image.end(),
                                      [&](std::size_t j) { return d(i, j) <= tol; });
      if (!repeat) image.push_back(i);
    }
    return 0;
  });
  out.image_size = image.size();
  if (target_size > image.size()) return out;

  auto accept = [&](std::vector<std::size_t> positions) {
    out.best_size = std::max(out.best_size, positions.size());
    if (positions.size() >= target_size) {
      positions.resize(target_size);
      out.found = true;
      out.positions = std::move(positions);
    }
    return out.found;
  };

  auto exact_on = [&](std::span<const std::size_t> positions) {
    const FiniteMetricSpace sub = curve.image_space(positions, tol);
    const SraSubset best = max_sra_subset(sub, alpha, SearchMode::kExact, window);
    std::vector<std::size_t> picked;
    for (const PointIndex k : best.points) picked.push_back(positions[k]);
    return picked;
  };

  if (image.size() <= window) {
    accept(exact_on(image));
    return out;
  }

  // Greedy over the whole image, stopping at the target.
  const double a = alpha.alpha();
  std::vector<std::size_t> greedy;
  curve.with_distance([&](auto d) {
    auto ok = [&](std::size_t x, std::size_t z, std::size_t y) {
      return d(x, y) <= std::max(d(x, z) + a * d(z, y), a * d(x, z) + d(z, y)) + tol;
    };
    for (const std::size_t c : image) {
      bool fits = true;
      for (std::size_t u = 0; u < greedy.size() && fits; ++u) {
        for (std::size_t w = u + 1; w < greedy.size() && fits; ++w) {
          const std::size_t p = greedy[u];
          const std::size_t q = greedy[w];
          fits = ok(c, p, q) && ok(p, c, q) && ok(c, q, p);
        }
      }
      if (fits) {
        greedy.push_back(c);
        if (greedy.size() >= target_size) break;
      }
    }
    return 0;
  });
  if (accept(greedy)) return out;

  const std::size_t stride = std::max<std::size_t>(1, window / 2);
  for (std::size_t start = 0; start < image.size(); start += stride) {
    const std::size_t stop = std::min(image.size(), start + window);
    const std::span<const std::size_t> slice(image.data() + start, stop - start);
    if (accept(exact_on(slice))) return out;
    if (stop == image.size()) break;
  }
  return out;
}

}  // namespace metrik
