#include "aoi/distributions.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <optional>
#include <utility>

#include "aoi/error.hpp"
#include "aoi/format.hpp"

namespace aoi {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void require(bool ok, const char* what) {
  if (!ok) throw Error(ErrorKind::kInvalidParameter, what);
}

bool positive_finite(double x) { return std::isfinite(x) && x > 0.0; }

// Box-Muller, cosine branch only. Exact, stateless between calls.
double standard_normal(RngStream& rng) {
  const double r = std::sqrt(-2.0 * std::log(rng.uniform_pos()));
  return r * std::cos(2.0 * std::numbers::pi * rng.uniform());
}

// Marsaglia-Tsang squeeze/rejection; shape < 1 boosted via U^(1/shape).
double standard_gamma(double shape, RngStream& rng) {
  if (shape < 1.0) {
    const double g = standard_gamma(shape + 1.0, rng);
    return g * std::pow(rng.uniform_pos(), 1.0 / shape);
  }
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    double x = 0.0;
    double v = 0.0;
    do {
      x = standard_normal(rng);
      v = 1.0 + c * x;
    } while (v <= 0.0);
    v = v * v * v;
    const double u = rng.uniform_pos();
    const double x2 = x * x;
    if (u < 1.0 - 0.0331 * x2 * x2) return d * v;
    if (std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v))) return d * v;
  }
}

// Integer shapes (a, b) with a + b - 1 <= 32, if the law has them.
std::optional<std::pair<int, int>> integer_shapes(const Beta& d) {
  if (d.alpha != std::floor(d.alpha) || d.beta != std::floor(d.beta) || d.alpha + d.beta > 33.0) {
    return std::nullopt;
  }
  return std::pair(static_cast<int>(d.alpha), static_cast<int>(d.beta));
}

// For integer shapes, Beta(a, b) is the a-th smallest of a + b - 1 uniforms.
double order_statistic(int a, int b, RngStream& rng) {
  std::array<double, 32> u{};
  const int n = a + b - 1;
  for (int i = 0; i < n; ++i) u[i] = rng.uniform();
  std::nth_element(u.begin(), u.begin() + (a - 1), u.begin() + n);
  return u[a - 1];
}

}  // namespace

Exponential::Exponential(double rate) : rate(rate) {
  require(positive_finite(rate), "exponential rate must be positive");
}

Rayleigh::Rayleigh(double scale) : scale(scale) {
  require(positive_finite(scale), "rayleigh scale must be positive");
}

ChiSquare::ChiSquare(int dof) : dof(dof) { require(dof > 0, "chi-square degrees of freedom must be positive"); }

Beta::Beta(double alpha, double beta) : alpha(alpha), beta(beta) {
  require(positive_finite(alpha) && positive_finite(beta), "beta shape parameters must be positive");
}

Uniform::Uniform(double a, double b) : a(a), b(b) {
  require(std::isfinite(a) && std::isfinite(b) && a >= 0.0 && a < b, "uniform requires 0 <= a < b");
}

Constant::Constant(double value) : value(value) {
  require(positive_finite(value), "constant inter-update time must be positive");
}

double sample(const InterUpdateDistribution& dist, RngStream& rng) {
  return std::visit(
      Overloaded{
          [&](const Exponential& d) { return -std::log(rng.uniform_pos()) / d.rate; },
          [&](const Rayleigh& d) { return d.scale * std::sqrt(-2.0 * std::log(rng.uniform_pos())); },
          [&](const ChiSquare& d) {
            double sum = 0.0;
            for (int i = 0; i < d.dof; ++i) {
              const double z = standard_normal(rng);
              sum += z * z;
            }
            return sum;
          },
          [&](const Beta& d) {
            if (auto k = integer_shapes(d)) return order_statistic(k->first, k->second, rng);
            const double x = standard_gamma(d.alpha, rng);
            const double y = standard_gamma(d.beta, rng);
            return x / (x + y);
          },
          [&](const Uniform& d) { return d.a + (d.b - d.a) * rng.uniform(); },
          [&](const Constant& d) { return d.value; },
      },
      dist);
}

double mean(const InterUpdateDistribution& dist) {
  return std::visit(Overloaded{
                        [](const Exponential& d) { return 1.0 / d.rate; },
                        [](const Rayleigh& d) { return d.scale * std::sqrt(std::numbers::pi / 2.0); },
                        [](const ChiSquare& d) { return static_cast<double>(d.dof); },
                        [](const Beta& d) { return d.alpha / (d.alpha + d.beta); },
                        [](const Uniform& d) { return 0.5 * (d.a + d.b); },
                        [](const Constant& d) { return d.value; },
                    },
                    dist);
}

double second_moment(const InterUpdateDistribution& dist) {
  return std::visit(Overloaded{
                        [](const Exponential& d) { return 2.0 / (d.rate * d.rate); },
                        [](const Rayleigh& d) { return 2.0 * d.scale * d.scale; },
                        [](const ChiSquare& d) {
                          const double k = d.dof;
                          return k * (k + 2.0);
                        },
                        [](const Beta& d) {
                          const double s = d.alpha + d.beta;
                          return d.alpha * (d.alpha + 1.0) / (s * (s + 1.0));
                        },
                        [](const Uniform& d) { return (d.a * d.a + d.a * d.b + d.b * d.b) / 3.0; },
                        [](const Constant& d) { return d.value * d.value; },
                    },
                    dist);
}

double variance(const InterUpdateDistribution& dist) {
  return std::visit(Overloaded{
                        [](const Exponential& d) { return 1.0 / (d.rate * d.rate); },
                        [](const Rayleigh& d) { return (4.0 - std::numbers::pi) * d.scale * d.scale / 2.0; },
                        [](const ChiSquare& d) { return 2.0 * d.dof; },
                        [](const Beta& d) {
                          const double s = d.alpha + d.beta;
                          return d.alpha * d.beta / (s * s * (s + 1.0));
                        },
                        [](const Uniform& d) {
                          const double w = d.b - d.a;
                          return w * w / 12.0;
                        },
                        [](const Constant&) { return 0.0; },
                    },
                    dist);
}

bool is_arithmetic(const InterUpdateDistribution& dist) { return std::holds_alternative<Constant>(dist); }

double age_contribution(const InterUpdateDistribution& dist, LimitKind kind) {
  if (kind == LimitKind::kEnsemble && is_arithmetic(dist)) {
    throw Error(ErrorKind::kArithmeticLimitUndefined,
                describe(dist) + " is arithmetic; lim E[X(t)] does not exist");
  }
  return second_moment(dist) / (2.0 * mean(dist));
}

Uniform unit_mean_uniform(double v) {
  if (!(v > 0.0 && v <= 1.0 / 3.0)) {
    throw Error(ErrorKind::kVarianceOutOfRange, "unit-mean uniform needs 0 < v <= 1/3, got " + format_double(v));
  }
  const double half_width = std::sqrt(3.0 * v);
  return Uniform(std::max(0.0, 1.0 - half_width), 1.0 + half_width);
}

std::string describe(const InterUpdateDistribution& dist) {
  return std::visit(
      Overloaded{
          [](const Exponential& d) { return "Exponential(" + format_double(d.rate) + ")"; },
          [](const Rayleigh& d) { return "Rayleigh(" + format_double(d.scale) + ")"; },
          [](const ChiSquare& d) { return "ChiSquare(" + std::to_string(d.dof) + ")"; },
          [](const Beta& d) { return "Beta(" + format_double(d.alpha) + "," + format_double(d.beta) + ")"; },
          [](const Uniform& d) { return "Uniform(" + format_double(d.a) + "," + format_double(d.b) + ")"; },
          [](const Constant& d) { return "Constant(" + format_double(d.value) + ")"; },
      },
      dist);
}

}  // namespace aoi
