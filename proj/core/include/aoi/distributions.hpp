#pragma once

#include <string>
#include <variant>

#include "aoi/rng.hpp"

namespace aoi {

// Inter-update time laws. Constructors validate parameters and throw
// Error(kInvalidParameter); a constructed value is always usable.

struct Exponential {
  double rate;  // events per unit time
  explicit Exponential(double rate);
};

struct Rayleigh {
  double scale;
  explicit Rayleigh(double scale);
};

struct ChiSquare {
  int dof;
  explicit ChiSquare(int dof);
};

/// Beta(alpha, beta) on [0, 1].
struct Beta {
  double alpha;
  double beta;
  Beta(double alpha, double beta);
};

/// Uniform on [a, b] with 0 <= a < b.
struct Uniform {
  double a;
  double b;
  Uniform(double a, double b);
};

/// Degenerate law at d. The only arithmetic law supported.
struct Constant {
  double value;
  explicit Constant(double value);
};

using InterUpdateDistribution = std::variant<Exponential, Rayleigh, ChiSquare, Beta, Uniform, Constant>;

double sample(const InterUpdateDistribution& dist, RngStream& rng);

double mean(const InterUpdateDistribution& dist);
double second_moment(const InterUpdateDistribution& dist);
double variance(const InterUpdateDistribution& dist);

bool is_arithmetic(const InterUpdateDistribution& dist);

enum class LimitKind {
  kTimeAverage,  // long-run time average; defined for every law
  kEnsemble,     // lim E[X(t)]; undefined for arithmetic laws
};

/// E[Y^2] / (2 E[Y]): the long-run mean backward recurrence time of a renewal
/// process with this law, i.e. the age added by one link.
/// Throws Error(kArithmeticLimitUndefined) for an arithmetic law when the
/// ensemble limit is requested.
double age_contribution(const InterUpdateDistribution& dist, LimitKind kind = LimitKind::kTimeAverage);

/// Uniform(1 - sqrt(3v), 1 + sqrt(3v)): unit mean, variance v. Requires 0 < v <= 1/3.
Uniform unit_mean_uniform(double v);

/// Short label such as "Rayleigh(1)" or "Uniform(0,2)".
std::string describe(const InterUpdateDistribution& dist);

}  // namespace aoi
