#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <limits>
#include <span>
#include <vector>

namespace smallfock {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;
inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// Reduce an angle to [-pi, pi).
double wrap_angle(double theta);

// Deterministic pairwise summation (fixed reduction order, independent of
// any threading above it).
double pairwise_sum(std::span<const double> xs);

// log(sum_i exp(x_i)), max-shifted. Empty input gives -inf.
double log_sum_exp(std::span<const double> xs);

// Magnitude-phase representation of a complex value with log|v| kept
// separately, so |v| may lie far outside double range. log_mag == -inf
// encodes an exact zero; phase is then meaningless.
struct LogValue {
  double log_mag = kNegInf;
  double phase = 0.0;  // radians in [-pi, pi)

  bool at_zero() const { return std::isinf(log_mag) && log_mag < 0; }
  std::complex<double> to_complex() const;

  static LogValue one() { return LogValue{0.0, 0.0}; }
  static LogValue zero() { return LogValue{}; }
  static LogValue from_complex(std::complex<double> v);

  LogValue operator*(const LogValue& o) const;
  LogValue operator/(const LogValue& o) const;
};

// log(1 - r) for r = exp(log_ratio + i*ratio_phase). Stable both for
// |r| << 1, |r| >> 1 and for r near 1 (expm1-based). r == 1 exactly
// yields the zero LogValue.
LogValue log_one_minus(double log_ratio, double ratio_phase);

// Adaptive Simpson integration of f over [a, b] to absolute tolerance tol.
// The interval is first cut into initial_panels equal panels so that
// narrow features are not missed by the first refinement test.
double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double tol, int initial_panels = 16, int max_depth = 40);

}  // namespace smallfock
