#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <optional>

#include "smallfock/fockspace.hpp"
#include "smallfock/geometry.hpp"
#include "smallfock/numeric.hpp"

namespace smallfock {

// Zero set of a canonical product
//   G(z) = prod_{j < split} (1 - z_j / z) * prod_{j >= split} (1 - z / z_j)
// where z_0, z_1, ... are the zeros sorted by increasing t. The first
// `split` zeros (the small-modulus part) enter in inverted form so that
// the product converges as a two-sided object. first_index records the
// enumeration index of zeros_[0] when the set is a slice of a larger
// indexed family (lattice truncation); it is cosmetic otherwise.
class ZeroSet {
 public:
  ZeroSet(PointSequence zeros, std::size_t split, long first_index = 0,
          double tail_tol = 0.0);

  const PointSequence& zeros() const { return zeros_; }
  std::size_t split() const { return split_; }
  long first_index() const { return first_index_; }
  long last_index() const { return first_index_ + static_cast<long>(zeros_.size()) - 1; }
  double tail_tol() const { return tail_tol_; }

  bool lattice_tail() const { return lattice_tail_.has_value(); }
  const SpaceParams& lattice_params() const { return *lattice_tail_; }

 private:
  friend ZeroSet gamma_lattice(const SpaceParams&, long, long, double);
  PointSequence zeros_;
  std::size_t split_ = 0;
  long first_index_ = 0;
  double tail_tol_ = 0.0;
  std::optional<SpaceParams> lattice_tail_;  // set when truncated from the model lattice
};

// Truncation [n_lo, n_hi] of the model lattice gamma_n = e^{(n + 2/p - 1)/(2 alpha)}
// (all on the positive axis). Zeros with n <= 0 form the inverted part.
ZeroSet gamma_lattice(const SpaceParams& sp, long n_lo, long n_hi,
                      double tail_tol = 1e-18);

// G(z) over the retained factors, in the log domain. Exact zeros of the
// product surface as LogValue::at_zero(). Factors with |ratio| < tail_tol
// are skipped; each skipped factor moves log|G| by less than 2|ratio|.
LogValue canonical_product(const ZeroSet& zs, const LogPoint& z);

// Certified bound on |delta log G(z)| from the lattice factors beyond the
// truncation (geometric tail). 0 for sets without a lattice tail; +inf if
// z is too close to the truncation edge for the geometric bound to hold.
double product_tail_log_slack(const ZeroSet& zs, const LogPoint& z);

// G'(z_k) computed by removing the vanishing factor analytically and
// multiplying the remaining factors at z_k.
LogValue product_derivative_at_zero(const ZeroSet& zs, std::size_t zero_index);

// Interpolation basis function g_n(z) = G(z) / (G'(gamma_n) (z - gamma_n)),
// n in lattice enumeration (first_index-based). n must stay edge_margin
// factors away from both truncation ends; g_n(gamma_n) = 1, g_n(gamma_m) = 0.
LogValue interpolation_function(const ZeroSet& zs, long n, const LogPoint& z,
                                long edge_margin = 8);

// Laurent coefficients held in the log domain (magnitudes may underflow
// any linear representation).
struct LaurentSpectrum {
  std::map<long, LogValue> coeffs;
  LaurentVector materialize() const;  // exponentiates; extreme entries saturate
};

using LogEvaluator = std::function<LogValue(const LogPoint&)>;

struct ContourOptions {
  double rel_tol = 1e-10;
  int q_init = 256;
  int q_cap = 1 << 16;
};

// a_m = (1/(2 pi R_m^m)) int_0^{2pi} f(R_m e^{i s}) e^{-i m s} ds for
// m in [m_lo, m_hi], each on its own circle log R_m = (m +- 1/2 + 2/p)/(2 alpha)
// (+ for m >= 0, - for m < 0). Trapezoid sums, node count doubled until the
// relative change is below rel_tol; throws numeric_error at q_cap.
LaurentSpectrum laurent_coeffs_by_contour(const LogEvaluator& f, long m_lo, long m_hi,
                                          const SpaceParams& sp,
                                          const ContourOptions& opts = {});

// Number of zeros of g(w) = G(e^w) with |w| <= t_radius: every zero of G
// lifts to t_l + i(theta_l + 2 pi k), k integer.
long zero_count(const ZeroSet& zs, double t_radius);

struct JensenOptions {
  double integral_tol = 1e-8;  // absolute tolerance of the circle average
  double clearance = 1e-6;     // min distance of R from lifted zero moduli
};

struct JensenReport {
  double residual = 0.0;        // lhs - (circle_average - log_g0)
  double lhs = 0.0;             // sum over lifted zeros inside of log(R/|rho|)
  double circle_average = 0.0;  // (1/2pi) int log|g(R e^{i s})| ds
  double log_g0 = 0.0;          // log|g(0)| = log|G(1)|
  double R_requested = 0.0;
  double R_used = 0.0;
  bool shifted = false;  // R moved to clear a zero on the circle
};

// Zero-counting identity for g(w) = G(e^w) on |w| <= R:
//   sum_{|rho| <= R} log(R/|rho|) = (1/2pi) int log|g(R e^{i s})| ds - log|g(0)|.
// Requires no zero at the lift origin (t = 0, theta = 0). If some lifted
// zero modulus falls within `clearance` of R, R is nudged outward and the
// report flags it.
JensenReport jensen_residual(const ZeroSet& zs, double R, const JensenOptions& opts = {});

}  // namespace smallfock
