#pragma once

#include <Eigen/Dense>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "smallfock/fockspace.hpp"
#include "smallfock/geometry.hpp"

namespace smallfock {

// Margin (in t) around the coefficient influence zone; the Gaussian row
// profile of a column has width ~ (2 alpha)^{-1/2}, so 6/sqrt(alpha) leaves
// negligible mass outside.
double default_margin(const SpaceParams& sp);

// Normalized sampling matrix for p = 2: rows are points of s with t in the
// padded window [N0/(2 alpha) - margin, N1/(2 alpha) + margin], columns the
// monomials n = N0..N1, entry
//   M[l, n] = e^{n t + t - phi(t)} e^{i n theta} / ||z^n||.
// For f = sum b_n z^n / ||z^n||:  ||f restricted to s||^2 = ||M b||^2 and
// ||f||^2 = ||b||^2. The declared window of s must cover the padded window.
Eigen::MatrixXcd frame_matrix(const PointSequence& s, const SpaceParams& sp, long N0,
                              long N1, double margin);

// Extreme eigenvalues (A, B) of M^* M with a residual certificate
// ||H v - lambda v|| <= 1e-8 ||H|| on both extreme pairs (throws
// numeric_error if the certificate fails). A is clamped at 0.
std::pair<double, double> frame_bounds(const Eigen::MatrixXcd& M);

struct SpectralOptions {
  long coeff_lo = -12;
  long coeff_hi = 12;
  std::optional<double> margin;  // default_margin(sp) when unset
  int stabilization_step = 8;    // widening of N1-N0 used by the stability probe
  int shift_grid_size = 8;
};

struct FrameBoundsReport {
  // sampling constants: extreme singular values of the restriction matrix,
  // so A ||f|| <= ||f restricted|| <= B ||f|| on the truncated span
  double A = 0.0;
  double B = 0.0;
  long coeff_lo = 0;
  long coeff_hi = 0;
  double t_lo = 0.0;  // padded point window
  double t_hi = 0.0;
  double margin = 0.0;
  double shift = 0.0;  // log-scale applied to the sequence for this report
  long rows = 0;
  long cols = 0;
  bool stabilized = false;         // (A, B) move < 5% when the range widens by the step
  double stabilization_change = 0; // max relative change observed in the probe
};

FrameBoundsReport frame_report(const PointSequence& s, const SpaceParams& sp,
                               const SpectralOptions& opts);

// Reports over the scale orbit: shifts s_i = i/(grid * 2 alpha),
// i = 0..grid-1, covering one period [0, 1/(2 alpha)) of the bounds.
std::vector<FrameBoundsReport> bounds_over_shifts(const PointSequence& s,
                                                  const SpaceParams& sp,
                                                  const SpectralOptions& opts);

struct ExtremalOptions {
  GridOptions grid;
  double band_padding_factor = 1.0;  // window must cover I padded by factor*|I|
};

// Certificate from the band extremal product: f vanishes on the (evened)
// band points, its weighted sup is compared against the restriction to the
// whole sequence, and the ratio is a lower bound witness for the sampling
// constant. predicted_floor = exp((alpha/4) (|I| d - 3/(2 alpha))^2) with
// d the raw band deficiency.
struct ExtremalCertificate {
  double interval_lo = 0.0;
  double interval_hi = 0.0;
  long two_n = 0;           // points used for the product (even)
  double deficiency = 0.0;  // d: band count = (1 - d) * 2 alpha |I|
  double log_measured_ratio = 0.0;
  double measured_ratio = 0.0;
  double log_predicted_floor = 0.0;
  double predicted_floor = 0.0;
  double centering_shift = 0.0;  // internal lattice shift applied before measuring
  bool dropped_point = false;    // parity reduction removed the outermost band point
};

// Requires p = inf. The window of s must cover [I_lo - |I|, I_hi + |I|],
// and the band must contain at least 2 points after parity reduction.
ExtremalCertificate extremal_product_bound(const PointSequence& s, const SpaceParams& sp,
                                           double I_lo, double I_hi,
                                           const ExtremalOptions& opts = {});

enum class RemovalVerdict { stable, decaying, inconclusive };

struct RemovalReport {
  std::vector<FrameBoundsReport> entries;  // one per schedule step
  double first_to_last_ratio = 0.0;        // A_first / A_last
  double max_rel_change = 0.0;             // max |A_i - A_0| / A_0
  RemovalVerdict verdict = RemovalVerdict::inconclusive;
};

// Lower frame bound of s minus one point (point_index into s.points();
// nullopt removes nothing) across a schedule of coefficient ranges.
// Verdict: stable when A moves <= 10% from the first step, decaying when
// A_first / A_last >= 2, inconclusive otherwise.
RemovalReport removal_experiment(const PointSequence& s, const SpaceParams& sp,
                                 std::optional<std::size_t> point_index,
                                 std::span<const std::pair<long, long>> coeff_ranges,
                                 std::optional<double> margin = std::nullopt);

}  // namespace smallfock
