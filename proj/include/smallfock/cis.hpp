#pragma once

#include <optional>
#include <vector>

#include "smallfock/fockspace.hpp"
#include "smallfock/geometry.hpp"

namespace smallfock {

// Deviations of a sequence from the reference lattice, in lattice cells:
// delta_k = 2 alpha t_k - k - 2/p, where t_k enumerates the points in
// increasing t and k = 0 is the point with the smallest t >= 0 (or the
// largest t when all t < 0).
struct DeltaSequence {
  std::vector<double> deltas;
  long k_first = 0;  // k of the first (lowest-t) point
  SpaceParams params;

  long k_last() const { return k_first + static_cast<long>(deltas.size()) - 1; }
  double delta(long k) const { return deltas.at(static_cast<std::size_t>(k - k_first)); }
};

DeltaSequence compute_deltas(const PointSequence& s, const SpaceParams& sp);

// Witness for the averaged alignment condition: an integer m and window
// length N with sup_n |(1/N) sum_{k=n+1}^{n+N} delta_k + m| <= 1/2 - margin
// and margin >= eps_tol.
struct AveragingWitness {
  long m = 0;
  int N = 0;
  double margin = 0.0;
};

// Scans N = 1..min(N_max, #deltas) and, per N, the feasible integer range
// of m; returns the witness with the smallest N (the feasible m at that N
// is unique). Requires 0 < eps_tol < 1/2, N_max >= 1.
std::optional<AveragingWitness> find_m(const DeltaSequence& d, int N_max, double eps_tol);

struct CisOptions {
  int N_max = 64;
  double eps_tol = 1e-6;
  double delta_sup_cap = 10.0;
  double separation_floor = 1e-6;
};

struct CisVerdict {
  bool separated = false;
  double separation = 0.0;
  bool deltas_bounded = false;
  double delta_sup = 0.0;
  std::optional<AveragingWitness> averaging;
  double best_margin = -0.5;  // best margin over all scanned (m, N), pass or not
  bool pass = false;
  CisOptions options;  // the thresholds the verdict was computed against
};

// Complete-interpolation test: separation, bounded deltas, averaged
// alignment. Fails fast in value (not by exception) on each criterion.
CisVerdict cis_check(const PointSequence& s, const SpaceParams& sp,
                     const CisOptions& opts = {});

}  // namespace smallfock
