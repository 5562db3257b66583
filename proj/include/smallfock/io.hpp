#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "smallfock/cis.hpp"
#include "smallfock/fockspace.hpp"
#include "smallfock/geometry.hpp"
#include "smallfock/products.hpp"
#include "smallfock/spectral.hpp"

namespace smallfock {

// Raised on malformed input files or configs (exit code 1 in the CLI,
// distinct from domain precondition violations).
class parse_error : public std::runtime_error {
 public:
  explicit parse_error(const std::string& what) : std::runtime_error(what) {}
};

struct SequenceData {
  SpaceParams params;
  PointSequence sequence;
  std::string source;
};

// Line format:
//   # comment
//   alpha 0.5
//   p 2            (or: p inf)
//   window -30 30  (optional; defaults to the observed extent)
//   point <t> <theta>   (one per point; t = log|z|)
// CSV format (path ending .csv): optional header "log_r,theta", then one
// "t,theta" pair per line; alpha and p must come from overrides.
// Both formats require at least one point and finite coordinates.
SequenceData load_sequence(const std::string& path, std::optional<double> alpha_override,
                           std::optional<double> p_override);

struct RunConfig {
  CisOptions cis;
  std::vector<double> density_R;  // empty: automatic ladder up to extent/3
  SpectralOptions spectral;
  std::vector<long> removal_half_widths = {14, 20, 26};  // wide enough to settle
  GridOptions grid;
  double tail_tol = 1e-18;
  long edge_margin = 8;
  ContourOptions contour;
  JensenOptions jensen;

  static RunConfig from_json(const nlohmann::json& j);  // partial override of defaults
  static RunConfig from_file(const std::string& path);
  nlohmann::json to_json() const;  // fully materialized effective config
};

}  // namespace smallfock
