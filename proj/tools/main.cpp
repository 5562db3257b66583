// Command-line front end: parse a sequence file, run one analysis, print a
// human table or a machine record. Exit codes: 0 success, 1 hard error,
// 2 precondition violation, 3 result flagged as not numerically settled.

#include <cmath>
#include <complex>
#include <cstdarg>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "smallfock/cis.hpp"
#include "smallfock/density.hpp"
#include "smallfock/errors.hpp"
#include "smallfock/fockspace.hpp"
#include "smallfock/geometry.hpp"
#include "smallfock/io.hpp"
#include "smallfock/numeric.hpp"
#include "smallfock/products.hpp"
#include "smallfock/spectral.hpp"

using nlohmann::json;
using namespace smallfock;

namespace {

struct CommonArgs {
  std::string file;
  std::string config_path;
  std::string format = "table";
  std::string out_path;
  std::optional<std::uint64_t> seed;
  std::optional<double> alpha;
  std::optional<double> p;
};

void add_common(CLI::App* cmd, CommonArgs& a) {
  cmd->add_option("file", a.file, "sequence file (.seq line format or .csv)")
      ->required();
  cmd->add_option("--config", a.config_path, "JSON run configuration");
  cmd->add_option("--format", a.format, "output format")
      ->check(CLI::IsMember({"table", "record"}));
  cmd->add_option("--out", a.out_path, "write the report to this path");
  cmd->add_option("--seed", a.seed, "seed recorded in the report");
  cmd->add_option("--alpha", a.alpha, "override the file's alpha");
  cmd->add_option("--p", a.p, "override the file's p (use 'inf' in files)");
}

json input_block(const CommonArgs& a, const SequenceData& data) {
  const auto& w = data.sequence.window();
  json j{{"path", a.file},
         {"alpha", data.params.alpha},
         {"p", std::isinf(data.params.p) ? json("inf") : json(data.params.p)},
         {"points", data.sequence.size()},
         {"window", {w.t_min, w.t_max}}};
  if (a.seed) j["seed"] = *a.seed;
  return j;
}

json witness_json(const std::optional<AveragingWitness>& w) {
  if (!w) return nullptr;
  return json{{"m", w->m}, {"N", w->N}, {"margin", w->margin}};
}

json frame_json(const FrameBoundsReport& r) {
  return json{{"A", r.A},
              {"B", r.B},
              {"ratio", r.A > 0.0 ? r.B / r.A : std::numeric_limits<double>::infinity()},
              {"coeff_lo", r.coeff_lo},
              {"coeff_hi", r.coeff_hi},
              {"margin", r.margin},
              {"shift", r.shift},
              {"rows", r.rows},
              {"cols", r.cols},
              {"point_window", {r.t_lo, r.t_hi}},
              {"stabilized", r.stabilized},
              {"stabilization_change", r.stabilization_change}};
}

json cis_json(const CisVerdict& v) {
  return json{{"pass", v.pass},
              {"separated", v.separated},
              {"separation", v.separation},
              {"deltas_bounded", v.deltas_bounded},
              {"delta_sup", v.delta_sup},
              {"witness", witness_json(v.averaging)},
              {"best_margin", v.best_margin}};
}

json density_json(const DensityProfile& p) {
  json entries = json::array();
  for (const auto& e : p.entries)
    entries.push_back({{"R", e.R}, {"min_count", e.min_count}, {"ratio", e.inf_count_over_R}});
  return json{{"entries", entries}, {"estimate", p.estimate}, {"R_max_used", p.R_max_used}};
}

void emit(const CommonArgs& a, const json& record, const std::string& table) {
  std::string text;
  if (a.format == "record") {
    text = record.dump(2);
    text.push_back('\n');
  } else {
    text = table;
    // the full effective config travels with every report, table included
    text += "config: " + record.at("config").dump() + "\n";
  }
  if (a.out_path.empty()) {
    std::fputs(text.c_str(), stdout);
  } else {
    std::ofstream out(a.out_path, std::ios::binary);
    if (!out) throw parse_error("cannot open output path: " + a.out_path);
    out << text;
  }
}

std::string fmt_line(const char* pattern, ...) {
  char buf[256];
  va_list args;
  va_start(args, pattern);
  std::vsnprintf(buf, sizeof buf, pattern, args);
  va_end(args);
  return buf;
}

RunConfig load_config(const CommonArgs& a) {
  if (a.config_path.empty()) return {};
  return RunConfig::from_file(a.config_path);
}

std::vector<double> density_ladder(const RunConfig& cfg, const PointSequence& s) {
  if (!cfg.density_R.empty()) return cfg.density_R;
  const double r_max = s.window().extent() / 3.0;
  std::vector<double> ladder;
  for (int k = 1; k <= 4; ++k) ladder.push_back(r_max * k / 4.0);
  return ladder;
}

int cmd_density(const CommonArgs& a) {
  const auto data = load_sequence(a.file, a.alpha, a.p);
  const auto cfg = load_config(a);
  const auto ladder = density_ladder(cfg, data.sequence);
  const auto prof = lower_log_density(data.sequence, ladder);

  json record{{"command", "density"},
              {"input", input_block(a, data)},
              {"config", cfg.to_json()},
              {"result", density_json(prof)}};
  std::string table = "lower logarithmic density profile\n";
  table += fmt_line("%10s %10s %12s\n", "R", "min count", "count/R");
  for (const auto& e : prof.entries)
    table += fmt_line("%10.4f %10ld %12.6f\n", e.R, e.min_count, e.inf_count_over_R);
  table += fmt_line("estimate at R = %.4f: %.6f (critical value 2*alpha = %.6f)\n",
                    prof.R_max_used, prof.estimate, 2.0 * data.params.alpha);
  emit(a, record, table);
  return 0;
}

int cmd_cis(const CommonArgs& a) {
  const auto data = load_sequence(a.file, a.alpha, a.p);
  const auto cfg = load_config(a);
  const auto v = cis_check(data.sequence, data.params, cfg.cis);

  json record{{"command", "cis"},
              {"input", input_block(a, data)},
              {"config", cfg.to_json()},
              {"result", cis_json(v)}};
  std::string table = "complete interpolation check\n";
  table += fmt_line("separated:      %s (min d_log %.6g)\n", v.separated ? "yes" : "no",
                    v.separation);
  table += fmt_line("deltas bounded: %s (sup |delta| %.6g)\n", v.deltas_bounded ? "yes" : "no",
                    v.delta_sup);
  if (v.averaging) {
    table += fmt_line("witness:        m = %ld, N = %d, margin %.6g\n", v.averaging->m,
                      v.averaging->N, v.averaging->margin);
  } else {
    table += fmt_line("witness:        none (best margin %.6g)\n", v.best_margin);
  }
  table += fmt_line("verdict:        %s\n", v.pass ? "complete interpolating" : "fails");
  emit(a, record, table);
  return 0;
}

int cmd_bounds(const CommonArgs& a) {
  const auto data = load_sequence(a.file, a.alpha, a.p);
  const auto cfg = load_config(a);
  const auto main_rep = frame_report(data.sequence, data.params, cfg.spectral);
  const auto shifts = bounds_over_shifts(data.sequence, data.params, cfg.spectral);

  json profile = json::array();
  bool all_stable = main_rep.stabilized;
  double min_A = main_rep.A;
  for (const auto& r : shifts) {
    profile.push_back(frame_json(r));
    all_stable = all_stable && r.stabilized;
    min_A = std::min(min_A, r.A);
  }
  json record{{"command", "bounds"},
              {"input", input_block(a, data)},
              {"config", cfg.to_json()},
              {"result",
               {{"report", frame_json(main_rep)},
                {"shift_profile", profile},
                {"min_shift_A", min_A},
                {"all_stabilized", all_stable}}}};
  std::string table = "frame bounds (restriction singular values)\n";
  table += fmt_line("A = %.8g  B = %.8g  B/A = %.6g\n", main_rep.A, main_rep.B,
                    main_rep.A > 0 ? main_rep.B / main_rep.A : 0.0);
  table += fmt_line("matrix %ld x %ld, coeff range [%ld, %ld], margin %.4f\n", main_rep.rows,
                    main_rep.cols, main_rep.coeff_lo, main_rep.coeff_hi, main_rep.margin);
  table += fmt_line("stabilized: %s (probe change %.4g)\n", main_rep.stabilized ? "yes" : "no",
                    main_rep.stabilization_change);
  table += fmt_line("%8s %12s %12s %6s\n", "shift", "A", "B", "ok");
  for (const auto& r : shifts)
    table += fmt_line("%8.4f %12.6g %12.6g %6s\n", r.shift, r.A, r.B,
                      r.stabilized ? "yes" : "no");
  emit(a, record, table);
  return all_stable ? 0 : 3;
}

int cmd_extremal(const CommonArgs& a, double band_lo, double band_hi) {
  const auto data = load_sequence(a.file, a.alpha, a.p);
  const auto cfg = load_config(a);
  ExtremalOptions opts;
  opts.grid = cfg.grid;
  const auto cert = extremal_product_bound(data.sequence, data.params, band_lo, band_hi, opts);

  json record{{"command", "extremal"},
              {"input", input_block(a, data)},
              {"config", cfg.to_json()},
              {"result",
               {{"interval", {cert.interval_lo, cert.interval_hi}},
                {"two_n", cert.two_n},
                {"deficiency", cert.deficiency},
                {"log_measured_ratio", cert.log_measured_ratio},
                {"measured_ratio", cert.measured_ratio},
                {"log_predicted_floor", cert.log_predicted_floor},
                {"predicted_floor", cert.predicted_floor},
                {"centering_shift", cert.centering_shift},
                {"dropped_point", cert.dropped_point}}}};
  std::string table = "extremal band certificate\n";
  table += fmt_line("band [%.4f, %.4f], %ld product points%s\n", cert.interval_lo,
                    cert.interval_hi, cert.two_n,
                    cert.dropped_point ? " (outermost dropped for parity)" : "");
  table += fmt_line("deficiency %.6g, centering shift %.6g\n", cert.deficiency,
                    cert.centering_shift);
  table += fmt_line("measured ratio %.6g (log %.6g), predicted floor %.6g (log %.6g)\n",
                    cert.measured_ratio, cert.log_measured_ratio, cert.predicted_floor,
                    cert.log_predicted_floor);
  emit(a, record, table);
  return 0;
}

int cmd_jensen(const CommonArgs& a, double R) {
  const auto data = load_sequence(a.file, a.alpha, a.p);
  const auto cfg = load_config(a);
  std::size_t split = 0;
  const auto& pts = data.sequence.points();
  while (split < pts.size() && pts[split].t < 0.0) ++split;
  ZeroSet zs(data.sequence, split);
  const auto rep = jensen_residual(zs, R, cfg.jensen);

  json record{{"command", "jensen"},
              {"input", input_block(a, data)},
              {"config", cfg.to_json()},
              {"result",
               {{"residual", rep.residual},
                {"lhs", rep.lhs},
                {"circle_average", rep.circle_average},
                {"log_g0", rep.log_g0},
                {"R_requested", rep.R_requested},
                {"R_used", rep.R_used},
                {"shifted", rep.shifted}}}};
  std::string table = "zero-count identity residual\n";
  table += fmt_line("R = %.6g%s\n", rep.R_used,
                    rep.shifted ? " (nudged off a zero modulus)" : "");
  table += fmt_line("zero side %.8g, circle average %.8g, log|g(0)| %.8g\n", rep.lhs,
                    rep.circle_average, rep.log_g0);
  table += fmt_line("residual %.3e\n", rep.residual);
  emit(a, record, table);
  return 0;
}

int cmd_classify(const CommonArgs& a) {
  const auto data = load_sequence(a.file, a.alpha, a.p);
  const auto cfg = load_config(a);
  const auto& sp = data.params;

  const double sep = separation_constant(data.sequence);
  const auto ladder = density_ladder(cfg, data.sequence);
  const auto prof = lower_log_density(data.sequence, ladder);
  const double critical = 2.0 * sp.alpha;
  const double ratio = prof.estimate / critical;
  const auto cis = cis_check(data.sequence, sp, cfg.cis);

  std::string verdict;
  if (ratio > 1.06) {
    verdict = "supercritical: ShS evidence (density > 2α)";
  } else if (ratio >= 0.94) {
    verdict = "critical: SS-type evidence, not ShS (density = 2α)";
  } else {
    verdict = "subcritical: below the sampling threshold (density < 2α)";
  }

  json result{{"verdict", verdict},
              {"separation", sep},
              {"separated", sep >= cfg.cis.separation_floor},
              {"density", {{"estimate", prof.estimate},
                           {"critical_value", critical},
                           {"ratio", ratio}}},
              {"cis", cis_json(cis)}};
  bool stabilized = true;
  if (!std::isinf(sp.p) && sp.p == 2.0) {
    const auto rep = frame_report(data.sequence, sp, cfg.spectral);
    result["frame"] = frame_json(rep);
    stabilized = rep.stabilized;
  }

  json record{{"command", "classify"},
              {"input", input_block(a, data)},
              {"config", cfg.to_json()},
              {"result", result}};
  std::string table = "classification\n";
  table += fmt_line("separation:  %.6g (%s)\n", sep,
                    sep >= cfg.cis.separation_floor ? "separated" : "not separated");
  table += fmt_line("density:     %.6f vs critical 2*alpha = %.6f (ratio %.4f)\n",
                    prof.estimate, critical, ratio);
  table += fmt_line("cis:         %s\n", cis.pass ? "complete interpolating" : "not CIS");
  if (result.contains("frame")) {
    table += fmt_line("frame:       A = %.6g, B = %.6g, stabilized: %s\n",
                      result["frame"]["A"].get<double>(), result["frame"]["B"].get<double>(),
                      stabilized ? "yes" : "no");
  }
  table += "verdict:     " + verdict + "\n";
  emit(a, record, table);
  return stabilized ? 0 : 3;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"sampling and interpolation diagnostics for small Fock spaces"};
  app.require_subcommand(1);

  CommonArgs a_density, a_cis, a_bounds, a_extremal, a_classify, a_jensen;
  double band_lo = 0.0, band_hi = 0.0, radius = 0.0;

  auto* c_density = app.add_subcommand("density", "lower logarithmic density profile");
  add_common(c_density, a_density);
  auto* c_cis = app.add_subcommand("cis", "complete interpolation check");
  add_common(c_cis, a_cis);
  auto* c_bounds = app.add_subcommand("bounds", "frame bounds with shift profile");
  add_common(c_bounds, a_bounds);
  auto* c_extremal = app.add_subcommand("extremal", "band extremal certificate (p = inf)");
  add_common(c_extremal, a_extremal);
  c_extremal->add_option("--band-lo", band_lo, "band lower endpoint (log scale)")->required();
  c_extremal->add_option("--band-hi", band_hi, "band upper endpoint (log scale)")->required();
  auto* c_classify = app.add_subcommand("classify", "composite sampling classification");
  add_common(c_classify, a_classify);
  auto* c_jensen = app.add_subcommand("jensen", "zero-count identity residual");
  add_common(c_jensen, a_jensen);
  c_jensen->add_option("--radius", radius, "circle radius in the lifted plane")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (c_density->parsed()) return cmd_density(a_density);
    if (c_cis->parsed()) return cmd_cis(a_cis);
    if (c_bounds->parsed()) return cmd_bounds(a_bounds);
    if (c_extremal->parsed()) return cmd_extremal(a_extremal, band_lo, band_hi);
    if (c_classify->parsed()) return cmd_classify(a_classify);
    if (c_jensen->parsed()) return cmd_jensen(a_jensen, radius);
  } catch (const validation_error& e) {
    std::fprintf(stderr, "precondition error: %s\n", e.what());
    return 2;
  } catch (const parse_error& e) {
    std::fprintf(stderr, "input error: %s\n", e.what());
    return 1;
  } catch (const numeric_error& e) {
    std::fprintf(stderr, "numerical failure: %s\n", e.what());
    return 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 1;
}
