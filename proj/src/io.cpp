#include "smallfock/io.hpp"

#include "smallfock/errors.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>

namespace smallfock {

namespace {

bool parse_double(const std::string& tok, double& out) {
  if (tok == "inf" || tok == "Inf" || tok == "INF") {
    out = std::numeric_limits<double>::infinity();
    return true;
  }
  std::size_t used = 0;
  try {
    out = std::stod(tok, &used);
  } catch (const std::exception&) {
    return false;
  }
  return used == tok.size();
}

std::string strip_comment(const std::string& line) {
  auto pos = line.find('#');
  return pos == std::string::npos ? line : line.substr(0, pos);
}

SequenceData parse_line_format(std::istream& in, const std::string& path,
                               std::optional<double> alpha_override,
                               std::optional<double> p_override) {
  std::optional<double> alpha, p;
  std::optional<Window> window;
  std::vector<LogPoint> pts;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(strip_comment(line));
    std::string key;
    if (!(ls >> key)) continue;
    auto want = [&](int n) {
      std::vector<double> vals;
      std::string tok;
      double v;
      while (ls >> tok) {
        if (!parse_double(tok, v)) {
          throw parse_error(path + ":" + std::to_string(lineno) + ": bad number '" +
                            tok + "'");
        }
        vals.push_back(v);
      }
      if (static_cast<int>(vals.size()) != n) {
        throw parse_error(path + ":" + std::to_string(lineno) + ": '" + key +
                          "' expects " + std::to_string(n) + " value(s)");
      }
      return vals;
    };
    if (key == "alpha") {
      alpha = want(1)[0];
    } else if (key == "p") {
      p = want(1)[0];
    } else if (key == "window") {
      auto v = want(2);
      if (!std::isfinite(v[0]) || !std::isfinite(v[1])) {
        throw parse_error(path + ":" + std::to_string(lineno) + ": window must be finite");
      }
      window = Window{v[0], v[1]};
    } else if (key == "point") {
      auto v = want(2);
      if (!std::isfinite(v[0]) || !std::isfinite(v[1])) {
        throw parse_error(path + ":" + std::to_string(lineno) +
                          ": point coordinates must be finite");
      }
      pts.push_back({v[0], v[1]});
    } else {
      throw parse_error(path + ":" + std::to_string(lineno) + ": unknown key '" + key +
                        "'");
    }
  }
  // command-line values win over what the file says
  if (alpha_override) alpha = alpha_override;
  if (p_override) p = p_override;
  if (!alpha) throw parse_error(path + ": missing alpha");
  if (!p) throw parse_error(path + ": missing p");
  if (pts.empty()) throw parse_error(path + ": no points");
  SequenceData d;
  try {
    d.params = SpaceParams::make(*alpha, *p);
    d.sequence = PointSequence(std::move(pts), window);
  } catch (const validation_error& e) {
    throw parse_error(path + ": " + e.what());
  }
  d.source = path;
  return d;
}

SequenceData parse_csv(std::istream& in, const std::string& path,
                       std::optional<double> alpha_override,
                       std::optional<double> p_override) {
  if (!alpha_override || !p_override) {
    throw parse_error(path + ": csv input needs alpha and p overrides");
  }
  std::vector<LogPoint> pts;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string body = strip_comment(line);
    if (body.find_first_not_of(" \t\r") == std::string::npos) continue;
    if (lineno == 1 && body.find_first_not_of("logr,theta_ \t\r") == std::string::npos) {
      continue;  // header
    }
    std::replace(body.begin(), body.end(), ',', ' ');
    std::istringstream ls(body);
    std::string ta, tb;
    double t, theta;
    if (!(ls >> ta >> tb) || !parse_double(ta, t) || !parse_double(tb, theta) ||
        !std::isfinite(t) || !std::isfinite(theta)) {
      throw parse_error(path + ":" + std::to_string(lineno) + ": bad csv row");
    }
    pts.push_back({t, theta});
  }
  if (pts.empty()) throw parse_error(path + ": no points");
  SequenceData d;
  try {
    d.params = SpaceParams::make(*alpha_override, *p_override);
    d.sequence = PointSequence(std::move(pts));
  } catch (const validation_error& e) {
    throw parse_error(path + ": " + e.what());
  }
  d.source = path;
  return d;
}

}  // namespace

SequenceData load_sequence(const std::string& path, std::optional<double> alpha_override,
                           std::optional<double> p_override) {
  std::ifstream in(path);
  if (!in) throw parse_error(path + ": cannot open");
  if (path.size() >= 4 && path.substr(path.size() - 4) == ".csv") {
    return parse_csv(in, path, alpha_override, p_override);
  }
  return parse_line_format(in, path, alpha_override, p_override);
}

namespace {

template <typename T>
void maybe(const nlohmann::json& j, const char* key, T& out) {
  if (j.contains(key)) out = j.at(key).get<T>();
}

}  // namespace

RunConfig RunConfig::from_json(const nlohmann::json& j) {
  RunConfig c;
  if (!j.is_object()) throw parse_error("config: top level must be an object");
  if (j.contains("cis")) {
    const auto& s = j.at("cis");
    maybe(s, "N_max", c.cis.N_max);
    maybe(s, "eps_tol", c.cis.eps_tol);
    maybe(s, "delta_sup_cap", c.cis.delta_sup_cap);
    maybe(s, "separation_floor", c.cis.separation_floor);
  }
  if (j.contains("density")) {
    maybe(j.at("density"), "R_list", c.density_R);
  }
  if (j.contains("spectral")) {
    const auto& s = j.at("spectral");
    maybe(s, "coeff_lo", c.spectral.coeff_lo);
    maybe(s, "coeff_hi", c.spectral.coeff_hi);
    if (s.contains("margin")) c.spectral.margin = s.at("margin").get<double>();
    maybe(s, "stabilization_step", c.spectral.stabilization_step);
    maybe(s, "shift_grid_size", c.spectral.shift_grid_size);
    maybe(s, "removal_half_widths", c.removal_half_widths);
  }
  if (j.contains("grid")) {
    const auto& s = j.at("grid");
    maybe(s, "theta_samples", c.grid.theta_samples);
    maybe(s, "t_step", c.grid.t_step);
    maybe(s, "refine_tol", c.grid.refine_tol);
    maybe(s, "max_refinements", c.grid.max_refinements);
    maybe(s, "pad", c.grid.pad);
  }
  if (j.contains("products")) {
    const auto& s = j.at("products");
    maybe(s, "tail_tol", c.tail_tol);
    maybe(s, "edge_margin", c.edge_margin);
  }
  if (j.contains("contour")) {
    const auto& s = j.at("contour");
    maybe(s, "rel_tol", c.contour.rel_tol);
    maybe(s, "q_init", c.contour.q_init);
    maybe(s, "q_cap", c.contour.q_cap);
  }
  if (j.contains("jensen")) {
    const auto& s = j.at("jensen");
    maybe(s, "integral_tol", c.jensen.integral_tol);
    maybe(s, "clearance", c.jensen.clearance);
  }
  return c;
}

RunConfig RunConfig::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw parse_error(path + ": cannot open");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw parse_error(path + ": " + e.what());
  }
  return from_json(j);
}

nlohmann::json RunConfig::to_json() const {
  nlohmann::json j;
  j["cis"] = {{"N_max", cis.N_max},
              {"eps_tol", cis.eps_tol},
              {"delta_sup_cap", cis.delta_sup_cap},
              {"separation_floor", cis.separation_floor}};
  j["density"] = {{"R_list", density_R}};
  j["spectral"] = {{"coeff_lo", spectral.coeff_lo},
                   {"coeff_hi", spectral.coeff_hi},
                   {"stabilization_step", spectral.stabilization_step},
                   {"shift_grid_size", spectral.shift_grid_size},
                   {"removal_half_widths", removal_half_widths}};
  if (spectral.margin) j["spectral"]["margin"] = *spectral.margin;
  j["grid"] = {{"theta_samples", grid.theta_samples},
               {"t_step", grid.t_step},
               {"refine_tol", grid.refine_tol},
               {"max_refinements", grid.max_refinements},
               {"pad", grid.pad}};
  j["products"] = {{"tail_tol", tail_tol}, {"edge_margin", edge_margin}};
  j["contour"] = {{"rel_tol", contour.rel_tol},
                  {"q_init", contour.q_init},
                  {"q_cap", contour.q_cap}};
  j["jensen"] = {{"integral_tol", jensen.integral_tol},
                 {"clearance", jensen.clearance}};
  return j;
}

}  // namespace smallfock
