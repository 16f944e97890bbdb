#include "tpi/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <iterator>
#include <ostream>
#include <set>
#include <sstream>
#include <variant>

#include "json.hpp"
#include "tpi/interference.hpp"
#include "tpi/kernels.hpp"
#include "tpi/numerics.hpp"

namespace tpi {

using Json = nlohmann::ordered_json;

namespace {

constexpr double kPs = 1e-12;
constexpr double kMhz = 1e6;
constexpr double kGhz = 1e9;

// ---------------------------------------------------------------- parsing

void reject_unknown(const Json& obj, const std::set<std::string>& allowed, const std::string& where) {
  for (const auto& [key, value] : obj.items()) {
    if (!allowed.count(key)) throw ConfigError(where + ": unknown key '" + key + "'");
  }
}

const Json& require_object(const Json& j, const std::string& where) {
  if (!j.is_object()) throw ConfigError(where + ": expected an object");
  return j;
}

double get_number(const Json& obj, const std::string& key, const std::string& where) {
  if (!obj.contains(key)) throw ConfigError(where + ": missing '" + key + "'");
  const Json& v = obj.at(key);
  if (!v.is_number()) throw ConfigError(where + "." + key + ": expected a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) throw ConfigError(where + "." + key + ": must be finite");
  return x;
}

double number_or(const Json& obj, const std::string& key, double fallback, const std::string& where) {
  return obj.contains(key) ? get_number(obj, key, where) : fallback;
}

std::size_t count_or(const Json& obj, const std::string& key, std::size_t fallback,
                     const std::string& where) {
  if (!obj.contains(key)) return fallback;
  const Json& v = obj.at(key);
  if (!v.is_number_integer() || v.get<long long>() < 0) {
    throw ConfigError(where + "." + key + ": expected a non-negative integer");
  }
  return v.get<std::size_t>();
}

std::string string_or(const Json& obj, const std::string& key, const std::string& fallback,
                      const std::string& where) {
  if (!obj.contains(key)) return fallback;
  if (!obj.at(key).is_string()) throw ConfigError(where + "." + key + ": expected a string");
  return obj.at(key).get<std::string>();
}

EmitterConfig parse_emitter(const Json& j, const std::string& where) {
  require_object(j, where);
  reject_unknown(j, {"lifetime_ps", "dephasing_rate_mhz", "inhomogeneous_fwhm_mhz", "detuning_mhz"}, where);
  EmitterConfig e;
  e.lifetime_ps = get_number(j, "lifetime_ps", where);
  e.dephasing_rate_mhz = number_or(j, "dephasing_rate_mhz", 0.0, where);
  e.inhomogeneous_fwhm_mhz = number_or(j, "inhomogeneous_fwhm_mhz", 0.0, where);
  e.detuning_mhz = number_or(j, "detuning_mhz", 0.0, where);
  try {
    e.to_params().validate();
  } catch (const std::invalid_argument& ex) {
    throw ConfigError(where + ": " + ex.what());
  }
  return e;
}

GridConfig parse_grid(const Json& j, const std::string& where) {
  GridConfig g;
  if (j.is_array()) {
    if (j.empty()) throw ConfigError(where + ": grid is empty");
    for (const Json& v : j) {
      if (!v.is_number() || !std::isfinite(v.get<double>())) {
        throw ConfigError(where + ": grid values must be finite numbers");
      }
      g.values.push_back(v.get<double>());
    }
    return g;
  }
  require_object(j, where);
  reject_unknown(j, {"min", "max", "points"}, where);
  g.min = get_number(j, "min", where);
  g.max = get_number(j, "max", where);
  g.points = count_or(j, "points", 0, where);
  if (g.points == 0) throw ConfigError(where + ": grid is empty (points must be >= 1)");
  if (g.points > 1 && !(g.max > g.min)) throw ConfigError(where + ": max must exceed min");
  return g;
}

GateConfig parse_gate(const Json& j) {
  const std::string where = "gate";
  require_object(j, where);
  reject_unknown(j, {"type", "reflectivity", "elements", "basis", "modes"}, where);
  GateConfig g;
  const std::string type = string_or(j, "type", "beam_splitter", where);
  if (type == "beam_splitter") {
    g.kind = GateKind::beam_splitter;
    g.reflectivity = number_or(j, "reflectivity", 0.5, where);
  } else if (type == "matrix") {
    g.kind = GateKind::matrix;
    if (!j.contains("elements") || !j.at("elements").is_array() || j.at("elements").empty()) {
      throw ConfigError("gate.elements: expected a non-empty array of rows");
    }
    for (const Json& row : j.at("elements")) {
      if (!row.is_array()) throw ConfigError("gate.elements: each row must be an array");
      std::vector<std::complex<double>> r;
      for (const Json& cell : row) {
        if (!cell.is_array() || cell.size() != 2 || !cell[0].is_number() || !cell[1].is_number()) {
          throw ConfigError("gate.elements: each entry must be [re, im]");
        }
        r.emplace_back(cell[0].get<double>(), cell[1].get<double>());
      }
      g.matrix.push_back(std::move(r));
    }
  } else if (type == "cnot") {
    g.kind = GateKind::cnot;
    try {
      g.basis = parse_basis(string_or(j, "basis", "HH", where));
    } catch (const GateError& ex) {
      throw ConfigError(std::string("gate.basis: ") + ex.what());
    }
    g.modes = {kBellModes.i + 1, kBellModes.j + 1, kBellModes.k + 1, kBellModes.l + 1};
  } else {
    throw ConfigError("gate.type: expected beam_splitter, matrix or cnot");
  }
  if (j.contains("modes")) {
    const Json& m = j.at("modes");
    if (!m.is_array() || m.size() != 4) throw ConfigError("gate.modes: expected [i, j, k, l]");
    for (std::size_t n = 0; n < 4; ++n) {
      if (!m[n].is_number_integer() || m[n].get<long long>() < 1) {
        throw ConfigError("gate.modes: indices are one-based positive integers");
      }
      g.modes[n] = m[n].get<std::size_t>();
    }
  }
  try {
    g.selection().validate(g.build().dim());
  } catch (const GateError& ex) {
    throw ConfigError(std::string("gate: ") + ex.what());
  }
  return g;
}

LinewidthConfig parse_linewidth(const Json& j, const std::string& where) {
  require_object(j, where);
  reject_unknown(j, {"lifetime_ps", "coherence_time_ps", "fwhm_mhz", "lorentzian_fwhm_mhz", "gaussian_fwhm_mhz"},
                 where);
  LinewidthConfig l;
  l.lifetime_ps = get_number(j, "lifetime_ps", where);
  if (!(l.lifetime_ps > 0.0)) throw ConfigError(where + ".lifetime_ps: must be positive");
  const int given = static_cast<int>(j.contains("coherence_time_ps")) + static_cast<int>(j.contains("fwhm_mhz")) +
                    static_cast<int>(j.contains("lorentzian_fwhm_mhz"));
  if (given != 1) {
    throw ConfigError(where + ": give exactly one of coherence_time_ps, fwhm_mhz, lorentzian_fwhm_mhz");
  }
  if (j.contains("coherence_time_ps")) {
    l.kind = LinewidthKind::coherence_time;
    l.coherence_time_ps = get_number(j, "coherence_time_ps", where);
  } else if (j.contains("fwhm_mhz")) {
    l.kind = LinewidthKind::voigt_fwhm;
    l.fwhm_mhz = get_number(j, "fwhm_mhz", where);
  } else {
    l.kind = LinewidthKind::components;
    const Json& range = j.at("lorentzian_fwhm_mhz");
    if (range.is_number()) {
      l.lorentzian_fwhm_min_mhz = l.lorentzian_fwhm_max_mhz = range.get<double>();
    } else if (range.is_array() && range.size() == 2 && range[0].is_number() && range[1].is_number()) {
      l.lorentzian_fwhm_min_mhz = range[0].get<double>();
      l.lorentzian_fwhm_max_mhz = range[1].get<double>();
    } else {
      throw ConfigError(where + ".lorentzian_fwhm_mhz: expected a number or [min, max]");
    }
    l.gaussian_fwhm_mhz = number_or(j, "gaussian_fwhm_mhz", 0.0, where);
  }
  if (j.contains("gaussian_fwhm_mhz") && l.kind != LinewidthKind::components) {
    throw ConfigError(where + ".gaussian_fwhm_mhz: only valid with lorentzian_fwhm_mhz");
  }
  return l;
}

VerifySettings parse_verify(const Json& j) {
  const std::string where = "verify";
  require_object(j, where);
  reject_unknown(j, {"instances", "p_coinc_tolerance", "quadrature_tolerance", "phase_trials", "g2_instances",
                     "g2_taus", "g2_realizations", "stderr_band"},
                 where);
  VerifySettings v;
  v.instances = count_or(j, "instances", v.instances, where);
  v.p_coinc_tolerance = number_or(j, "p_coinc_tolerance", v.p_coinc_tolerance, where);
  v.quadrature_tolerance = number_or(j, "quadrature_tolerance", v.quadrature_tolerance, where);
  v.phase_trials = count_or(j, "phase_trials", v.phase_trials, where);
  v.g2_instances = count_or(j, "g2_instances", v.g2_instances, where);
  v.g2_taus = count_or(j, "g2_taus", v.g2_taus, where);
  v.g2_realizations = count_or(j, "g2_realizations", v.g2_realizations, where);
  v.stderr_band = number_or(j, "stderr_band", v.stderr_band, where);
  if (v.phase_trials < kMinimumTrials) throw ConfigError("verify.phase_trials: must be >= 10000");
  if (v.g2_realizations < 2) throw ConfigError("verify.g2_realizations: must be >= 2");
  if (v.g2_taus < 1) throw ConfigError("verify.g2_taus: must be >= 1");
  if (!(v.p_coinc_tolerance > 0.0) || !(v.quadrature_tolerance > 0.0) || !(v.stderr_band > 0.0)) {
    throw ConfigError("verify: tolerances must be positive");
  }
  return v;
}

// ---------------------------------------------------------------- writing

Json grid_json(const GridConfig& g) {
  if (!g.values.empty()) return Json(g.values);
  return Json{{"min", g.min}, {"max", g.max}, {"points", g.points}};
}

Json config_json(const RunConfig& c) {
  Json j = Json::object();
  if (c.emitters) {
    Json arr = Json::array();
    for (const EmitterConfig& e : *c.emitters) {
      arr.push_back({{"lifetime_ps", e.lifetime_ps},
                     {"dephasing_rate_mhz", e.dephasing_rate_mhz},
                     {"inhomogeneous_fwhm_mhz", e.inhomogeneous_fwhm_mhz},
                     {"detuning_mhz", e.detuning_mhz}});
    }
    j["emitters"] = arr;
  }
  Json gate = Json::object();
  switch (c.gate.kind) {
    case GateKind::beam_splitter:
      gate["type"] = "beam_splitter";
      gate["reflectivity"] = c.gate.reflectivity;
      break;
    case GateKind::matrix: {
      gate["type"] = "matrix";
      Json rows = Json::array();
      for (const auto& row : c.gate.matrix) {
        Json r = Json::array();
        for (const auto& z : row) r.push_back(Json::array({z.real(), z.imag()}));
        rows.push_back(r);
      }
      gate["elements"] = rows;
      break;
    }
    case GateKind::cnot:
      gate["type"] = "cnot";
      gate["basis"] = std::string(basis_name(c.gate.basis));
      break;
  }
  gate["modes"] = c.gate.modes;
  j["gate"] = gate;
  if (c.tau_ps) j["tau_ps"] = grid_json(*c.tau_ps);
  if (c.detuning_ghz) j["detuning_ghz"] = grid_json(*c.detuning_ghz);
  if (c.theta_pd) j["theta_pd"] = grid_json(*c.theta_pd);
  if (c.theta_sd) j["theta_sd"] = grid_json(*c.theta_sd);
  if (!c.linewidths.empty()) {
    Json arr = Json::array();
    for (const LinewidthConfig& l : c.linewidths) {
      Json e = {{"lifetime_ps", l.lifetime_ps}};
      switch (l.kind) {
        case LinewidthKind::coherence_time: e["coherence_time_ps"] = l.coherence_time_ps; break;
        case LinewidthKind::voigt_fwhm: e["fwhm_mhz"] = l.fwhm_mhz; break;
        case LinewidthKind::components:
          e["lorentzian_fwhm_mhz"] = Json::array({l.lorentzian_fwhm_min_mhz, l.lorentzian_fwhm_max_mhz});
          e["gaussian_fwhm_mhz"] = l.gaussian_fwhm_mhz;
          break;
      }
      arr.push_back(e);
    }
    j["linewidths"] = arr;
  }
  j["samples"] = c.samples;
  const VerifySettings& v = c.verify;
  j["verify"] = {{"instances", v.instances},
                 {"p_coinc_tolerance", v.p_coinc_tolerance},
                 {"quadrature_tolerance", v.quadrature_tolerance},
                 {"phase_trials", v.phase_trials},
                 {"g2_instances", v.g2_instances},
                 {"g2_taus", v.g2_taus},
                 {"g2_realizations", v.g2_realizations},
                 {"stderr_band", v.stderr_band}};
  j["output"] = {{"path", c.output_path}, {"format", c.format == OutputFormat::csv ? "csv" : "json"}};
  j["seed"] = c.seed;
  return j;
}

void write_json(std::ostream& os, const Json& j) {
  switch (j.type()) {
    case Json::value_t::object: {
      os << '{';
      bool first = true;
      for (const auto& [key, value] : j.items()) {
        if (!first) os << ',';
        first = false;
        os << Json(key).dump() << ':';
        write_json(os, value);
      }
      os << '}';
      break;
    }
    case Json::value_t::array: {
      os << '[';
      for (std::size_t n = 0; n < j.size(); ++n) {
        if (n) os << ',';
        write_json(os, j[n]);
      }
      os << ']';
      break;
    }
    case Json::value_t::number_float: {
      const double v = j.get<double>();
      os << (std::isfinite(v) ? format_number(v) : "null");
      break;
    }
    default:
      os << j.dump();
  }
}

std::string compact_json(const Json& j) {
  std::ostringstream os;
  write_json(os, j);
  return os.str();
}

// A command's result: named columns of numbers or labels.
using Cell = std::variant<double, std::string>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

void write_table(std::ostream& out, std::string_view command, const RunConfig& config, const Table& t) {
  const Json meta = config_json(config);
  if (config.format == OutputFormat::csv) {
    out << "# command: " << command << '\n';
    out << "# config: " << compact_json(meta) << '\n';
    for (std::size_t c = 0; c < t.columns.size(); ++c) out << (c ? "," : "") << t.columns[c];
    out << '\n';
    for (const auto& row : t.rows) {
      for (std::size_t c = 0; c < row.size(); ++c) {
        if (c) out << ',';
        if (const double* v = std::get_if<double>(&row[c])) {
          out << format_number(*v);
        } else {
          out << std::get<std::string>(row[c]);
        }
      }
      out << '\n';
    }
    return;
  }
  Json doc = Json::object();
  doc["command"] = std::string(command);
  doc["config"] = meta;
  doc["columns"] = t.columns;
  Json rows = Json::array();
  for (const auto& row : t.rows) {
    Json r = Json::array();
    for (const Cell& cell : row) {
      if (const double* v = std::get_if<double>(&cell)) {
        r.push_back(*v);
      } else {
        r.push_back(std::get<std::string>(cell));
      }
    }
    rows.push_back(r);
  }
  doc["rows"] = rows;
  write_json(out, doc);
  out << '\n';
}

// ---------------------------------------------------------------- commands

std::vector<double> scaled(const std::vector<double>& v, double factor) {
  std::vector<double> out(v.size());
  for (std::size_t n = 0; n < v.size(); ++n) out[n] = v[n] * factor;
  return out;
}

const GridConfig& require_grid(const std::optional<GridConfig>& g, const char* name) {
  if (!g) throw ConfigError(std::string("config: '") + name + "' grid is required for this command");
  return *g;
}

constexpr double kPerNs = 1e-9;  // G(2) is reported in 1/ns

Table cmd_g2(const RunConfig& c) {
  const PhotonPair pair = c.pair();
  const std::vector<double> taus = c.tau_ps ? scaled(c.tau_ps->expand(), kPs) : default_tau_grid(pair);
  const CorrelationTrace trace = g2_trace(c.gate.build(), c.gate.selection(), pair, taus);
  Table t{{"tau_ps", "g2", "g2_classical"}, {}};
  for (std::size_t n = 0; n < trace.tau.size(); ++n) {
    t.rows.push_back({trace.tau[n] / kPs, trace.g2[n] * kPerNs, trace.g2_classical[n] * kPerNs});
  }
  return t;
}

Table cmd_tuning(const RunConfig& c) {
  const PhotonPair pair = c.pair();
  const std::vector<double> detunings_ghz = require_grid(c.detuning_ghz, "detuning_ghz").expand();
  const std::vector<double> v = tuning_curve(pair, scaled(detunings_ghz, kGhz));
  Table t{{"detuning_ghz", "visibility"}, {}};
  for (std::size_t n = 0; n < v.size(); ++n) t.rows.push_back({detunings_ghz[n], v[n]});
  return t;
}

Table map_table(const Grid2D& g, const char* name) {
  Table t{{"theta_pd", "theta_sd", name}, {}};
  for (std::size_t r = 0; r < g.rows(); ++r) {
    for (std::size_t col = 0; col < g.cols(); ++col) t.rows.push_back({g.theta_pd[r], g.theta_sd[col], g.at(r, col)});
  }
  return t;
}

Table cmd_map(const RunConfig& c, bool fidelity) {
  const std::vector<double> pd = require_grid(c.theta_pd, "theta_pd").expand();
  const std::vector<double> sd = require_grid(c.theta_sd, "theta_sd").expand();
  return fidelity ? map_table(fidelity_map(pd, sd), "fidelity") : map_table(visibility_map(pd, sd), "visibility");
}

Table cmd_decompose(const RunConfig& c) {
  if (c.linewidths.empty()) throw ConfigError("config: 'linewidths' is required for decompose");
  Table t{{"emitter", "dephasing_rate_mhz", "inhomogeneous_fwhm_mhz", "lorentzian_fwhm_mhz", "voigt_fwhm_mhz",
           "coherence_time_ps", "theta_pd", "theta_sd", "x_c", "visibility", "fidelity"},
          {}};
  for (std::size_t n = 0; n < c.linewidths.size(); ++n) {
    for (const EmitterParams& e : broadening_curve(c.linewidths[n].to_spec(), c.samples)) {
      const NormalizedParams np = normalized_params(e);
      const PhotonPair pair = PhotonPair::identical(e);
      t.rows.push_back({static_cast<double>(n + 1), e.dephasing_rate / kMhz, e.inhomogeneous_fwhm / kMhz,
                        lorentzian_fwhm(e.lifetime, e.dephasing_rate) / kMhz,
                        emitter_voigt_fwhm(e.lifetime, e.dephasing_rate, e.inhomogeneous_fwhm) / kMhz,
                        coherence_time(e.lifetime, e.dephasing_rate, e.inhomogeneous_fwhm) / kPs, np.theta_pd,
                        np.theta_sd, np.x_c, hom_visibility(pair).visibility, bell_fidelity(pair).fidelity});
    }
  }
  return t;
}

Table cmd_assess(const RunConfig& c) {
  if (c.linewidths.empty() || c.linewidths.size() > 2) {
    throw ConfigError("config: assess needs one (identical emitters) or two 'linewidths' entries");
  }
  const Assessment a = c.linewidths.size() == 1
                           ? emitter_assessment(c.linewidths[0].to_spec(), c.samples)
                           : emitter_assessment(c.linewidths[0].to_spec(), c.linewidths[1].to_spec(), c.samples);
  Table t{{"visibility_min", "visibility_max", "fidelity_min", "fidelity_max", "points"}, {}};
  t.rows.push_back({a.visibility_min, a.visibility_max, a.fidelity_min, a.fidelity_max,
                    static_cast<double>(a.points.size())});
  return t;
}

Table cmd_verify(const RunConfig& c, bool& all_passed) {
  const std::vector<CheckResult> checks = run_oracle_suite(c.verify, RngSeed{c.seed});
  Table t{{"check", "observed", "limit", "status"}, {}};
  all_passed = true;
  for (const CheckResult& r : checks) {
    all_passed = all_passed && r.passed;
    t.rows.push_back({r.name, r.observed, r.limit, std::string(r.passed ? "pass" : "fail")});
  }
  return t;
}

}  // namespace

// ---------------------------------------------------------------- public API

EmitterParams EmitterConfig::to_params() const {
  return EmitterParams{lifetime_ps * kPs, dephasing_rate_mhz * kMhz, inhomogeneous_fwhm_mhz * kMhz,
                       detuning_mhz * kMhz};
}

std::vector<double> GridConfig::expand() const {
  if (!values.empty()) return values;
  if (points == 0) throw ConfigError("grid is empty");
  return linspace(min, max, points);
}

GateMatrix GateConfig::build() const {
  switch (kind) {
    case GateKind::beam_splitter:
      return beam_splitter(reflectivity, 1.0 - reflectivity);
    case GateKind::matrix: {
      const auto n = static_cast<Eigen::Index>(matrix.size());
      GateMatrix::Matrix m(n, n);
      for (Eigen::Index r = 0; r < n; ++r) {
        if (matrix[static_cast<std::size_t>(r)].size() != matrix.size()) {
          throw GateError("matrix must be square");
        }
        for (Eigen::Index col = 0; col < n; ++col) {
          m(r, col) = matrix[static_cast<std::size_t>(r)][static_cast<std::size_t>(col)];
        }
      }
      return GateMatrix(m);
    }
    case GateKind::cnot:
      return BellCircuit::instance().gate(basis);
  }
  throw GateError("unknown gate kind");
}

ModeSelection GateConfig::selection() const {
  for (const std::size_t m : modes) {
    if (m < 1) throw GateError("mode indices are one-based");
  }
  return ModeSelection{modes[0] - 1, modes[1] - 1, modes[2] - 1, modes[3] - 1};
}

LinewidthSpec LinewidthConfig::to_spec() const {
  LinewidthSpec spec;
  spec.lifetime = lifetime_ps * kPs;
  switch (kind) {
    case LinewidthKind::coherence_time: spec.linewidth = CoherenceTime{coherence_time_ps * kPs}; break;
    case LinewidthKind::voigt_fwhm: spec.linewidth = VoigtLinewidth{fwhm_mhz * kMhz}; break;
    case LinewidthKind::components:
      spec.linewidth = LinewidthComponents{lorentzian_fwhm_min_mhz * kMhz, lorentzian_fwhm_max_mhz * kMhz,
                                           gaussian_fwhm_mhz * kMhz};
      break;
  }
  return spec;
}

PhotonPair RunConfig::pair() const {
  if (!emitters) throw ConfigError("config: 'emitters' (two entries) is required for this command");
  return PhotonPair((*emitters)[0].to_params(), (*emitters)[1].to_params());
}

RunConfig parse_config(std::string_view json_text) {
  Json j;
  try {
    j = Json::parse(json_text.begin(), json_text.end());
  } catch (const Json::parse_error& ex) {
    throw ConfigError(std::string("config: invalid JSON: ") + ex.what());
  }
  require_object(j, "config");
  reject_unknown(j, {"emitters", "gate", "tau_ps", "detuning_ghz", "theta_pd", "theta_sd", "linewidths", "samples",
                     "verify", "output", "seed"},
                 "config");
  RunConfig c;
  if (j.contains("emitters")) {
    const Json& e = j.at("emitters");
    if (!e.is_array() || e.size() != 2) throw ConfigError("emitters: expected an array of two emitters");
    c.emitters = std::array<EmitterConfig, 2>{parse_emitter(e[0], "emitters[0]"), parse_emitter(e[1], "emitters[1]")};
  }
  if (j.contains("gate")) c.gate = parse_gate(j.at("gate"));
  if (j.contains("tau_ps")) c.tau_ps = parse_grid(j.at("tau_ps"), "tau_ps");
  if (j.contains("detuning_ghz")) c.detuning_ghz = parse_grid(j.at("detuning_ghz"), "detuning_ghz");
  if (j.contains("theta_pd")) c.theta_pd = parse_grid(j.at("theta_pd"), "theta_pd");
  if (j.contains("theta_sd")) c.theta_sd = parse_grid(j.at("theta_sd"), "theta_sd");
  if (j.contains("linewidths")) {
    const Json& l = j.at("linewidths");
    if (!l.is_array() || l.empty()) throw ConfigError("linewidths: expected a non-empty array");
    for (std::size_t n = 0; n < l.size(); ++n) {
      c.linewidths.push_back(parse_linewidth(l[n], "linewidths[" + std::to_string(n) + "]"));
    }
  }
  c.samples = count_or(j, "samples", c.samples, "config");
  if (c.samples < 2) throw ConfigError("config.samples: must be >= 2");
  if (j.contains("verify")) c.verify = parse_verify(j.at("verify"));
  if (j.contains("output")) {
    const Json& o = j.at("output");
    require_object(o, "output");
    reject_unknown(o, {"path", "format"}, "output");
    c.output_path = string_or(o, "path", "", "output");
    const std::string format = string_or(o, "format", "csv", "output");
    if (format == "csv") {
      c.format = OutputFormat::csv;
    } else if (format == "json") {
      c.format = OutputFormat::json;
    } else {
      throw ConfigError("output.format: expected csv or json");
    }
  }
  if (j.contains("seed")) {
    if (!j.at("seed").is_number_unsigned()) throw ConfigError("seed: expected a non-negative integer");
    c.seed = j.at("seed").get<std::uint64_t>();
  }
  return c;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open '" + path + "'");
  const std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return parse_config(text);
}

std::string serialize_config(const RunConfig& config) { return compact_json(config_json(config)); }

std::string format_number(double value) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

int run_command(std::string_view command, const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    Table table;
    bool passed = true;
    if (command == "g2") {
      table = cmd_g2(config);
    } else if (command == "tuning") {
      table = cmd_tuning(config);
    } else if (command == "vmap") {
      table = cmd_map(config, false);
    } else if (command == "fmap") {
      table = cmd_map(config, true);
    } else if (command == "decompose") {
      table = cmd_decompose(config);
    } else if (command == "assess") {
      table = cmd_assess(config);
    } else if (command == "verify") {
      table = cmd_verify(config, passed);
    } else {
      err << "tpi-sim: unknown command '" << command << "'\n";
      return kExitUsage;
    }
    write_table(out, command, config, table);
    if (!passed) {
      err << "tpi-sim: verification failed\n";
      return kExitCheckFailed;
    }
    return kExitOk;
  } catch (const ConfigError& ex) {
    err << "tpi-sim: " << ex.what() << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument& ex) {
    // Invalid parameter combinations (empty grids, infeasible linewidths, ...).
    err << "tpi-sim: " << ex.what() << '\n';
    return kExitUsage;
  } catch (const std::domain_error& ex) {
    // Linewidths below the Fourier limit and similar infeasible inputs.
    err << "tpi-sim: " << ex.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& ex) {
    err << "tpi-sim: " << ex.what() << '\n';
    return kExitRuntime;
  }
}

}  // namespace tpi
