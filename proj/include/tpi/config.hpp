#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "tpi/bell.hpp"
#include "tpi/emitter.hpp"
#include "tpi/gates.hpp"
#include "tpi/oracle.hpp"

namespace tpi {

// Run configuration for the command-line tool. Values are kept in the units
// of the JSON document (ps, MHz, GHz) so that a parsed config serializes back
// to the same numbers; conversion to SI happens in the to_* helpers.

class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct EmitterConfig {
  double lifetime_ps = 1000.0;
  double dephasing_rate_mhz = 0.0;      ///< Gamma* as a rate, 10^6 / s
  double inhomogeneous_fwhm_mhz = 0.0;  ///< sigma'
  double detuning_mhz = 0.0;

  EmitterParams to_params() const;
  bool operator==(const EmitterConfig&) const = default;
};

/// Either explicit values or `points` samples from min to max inclusive.
struct GridConfig {
  std::vector<double> values;
  double min = 0.0;
  double max = 0.0;
  std::size_t points = 0;

  std::vector<double> expand() const;
  bool operator==(const GridConfig&) const = default;
};

enum class GateKind { beam_splitter, matrix, cnot };

struct GateConfig {
  GateKind kind = GateKind::beam_splitter;
  double reflectivity = 0.5;
  std::vector<std::vector<std::complex<double>>> matrix;
  TomographyBasis basis = TomographyBasis::HH;
  std::array<std::size_t, 4> modes{1, 2, 1, 2};  ///< one-based i, j, k, l

  GateMatrix build() const;
  ModeSelection selection() const;  ///< zero-based
  bool operator==(const GateConfig&) const = default;
};

enum class LinewidthKind { coherence_time, voigt_fwhm, components };

struct LinewidthConfig {
  double lifetime_ps = 1000.0;
  LinewidthKind kind = LinewidthKind::coherence_time;
  double coherence_time_ps = 0.0;
  double fwhm_mhz = 0.0;
  double lorentzian_fwhm_min_mhz = 0.0;
  double lorentzian_fwhm_max_mhz = 0.0;
  double gaussian_fwhm_mhz = 0.0;

  LinewidthSpec to_spec() const;
  bool operator==(const LinewidthConfig&) const = default;
};

enum class OutputFormat { csv, json };

struct RunConfig {
  std::optional<std::array<EmitterConfig, 2>> emitters;
  GateConfig gate;
  std::optional<GridConfig> tau_ps;
  std::optional<GridConfig> detuning_ghz;
  std::optional<GridConfig> theta_pd;
  std::optional<GridConfig> theta_sd;
  std::vector<LinewidthConfig> linewidths;
  std::size_t samples = 200;
  VerifySettings verify;
  std::string output_path;
  OutputFormat format = OutputFormat::csv;
  std::uint64_t seed = RngSeed{}.value;

  PhotonPair pair() const;  ///< throws ConfigError if emitters are missing
  bool operator==(const RunConfig&) const = default;
};

/// Throws ConfigError on malformed input or violated invariants.
RunConfig parse_config(std::string_view json_text);
RunConfig load_config(const std::string& path);

/// Canonical JSON form (every field written); parse_config inverts it exactly.
std::string serialize_config(const RunConfig& config);

/// Shortest form is not used: numbers carry 17 significant digits.
std::string format_number(double value);

enum ExitCode : int { kExitOk = 0, kExitCheckFailed = 1, kExitUsage = 2, kExitRuntime = 3 };

inline constexpr std::array<std::string_view, 7> kCommands = {"g2",     "tuning", "vmap",  "fmap",
                                                              "decompose", "assess", "verify"};

/// Runs one subcommand and writes its table to `out`; messages go to `err`.
int run_command(std::string_view command, const RunConfig& config, std::ostream& out,
                std::ostream& err);

}  // namespace tpi
