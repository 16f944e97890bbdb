#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "tpi/emitter.hpp"

namespace tpi {

/// Every sweep has a plain-loop reference path and an OpenMP path. Cells are
/// independent, so both produce bit-identical results; the serial path stays
/// as the baseline for tests and benchmarks.
enum class Execution { serial, parallel };

/// Values over a (theta_pd, theta_sd) grid. Row r belongs to theta_pd[r],
/// column c to theta_sd[c]; storage is row-major.
struct Grid2D {
  std::vector<double> theta_pd;
  std::vector<double> theta_sd;
  std::vector<double> values;

  std::size_t rows() const { return theta_pd.size(); }
  std::size_t cols() const { return theta_sd.size(); }
  double at(std::size_t r, std::size_t c) const { return values[r * cols() + c]; }
};

/// Identical-emitter HOM visibility over the normalized parameter grid.
/// Throws std::invalid_argument for empty grids or theta_pd < 1, theta_sd < 0.
Grid2D visibility_map(std::span<const double> theta_pd, std::span<const double> theta_sd,
                      Execution exec = Execution::parallel);

/// Bell-state fidelity through the CNOT circuit over the same grid.
Grid2D fidelity_map(std::span<const double> theta_pd, std::span<const double> theta_sd,
                    Execution exec = Execution::parallel);

/// HOM visibility of `pair` with its detuning replaced by each entry of `detunings` [Hz].
std::vector<double> tuning_curve(const PhotonPair& pair, std::span<const double> detunings,
                                 Execution exec = Execution::parallel);

/// n points from lo to hi inclusive (n = 1 gives lo).
std::vector<double> linspace(double lo, double hi, std::size_t n);

}  // namespace tpi
