#include "tpi/kernels.hpp"

#include <cmath>
#include <stdexcept>

#include "tpi/bell.hpp"
#include "tpi/interference.hpp"

namespace tpi {

namespace {

void check_grid(std::span<const double> theta_pd, std::span<const double> theta_sd) {
  if (theta_pd.empty() || theta_sd.empty()) throw std::invalid_argument("map: empty theta grid");
  for (const double v : theta_pd) {
    if (!(v >= 1.0) || !std::isfinite(v)) throw std::invalid_argument("map: theta_pd must be finite and >= 1");
  }
  for (const double v : theta_sd) {
    if (!(v >= 0.0) || !std::isfinite(v)) throw std::invalid_argument("map: theta_sd must be finite and >= 0");
  }
}

// Evaluates cell(r, c) for every grid cell. The OpenMP path uses a static
// schedule over the flattened index; each cell writes only its own slot.
template <class Cell>
Grid2D sweep(std::span<const double> theta_pd, std::span<const double> theta_sd, Execution exec,
             Cell cell) {
  check_grid(theta_pd, theta_sd);
  Grid2D grid;
  grid.theta_pd.assign(theta_pd.begin(), theta_pd.end());
  grid.theta_sd.assign(theta_sd.begin(), theta_sd.end());
  const std::size_t cols = theta_sd.size();
  const long long total = static_cast<long long>(theta_pd.size() * cols);
  grid.values.resize(static_cast<std::size_t>(total));
  double* out = grid.values.data();

  if (exec == Execution::serial) {
    for (long long n = 0; n < total; ++n) {
      const auto idx = static_cast<std::size_t>(n);
      out[idx] = cell(theta_pd[idx / cols], theta_sd[idx % cols]);
    }
    return grid;
  }
#pragma omp parallel for schedule(static)
  for (long long n = 0; n < total; ++n) {
    const auto idx = static_cast<std::size_t>(n);
    out[idx] = cell(theta_pd[idx / cols], theta_sd[idx % cols]);
  }
  return grid;
}

}  // namespace

std::vector<double> linspace(double lo, double hi, std::size_t n) {
  if (n == 0) throw std::invalid_argument("linspace: need at least one point");
  std::vector<double> v(n, lo);
  if (n == 1) return v;
  const double step = (hi - lo) / static_cast<double>(n - 1);
  for (std::size_t k = 1; k + 1 < n; ++k) v[k] = lo + step * static_cast<double>(k);
  v[n - 1] = hi;
  return v;
}

Grid2D visibility_map(std::span<const double> theta_pd, std::span<const double> theta_sd,
                      Execution exec) {
  return sweep(theta_pd, theta_sd, exec,
               [](double pd, double sd) { return normalized_visibility(pd, sd); });
}

Grid2D fidelity_map(std::span<const double> theta_pd, std::span<const double> theta_sd,
                    Execution exec) {
  const BellCircuit& circuit = BellCircuit::instance();
  return sweep(theta_pd, theta_sd, exec, [&circuit](double pd, double sd) {
    return circuit.evaluate(PhotonPair::identical(emitter_from_normalized(pd, sd))).fidelity;
  });
}

std::vector<double> tuning_curve(const PhotonPair& pair, std::span<const double> detunings,
                                 Execution exec) {
  if (detunings.empty()) throw std::invalid_argument("tuning_curve: empty detuning grid");
  std::vector<double> out(detunings.size());
  const long long total = static_cast<long long>(detunings.size());
  if (exec == Execution::serial) {
    for (long long n = 0; n < total; ++n) {
      const auto idx = static_cast<std::size_t>(n);
      out[idx] = hom_visibility(pair.with_delta_nu(detunings[idx])).visibility;
    }
    return out;
  }
#pragma omp parallel for schedule(static)
  for (long long n = 0; n < total; ++n) {
    const auto idx = static_cast<std::size_t>(n);
    out[idx] = hom_visibility(pair.with_delta_nu(detunings[idx])).visibility;
  }
  return out;
}

}  // namespace tpi
