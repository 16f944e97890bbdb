#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "tpi/emitter.hpp"
#include "tpi/gates.hpp"
#include "tpi/interference.hpp"
#include "tpi/kernels.hpp"

namespace tpi {

/// Root of every random stream. Trials are split into fixed-size chunks and
/// chunk c draws from an mt19937_64 seeded with split_seed(seed, c), so the
/// sample stream does not depend on the thread count.
struct RngSeed {
  std::uint64_t value = 20180611;
};

inline constexpr std::size_t kTrialsPerChunk = 256;
inline constexpr std::size_t kDefaultTrials = 100000;
inline constexpr std::size_t kMinimumTrials = 10000;

/// SplitMix64 finalizer applied to (seed, stream); used to derive per-chunk seeds.
std::uint64_t split_seed(std::uint64_t seed, std::uint64_t stream);

struct McEstimate {
  double mean = 0.0;
  double std_error = 0.0;  ///< standard error of the mean, sqrt(sample variance / trials)
  std::size_t trials = 0;
};

/// One realization of the emission-frequency jitter and of the accumulated
/// dephasing phases over a delay tau.
struct JitterSample {
  double delta_nu = 0.0;   ///< nu_i - nu_j [Hz]
  double phase_i = 0.0;    ///< phi_i(t0 + tau) - phi_i(t0)
  double phase_j = 0.0;
};

/// Draws frequencies around the emitters' detunings with standard deviations
/// sigma_i, sigma_j and Wiener increments of variance 2 Gamma* |tau|.
JitterSample draw_jitter(const PhotonPair& pair, double tau, std::mt19937_64& rng);

/// Monte-Carlo estimate of < 2 cos(2 pi dnu tau + dphi_i - dphi_j - phi_u) >.
/// Throws std::invalid_argument if trials < kMinimumTrials.
McEstimate mc_averaged_phase_factor(const PhotonPair& pair, double gate_phase, double tau,
                                    std::size_t trials, RngSeed seed,
                                    Execution exec = Execution::parallel);

/// Adaptive quadrature of G(tau) over the real line [dimensionless].
/// Throws numerics::QuadratureError on non-convergence.
double quadrature_p_coinc(const GateMatrix& u, const ModeSelection& modes, const PhotonPair& pair,
                          double tol = 1e-9);

/// t0 integral of the joint detection probability for fixed wave functions [1/s].
double quadrature_g2(const GateMatrix& u, const ModeSelection& modes,
                     const NormalizedWaveFunction& zeta_i, const NormalizedWaveFunction& zeta_j,
                     double tau, double tol = 1e-6);

/// G(tau) averaged over `realizations` sampled emission frequencies and
/// Wiener phase trajectories. Each realization integrates the joint detection
/// probability over t0 with Simpson's rule on a grid commensurate with tau,
/// so the phase path is sampled exactly at t0 and t0 + tau [1/s].
McEstimate mc_g2(const GateMatrix& u, const ModeSelection& modes, const PhotonPair& pair,
                 double tau, std::size_t realizations, RngSeed seed,
                 Execution exec = Execution::parallel);

/// Haar-random unitary on `dim` modes (QR of a complex Gaussian matrix).
GateMatrix random_unitary(std::size_t dim, std::mt19937_64& rng);

/// A randomized (pair, network, modes) combination for the equivalence sweeps:
/// lifetimes 0.4-1.2 ns, Gamma* up to 1e9/s, sigma' up to 2 GHz, detunings
/// within +-2 GHz, 2-6 modes.
struct RandomInstance {
  PhotonPair pair;
  GateMatrix gate;
  ModeSelection modes;
};

RandomInstance random_instance(std::mt19937_64& rng);

struct VerifySettings {
  std::size_t instances = 100;           ///< p_coinc closed form vs quadrature
  double p_coinc_tolerance = 1e-6;
  double quadrature_tolerance = 1e-9;
  std::size_t phase_trials = kDefaultTrials;
  std::size_t g2_instances = 10;
  std::size_t g2_taus = 5;
  std::size_t g2_realizations = 400;
  double stderr_band = 3.0;

  bool operator==(const VerifySettings&) const = default;
};

struct CheckResult {
  std::string name;
  double observed = 0.0;  ///< worst case over the check's samples
  double limit = 0.0;
  bool passed = false;
};

/// The full oracle suite: closed forms against quadrature and Monte-Carlo.
std::vector<CheckResult> run_oracle_suite(const VerifySettings& settings, RngSeed seed,
                                          Execution exec = Execution::parallel);

}  // namespace tpi
