#pragma once

#include <complex>
#include <functional>
#include <span>
#include <stdexcept>
#include <vector>

#include "tpi/emitter.hpp"
#include "tpi/gates.hpp"

namespace tpi {

class UnnormalizedWaveFunction : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Single-photon field mode zeta(t) whose norm has been checked on construction.
class NormalizedWaveFunction {
 public:
  using Function = std::function<std::complex<double>(double)>;

  /// `support_start` is where zeta becomes non-zero and `decay_rate` bounds
  /// the decay of |zeta|^2 after it; together they define the norm integral.
  /// Throws UnnormalizedWaveFunction if |1 - norm| > tolerance.
  NormalizedWaveFunction(Function zeta, double support_start, double decay_rate,
                         double tolerance = 1e-8);

  /// H(t) exp(-t/(2 lifetime) - i(2 pi frequency t + phase)) / sqrt(lifetime).
  static NormalizedWaveFunction exponential(double lifetime, double frequency, double phase = 0.0);

  std::complex<double> operator()(double t) const { return zeta_(t); }
  double support_start() const { return support_start_; }
  double decay_rate() const { return decay_rate_; }

 private:
  Function zeta_;
  double support_start_;
  double decay_rate_;
};

/// |U_li U_kj zeta_i(t0+tau) zeta_j(t0) + U_lj U_ki zeta_j(t0+tau) zeta_i(t0)|^2 [1/s^2].
double joint_detection_probability(const GateMatrix& u, const ModeSelection& modes,
                                   const NormalizedWaveFunction& zeta_i,
                                   const NormalizedWaveFunction& zeta_j, double t0, double tau);

/// Ensemble average of the phase-sensitive term,
/// 2 exp(-(G*_i + G*_j)|tau| - 2 pi^2 Sigma^2 tau^2) cos(2 pi dnu tau - phi_u).
double averaged_phase_factor(const PhotonPair& pair, double gate_phase, double tau);

/// Distinguishable-photon correlation G0(tau) [1/s].
double g2_distinguishable(const GateQuad& quad, const PhotonPair& pair, double tau);
/// Interference contribution G_int(tau) [1/s].
double g2_interference(const GateQuad& quad, const PhotonPair& pair, double tau);
/// G(tau) = G0(tau) + G_int(tau) [1/s].
double g2_value(const GateQuad& quad, const PhotonPair& pair, double tau);

struct CorrelationTrace {
  std::vector<double> tau;           ///< [s], strictly increasing
  std::vector<double> g2;            ///< [1/s]
  std::vector<double> g2_classical;  ///< distinguishable-photon reference [1/s]
};

inline constexpr std::size_t kDefaultTauPoints = 4001;
inline constexpr double kDefaultTauSpan = 10.0;  ///< in units of max(tau_i, tau_j)

/// Symmetric grid of `points` samples over +-span * max(tau_i, tau_j).
std::vector<double> default_tau_grid(const PhotonPair& pair, std::size_t points = kDefaultTauPoints,
                                     double span_lifetimes = kDefaultTauSpan);

/// Throws std::invalid_argument for an empty or non-increasing grid.
CorrelationTrace g2_trace(const GateMatrix& u, const ModeSelection& modes, const PhotonPair& pair,
                          std::span<const double> tau_grid);

/// Below this value of Sigma (tau_i + tau_j) the spectral-diffusion width is
/// treated as zero and the Lorentzian closed form is used.
inline constexpr double kSpectralDiffusionCutoff = 1e-6;

/// Integrated weight of the interference term relative to its gate prefactor:
/// Re w(z) / (sqrt(2 pi) Sigma (tau_i + tau_j)) with z = (2 pi dnu + i gamma) / (2 pi sqrt 2 Sigma).
/// For a symmetric beam splitter this is the HOM visibility.
double interference_overlap(const PhotonPair& pair);

/// Lorentzian (Sigma = 0) form of interference_overlap.
double interference_overlap_pd_only(const PhotonPair& pair);

/// p_coinc = p0 + 2 |quad| cos(Phi_U) * interference_overlap(pair).
double coincidence_probability(const GateQuad& quad, const PhotonPair& pair);
double coincidence_probability(const GateMatrix& u, const ModeSelection& modes,
                               const PhotonPair& pair);

struct VisibilityResult {
  double visibility = 0.0;
  double p_coinc = 0.0;
  double p_coinc_classical = 0.0;
  PhotonPair pair;
};

/// HOM visibility at a symmetric beam splitter. Throws std::logic_error if the
/// computed value leaves [-1e-9, 1 + 1e-9].
VisibilityResult hom_visibility(const PhotonPair& pair);

/// Closed-form visibility without spectral diffusion. Throws
/// std::invalid_argument if either emitter has a non-zero inhomogeneous width.
double visibility_pd_only(const PhotonPair& pair);

/// Identical-emitter visibility in normalized linewidths; independent of tau_r.
double normalized_visibility(double theta_pd, double theta_sd);

/// Symmetric 50/50 splitter with modes (0, 1) in and out.
GateMatrix hom_beam_splitter();
ModeSelection hom_modes();

}  // namespace tpi
