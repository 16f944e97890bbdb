#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

namespace tpi {

/// Spectral and temporal parameters of one solid-state emitter, SI units.
struct EmitterParams {
  double lifetime = 1e-9;          ///< radiative lifetime [s]
  double dephasing_rate = 0.0;     ///< pure-dephasing rate Gamma* [1/s]
  double inhomogeneous_fwhm = 0.0; ///< spectral-diffusion FWHM sigma' [Hz]
  double detuning = 0.0;           ///< carrier offset from a common reference [Hz]

  /// Throws std::invalid_argument when an invariant is violated.
  void validate() const;

  /// Standard deviation of the spectral-diffusion Gaussian [Hz].
  double sigma() const;
  /// Homogeneous linewidth Gamma_h = 1/(2 tau) + Gamma* [1/s].
  double homogeneous_rate() const;

  bool operator==(const EmitterParams&) const = default;
};

/// Two emitters feeding the gate inputs i and j. Joint quantities are derived
/// on demand so they can never go stale.
class PhotonPair {
 public:
  PhotonPair(const EmitterParams& emitter_i, const EmitterParams& emitter_j);

  const EmitterParams& emitter_i() const { return emitter_i_; }
  const EmitterParams& emitter_j() const { return emitter_j_; }

  double sigma_sq() const;   ///< Sigma^2 = sigma_i^2 + sigma_j^2 [Hz^2]
  double sigma() const;      ///< Sigma [Hz]
  double gamma() const;      ///< gamma_i + gamma_j [1/s]
  double delta_nu() const;   ///< nu_i - nu_j [Hz]
  double t_plus() const;     ///< 1/T+ = 1/tau_i + 1/tau_j [s]
  double lifetime_sum() const;
  double dephasing_sum() const;

  /// Same emitters with emitter i shifted so that delta_nu() == value.
  PhotonPair with_delta_nu(double value) const;

  static PhotonPair identical(const EmitterParams& emitter) { return {emitter, emitter}; }

  bool operator==(const PhotonPair&) const = default;

 private:
  EmitterParams emitter_i_;
  EmitterParams emitter_j_;
};

/// Normalized identical-emitter parameters: theta_pd = gamma tau_r,
/// theta_sd = sigma' tau_r and x_c = tau_c / (2 tau_r).
struct NormalizedParams {
  double theta_pd = 1.0;
  double theta_sd = 0.0;
  double x_c = 1.0;
};

/// A (Gamma*, sigma') combination on a decomposition curve.
struct BroadeningPoint {
  double dephasing_rate = 0.0;      ///< [1/s]
  double inhomogeneous_fwhm = 0.0;  ///< [Hz]
};

class InfeasibleLinewidth : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Coherence time of an emitter broadened by pure dephasing and a Gaussian
/// frequency distribution. Reduces to 1/Gamma_h for sigma' = 0.
double coherence_time(double lifetime, double dephasing_rate, double inhomogeneous_fwhm);

/// Same relation in terms of the homogeneous rate Gamma_h directly; accepts
/// Gamma_h = 0 (pure Gaussian line).
double coherence_time_from_widths(double homogeneous_rate, double inhomogeneous_fwhm);

/// Fourier-limited (Lorentzian) FWHM 1/(2 pi tau) [Hz].
double fourier_limited_fwhm(double lifetime);

/// Lorentzian spectral FWHM Gamma_h / pi for the given emitter [Hz].
double lorentzian_fwhm(double lifetime, double dephasing_rate);

/// Every (Gamma*, sigma') pair reproducing the coherence time, sampled
/// uniformly in Gamma* from (Gamma*_max, 0) to (0, sigma'_max).
/// Throws InfeasibleLinewidth if tau_c > 2 tau_r.
std::vector<BroadeningPoint> decompose_linewidth(double lifetime, double coherence_time,
                                                 std::size_t samples = 200);

/// Every (Gamma*, sigma') pair whose Voigt FWHM equals total_fwhm, sampled
/// uniformly in the Lorentzian share from pure Lorentzian to Fourier-limited.
/// Throws InfeasibleLinewidth below the Fourier limit.
std::vector<BroadeningPoint> decompose_voigt_fwhm(double lifetime, double total_fwhm,
                                                  std::size_t samples = 200);

/// Voigt FWHM of the emitter's single-photon spectrum [Hz].
double emitter_voigt_fwhm(double lifetime, double dephasing_rate, double inhomogeneous_fwhm);

NormalizedParams normalized_params(const EmitterParams& emitter);

/// Emitter with lifetime `lifetime` realizing the given normalized parameters.
EmitterParams emitter_from_normalized(double theta_pd, double theta_sd, double lifetime = 1e-9);

}  // namespace tpi
