#include "tpi/emitter.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "tpi/numerics.hpp"

namespace tpi {

namespace {

// 4 ln2 / pi^2, the Gaussian part of the coherence-time relation.
const double kGaussCoherence = 4.0 * std::numbers::ln2 / (std::numbers::pi * std::numbers::pi);
const double kFwhmPerSigma = 2.0 * std::sqrt(2.0 * std::numbers::ln2);

constexpr double kFeasibilitySlack = 1e-12;

}  // namespace

void EmitterParams::validate() const {
  if (!(lifetime > 0.0) || !std::isfinite(lifetime)) {
    throw std::invalid_argument("emitter: lifetime must be positive and finite");
  }
  if (!(dephasing_rate >= 0.0) || !std::isfinite(dephasing_rate)) {
    throw std::invalid_argument("emitter: dephasing rate must be non-negative and finite");
  }
  if (!(inhomogeneous_fwhm >= 0.0) || !std::isfinite(inhomogeneous_fwhm)) {
    throw std::invalid_argument("emitter: inhomogeneous FWHM must be non-negative and finite");
  }
  if (!std::isfinite(detuning)) {
    throw std::invalid_argument("emitter: detuning must be finite");
  }
}

double EmitterParams::sigma() const { return inhomogeneous_fwhm / kFwhmPerSigma; }

double EmitterParams::homogeneous_rate() const { return 0.5 / lifetime + dephasing_rate; }

PhotonPair::PhotonPair(const EmitterParams& emitter_i, const EmitterParams& emitter_j)
    : emitter_i_(emitter_i), emitter_j_(emitter_j) {
  emitter_i_.validate();
  emitter_j_.validate();
}

double PhotonPair::sigma_sq() const {
  const double si = emitter_i_.sigma();
  const double sj = emitter_j_.sigma();
  return si * si + sj * sj;
}

double PhotonPair::sigma() const { return std::sqrt(sigma_sq()); }

double PhotonPair::gamma() const {
  return emitter_i_.homogeneous_rate() + emitter_j_.homogeneous_rate();
}

double PhotonPair::delta_nu() const { return emitter_i_.detuning - emitter_j_.detuning; }

double PhotonPair::t_plus() const {
  return 1.0 / (1.0 / emitter_i_.lifetime + 1.0 / emitter_j_.lifetime);
}

double PhotonPair::lifetime_sum() const { return emitter_i_.lifetime + emitter_j_.lifetime; }

double PhotonPair::dephasing_sum() const {
  return emitter_i_.dephasing_rate + emitter_j_.dephasing_rate;
}

PhotonPair PhotonPair::with_delta_nu(double value) const {
  EmitterParams shifted = emitter_i_;
  shifted.detuning = emitter_j_.detuning + value;
  return {shifted, emitter_j_};
}

double coherence_time_from_widths(double homogeneous_rate, double inhomogeneous_fwhm) {
  if (!(homogeneous_rate >= 0.0) || !(inhomogeneous_fwhm >= 0.0)) {
    throw std::invalid_argument("coherence_time: widths must be non-negative");
  }
  if (inhomogeneous_fwhm == 0.0) {
    if (homogeneous_rate == 0.0) {
      throw std::invalid_argument("coherence_time: both widths are zero");
    }
    return 1.0 / homogeneous_rate;
  }
  // -a + sqrt(a^2 + b) rewritten as b / (a + sqrt(a^2 + b)), scaled by sigma'^2.
  const double a = 0.5 * kGaussCoherence * homogeneous_rate;
  const double s2 = inhomogeneous_fwhm * inhomogeneous_fwhm;
  return kGaussCoherence / (a + std::sqrt(a * a + kGaussCoherence * s2));
}

double coherence_time(double lifetime, double dephasing_rate, double inhomogeneous_fwhm) {
  const EmitterParams e{lifetime, dephasing_rate, inhomogeneous_fwhm, 0.0};
  e.validate();
  return coherence_time_from_widths(e.homogeneous_rate(), inhomogeneous_fwhm);
}

double fourier_limited_fwhm(double lifetime) {
  if (!(lifetime > 0.0)) throw std::invalid_argument("lifetime must be positive");
  return 1.0 / (2.0 * std::numbers::pi * lifetime);
}

double lorentzian_fwhm(double lifetime, double dephasing_rate) {
  return (0.5 / lifetime + dephasing_rate) / std::numbers::pi;
}

std::vector<BroadeningPoint> decompose_linewidth(double lifetime, double coherence_time,
                                                 std::size_t samples) {
  if (!(lifetime > 0.0) || !(coherence_time > 0.0)) {
    throw std::invalid_argument("decompose_linewidth: times must be positive");
  }
  if (samples < 2) throw std::invalid_argument("decompose_linewidth: need at least 2 samples");
  const double fourier = 2.0 * lifetime;
  if (coherence_time > fourier * (1.0 + kFeasibilitySlack)) {
    throw InfeasibleLinewidth("decompose_linewidth: coherence time exceeds the Fourier limit 2*lifetime");
  }
  if (coherence_time >= fourier * (1.0 - kFeasibilitySlack)) {
    return {BroadeningPoint{0.0, 0.0}};
  }

  const double max_dephasing = 1.0 / coherence_time - 0.5 / lifetime;
  std::vector<BroadeningPoint> curve;
  curve.reserve(samples);
  for (std::size_t n = 0; n < samples; ++n) {
    const double share = 1.0 - static_cast<double>(n) / static_cast<double>(samples - 1);
    const double dephasing = max_dephasing * share;
    const double homogeneous = 0.5 / lifetime + dephasing;
    const double residual = std::max(0.0, 1.0 - homogeneous * coherence_time);
    const double fwhm = n == 0 ? 0.0 : std::sqrt(kGaussCoherence * residual) / coherence_time;
    curve.push_back({dephasing, fwhm});
  }
  return curve;
}

double emitter_voigt_fwhm(double lifetime, double dephasing_rate, double inhomogeneous_fwhm) {
  return numerics::voigt_fwhm(lorentzian_fwhm(lifetime, dephasing_rate), inhomogeneous_fwhm);
}

std::vector<BroadeningPoint> decompose_voigt_fwhm(double lifetime, double total_fwhm,
                                                  std::size_t samples) {
  if (!(lifetime > 0.0) || !(total_fwhm > 0.0)) {
    throw std::invalid_argument("decompose_voigt_fwhm: lifetime and linewidth must be positive");
  }
  if (samples < 2) throw std::invalid_argument("decompose_voigt_fwhm: need at least 2 samples");
  const double fourier = fourier_limited_fwhm(lifetime);
  if (total_fwhm < fourier * (1.0 - kFeasibilitySlack)) {
    throw InfeasibleLinewidth("decompose_voigt_fwhm: linewidth below the Fourier limit");
  }
  if (total_fwhm <= fourier * (1.0 + kFeasibilitySlack)) {
    return {BroadeningPoint{0.0, 0.0}};
  }

  std::vector<BroadeningPoint> curve;
  curve.reserve(samples);
  for (std::size_t n = 0; n < samples; ++n) {
    const double share = 1.0 - static_cast<double>(n) / static_cast<double>(samples - 1);
    const double lorentz = fourier + (total_fwhm - fourier) * share;
    const double dephasing = std::max(0.0, std::numbers::pi * lorentz - 0.5 / lifetime);
    double gauss = 0.0;
    if (n > 0) {
      double lo = 0.0;
      double hi = total_fwhm;
      for (int it = 0; it < 80 && hi - lo > 1e-14 * total_fwhm; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (numerics::voigt_fwhm(lorentz, mid) < total_fwhm) {
          lo = mid;
        } else {
          hi = mid;
        }
      }
      gauss = 0.5 * (lo + hi);
    }
    curve.push_back({n + 1 == samples ? 0.0 : dephasing, gauss});
  }
  return curve;
}

NormalizedParams normalized_params(const EmitterParams& emitter) {
  emitter.validate();
  const double tau = emitter.lifetime;
  return NormalizedParams{
      (2.0 * emitter.dephasing_rate + 1.0 / tau) * tau,
      emitter.inhomogeneous_fwhm * tau,
      coherence_time(tau, emitter.dephasing_rate, emitter.inhomogeneous_fwhm) / (2.0 * tau)};
}

EmitterParams emitter_from_normalized(double theta_pd, double theta_sd, double lifetime) {
  if (!(theta_pd >= 1.0) || !(theta_sd >= 0.0)) {
    throw std::invalid_argument("normalized parameters require theta_pd >= 1 and theta_sd >= 0");
  }
  EmitterParams e{lifetime, 0.5 * (theta_pd - 1.0) / lifetime, theta_sd / lifetime, 0.0};
  e.validate();
  return e;
}

}  // namespace tpi
