#include "tpi/interference.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "tpi/numerics.hpp"

namespace tpi {

namespace {

constexpr double kPi = std::numbers::pi;
const double kSqrt2Pi = std::sqrt(2.0 * kPi);

}  // namespace

NormalizedWaveFunction::NormalizedWaveFunction(Function zeta, double support_start,
                                               double decay_rate, double tolerance)
    : zeta_(std::move(zeta)), support_start_(support_start), decay_rate_(decay_rate) {
  if (!zeta_) throw std::invalid_argument("wave function: empty callable");
  numerics::QuadratureOptions opts;
  opts.abs_tol = 0.1 * tolerance;
  const double norm = numerics::integrate_to_infinity(
      [this](double t) { return std::norm(zeta_(t)); }, support_start_, decay_rate_, opts);
  if (std::abs(norm - 1.0) > tolerance) {
    throw UnnormalizedWaveFunction("wave function: integral of |zeta|^2 is " +
                                   std::to_string(norm) + ", expected 1");
  }
}

NormalizedWaveFunction NormalizedWaveFunction::exponential(double lifetime, double frequency,
                                                           double phase) {
  if (!(lifetime > 0.0)) throw std::invalid_argument("wave function: lifetime must be positive");
  const double amplitude = 1.0 / std::sqrt(lifetime);
  auto zeta = [=](double t) -> std::complex<double> {
    if (t < 0.0) return {0.0, 0.0};
    return amplitude * std::exp(-0.5 * t / lifetime) *
           std::polar(1.0, -(2.0 * kPi * frequency * t + phase));
  };
  return {zeta, 0.0, 1.0 / lifetime};
}

double joint_detection_probability(const GateMatrix& u, const ModeSelection& modes,
                                   const NormalizedWaveFunction& zeta_i,
                                   const NormalizedWaveFunction& zeta_j, double t0, double tau) {
  modes.validate(u.dim());
  const auto [i, j, k, l] = modes;
  const std::complex<double> direct = u(l, i) * u(k, j) * zeta_i(t0 + tau) * zeta_j(t0);
  const std::complex<double> crossed = u(l, j) * u(k, i) * zeta_j(t0 + tau) * zeta_i(t0);
  return std::norm(direct + crossed);
}

double averaged_phase_factor(const PhotonPair& pair, double gate_phase, double tau) {
  const double decay = pair.dephasing_sum() * std::abs(tau) + 2.0 * kPi * kPi * pair.sigma_sq() * tau * tau;
  return 2.0 * std::exp(-decay) * std::cos(2.0 * kPi * pair.delta_nu() * tau - gate_phase);
}

double g2_distinguishable(const GateQuad& quad, const PhotonPair& pair, double tau) {
  const double ti = pair.emitter_i().lifetime;
  const double tj = pair.emitter_j().lifetime;
  const double direct = tau >= 0.0 ? std::exp(-tau / ti) : std::exp(tau / tj);
  const double crossed = tau >= 0.0 ? std::exp(-tau / tj) : std::exp(tau / ti);
  return (quad.p0_direct * direct + quad.p0_crossed * crossed) / (ti + tj);
}

double g2_interference(const GateQuad& quad, const PhotonPair& pair, double tau) {
  const double envelope = std::exp(-pair.gamma() * std::abs(tau) -
                                   2.0 * kPi * kPi * pair.sigma_sq() * tau * tau);
  return 2.0 * quad.magnitude / pair.lifetime_sum() * envelope *
         std::cos(2.0 * kPi * pair.delta_nu() * tau - quad.phase);
}

double g2_value(const GateQuad& quad, const PhotonPair& pair, double tau) {
  return g2_distinguishable(quad, pair, tau) + g2_interference(quad, pair, tau);
}

std::vector<double> default_tau_grid(const PhotonPair& pair, std::size_t points,
                                     double span_lifetimes) {
  if (points < 2) throw std::invalid_argument("tau grid: need at least 2 points");
  if (!(span_lifetimes > 0.0)) throw std::invalid_argument("tau grid: span must be positive");
  const double reach = span_lifetimes * std::max(pair.emitter_i().lifetime, pair.emitter_j().lifetime);
  std::vector<double> grid(points);
  const double step = 2.0 * reach / static_cast<double>(points - 1);
  for (std::size_t n = 0; n < points; ++n) {
    grid[n] = -reach + step * static_cast<double>(n);
  }
  if (points % 2 == 1) grid[points / 2] = 0.0;
  return grid;
}

CorrelationTrace g2_trace(const GateMatrix& u, const ModeSelection& modes, const PhotonPair& pair,
                          std::span<const double> tau_grid) {
  if (tau_grid.empty()) throw std::invalid_argument("g2_trace: empty tau grid");
  for (std::size_t n = 1; n < tau_grid.size(); ++n) {
    if (!(tau_grid[n] > tau_grid[n - 1])) {
      throw std::invalid_argument("g2_trace: tau grid must be strictly increasing");
    }
  }
  const GateQuad quad = gate_quad(u, modes);
  CorrelationTrace trace;
  trace.tau.assign(tau_grid.begin(), tau_grid.end());
  trace.g2.reserve(tau_grid.size());
  trace.g2_classical.reserve(tau_grid.size());
  for (const double tau : tau_grid) {
    const double classical = g2_distinguishable(quad, pair, tau);
    trace.g2.push_back(classical + g2_interference(quad, pair, tau));
    trace.g2_classical.push_back(classical);
  }
  return trace;
}

double interference_overlap_pd_only(const PhotonPair& pair) {
  const double gamma = pair.gamma();
  const double omega = 2.0 * kPi * pair.delta_nu();
  return 2.0 * gamma / (pair.lifetime_sum() * (gamma * gamma + omega * omega));
}

double interference_overlap(const PhotonPair& pair) {
  const double sigma = pair.sigma();
  if (sigma * pair.lifetime_sum() < kSpectralDiffusionCutoff) {
    return interference_overlap_pd_only(pair);
  }
  const double scale = 2.0 * kPi * std::numbers::sqrt2 * sigma;
  const numerics::Complex z{2.0 * kPi * pair.delta_nu() / scale, pair.gamma() / scale};
  return numerics::faddeeva_w(z).real() / (kSqrt2Pi * sigma * pair.lifetime_sum());
}

double coincidence_probability(const GateQuad& quad, const PhotonPair& pair) {
  return quad.classical() + 2.0 * quad.interference() * interference_overlap(pair);
}

double coincidence_probability(const GateMatrix& u, const ModeSelection& modes,
                               const PhotonPair& pair) {
  return coincidence_probability(gate_quad(u, modes), pair);
}

GateMatrix hom_beam_splitter() { return beam_splitter(0.5, 0.5); }

ModeSelection hom_modes() { return ModeSelection{0, 1, 0, 1}; }

VisibilityResult hom_visibility(const PhotonPair& pair) {
  const GateQuad quad = gate_quad(hom_beam_splitter(), hom_modes());
  const double p = coincidence_probability(quad, pair);
  const double p0 = quad.classical();
  const double v = 1.0 - p / p0;
  if (!(v >= -1e-9 && v <= 1.0 + 1e-9)) {
    throw std::logic_error("hom_visibility: visibility " + std::to_string(v) + " outside [0, 1]");
  }
  return VisibilityResult{v, p, p0, pair};
}

double visibility_pd_only(const PhotonPair& pair) {
  if (pair.emitter_i().inhomogeneous_fwhm != 0.0 || pair.emitter_j().inhomogeneous_fwhm != 0.0) {
    throw std::invalid_argument("visibility_pd_only: requires zero inhomogeneous broadening");
  }
  const double ti = pair.emitter_i().lifetime;
  const double tj = pair.emitter_j().lifetime;
  const double width = 1.0 / ti + 1.0 / tj + 2.0 * pair.dephasing_sum();
  const double dnu = pair.delta_nu();
  return 4.0 / (ti + tj) * width / (width * width + 16.0 * kPi * kPi * dnu * dnu);
}

double normalized_visibility(double theta_pd, double theta_sd) {
  if (!(theta_pd >= 1.0) || !(theta_sd >= 0.0)) {
    throw std::invalid_argument("normalized_visibility: requires theta_pd >= 1 and theta_sd >= 0");
  }
  // Same cutoff as interference_overlap: Sigma (tau_i + tau_j) = theta_sd / sqrt(ln 2).
  if (theta_sd / std::sqrt(std::numbers::ln2) < kSpectralDiffusionCutoff) {
    return 1.0 / theta_pd;
  }
  const double ln2 = std::numbers::ln2;
  const numerics::Complex z{0.0, std::sqrt(ln2 / (2.0 * kPi * kPi)) * theta_pd / theta_sd};
  return std::sqrt(2.0 * ln2 / kPi) * numerics::faddeeva_w(z).real() / (2.0 * theta_sd);
}

}  // namespace tpi
