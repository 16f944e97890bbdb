#include "tpi/bell.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "tpi/interference.hpp"

namespace tpi {

namespace {

std::size_t basis_index(TomographyBasis basis) { return static_cast<std::size_t>(basis); }

constexpr double kPhaseDiagnosticThreshold = 1e-9;

}  // namespace

double FidelityResult::probability(TomographyBasis basis) const {
  return basis_probabilities[basis_index(basis)];
}

double FidelityResult::recompute_fidelity() const {
  using B = TomographyBasis;
  const double numerator = probability(B::HH) + probability(B::VV) + probability(B::DD) +
                           probability(B::AA) - probability(B::RR) - probability(B::LL);
  return numerator / (2.0 * success_probability);
}

GateMatrix bell_gate(TomographyBasis basis) {
  return compose(tomography_gate(basis), compose(cnot_gate(), prep_gate()));
}

BellCircuit::BellCircuit() {
  gates_.reserve(kAllBases.size());
  for (const TomographyBasis basis : kAllBases) {
    gates_.push_back(bell_gate(basis));
    quads_[basis_index(basis)] = gate_quad(gates_.back(), kBellModes);
  }
  // One photon on the control rails and one on the target rails, any outcome.
  // Rail rotations do not change this sum, so the HH gate serves every basis.
  const GateMatrix& reference = gates_[basis_index(TomographyBasis::HH)];
  std::size_t n = 0;
  for (const std::size_t k : {kControlZero, kControlOne}) {
    for (const std::size_t l : {kTargetZero, kTargetOne}) {
      success_quads_[n++] = gate_quad(reference, ModeSelection{kBellModes.i, kBellModes.j, k, l});
    }
  }
}

const BellCircuit& BellCircuit::instance() {
  static const BellCircuit circuit;
  return circuit;
}

const GateMatrix& BellCircuit::gate(TomographyBasis basis) const {
  return gates_[basis_index(basis)];
}

const GateQuad& BellCircuit::quad(TomographyBasis basis) const {
  return quads_[basis_index(basis)];
}

FidelityResult BellCircuit::evaluate_overlap(double overlap) const {
  FidelityResult result;
  for (const TomographyBasis basis : kAllBases) {
    const GateQuad& q = quads_[basis_index(basis)];
    result.basis_probabilities[basis_index(basis)] = q.classical() + 2.0 * q.interference() * overlap;
    if (std::abs(std::sin(q.phase)) * q.magnitude > kPhaseDiagnosticThreshold) {
      result.phase_diagnostics.push_back(basis);
    }
  }
  for (const GateQuad& q : success_quads_) {
    result.success_probability += q.classical() + 2.0 * q.interference() * overlap;
  }
  result.fidelity = result.recompute_fidelity();
  return result;
}

FidelityResult BellCircuit::evaluate(const PhotonPair& pair) const {
  FidelityResult result = evaluate_overlap(interference_overlap(pair));
  result.normalized_params = normalized_params(pair.emitter_i());
  return result;
}

FidelityResult bell_fidelity(const PhotonPair& pair) { return BellCircuit::instance().evaluate(pair); }

namespace {

// Lorentzian FWHMs this close below the Fourier limit are rounding in the
// quoted input and are treated as transform-limited.
constexpr double kFourierLimitSlack = 1e-3;

std::vector<EmitterParams> components_curve(double lifetime, const LinewidthComponents& c,
                                            std::size_t samples) {
  if (!(c.lorentzian_fwhm_min > 0.0) || !(c.lorentzian_fwhm_max >= c.lorentzian_fwhm_min) ||
      !(c.gaussian_fwhm >= 0.0) || !std::isfinite(c.lorentzian_fwhm_max)) {
    throw std::invalid_argument("linewidth components: need 0 < lorentz_min <= lorentz_max, gaussian >= 0");
  }
  const double limit = fourier_limited_fwhm(lifetime);
  if (c.lorentzian_fwhm_min < limit * (1.0 - kFourierLimitSlack)) {
    throw InfeasibleLinewidth("linewidth components: Lorentzian FWHM below the Fourier limit");
  }
  const std::size_t n = c.lorentzian_fwhm_max > c.lorentzian_fwhm_min ? std::max<std::size_t>(samples, 2) : 1;
  std::vector<EmitterParams> curve;
  curve.reserve(n);
  for (std::size_t s = 0; s < n; ++s) {
    const double fraction = n == 1 ? 0.0 : static_cast<double>(s) / static_cast<double>(n - 1);
    const double lorentz = c.lorentzian_fwhm_max + fraction * (c.lorentzian_fwhm_min - c.lorentzian_fwhm_max);
    EmitterParams e;
    e.lifetime = lifetime;
    e.dephasing_rate = std::max(0.0, std::numbers::pi * lorentz - 0.5 / lifetime);
    e.inhomogeneous_fwhm = c.gaussian_fwhm;
    curve.push_back(e);
  }
  return curve;
}

template <class... Fs>
struct Overloaded : Fs... {
  using Fs::operator()...;
};
template <class... Fs>
Overloaded(Fs...) -> Overloaded<Fs...>;

void accumulate(Assessment& a, const AssessmentPoint& p) {
  a.visibility_min = std::min(a.visibility_min, p.visibility);
  a.visibility_max = std::max(a.visibility_max, p.visibility);
  a.fidelity_min = std::min(a.fidelity_min, p.fidelity);
  a.fidelity_max = std::max(a.fidelity_max, p.fidelity);
  a.points.push_back(p);
}

Assessment empty_assessment() {
  constexpr double inf = std::numeric_limits<double>::infinity();
  return Assessment{inf, -inf, inf, -inf, {}};
}

AssessmentPoint assess_pair(const EmitterParams& a, const EmitterParams& b) {
  const PhotonPair pair(a, b);
  return AssessmentPoint{a, b, hom_visibility(pair).visibility, bell_fidelity(pair).fidelity};
}

}  // namespace

std::vector<EmitterParams> broadening_curve(const LinewidthSpec& spec, std::size_t samples) {
  if (!(spec.lifetime > 0.0)) throw std::invalid_argument("linewidth spec: lifetime must be positive");
  auto from_points = [&](const std::vector<BroadeningPoint>& points) {
    std::vector<EmitterParams> curve;
    curve.reserve(points.size());
    for (const BroadeningPoint& p : points) {
      curve.push_back(EmitterParams{spec.lifetime, p.dephasing_rate, p.inhomogeneous_fwhm, 0.0});
    }
    return curve;
  };
  return std::visit(
      Overloaded{
          [&](const CoherenceTime& c) {
            return from_points(decompose_linewidth(spec.lifetime, c.value, samples));
          },
          [&](const VoigtLinewidth& v) {
            return from_points(decompose_voigt_fwhm(spec.lifetime, v.fwhm, samples));
          },
          [&](const LinewidthComponents& c) { return components_curve(spec.lifetime, c, samples); },
      },
      spec.linewidth);
}

Assessment emitter_assessment(const LinewidthSpec& identical, std::size_t samples) {
  Assessment result = empty_assessment();
  for (const EmitterParams& e : broadening_curve(identical, samples)) {
    accumulate(result, assess_pair(e, e));
  }
  return result;
}

Assessment emitter_assessment(const LinewidthSpec& spec_i, const LinewidthSpec& spec_j,
                              std::size_t samples) {
  const std::vector<EmitterParams> curve_i = broadening_curve(spec_i, samples);
  const std::vector<EmitterParams> curve_j = broadening_curve(spec_j, samples);
  Assessment result = empty_assessment();
  result.points.reserve(curve_i.size() * curve_j.size());
  for (const EmitterParams& a : curve_i) {
    for (const EmitterParams& b : curve_j) accumulate(result, assess_pair(a, b));
  }
  return result;
}

}  // namespace tpi
