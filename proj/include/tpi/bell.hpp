#pragma once

#include <array>
#include <cstddef>
#include <variant>
#include <vector>

#include "tpi/emitter.hpp"
#include "tpi/gates.hpp"

namespace tpi {

/// Control photon enters |1>_C, target photon enters |0>_T; the coincidence
/// |1>_C |1>_T is recorded after the tomography rotation.
inline constexpr ModeSelection kBellModes{kControlOne, kTargetZero, kControlOne, kTargetOne};

struct FidelityResult {
  double fidelity = 0.0;
  /// Raw coincidence probabilities p_XX, indexed like kAllBases. These include
  /// the 1/9 post-selection factor of the gate.
  std::array<double, 6> basis_probabilities{};
  /// Probability of one photon on each qubit's rails (any outcome); 1/9 for
  /// ideal photons. The fidelity is normalized by it.
  double success_probability = 0.0;
  /// Normalized parameters of emitter i (the map coordinates for identical emitters).
  NormalizedParams normalized_params;
  /// Bases whose composed-gate quad has |sin(Phi_U)| * magnitude > 1e-9.
  std::vector<TomographyBasis> phase_diagnostics;

  double probability(TomographyBasis basis) const;
  /// (pHH + pVV + pDD + pAA - pRR - pLL) / (2 * success_probability)
  double recompute_fidelity() const;
};

/// Preparation, CNOT and tomography composed once per basis. The gate
/// coefficients do not depend on the photons, so a single instance serves
/// every parameter set.
class BellCircuit {
 public:
  BellCircuit();

  static const BellCircuit& instance();

  const GateMatrix& gate(TomographyBasis basis) const;
  const GateQuad& quad(TomographyBasis basis) const;

  FidelityResult evaluate(const PhotonPair& pair) const;
  /// Fidelity as a function of the pair's interference overlap (HOM visibility).
  FidelityResult evaluate_overlap(double overlap) const;

 private:
  std::vector<GateMatrix> gates_;
  std::array<GateQuad, 6> quads_{};
  // Quads for the four qubit-rail coincidence outputs of the HH setting.
  std::array<GateQuad, 4> success_quads_{};
};

FidelityResult bell_fidelity(const PhotonPair& pair);

/// U_tom^XX * U_CNOT * U_prep
GateMatrix bell_gate(TomographyBasis basis);

// Linewidth information available for an emitter in an assessment.
struct CoherenceTime {
  double value = 0.0;  ///< [s]
};
struct VoigtLinewidth {
  double fwhm = 0.0;  ///< total spectral FWHM [Hz]
};
/// Lorentzian FWHM known within [min, max] and a fixed Gaussian FWHM.
struct LinewidthComponents {
  double lorentzian_fwhm_min = 0.0;
  double lorentzian_fwhm_max = 0.0;
  double gaussian_fwhm = 0.0;
};

struct LinewidthSpec {
  double lifetime = 1e-9;
  std::variant<CoherenceTime, VoigtLinewidth, LinewidthComponents> linewidth;
};

/// Emitters consistent with `spec`, one per decomposition sample.
std::vector<EmitterParams> broadening_curve(const LinewidthSpec& spec, std::size_t samples = 200);

struct AssessmentPoint {
  EmitterParams emitter_i;
  EmitterParams emitter_j;
  double visibility = 0.0;
  double fidelity = 0.0;
};

struct Assessment {
  double visibility_min = 0.0;
  double visibility_max = 0.0;
  double fidelity_min = 0.0;
  double fidelity_max = 0.0;
  std::vector<AssessmentPoint> points;
};

/// Two identical emitters moving together along the decomposition curve.
Assessment emitter_assessment(const LinewidthSpec& identical, std::size_t samples = 200);

/// Two different emitters; every combination of their decomposition samples.
Assessment emitter_assessment(const LinewidthSpec& spec_i, const LinewidthSpec& spec_j,
                              std::size_t samples = 200);

}  // namespace tpi
