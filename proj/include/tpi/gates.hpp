#pragma once

#include <Eigen/Dense>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string_view>

namespace tpi {

/// Square complex matrix of a passive linear-optical network. Element (k, l)
/// maps input mode l to output mode k. Mode indices are zero-based here; the
/// command line and config files use one-based indices.
class GateMatrix {
 public:
  using Matrix = Eigen::MatrixXcd;

  /// Identity on `dim` modes.
  explicit GateMatrix(std::size_t dim);
  /// Wraps `elements`; throws std::invalid_argument unless square and unitary
  /// to `tolerance`.
  explicit GateMatrix(Matrix elements, double tolerance = 1e-12);

  std::size_t dim() const { return static_cast<std::size_t>(elements_.rows()); }
  std::complex<double> operator()(std::size_t row, std::size_t col) const {
    return elements_(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col));
  }
  const Matrix& elements() const { return elements_; }

  /// max |(U U^dagger - I)_kl|
  double unitarity_error() const;
  GateMatrix adjoint() const;

 private:
  Matrix elements_;
};

class GateError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Coefficients of the two-photon amplitude for inputs (i, j) and outputs (k, l).
struct GateQuad {
  double magnitude = 0.0;  ///< |U_li U_kj U*_ki U*_lj|
  double phase = 0.0;      ///< arg(U_li U_kj U*_ki U*_lj)
  double p0_direct = 0.0;  ///< |U_li|^2 |U_kj|^2
  double p0_crossed = 0.0; ///< |U_lj|^2 |U_ki|^2

  double classical() const { return p0_direct + p0_crossed; }
  /// Weight of the interference term, |.| cos(phase) = Re(U_li U_kj U*_ki U*_lj).
  double interference() const { return magnitude * std::cos(phase); }
};

/// Inputs i, j and detected outputs k, l (zero-based).
struct ModeSelection {
  std::size_t i = 0;
  std::size_t j = 1;
  std::size_t k = 0;
  std::size_t l = 1;

  void validate(std::size_t dim) const;
  bool operator==(const ModeSelection&) const = default;
};

/// (sqrt R, sqrt T; sqrt T, -sqrt R). Requires R + T = 1 and 0 <= R <= 1.
GateMatrix beam_splitter(double reflectivity, double transmissivity);

/// Single-mode phase shift exp(i phi).
GateMatrix phase_shifter(double phi);

/// Places `gate` on `modes` of an otherwise-identity `total`-mode network.
/// modes[n] receives the gate's n-th row/column.
GateMatrix embed(const GateMatrix& gate, std::span<const std::size_t> modes, std::size_t total);
GateMatrix embed(const GateMatrix& gate, std::initializer_list<std::size_t> modes,
                 std::size_t total);

/// a after b, i.e. the matrix product a * b.
GateMatrix compose(const GateMatrix& a, const GateMatrix& b);

GateQuad gate_quad(const GateMatrix& u, const ModeSelection& modes);

/// Two-photon amplitude U_li U_kj + U_lj U_ki for photons entering i, j and
/// leaving through k != l (perfectly indistinguishable photons).
std::complex<double> two_photon_amplitude(const GateMatrix& u, const ModeSelection& modes);

// Six-mode dual-rail layout: 0 and 5 are vacuum ancillas, (1, 2) carry the
// control qubit |0>_C, |1>_C and (3, 4) the target qubit |0>_T, |1>_T.
inline constexpr std::size_t kCircuitModes = 6;
inline constexpr std::size_t kControlZero = 1;
inline constexpr std::size_t kControlOne = 2;
inline constexpr std::size_t kTargetZero = 3;
inline constexpr std::size_t kTargetOne = 4;

/// Post-selected linear-optical CNOT: 1/3 splitters couple |0>_C and |1>_T to
/// the vacuum ancillas, a 1/3 splitter couples |1>_C with |0>_T, and 50/50
/// splitters bracket the target rails. Success amplitude 1/3.
GateMatrix cnot_gate();

/// Rotates a photon in |1>_C into (|0>_C + |1>_C)/sqrt 2.
GateMatrix prep_gate();

enum class TomographyBasis { HH, VV, DD, AA, RR, LL };

inline constexpr std::array<TomographyBasis, 6> kAllBases = {
    TomographyBasis::HH, TomographyBasis::VV, TomographyBasis::DD,
    TomographyBasis::AA, TomographyBasis::RR, TomographyBasis::LL};

std::string_view basis_name(TomographyBasis basis);
/// Throws GateError for unknown labels.
TomographyBasis parse_basis(std::string_view label);

/// 2x2 rail rotation sending the single-qubit state of `basis` to |1>:
/// a phase shifter on the |1> rail followed by a splitter.
GateMatrix rail_rotation(TomographyBasis basis);

/// Rail rotations applied to both the control and the target qubit.
GateMatrix tomography_gate(TomographyBasis basis);

}  // namespace tpi
