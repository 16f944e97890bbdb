#include "tpi/gates.hpp"

#include <algorithm>
#include <numbers>
#include <string>
#include <vector>

namespace tpi {

GateMatrix::GateMatrix(std::size_t dim) {
  if (dim == 0) throw GateError("gate: dimension must be positive");
  const auto n = static_cast<Eigen::Index>(dim);
  elements_ = Matrix::Identity(n, n);
}

GateMatrix::GateMatrix(Matrix elements, double tolerance) : elements_(std::move(elements)) {
  if (elements_.rows() == 0 || elements_.rows() != elements_.cols()) {
    throw GateError("gate: matrix must be square and non-empty");
  }
  if (!elements_.allFinite()) throw GateError("gate: non-finite matrix element");
  if (unitarity_error() > tolerance) {
    throw GateError("gate: matrix is not unitary (max |U U^dagger - I| = " +
                    std::to_string(unitarity_error()) + ")");
  }
}

double GateMatrix::unitarity_error() const {
  const Matrix product = elements_ * elements_.adjoint();
  return (product - Matrix::Identity(product.rows(), product.cols())).cwiseAbs().maxCoeff();
}

GateMatrix GateMatrix::adjoint() const { return GateMatrix(elements_.adjoint()); }

void ModeSelection::validate(std::size_t dim) const {
  if (i >= dim || j >= dim || k >= dim || l >= dim) {
    throw GateError("mode index out of range");
  }
  if (i == j) throw GateError("input modes must be distinct");
  if (k == l) throw GateError("output modes must be distinct");
}

GateMatrix beam_splitter(double reflectivity, double transmissivity) {
  if (!(reflectivity >= 0.0 && reflectivity <= 1.0) || !(transmissivity >= 0.0)) {
    throw GateError("beam_splitter: reflectivity must lie in [0, 1]");
  }
  if (std::abs(reflectivity + transmissivity - 1.0) > 1e-12) {
    throw GateError("beam_splitter: R + T must equal 1");
  }
  const double r = std::sqrt(reflectivity);
  const double t = std::sqrt(transmissivity);
  GateMatrix::Matrix m(2, 2);
  m << r, t, t, -r;
  return GateMatrix(m);
}

GateMatrix phase_shifter(double phi) {
  GateMatrix::Matrix m(1, 1);
  m(0, 0) = std::polar(1.0, phi);
  return GateMatrix(m);
}

GateMatrix embed(const GateMatrix& gate, std::span<const std::size_t> modes, std::size_t total) {
  if (modes.size() != gate.dim()) throw GateError("embed: one mode index per gate mode required");
  std::vector<std::size_t> sorted(modes.begin(), modes.end());
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw GateError("embed: mode indices collide");
  }
  if (!sorted.empty() && sorted.back() >= total) throw GateError("embed: mode index out of range");

  const auto n = static_cast<Eigen::Index>(total);
  GateMatrix::Matrix m = GateMatrix::Matrix::Identity(n, n);
  for (std::size_t r = 0; r < modes.size(); ++r) {
    for (std::size_t c = 0; c < modes.size(); ++c) {
      m(static_cast<Eigen::Index>(modes[r]), static_cast<Eigen::Index>(modes[c])) = gate(r, c);
    }
  }
  return GateMatrix(m);
}

GateMatrix embed(const GateMatrix& gate, std::initializer_list<std::size_t> modes,
                 std::size_t total) {
  return embed(gate, std::span<const std::size_t>(modes.begin(), modes.size()), total);
}

GateMatrix compose(const GateMatrix& a, const GateMatrix& b) {
  if (a.dim() != b.dim()) throw GateError("compose: dimension mismatch");
  // Products of unitaries accumulate a little round-off; allow a wider check.
  return GateMatrix(a.elements() * b.elements(), 1e-11);
}

GateQuad gate_quad(const GateMatrix& u, const ModeSelection& modes) {
  modes.validate(u.dim());
  const auto [i, j, k, l] = modes;
  const std::complex<double> product = u(l, i) * u(k, j) * std::conj(u(k, i)) * std::conj(u(l, j));
  GateQuad quad;
  quad.magnitude = std::abs(product);
  quad.phase = std::arg(product);
  quad.p0_direct = std::norm(u(l, i)) * std::norm(u(k, j));
  quad.p0_crossed = std::norm(u(l, j)) * std::norm(u(k, i));
  return quad;
}

std::complex<double> two_photon_amplitude(const GateMatrix& u, const ModeSelection& modes) {
  modes.validate(u.dim());
  const auto [i, j, k, l] = modes;
  return u(l, i) * u(k, j) + u(l, j) * u(k, i);
}

GateMatrix cnot_gate() {
  constexpr double third = 1.0 / 3.0;
  const GateMatrix third_splitter = beam_splitter(third, 1.0 - third);
  const GateMatrix hadamard = embed(beam_splitter(0.5, 0.5), {kTargetZero, kTargetOne}, kCircuitModes);

  // Mode order in each embed fixes which rail picks up the -sqrt(R) element:
  // |0>_C, |0>_T and |1>_T are sign-flipped, |1>_C is not.
  const GateMatrix control_loss = embed(third_splitter, {0, kControlZero}, kCircuitModes);
  const GateMatrix central = embed(third_splitter, {kControlOne, kTargetZero}, kCircuitModes);
  const GateMatrix target_loss = embed(third_splitter, {5, kTargetOne}, kCircuitModes);

  const GateMatrix coupling = compose(control_loss, compose(central, target_loss));
  return compose(hadamard, compose(coupling, hadamard));
}

GateMatrix prep_gate() {
  const GateMatrix splitter = embed(beam_splitter(0.5, 0.5), {kControlZero, kControlOne}, kCircuitModes);
  const GateMatrix phase = embed(phase_shifter(std::numbers::pi), {kControlOne}, kCircuitModes);
  return compose(phase, splitter);
}

std::string_view basis_name(TomographyBasis basis) {
  switch (basis) {
    case TomographyBasis::HH: return "HH";
    case TomographyBasis::VV: return "VV";
    case TomographyBasis::DD: return "DD";
    case TomographyBasis::AA: return "AA";
    case TomographyBasis::RR: return "RR";
    case TomographyBasis::LL: return "LL";
  }
  return "?";
}

TomographyBasis parse_basis(std::string_view label) {
  for (const TomographyBasis b : kAllBases) {
    if (basis_name(b) == label) return b;
  }
  throw GateError("unknown tomography basis '" + std::string(label) + "'");
}

GateMatrix rail_rotation(TomographyBasis basis) {
  // Single-qubit state a|0> + b e^{i phi}|1> with a, b >= 0.
  const double h = std::numbers::sqrt2 / 2.0;
  double a = 1.0;
  double b = 0.0;
  double phi = 0.0;
  switch (basis) {
    case TomographyBasis::HH: a = 1.0; b = 0.0; break;
    case TomographyBasis::VV: a = 0.0; b = 1.0; break;
    case TomographyBasis::DD: a = h; b = h; phi = 0.0; break;
    case TomographyBasis::AA: a = h; b = h; phi = std::numbers::pi; break;
    case TomographyBasis::RR: a = h; b = h; phi = 0.5 * std::numbers::pi; break;
    case TomographyBasis::LL: a = h; b = h; phi = -0.5 * std::numbers::pi; break;
  }
  // Phase pi - phi turns the state into (a, -b); BS(b^2, a^2) then maps it to (0, 1).
  const GateMatrix phase = embed(phase_shifter(std::numbers::pi - phi), {1}, 2);
  return compose(beam_splitter(b * b, a * a), phase);
}

GateMatrix tomography_gate(TomographyBasis basis) {
  const GateMatrix rotation = rail_rotation(basis);
  return compose(embed(rotation, {kControlZero, kControlOne}, kCircuitModes),
                 embed(rotation, {kTargetZero, kTargetOne}, kCircuitModes));
}

}  // namespace tpi
