#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "tpi/interference.hpp"
#include "tpi/numerics.hpp"

using namespace tpi;

namespace {

constexpr double kPi = std::numbers::pi;

PhotonPair reference_pair(double detuning = 0.0) {
  return PhotonPair(EmitterParams{700e-12, 600e6, 1.4e9, detuning}, EmitterParams{650e-12, 300e6, 0.8e9, 0.0});
}

double trapezoid(const std::vector<double>& x, const std::vector<double>& y) {
  double s = 0.0;
  for (std::size_t n = 1; n < x.size(); ++n) s += 0.5 * (x[n] - x[n - 1]) * (y[n] + y[n - 1]);
  return s;
}

}  // namespace

TEST_CASE("wave functions are checked for normalization") {
  const auto zeta = NormalizedWaveFunction::exponential(1e-9, 2e9, 0.3);
  CHECK(std::norm(zeta(0.0)) == doctest::Approx(1e9));
  CHECK(zeta(-1e-12) == std::complex<double>(0.0, 0.0));
  CHECK_THROWS_AS(NormalizedWaveFunction([](double t) { return std::complex<double>(t >= 0 ? std::exp(-t / 2e-9) : 0.0); },
                                         0.0, 1e9),
                  UnnormalizedWaveFunction);
  CHECK_THROWS_AS(NormalizedWaveFunction::exponential(0.0, 0.0), std::invalid_argument);
}

TEST_CASE("identical deterministic photons never leave a symmetric splitter separately") {
  const auto zeta = NormalizedWaveFunction::exponential(0.7e-9, 1e9, 0.0);
  for (const double t0 : {0.0, 0.3e-9, 2e-9}) {
    for (const double tau : {-0.5e-9, 0.0, 0.1e-9, 1e-9}) {
      CHECK(joint_detection_probability(hom_beam_splitter(), hom_modes(), zeta, zeta, t0, tau) <
            1e-12 * 1e18);
    }
  }
}

TEST_CASE("G(0) vanishes at a symmetric splitter for any pair") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const GateQuad quad = gate_quad(hom_beam_splitter(), hom_modes());
  for (int n = 0; n < 200; ++n) {
    const PhotonPair pair(EmitterParams{0.2e-9 + 2e-9 * u(rng), 1e9 * u(rng), 3e9 * u(rng), 5e9 * u(rng)},
                          EmitterParams{0.2e-9 + 2e-9 * u(rng), 1e9 * u(rng), 3e9 * u(rng), 0.0});
    CHECK(std::abs(g2_value(quad, pair, 0.0)) * pair.lifetime_sum() < 1e-10);
  }
}

TEST_CASE("distinguishable part integrates to p0") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const GateQuad quad{0.1, 0.4, 0.37, 0.11};
  for (int n = 0; n < 20; ++n) {
    const PhotonPair pair(EmitterParams{0.2e-9 + 2e-9 * u(rng), 0, 0, 0}, EmitterParams{0.2e-9 + 2e-9 * u(rng), 0, 0, 0});
    numerics::QuadratureOptions opts;
    opts.abs_tol = 1e-11;
    const double slow = std::max(pair.emitter_i().lifetime, pair.emitter_j().lifetime);
    const double p0 = numerics::integrate_real_line([&](double t) { return g2_distinguishable(quad, pair, t); },
                                                    1.0 / slow, 0.0, opts);
    CHECK(std::abs(p0 - quad.classical()) < 1e-8);
  }
}

TEST_CASE("reference pair: visibility and correlation trace") {
  // Independent evaluation of the closed form (Python/mpmath).
  CHECK(hom_visibility(reference_pair()).visibility == doctest::Approx(0.29161).epsilon(2e-5));
  CHECK(hom_visibility(reference_pair(3e9)).visibility == doctest::Approx(0.011838).epsilon(1e-4));

  const PhotonPair pair = reference_pair();
  const auto grid = default_tau_grid(pair);
  CHECK(grid.size() == kDefaultTauPoints);
  CHECK(grid[grid.size() / 2] == 0.0);
  const CorrelationTrace trace = g2_trace(hom_beam_splitter(), hom_modes(), pair, grid);
  CHECK(std::abs(trace.g2[grid.size() / 2]) * pair.lifetime_sum() < 1e-10);
  // The trace integrates to the coincidence probability (grid is fine enough for 1e-4).
  CHECK(trapezoid(trace.tau, trace.g2) ==
        doctest::Approx(coincidence_probability(hom_beam_splitter(), hom_modes(), pair)).epsilon(1e-4));
  CHECK(trapezoid(trace.tau, trace.g2_classical) == doctest::Approx(0.5).epsilon(1e-4));
}

TEST_CASE("quantum beats at 1/detuning") {
  const PhotonPair pair = reference_pair(3e9);
  const GateQuad quad = gate_quad(hom_beam_splitter(), hom_modes());
  // Interference term changes sign every half period of 333 ps.
  const double period = 1.0 / 3e9;
  const double a = g2_interference(quad, pair, 0.1 * period);
  const double b = g2_interference(quad, pair, 0.6 * period);
  CHECK(a * b < 0.0);
  const double c = g2_interference(quad, pair, 1.1 * period);
  CHECK(a * c > 0.0);
}

TEST_CASE("g2_trace input checks") {
  const std::vector<double> empty;
  CHECK_THROWS_AS(g2_trace(hom_beam_splitter(), hom_modes(), reference_pair(), empty), std::invalid_argument);
  const std::vector<double> flat{0.0, 1e-12, 1e-12};
  CHECK_THROWS_AS(g2_trace(hom_beam_splitter(), hom_modes(), reference_pair(), flat), std::invalid_argument);
}

TEST_CASE("visibility limits") {
  const EmitterParams ideal{1e-9, 0.0, 0.0, 0.0};
  CHECK(hom_visibility(PhotonPair::identical(ideal)).visibility == doctest::Approx(1.0).epsilon(1e-14));
  // Lifetime mismatch alone: V = 4 tau_i tau_j / (tau_i + tau_j)^2.
  const PhotonPair mismatched(EmitterParams{1e-9, 0, 0, 0}, EmitterParams{0.5e-9, 0, 0, 0});
  CHECK(hom_visibility(mismatched).visibility == doctest::Approx(4.0 * 0.5 / 2.25).epsilon(1e-13));
  // Pure dephasing: V = x_c = 1 / theta_pd for identical emitters.
  const EmitterParams dephased{1e-9, 5e8, 0.0, 0.0};
  CHECK(hom_visibility(PhotonPair::identical(dephased)).visibility == doctest::Approx(0.5).epsilon(1e-13));
  // Large detuning makes the photons distinguishable.
  CHECK(hom_visibility(PhotonPair(ideal, EmitterParams{1e-9, 0, 0, 1e12})).visibility < 1e-6);
}

TEST_CASE("Lorentzian closed form agrees with the general overlap") {
  const PhotonPair pair(EmitterParams{0.7e-9, 6e8, 0.0, 1e9}, EmitterParams{0.65e-9, 3e8, 0.0, 0.0});
  CHECK(visibility_pd_only(pair) == doctest::Approx(hom_visibility(pair).visibility).epsilon(1e-13));
  CHECK_THROWS_AS(visibility_pd_only(reference_pair()), std::invalid_argument);
}

TEST_CASE("normalized visibility matches the physical visibility for identical emitters") {
  for (const auto& [pd, sd] : {std::pair{1.0, 0.0}, {1.0, 0.5}, {2.0, 1.0}, {3.7, 4.2}, {1.2, 10.0}}) {
    for (const double tau : {0.3e-9, 9.5e-9}) {
      const PhotonPair pair = PhotonPair::identical(emitter_from_normalized(pd, sd, tau));
      CHECK(normalized_visibility(pd, sd) == doctest::Approx(hom_visibility(pair).visibility).epsilon(1e-12));
    }
  }
  CHECK(normalized_visibility(2.0, 0.0) == doctest::Approx(0.5));
  CHECK_THROWS_AS(normalized_visibility(0.5, 0.0), std::invalid_argument);
}

TEST_CASE("spectral-diffusion limit is continuous over six decades") {
  const EmitterParams base{0.7e-9, 3e8, 0.0, 0.0};
  for (const double dnu : {0.0, 0.4e9}) {
    const PhotonPair pd_only(base, EmitterParams{0.65e-9, 1e8, 0.0, dnu});
    const double limit = interference_overlap_pd_only(pd_only);
    double previous_gap = INFINITY;
    for (double eps = 1e-1; eps >= 1e-7; eps /= 10.0) {
      // sigma' in units of 1/(tau_i + tau_j)
      EmitterParams ei = base;
      ei.inhomogeneous_fwhm = eps / pd_only.lifetime_sum();
      const PhotonPair pair(ei, pd_only.emitter_j());
      const double gap = std::abs(interference_overlap(pair) - limit);
      CAPTURE(eps);
      CHECK(gap <= previous_gap + 1e-15);
      CHECK(gap < 10.0 * eps * eps + 1e-12);
      previous_gap = gap;
    }
  }
  // Across the switch to the closed form.
  EmitterParams ei = base;
  const double sum = 1.35e-9;
  const double sigma_per_fwhm = 1.0 / (2.0 * std::sqrt(2.0 * std::numbers::ln2));
  ei.inhomogeneous_fwhm = kSpectralDiffusionCutoff / sum / sigma_per_fwhm;
  const PhotonPair edge(ei, EmitterParams{0.65e-9, 1e8, 0.0, 0.0});
  ei.inhomogeneous_fwhm *= 1.0001;
  const PhotonPair above(ei, EmitterParams{0.65e-9, 1e8, 0.0, 0.0});
  CHECK(std::abs(interference_overlap(edge) - interference_overlap(above)) < 1e-12);
}

TEST_CASE("coincidence probability through a random unitary obeys the quad bounds") {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> g(0.0, 1.0);
  GateMatrix::Matrix z(4, 4);
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) z(r, c) = {g(rng), g(rng)};
  const GateMatrix u(Eigen::HouseholderQR<GateMatrix::Matrix>(z).householderQ());
  const ModeSelection m{0, 2, 1, 3};
  const GateQuad q = gate_quad(u, m);
  // Fully distinguishable photons give p0, perfectly indistinguishable ones |amplitude|^2.
  const PhotonPair far(EmitterParams{1e-9, 0, 0, 1e13}, EmitterParams{1e-9, 0, 0, 0});
  CHECK(coincidence_probability(u, m, far) == doctest::Approx(q.classical()).epsilon(1e-9));
  const PhotonPair same = PhotonPair::identical(EmitterParams{1e-9, 0, 0, 0});
  CHECK(coincidence_probability(u, m, same) == doctest::Approx(std::norm(two_photon_amplitude(u, m))).epsilon(1e-12));
}
