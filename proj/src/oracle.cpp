#include "tpi/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "tpi/numerics.hpp"

namespace tpi {

namespace {

constexpr double kPi = std::numbers::pi;

// Running mean and sum of squared deviations of one chunk (Welford).
struct Moments {
  std::size_t n = 0;
  double mean = 0.0;
  double m2 = 0.0;

  void add(double x) {
    ++n;
    const double d = x - mean;
    mean += d / static_cast<double>(n);
    m2 += d * (x - mean);
  }
};

// Chan et al. pairwise combination of two partial moment sets.
Moments merge(const Moments& a, const Moments& b) {
  if (a.n == 0) return b;
  if (b.n == 0) return a;
  Moments out;
  out.n = a.n + b.n;
  const double d = b.mean - a.mean;
  const double fb = static_cast<double>(b.n) / static_cast<double>(out.n);
  out.mean = a.mean + d * fb;
  out.m2 = a.m2 + b.m2 + d * d * static_cast<double>(a.n) * fb;
  return out;
}

// Fixed-shape binary tree over the chunk results, so the reduction order is
// independent of how chunks were scheduled.
Moments reduce_pairwise(const std::vector<Moments>& parts, std::size_t lo, std::size_t hi) {
  if (hi - lo == 1) return parts[lo];
  const std::size_t mid = lo + (hi - lo) / 2;
  return merge(reduce_pairwise(parts, lo, mid), reduce_pairwise(parts, mid, hi));
}

// Runs sample(rng) `trials` times in chunks of `chunk` draws. Chunk c owns an
// RNG seeded with split_seed(seed, c).
template <class Sample>
McEstimate chunked_estimate(std::size_t trials, std::size_t chunk, RngSeed seed, Execution exec,
                            Sample sample) {
  const std::size_t chunks = (trials + chunk - 1) / chunk;
  std::vector<Moments> parts(chunks);
  auto run_chunk = [&](std::size_t c) {
    std::mt19937_64 rng(split_seed(seed.value, c));
    const std::size_t count = std::min(chunk, trials - c * chunk);
    Moments m;
    for (std::size_t t = 0; t < count; ++t) m.add(sample(rng));
    parts[c] = m;
  };
  const long long total = static_cast<long long>(chunks);
  if (exec == Execution::serial) {
    for (long long c = 0; c < total; ++c) run_chunk(static_cast<std::size_t>(c));
  } else {
#pragma omp parallel for schedule(dynamic, 1)
    for (long long c = 0; c < total; ++c) run_chunk(static_cast<std::size_t>(c));
  }
  const Moments all = reduce_pairwise(parts, 0, parts.size());
  McEstimate est;
  est.mean = all.mean;
  est.trials = all.n;
  est.std_error = all.n > 1 ? std::sqrt(all.m2 / static_cast<double>(all.n - 1) / static_cast<double>(all.n)) : 0.0;
  return est;
}

// Normal draw that tolerates a zero width (std::normal_distribution does not).
double gaussian(std::mt19937_64& rng, double mean, double stddev) {
  if (stddev == 0.0) return mean;
  return std::normal_distribution<double>(mean, stddev)(rng);
}

double two_photon_probability(const GateMatrix& u, const ModeSelection& modes,
                              std::complex<double> zi_late, std::complex<double> zj_early,
                              std::complex<double> zj_late, std::complex<double> zi_early) {
  const auto [i, j, k, l] = modes;
  return std::norm(u(l, i) * u(k, j) * zi_late * zj_early + u(l, j) * u(k, i) * zj_late * zi_early);
}

}  // namespace

std::uint64_t split_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

JitterSample draw_jitter(const PhotonPair& pair, double tau, std::mt19937_64& rng) {
  const EmitterParams& ei = pair.emitter_i();
  const EmitterParams& ej = pair.emitter_j();
  JitterSample s;
  s.delta_nu = gaussian(rng, ei.detuning, ei.sigma()) - gaussian(rng, ej.detuning, ej.sigma());
  s.phase_i = gaussian(rng, 0.0, std::sqrt(2.0 * ei.dephasing_rate * std::abs(tau)));
  s.phase_j = gaussian(rng, 0.0, std::sqrt(2.0 * ej.dephasing_rate * std::abs(tau)));
  return s;
}

McEstimate mc_averaged_phase_factor(const PhotonPair& pair, double gate_phase, double tau,
                                    std::size_t trials, RngSeed seed, Execution exec) {
  if (trials < kMinimumTrials) {
    throw std::invalid_argument("mc_averaged_phase_factor: need at least 10^4 trials");
  }
  return chunked_estimate(trials, kTrialsPerChunk, seed, exec, [&](std::mt19937_64& rng) {
    const JitterSample s = draw_jitter(pair, tau, rng);
    return 2.0 * std::cos(2.0 * kPi * s.delta_nu * tau + s.phase_i - s.phase_j - gate_phase);
  });
}

double quadrature_p_coinc(const GateMatrix& u, const ModeSelection& modes, const PhotonPair& pair,
                          double tol) {
  const GateQuad quad = gate_quad(u, modes);
  const double slowest = std::max(pair.emitter_i().lifetime, pair.emitter_j().lifetime);
  numerics::QuadratureOptions opts;
  opts.abs_tol = tol;
  return numerics::integrate_real_line(
      [&](double tau) { return g2_value(quad, pair, tau); }, 1.0 / slowest, 0.0, opts);
}

double quadrature_g2(const GateMatrix& u, const ModeSelection& modes,
                     const NormalizedWaveFunction& zeta_i, const NormalizedWaveFunction& zeta_j,
                     double tau, double tol) {
  modes.validate(u.dim());
  const double si = zeta_i.support_start();
  const double sj = zeta_j.support_start();
  // The direct and crossed amplitudes switch on at different t0; split there.
  const double direct_start = std::max(sj, si - tau);
  const double crossed_start = std::max(si, sj - tau);
  const double lo = std::min(direct_start, crossed_start);
  const double hi = std::max(direct_start, crossed_start);
  const double di = zeta_i.decay_rate();
  const double dj = zeta_j.decay_rate();

  numerics::QuadratureOptions opts;
  // P_joint integrates to about di dj / (di + dj); the tolerance is relative to that.
  opts.abs_tol = tol * di * dj / (di + dj);
  auto p = [&](double t0) {
    return two_photon_probability(u, modes, zeta_i(t0 + tau), zeta_j(t0), zeta_j(t0 + tau), zeta_i(t0));
  };
  double total = 0.0;
  if (hi > lo) total += numerics::integrate(p, lo, hi, 0.5 * opts.abs_tol, opts.max_depth);
  opts.abs_tol *= 0.5;
  total += numerics::integrate_to_infinity(p, hi, di + dj, opts);
  return total;
}

McEstimate mc_g2(const GateMatrix& u, const ModeSelection& modes, const PhotonPair& pair,
                 double tau, std::size_t realizations, RngSeed seed, Execution exec) {
  modes.validate(u.dim());
  if (realizations < 2) throw std::invalid_argument("mc_g2: need at least 2 realizations");
  const EmitterParams& ei = pair.emitter_i();
  const EmitterParams& ej = pair.emitter_j();

  // Grid step: about 1/50 of the shorter lifetime, and an integer divisor of |tau|.
  const double base_step = std::min(ei.lifetime, ej.lifetime) / 50.0;
  const std::size_t shift = tau == 0.0 ? 0 : static_cast<std::size_t>(std::ceil(std::abs(tau) / base_step));
  const double dt = shift == 0 ? base_step : std::abs(tau) / static_cast<double>(shift);
  // P_joint decays like exp(-t0 / T+) with 1/T+ = 1/tau_i + 1/tau_j.
  std::size_t intervals = static_cast<std::size_t>(std::ceil(36.0 * pair.t_plus() / dt));
  intervals += intervals % 2;
  const std::size_t first = tau < 0.0 ? shift : 0;  // t0 >= max(0, -tau)
  const std::size_t path_len = first + intervals + shift + 1;

  const double step_sd_i = std::sqrt(2.0 * ei.dephasing_rate * dt);
  const double step_sd_j = std::sqrt(2.0 * ej.dephasing_rate * dt);
  const double amp_i = 1.0 / std::sqrt(ei.lifetime);
  const double amp_j = 1.0 / std::sqrt(ej.lifetime);

  auto realization = [&](std::mt19937_64& rng) {
    const double nu_i = gaussian(rng, ei.detuning, ei.sigma());
    const double nu_j = gaussian(rng, ej.detuning, ej.sigma());
    std::vector<std::complex<double>> zi(path_len);
    std::vector<std::complex<double>> zj(path_len);
    double phi_i = 0.0;
    double phi_j = 0.0;
    for (std::size_t n = 0; n < path_len; ++n) {
      if (n > 0) {
        phi_i += gaussian(rng, 0.0, step_sd_i);
        phi_j += gaussian(rng, 0.0, step_sd_j);
      }
      const double t = dt * static_cast<double>(n);
      zi[n] = std::polar(amp_i * std::exp(-0.5 * t / ei.lifetime), -(2.0 * kPi * nu_i * t + phi_i));
      zj[n] = std::polar(amp_j * std::exp(-0.5 * t / ej.lifetime), -(2.0 * kPi * nu_j * t + phi_j));
    }
    double sum = 0.0;
    for (std::size_t s = 0; s <= intervals; ++s) {
      const std::size_t early = first + s;
      const std::size_t late = tau < 0.0 ? early - shift : early + shift;
      const double weight = (s == 0 || s == intervals) ? 1.0 : (s % 2 == 1 ? 4.0 : 2.0);
      sum += weight * two_photon_probability(u, modes, zi[late], zj[early], zj[late], zi[early]);
    }
    return sum * dt / 3.0;
  };
  return chunked_estimate(realizations, 16, seed, exec, realization);
}

GateMatrix random_unitary(std::size_t dim, std::mt19937_64& rng) {
  if (dim == 0) throw std::invalid_argument("random_unitary: dimension must be positive");
  const auto n = static_cast<Eigen::Index>(dim);
  std::normal_distribution<double> normal(0.0, 1.0);
  GateMatrix::Matrix z(n, n);
  for (Eigen::Index r = 0; r < n; ++r) {
    for (Eigen::Index c = 0; c < n; ++c) z(r, c) = {normal(rng), normal(rng)};
  }
  const Eigen::HouseholderQR<GateMatrix::Matrix> qr(z);
  GateMatrix::Matrix q = qr.householderQ();
  const GateMatrix::Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  // Fix the column phases so the distribution is Haar.
  for (Eigen::Index c = 0; c < n; ++c) {
    const double mag = std::abs(r(c, c));
    if (mag > 0.0) q.col(c) *= r(c, c) / mag;
  }
  return GateMatrix(q, 1e-12);
}

RandomInstance random_instance(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  auto emitter = [&] {
    EmitterParams e;
    e.lifetime = 0.4e-9 + 0.8e-9 * unit(rng);
    e.dephasing_rate = 1e9 * unit(rng);
    e.inhomogeneous_fwhm = 2e9 * unit(rng);
    e.detuning = 4e9 * (unit(rng) - 0.5);
    return e;
  };
  const EmitterParams ei = emitter();
  const EmitterParams ej = emitter();
  const std::size_t dim = 2 + std::uniform_int_distribution<std::size_t>(0, 4)(rng);
  GateMatrix gate = random_unitary(dim, rng);
  std::uniform_int_distribution<std::size_t> pick(0, dim - 1);
  ModeSelection modes;
  modes.i = pick(rng);
  do { modes.j = pick(rng); } while (modes.j == modes.i);
  modes.k = pick(rng);
  do { modes.l = pick(rng); } while (modes.l == modes.k);
  return RandomInstance{PhotonPair(ei, ej), std::move(gate), modes};
}

namespace {

// Stream tags keep the checks' random draws independent of each other.
// Relative floor on the Monte-Carlo G(tau) error bar (t0 discretization).
constexpr double kSimpsonBias = 1e-7;

enum SuiteStream : std::uint64_t { kCoincStream = 1, kPhaseStream, kG2Stream, kSymmetricStream };

PhotonPair reference_pair() {
  const EmitterParams e1{700e-12, 600e6, 1.4e9, 0.0};
  const EmitterParams e2{650e-12, 300e6, 0.8e9, 0.0};
  return PhotonPair(e1, e2);
}

}  // namespace

std::vector<CheckResult> run_oracle_suite(const VerifySettings& settings, RngSeed seed,
                                          Execution exec) {
  std::vector<CheckResult> checks;

  {
    std::mt19937_64 rng(split_seed(seed.value, kCoincStream));
    double worst_coinc = 0.0;
    double worst_p0 = 0.0;
    for (std::size_t n = 0; n < settings.instances; ++n) {
      const RandomInstance inst = random_instance(rng);
      const double closed = coincidence_probability(inst.gate, inst.modes, inst.pair);
      const double numeric = quadrature_p_coinc(inst.gate, inst.modes, inst.pair, settings.quadrature_tolerance);
      worst_coinc = std::max(worst_coinc, std::abs(closed - numeric));

      const GateQuad quad = gate_quad(inst.gate, inst.modes);
      numerics::QuadratureOptions opts;
      opts.abs_tol = settings.quadrature_tolerance;
      const double slowest = std::max(inst.pair.emitter_i().lifetime, inst.pair.emitter_j().lifetime);
      const double p0 = numerics::integrate_real_line(
          [&](double tau) { return g2_distinguishable(quad, inst.pair, tau); }, 1.0 / slowest, 0.0, opts);
      worst_p0 = std::max(worst_p0, std::abs(p0 - quad.classical()));
    }
    checks.push_back({"p_coinc_closed_form_vs_quadrature", worst_coinc, settings.p_coinc_tolerance,
                      worst_coinc <= settings.p_coinc_tolerance});
    checks.push_back({"p0_integral_vs_closed_form", worst_p0, 1e-8, worst_p0 <= 1e-8});
  }

  {
    std::mt19937_64 rng(split_seed(seed.value, kSymmetricStream));
    const GateMatrix bs = hom_beam_splitter();
    const GateQuad quad = gate_quad(bs, hom_modes());
    double worst = 0.0;
    for (std::size_t n = 0; n < settings.instances; ++n) {
      const PhotonPair pair = random_instance(rng).pair;
      worst = std::max(worst, std::abs(g2_value(quad, pair, 0.0)) * pair.lifetime_sum());
    }
    checks.push_back({"g2_zero_delay_symmetric_splitter", worst, 1e-10, worst < 1e-10});
  }

  {
    // Reference emitters at a symmetric splitter (phi_u = pi) plus randomized cases.
    std::mt19937_64 rng(split_seed(seed.value, kPhaseStream));
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    double worst = 0.0;
    const PhotonPair reference = reference_pair();
    for (std::size_t n = 0; n < 4; ++n) {
      const PhotonPair pair = n == 0 ? reference : random_instance(rng).pair;
      const double phase = n == 0 ? kPi : 2.0 * kPi * (unit(rng) - 0.5);
      const double tau = n == 0 ? 200e-12 : 1e-9 * (unit(rng) - 0.5);
      const McEstimate mc = mc_averaged_phase_factor(pair, phase, tau, settings.phase_trials,
                                                     RngSeed{split_seed(seed.value, 100 + n)}, exec);
      const double exact = averaged_phase_factor(pair, phase, tau);
      worst = std::max(worst, std::abs(mc.mean - exact) / mc.std_error);
    }
    checks.push_back({"phase_factor_mc_vs_closed_form_stderr", worst, settings.stderr_band,
                      worst <= settings.stderr_band});
  }

  {
    std::mt19937_64 rng(split_seed(seed.value, kG2Stream));
    double worst = 0.0;
    for (std::size_t n = 0; n < settings.g2_instances; ++n) {
      const RandomInstance inst = random_instance(rng);
      const GateQuad quad = gate_quad(inst.gate, inst.modes);
      const double reach = 1.5 * std::max(inst.pair.emitter_i().lifetime, inst.pair.emitter_j().lifetime);
      const std::vector<double> taus = linspace(-reach, reach, settings.g2_taus);
      for (std::size_t t = 0; t < taus.size(); ++t) {
        const McEstimate mc = mc_g2(inst.gate, inst.modes, inst.pair, taus[t], settings.g2_realizations,
                                    RngSeed{split_seed(seed.value, 1000 + n * 64 + t)}, exec);
        const double exact = g2_value(quad, inst.pair, taus[t]);
        // At tau = 0 every realization gives the same value and the standard
        // error vanishes; the Simpson grid's relative bias (about 1e-8) then
        // sets the error bar.
        const double error_bar = std::max(mc.std_error, kSimpsonBias * std::abs(exact));
        const double z = error_bar > 0.0 ? std::abs(mc.mean - exact) / error_bar : 0.0;
        worst = std::max(worst, z);
      }
    }
    checks.push_back({"g2_trace_vs_mc_stderr", worst, settings.stderr_band, worst <= settings.stderr_band});
  }
  return checks;
}

}  // namespace tpi
