#include "tpi/numerics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <queue>
#include <vector>

namespace tpi::numerics {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
const double kSqrtPi = std::sqrt(std::numbers::pi);

// exp(-z^2) * (1 - erf(-iz)) with erf from its Maclaurin series.
Complex faddeeva_series(Complex z) {
  const Complex zeta{z.imag(), -z.real()};  // -i z
  const Complex zeta2 = zeta * zeta;
  Complex term = zeta;
  Complex sum = zeta;
  for (int n = 1; n < 500; ++n) {
    term *= -zeta2 / static_cast<double>(n);
    const Complex contribution = term / static_cast<double>(2 * n + 1);
    sum += contribution;
    if (n > 4 && std::abs(contribution) <= 0.25 * kEps * std::abs(sum)) break;
  }
  const Complex erf = (2.0 / kSqrtPi) * sum;
  return std::exp(-z * z) * (1.0 - erf);
}

// Laplace continued fraction
//   w(z) = (i/sqrt(pi)) / (z - (1/2)/(z - 1/(z - (3/2)/(z - ...))))
// evaluated from the tail; converges for Im z > 0 and |z| away from zero.
Complex faddeeva_continued_fraction(Complex z) {
  const double r = std::abs(z);
  int terms = 20;
  if (r < 2.0) {
    terms = 260;
  } else if (r < 4.0) {
    terms = 140;
  } else if (r < 6.0) {
    terms = 90;
  } else if (r < 12.0) {
    terms = 50;
  } else if (r < 50.0) {
    terms = 30;
  }
  Complex tail = z;
  for (int n = terms; n >= 1; --n) {
    tail = z - (0.5 * n) / tail;
  }
  return Complex{0.0, 1.0 / kSqrtPi} / tail;
}

}  // namespace

Complex faddeeva_w(Complex z) {
  if (!(z.imag() >= 0.0)) {
    throw std::domain_error("faddeeva_w: Im(z) must be >= 0");
  }
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
    throw std::domain_error("faddeeva_w: non-finite argument");
  }
  if (z.real() < 0.0) {
    // w(-conj(z)) = conj(w(z))
    return std::conj(faddeeva_w(Complex{-z.real(), z.imag()}));
  }
  if (z.imag() < 1.0 && std::abs(z) < 6.0) {
    return faddeeva_series(z);
  }
  return faddeeva_continued_fraction(z);
}

double erfcx(double y) {
  if (y < 0.0) {
    throw std::domain_error("erfcx: argument must be >= 0");
  }
  return faddeeva_w(Complex{0.0, y}).real();
}

double voigt_value(double x, double gaussian_sigma, double lorentzian_hwhm) {
  if (gaussian_sigma < 0.0 || lorentzian_hwhm < 0.0) {
    throw std::invalid_argument("voigt_value: widths must be non-negative");
  }
  if (gaussian_sigma == 0.0 && lorentzian_hwhm == 0.0) {
    throw std::invalid_argument("voigt_value: degenerate profile (both widths zero)");
  }
  if (gaussian_sigma == 0.0) {
    return lorentzian_hwhm / (std::numbers::pi * (x * x + lorentzian_hwhm * lorentzian_hwhm));
  }
  if (lorentzian_hwhm == 0.0) {
    const double u = x / gaussian_sigma;
    return std::exp(-0.5 * u * u) / (gaussian_sigma * std::sqrt(2.0 * std::numbers::pi));
  }
  const double scale = gaussian_sigma * std::numbers::sqrt2;
  const Complex z{x / scale, lorentzian_hwhm / scale};
  return faddeeva_w(z).real() / (gaussian_sigma * std::sqrt(2.0 * std::numbers::pi));
}

double voigt_fwhm(double lorentzian_fwhm, double gaussian_fwhm) {
  if (lorentzian_fwhm < 0.0 || gaussian_fwhm < 0.0) {
    throw std::invalid_argument("voigt_fwhm: widths must be non-negative");
  }
  if (gaussian_fwhm == 0.0) return lorentzian_fwhm;
  if (lorentzian_fwhm == 0.0) return gaussian_fwhm;

  const double sigma = gaussian_fwhm / (2.0 * std::sqrt(2.0 * std::numbers::ln2));
  const double hwhm = 0.5 * lorentzian_fwhm;
  const double half_max = 0.5 * voigt_value(0.0, sigma, hwhm);

  // The Voigt FWHM never exceeds the sum of the component widths.
  double lo = 0.0;
  double hi = lorentzian_fwhm + gaussian_fwhm;
  for (int it = 0; it < 200 && hi - lo > 4.0 * kEps * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (voigt_value(mid, sigma, hwhm) > half_max) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return lo + hi;
}

namespace {

// Gauss-Kronrod 7/15 abscissae and weights on [-1, 1].
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double a;
  double b;
  double value;
  double error;
  int depth;
  bool operator<(const Panel& other) const { return error < other.error; }
};

Panel gauss_kronrod(const std::function<double(double)>& f, double a, double b, int depth) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = f(center);
  double kronrod = fc * kWgk[7];
  double gauss = fc * kWg[3];
  for (int n = 0; n < 7; ++n) {
    const double dx = half * kXgk[n];
    const double pair = f(center - dx) + f(center + dx);
    kronrod += kWgk[n] * pair;
    if (n % 2 == 1) gauss += kWg[n / 2] * pair;
  }
  kronrod *= half;
  gauss *= half;
  return Panel{a, b, kronrod, std::abs(kronrod - gauss), depth};
}

}  // namespace

double integrate(const std::function<double(double)>& f, double a, double b, double tol,
                 int max_depth) {
  if (!(tol > 0.0)) throw std::invalid_argument("integrate: tolerance must be positive");
  if (a == b) return 0.0;
  if (b < a) return -integrate(f, b, a, tol, max_depth);

  std::priority_queue<Panel> panels;
  panels.push(gauss_kronrod(f, a, b, 0));
  double total = panels.top().value;
  double error = panels.top().error;

  while (error > tol) {
    Panel worst = panels.top();
    // Round-off floor: nothing left to gain from further bisection.
    if (error <= 64.0 * kEps * std::abs(total)) break;
    if (worst.depth >= max_depth) {
      throw QuadratureError("integrate: no convergence within the maximum refinement depth");
    }
    panels.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    const Panel left = gauss_kronrod(f, worst.a, mid, worst.depth + 1);
    const Panel right = gauss_kronrod(f, mid, worst.b, worst.depth + 1);
    total += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    panels.push(left);
    panels.push(right);
  }

  // Re-sum to avoid drift from the running updates.
  double sum = 0.0;
  while (!panels.empty()) {
    sum += panels.top().value;
    panels.pop();
  }
  if (!std::isfinite(sum)) throw QuadratureError("integrate: non-finite integrand");
  return sum;
}

double integrate_to_infinity(const std::function<double(double)>& f, double a,
                             double decay_rate, const QuadratureOptions& opts) {
  if (!(decay_rate > 0.0)) throw std::invalid_argument("integrate_to_infinity: decay rate must be positive");
  return integrate(f, a, a + opts.truncation_multiple / decay_rate, opts.abs_tol, opts.max_depth);
}

double integrate_real_line(const std::function<double(double)>& f, double decay_rate,
                           double center, const QuadratureOptions& opts) {
  if (!(decay_rate > 0.0)) throw std::invalid_argument("integrate_real_line: decay rate must be positive");
  const double reach = opts.truncation_multiple / decay_rate;
  const double half_tol = 0.5 * opts.abs_tol;
  return integrate(f, center - reach, center, half_tol, opts.max_depth) +
         integrate(f, center, center + reach, half_tol, opts.max_depth);
}

}  // namespace tpi::numerics
