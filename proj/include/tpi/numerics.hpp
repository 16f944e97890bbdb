#pragma once

#include <complex>
#include <functional>
#include <stdexcept>

namespace tpi::numerics {

using Complex = std::complex<double>;

/// Faddeeva function w(z) = exp(-z^2) erfc(-iz) on the closed upper half-plane.
///
/// Two regions are used. Close to the real axis and for |z| < 6 the Maclaurin
/// series of erf is summed and rescaled; everywhere else the Laplace continued
/// fraction is evaluated backwards. The split keeps the relative error below
/// 1e-12 (see tests/test_numerics.cpp for the reference grid).
///
/// Throws std::domain_error when Im(z) < 0.
Complex faddeeva_w(Complex z);

/// Scaled complementary error function erfcx(y) = exp(y^2) erfc(y), y >= 0.
double erfcx(double y);

/// Unit-area Voigt profile (Gaussian of standard deviation `gaussian_sigma`
/// convolved with a Lorentzian of half width `lorentzian_hwhm`).
/// Either width may be zero, not both (std::invalid_argument).
double voigt_value(double x, double gaussian_sigma, double lorentzian_hwhm);

/// Full width at half maximum of the Voigt profile, found by bisection on the
/// half-maximum crossing. Widths are given as FWHMs of the two components.
double voigt_fwhm(double lorentzian_fwhm, double gaussian_fwhm);

class QuadratureError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct QuadratureOptions {
  double abs_tol = 1e-10;
  int max_depth = 60;
  /// Semi-infinite ranges are cut at this many decay lengths.
  double truncation_multiple = 40.0;
};

/// Adaptive Gauss-Kronrod (7/15) quadrature with interval bisection.
/// Throws QuadratureError if a sub-interval cannot meet its share of the
/// tolerance before `max_depth` bisections.
double integrate(const std::function<double(double)>& f, double a, double b,
                 double tol, int max_depth = QuadratureOptions{}.max_depth);

/// Integral over [a, inf) of a function decaying at least like exp(-decay_rate t).
double integrate_to_infinity(const std::function<double(double)>& f, double a,
                             double decay_rate, const QuadratureOptions& opts = {});

/// Integral over the whole real line; `decay_rate` as above, applied to |t - center|.
double integrate_real_line(const std::function<double(double)>& f, double decay_rate,
                           double center = 0.0, const QuadratureOptions& opts = {});

}  // namespace tpi::numerics
