#include <quadmath.h>

#include <cmath>
#include <numbers>

#include "doctest.h"
#include "tpi/numerics.hpp"

using tpi::numerics::Complex;
using tpi::numerics::faddeeva_w;

namespace {

struct Reference {
  double x, y, re, im;
};

// w(x + iy) to 20 digits from an arbitrary-precision evaluation.
constexpr Reference kReference[] = {
    {0, 0, 1.0, 0.0},
    {1, 0, 0.3678794411714423216, 0.60715770584139372912},
    {0, 1, 0.42758357615580700441, 0.0},
    {0.5, 0.5, 0.53315670791217491377, 0.23048823138445840871},
    {2, 0.3, 0.076395951675642116857, 0.30983110714029269674},
    {3.5, 0.05, 0.0026751606579371483897, 0.16878282287412046869},
    {4, 0.1, 0.0039217520989642453821, 0.14584316699790471922},
    {5, 0.01, 0.00024080339195117516647, 0.11524544620269498306},
    {5.9, 0.99, 0.016281160452595341626, 0.094202444714211718416},
    {5.99, 0.2, 0.0032824464038642948762, 0.09544555257182662891},
    {6, 0, 2.3195228302435693883e-16, 0.095396208969110766023},
    {6.01, 0.5, 0.008096852193848567102, 0.094528179589307838448},
    {7, 0.9, 0.010509936689234629795, 0.080052153892455096462},
    {0.1, 1, 0.42604361081205641641, 0.027242140851614461376},
    {0.5, 1.5, 0.30335511991319153439, 0.077850874126150595297},
    {1, 1, 0.30474420525691259246, 0.20821893820283162729},
    {2, 2, 0.14795275951201582423, 0.13117971708421785359},
    {3, 1, 0.065317777289046966769, 0.17391831541634896693},
    {0, 3, 0.17900115118138995042, 0.0},
    {0, 6, 0.092776567800538354389, 0.0},
    {10, 0.001, 5.7287175028417533439e-6, 0.056705393651106210677},
    {20, 5, 0.0066592212632078247145, 0.026574022379089790496},
    {0.001, 0.001, 0.99887162233541124713, 0.0011263806715998664529},
    {0.2, 0.999, 0.42173236839487386464, 0.05407448959148763638},
    {2.5, 0.999, 0.093700049551802249025, 0.19837925589159211468},
    {1.5, 1.0001, 0.21183606619117115511, 0.23315406134204265583},
    {0, 0.5, 0.61569034419292587487, 0.0},
    {0, 2, 0.25539567631050574387, 0.0},
    {0, 10, 0.056140992743822585858, 0.0},
    {0, 100, 0.0056416137829894329036, 0.0},
    {8, 2, 0.016942003411131035393, 0.066752152418496954592},
    {3, 4, 0.09093390419476534246, 0.065592330527914277737},
    {50, 0.1, 0.000022581047000564891175, 0.011286004595471075322},
    {1000, 100, 0.000055860436672635102079, 0.00055860381365192088656},
    {4.5, 0.7, 0.020555043952082722535, 0.12525317928751963786},
    {1e-8, 1e-8, 0.99999998871620832904, 1.128379147095512748e-8},
    {1.9, 1.2, 0.15756859047084493613, 0.2019136564261406944},
    {3.9, 1.5, 0.052260430310163784644, 0.12763278332789167434},
    {5.5, 3, 0.044292049524231680787, 0.079104117696461911906},
};

double relative_error(Complex got, Complex want) { return std::abs(got - want) / std::abs(want); }

// Quad-precision Maclaurin series of w, usable for Im z <= 4 and |z| <= 8
// (at worst about 19 correct digits there).
struct Quad {
  __float128 re, im;
};

Quad qmul(Quad a, Quad b) { return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re}; }

Complex faddeeva_quad(double x, double y) {
  const Quad zeta{y, -x};  // -i z
  const Quad zeta2 = qmul(zeta, zeta);
  Quad term = zeta;
  Quad sum = zeta;
  for (int n = 1; n < 400; ++n) {
    term = qmul(term, Quad{-zeta2.re / n, -zeta2.im / n});
    sum.re += term.re / (2 * n + 1);
    sum.im += term.im / (2 * n + 1);
  }
  const __float128 scale = 2 / sqrtq(M_PIq);
  const Quad one_minus_erf{1 - scale * sum.re, -scale * sum.im};
  // exp(-z^2) = exp(y^2 - x^2) (cos(2xy) - i sin(2xy))
  const __float128 qx = x;
  const __float128 qy = y;
  const __float128 mag = expq(qy * qy - qx * qx);
  const Quad e{mag * cosq(2 * qx * qy), -mag * sinq(2 * qx * qy)};
  const Quad w = qmul(e, one_minus_erf);
  return {static_cast<double>(w.re), static_cast<double>(w.im)};
}

}  // namespace

TEST_CASE("faddeeva_w matches the frozen reference table") {
  for (const Reference& r : kReference) {
    CAPTURE(r.x);
    CAPTURE(r.y);
    const Complex want{r.re, r.im};
    CHECK(relative_error(faddeeva_w({r.x, r.y}), want) < 1e-12);
    // Reflection to the left half-plane.
    CHECK(relative_error(faddeeva_w({-r.x, r.y}), std::conj(want)) < 1e-12);
  }
}

TEST_CASE("faddeeva_w agrees with a quad-precision series on a dense grid") {
  double worst = 0.0;
  for (double y = 0.0; y <= 4.0; y += 0.05) {
    for (double x = 0.0; x * x + y * y <= 64.0; x += 0.0625) {
      worst = std::max(worst, relative_error(faddeeva_w({x, y}), faddeeva_quad(x, y)));
    }
  }
  CHECK(worst < 1e-12);
}

TEST_CASE("faddeeva_w region boundaries are continuous") {
  // Series and continued fraction meet at Im z = 1 and |z| = 6.
  for (double x : {0.0, 0.3, 1.0, 2.5, 4.0, 5.5}) {
    const Complex below = faddeeva_w({x, std::nextafter(1.0, 0.0)});
    const Complex above = faddeeva_w({x, 1.0});
    CHECK(relative_error(below, above) < 1e-12);
  }
  for (double y : {0.0, 0.2, 0.6, 0.95}) {
    const double x = std::sqrt(36.0 - y * y);
    CHECK(relative_error(faddeeva_w({std::nextafter(x, 0.0), y}), faddeeva_w({x, y})) < 1e-12);
  }
}

TEST_CASE("faddeeva_w rejects the lower half-plane and non-finite input") {
  CHECK_THROWS_AS(faddeeva_w({0.0, -1e-3}), std::domain_error);
  CHECK_THROWS_AS(faddeeva_w({NAN, 1.0}), std::domain_error);
  CHECK_THROWS_AS(faddeeva_w({INFINITY, 1.0}), std::domain_error);
}

TEST_CASE("faddeeva_w asymptotic behaviour") {
  // w(z) ~ i / (sqrt(pi) z) for large |z|.
  for (const Complex z : {Complex{1e4, 1.0}, Complex{3e3, 3e3}, Complex{0.0, 1e5}}) {
    const Complex asym = Complex{0.0, 1.0} / (std::sqrt(std::numbers::pi) * z);
    CHECK(relative_error(faddeeva_w(z), asym) < 1e-7);
  }
}

TEST_CASE("erfcx") {
  CHECK(tpi::numerics::erfcx(0.0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(tpi::numerics::erfcx(1.0) == doctest::Approx(0.42758357615580700441).epsilon(1e-13));
  CHECK(tpi::numerics::erfcx(3.0) == doctest::Approx(std::exp(9.0) * std::erfc(3.0)).epsilon(1e-12));
  CHECK_THROWS_AS(tpi::numerics::erfcx(-1.0), std::domain_error);
  // Monotone decreasing.
  double prev = tpi::numerics::erfcx(0.0);
  for (double y = 0.1; y < 30.0; y += 0.1) {
    const double v = tpi::numerics::erfcx(y);
    CHECK(v < prev);
    prev = v;
  }
}

namespace {

// Integral of f over the real line through x = s tan(u).
double whole_line(const std::function<double(double)>& f, double s) {
  const double h = 0.5 * std::numbers::pi;
  return tpi::numerics::integrate(
      [&](double u) {
        const double c = std::cos(u);
        return f(s * std::tan(u)) * s / (c * c);
      },
      -h, h, 1e-12);
}

}  // namespace

TEST_CASE("voigt_value is a unit-area profile") {
  using tpi::numerics::voigt_value;
  for (const auto& [sigma, gamma] : {std::pair{1.0, 0.0}, {0.0, 1.0}, {1.0, 1.0}, {0.3, 2.0}, {2.0, 0.05}}) {
    CAPTURE(sigma);
    CAPTURE(gamma);
    const double area = whole_line([&](double x) { return voigt_value(x, sigma, gamma); }, sigma + gamma);
    CHECK(area == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(voigt_value(0.7, sigma, gamma) == doctest::Approx(voigt_value(-0.7, sigma, gamma)).epsilon(1e-15));
  }
  CHECK_THROWS_AS(voigt_value(0.0, 0.0, 0.0), std::invalid_argument);
  // Limits.
  CHECK(voigt_value(0.5, 0.0, 1.0) == doctest::Approx(1.0 / (std::numbers::pi * 1.25)).epsilon(1e-14));
  CHECK(voigt_value(0.5, 1.0, 0.0) ==
        doctest::Approx(std::exp(-0.125) / std::sqrt(2.0 * std::numbers::pi)).epsilon(1e-14));
  CHECK(voigt_value(0.5, 1.0, 1e-9) == doctest::Approx(voigt_value(0.5, 1.0, 0.0)).epsilon(1e-8));
}

TEST_CASE("voigt_fwhm") {
  using tpi::numerics::voigt_fwhm;
  CHECK(voigt_fwhm(2.0, 0.0) == doctest::Approx(2.0).epsilon(1e-10));
  CHECK(voigt_fwhm(0.0, 3.0) == doctest::Approx(3.0).epsilon(1e-10));
  // Olivero-Longbothum approximation is good to about 2e-4.
  for (const auto& [l, g] : {std::pair{1.0, 1.0}, {480.0, 550.0}, {5.0, 0.5}, {0.2, 4.0}}) {
    const double approx = 0.5346 * l + std::sqrt(0.2166 * l * l + g * g);
    CHECK(voigt_fwhm(l, g) == doctest::Approx(approx).epsilon(3e-4));
  }
  CHECK(voigt_fwhm(480.0, 550.0) == doctest::Approx(850.2).epsilon(2e-4));
}

TEST_CASE("adaptive quadrature closed forms") {
  using namespace tpi::numerics;
  CHECK(integrate([](double x) { return std::sin(x); }, 0.0, std::numbers::pi, 1e-13) ==
        doctest::Approx(2.0).epsilon(1e-13));
  CHECK(integrate_to_infinity([](double x) { return std::exp(-x); }, 0.0, 1.0) ==
        doctest::Approx(1.0).epsilon(1e-10));
  CHECK(integrate_real_line([](double x) { return std::exp(-x * x); }, 1.0) ==
        doctest::Approx(std::sqrt(std::numbers::pi)).epsilon(1e-10));
  // Kink and oscillation: int exp(-|x|) cos(5x) = 2 / 26.
  CHECK(integrate_real_line([](double x) { return std::exp(-std::abs(x)) * std::cos(5.0 * x); }, 1.0) ==
        doctest::Approx(2.0 / 26.0).epsilon(1e-9));
  // Reversed limits flip the sign.
  CHECK(integrate([](double x) { return x * x; }, 1.0, 0.0, 1e-13) == doctest::Approx(-1.0 / 3.0));
}

TEST_CASE("quadrature reports non-convergence") {
  using namespace tpi::numerics;
  CHECK_THROWS_AS(integrate([](double x) { return 1.0 / x; }, 0.0, 1.0, 1e-12, 20), QuadratureError);
  CHECK_THROWS_AS(integrate_to_infinity([](double x) { return x; }, 0.0, 0.0), std::invalid_argument);
}
