#include <cstring>

#include "doctest.h"
#include "tpi/bell.hpp"
#include "tpi/interference.hpp"
#include "tpi/kernels.hpp"

using namespace tpi;

namespace {

bool bitwise_equal(const std::vector<double>& a, const std::vector<double>& b) {
  return a.size() == b.size() && std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0;
}

}  // namespace

TEST_CASE("linspace") {
  const auto v = linspace(1.0, 2.0, 5);
  REQUIRE(v.size() == 5);
  CHECK(v.front() == 1.0);
  CHECK(v.back() == 2.0);
  CHECK(v[2] == doctest::Approx(1.5));
  CHECK(linspace(3.0, 4.0, 1) == std::vector<double>{3.0});
  CHECK_THROWS_AS(linspace(0.0, 1.0, 0), std::invalid_argument);
}

TEST_CASE("serial and parallel sweeps are bit-identical") {
  const auto pd = linspace(1.0, 6.0, 37);
  const auto sd = linspace(0.0, 6.0, 41);
  CHECK(bitwise_equal(visibility_map(pd, sd, Execution::serial).values,
                      visibility_map(pd, sd, Execution::parallel).values));
  CHECK(bitwise_equal(fidelity_map(pd, sd, Execution::serial).values,
                      fidelity_map(pd, sd, Execution::parallel).values));
  const PhotonPair pair(EmitterParams{700e-12, 600e6, 1.4e9, 0.0}, EmitterParams{650e-12, 300e6, 0.8e9, 0.0});
  const auto detunings = linspace(-5e9, 5e9, 101);
  CHECK(bitwise_equal(tuning_curve(pair, detunings, Execution::serial),
                      tuning_curve(pair, detunings, Execution::parallel)));
}

TEST_CASE("visibility map layout and values") {
  const std::vector<double> pd{1.0, 2.0, 4.0};
  const std::vector<double> sd{0.0, 0.5};
  const Grid2D g = visibility_map(pd, sd);
  REQUIRE(g.rows() == 3);
  REQUIRE(g.cols() == 2);
  CHECK(g.at(0, 0) == doctest::Approx(1.0));
  CHECK(g.at(1, 0) == doctest::Approx(0.5));
  CHECK(g.at(2, 1) == doctest::Approx(normalized_visibility(4.0, 0.5)));
  CHECK_THROWS_AS(visibility_map(std::vector<double>{}, sd), std::invalid_argument);
  CHECK_THROWS_AS(visibility_map(std::vector<double>{0.5}, sd), std::invalid_argument);
  CHECK_THROWS_AS(visibility_map(pd, std::vector<double>{-1.0}), std::invalid_argument);
}

TEST_CASE("maps decrease along both axes") {
  const auto pd = linspace(1.0, 8.0, 60);
  const auto sd = linspace(0.0, 8.0, 60);
  for (const Grid2D& g : {visibility_map(pd, sd), fidelity_map(pd, sd)}) {
    for (std::size_t r = 0; r < g.rows(); ++r) {
      for (std::size_t c = 0; c < g.cols(); ++c) {
        if (r + 1 < g.rows()) CHECK(g.at(r + 1, c) < g.at(r, c));
        if (c + 1 < g.cols()) CHECK(g.at(r, c + 1) < g.at(r, c));
      }
    }
  }
}

TEST_CASE("tuning curve is symmetric and peaks at resonance") {
  const PhotonPair pair(EmitterParams{700e-12, 600e6, 1.4e9, 0.0}, EmitterParams{650e-12, 300e6, 0.8e9, 0.0});
  const auto detunings = linspace(-4e9, 4e9, 81);
  const auto v = tuning_curve(pair, detunings);
  for (std::size_t n = 0; n < v.size(); ++n) CHECK(v[n] == doctest::Approx(v[v.size() - 1 - n]).epsilon(1e-12));
  CHECK(v[40] == doctest::Approx(hom_visibility(pair).visibility));
  for (std::size_t n = 0; n < 40; ++n) CHECK(v[n] < v[n + 1]);
  CHECK_THROWS_AS(tuning_curve(pair, std::vector<double>{}), std::invalid_argument);
}
