#include <cmath>
#include <complex>
#include <vector>

#include "doctest.h"
#include "qsis/errors.hpp"
#include "qsis/generator.hpp"
#include "qsis/spectrum.hpp"

using namespace qsis;

namespace {

// Independent oracle for the torus spectrum of a compactly supported
// generator: the symbol sum_k <g, g(.-k)> e^{2 pi i k y} computed with plain
// Riemann sums, no library quadrature or transform involved.
double gram_symbol_oracle(const generator& g, double y) {
  const double lo = g.support().intervals[0].first;
  const double hi = g.support().intervals[0].second;
  const int width = static_cast<int>(std::ceil(hi - lo)) + 1;
  double acc = 0.0;
  for (int k = -width; k <= width; ++k) {
    double inner = 0.0;
    const int n = 200000;
    for (int i = 0; i < n; ++i) {
      const double x = lo + (hi - lo) * (i + 0.5) / n;
      inner += g.eval(x) * g.eval(x - k);
    }
    inner *= (hi - lo) / n;
    acc += inner * std::cos(2.0 * 3.14159265358979323846 * k * y);
  }
  return acc;
}

}  // namespace

TEST_CASE("indicator periodization is identically one") {
  const auto profile = periodization(generator::rect(), 256, 2000);
  for (double v : profile.values) {
    CHECK(std::abs(v - 1.0) <= 1e-3);
  }
  CHECK(profile.g_min > 0.999);
  CHECK(profile.g_max <= 1.0 + 1e-12);
  CHECK(profile.tail_bound < 2e-4);
}

TEST_CASE("band-limited periodization is exactly constant and tail-free") {
  const auto profile = periodization(generator::sinc(), 256, 8);
  for (double v : profile.values) CHECK(v == 1.0);
  CHECK(profile.tail_bound == 0.0);
  // already exact: doubling the truncation changes nothing, bit for bit
  const auto twice = periodization(generator::sinc(), 256, 16);
  for (std::size_t i = 0; i < profile.values.size(); ++i) {
    CHECK(profile.values[i] == twice.values[i]);
  }
}

TEST_CASE("hat-spline spectrum matches the tridiagonal symbol oracle") {
  const generator b1 = generator::bspline(1);
  const auto profile = periodization(b1, 256, 2000);
  CHECK(std::abs(profile.g_min - 1.0 / 3.0) <= 1e-3);
  CHECK(std::abs(profile.g_max - 1.0) <= 1e-3);
  // pointwise against the independent symbol 2/3 + (1/3) cos(2 pi y)
  for (int i : {0, 37, 128, 200}) {
    const double y = -0.5 + static_cast<double>(i) / 256.0;
    const double oracle = 2.0 / 3.0 + std::cos(2.0 * 3.14159265358979323846 * y) / 3.0;
    CHECK(profile.values[i] == doctest::Approx(oracle).epsilon(1e-6));
    CHECK(gram_symbol_oracle(b1, y) == doctest::Approx(oracle).epsilon(1e-4));
  }
}

TEST_CASE("quadratic-spline spectrum matches its symbol oracle") {
  const auto profile = periodization(generator::bspline(2), 128, 600);
  // symbol extrema: (66 - 52 + 2)/120 = 2/15 at the cell edge, 1 at 0
  CHECK(profile.g_min == doctest::Approx(2.0 / 15.0).epsilon(1e-6));
  CHECK(profile.g_max == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("periodization values are 1-periodic and monotone in the truncation") {
  const generator g = generator::bspline(1);
  const auto p1 = periodization(g, 64, 50);
  const auto p2 = periodization(g, 64, 100);
  for (std::size_t i = 0; i < p1.values.size(); ++i) {
    CHECK(p2.values[i] >= p1.values[i]);  // non-negative terms only add up
  }
  // periodicity: G at y and its re-wrapped translate agree exactly
  for (double y : {-0.5, -0.21, 0.0, 0.37}) {
    double a = 0.0, b = 0.0;
    for (int m = -300; m <= 300; ++m) {
      a += std::norm(g.fourier(y + m));
      b += std::norm(g.fourier((y + 1.0) + (m - 1)));
    }
    CHECK(a == b);
  }
}

TEST_CASE("grid mean of the spectrum equals the squared norm") {
  for (auto g : {generator::rect(), generator::bspline(1),
                 generator::bspline(2), generator::bspline(3)}) {
    const auto profile = periodization(g, 256, 400);
    double mean = 0.0;
    for (double v : profile.values) mean += v;
    mean /= static_cast<double>(profile.values.size());
    const double n2 = lp_norm(g, exponent(2.0));
    CHECK(mean == doctest::Approx(n2 * n2).epsilon(1e-3));
  }
}

TEST_CASE("p = 2 bounds from the profile") {
  const auto rect_bounds = riesz_bounds_p2(periodization(generator::rect(), 256, 2000));
  CHECK(rect_bounds.convention() == bounds_convention::squared);
  CHECK(rect_bounds.lower() == doctest::Approx(1.0).epsilon(1e-3));
  CHECK(rect_bounds.upper() == doctest::Approx(1.0).epsilon(1e-3));

  const auto sinc_bounds = riesz_bounds_p2(periodization(generator::sinc(), 64, 8));
  CHECK(sinc_bounds.lower() == 1.0);
  CHECK(sinc_bounds.upper() == 1.0);

  const auto b1 = riesz_bounds_p2(periodization(generator::bspline(1), 256, 2000));
  CHECK(b1.lower() == doctest::Approx(1.0 / 3.0).epsilon(1e-3));
  CHECK(b1.upper() == doctest::Approx(1.0).epsilon(1e-3));
}

TEST_CASE("a vanishing symbol is reported as degenerate") {
  // s_0 = 1, s_1 = -1: the trigonometric factor kills y = 0
  const generator g = generator::step({0.0, 1.0, -1.0}, 1);
  const auto profile = periodization(g, 64, 500);
  CHECK(profile.g_min <= 1e-12);
  CHECK_THROWS_AS(riesz_bounds_p2(profile), degenerate_spectrum);
}

TEST_CASE("tensor periodization multiplies per-axis profiles") {
  const generator t = generator::tensor_product(
      {generator::bspline(1), generator::bspline(1)});
  const auto profile = periodization(t, 32, 200);
  CHECK(profile.dimension == 2);
  CHECK(profile.values.size() == 32u * 32u);
  CHECK(profile.g_max == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(profile.g_min == doctest::Approx(1.0 / 9.0).epsilon(1e-4));
}

TEST_CASE("tabulated transform path matches a Riemann oracle") {
  const generator g = generator::tabulated({0.0, 1.0, 0.5, 0.0}, 0.5, -0.75);
  for (double xi : {0.0, 0.31, 1.7, -2.4}) {
    std::complex<double> oracle = 0.0;
    const int n = 200000;
    for (int i = 0; i < n; ++i) {
      const double x = -0.75 + 1.5 * (i + 0.5) / n;
      const double ph = 2.0 * 3.14159265358979323846 * x * xi;
      oracle += g.eval(x) * std::complex<double>(std::cos(ph), std::sin(ph));
    }
    oracle *= 1.5 / n;
    CHECK(std::abs(transform(g, xi) - oracle) < 1e-7);
  }
  // and the periodization accepts the discrete path
  const auto profile = periodization(g, 32, 64);
  CHECK(profile.g_max > 0.0);
}

TEST_CASE("amalgam sums: indicator transform on both cells") {
  // literal cell: the sinc zeros sit inside every nonzero cell translate
  const auto literal = amalgam_sums(generator::rect(), 256, 2000, 0.0);
  CHECK(literal.lower_c == 0.0);
  // centered cell: the k = 0 cell stays away from the zeros
  const auto centered = amalgam_sums(generator::rect(), 256, 2000, -0.5);
  const double edge = 2.0 / 3.14159265358979323846;  // sinc(1/2)
  CHECK(centered.lower_c == doctest::Approx(edge * edge).epsilon(1e-9));
}

TEST_CASE("amalgam sums: band-limited indicator transform") {
  const auto literal = amalgam_sums(generator::sinc(), 256, 64, 0.0);
  CHECK(literal.lower_c == 0.0);
  // the transform straddles the two cells [-1,0) and [0,1)
  CHECK(literal.upper_big_c == doctest::Approx(2.0));
  const auto centered = amalgam_sums(generator::sinc(), 256, 64, -0.5);
  CHECK(centered.lower_c == 1.0);
  CHECK(centered.upper_big_c == 1.0);
}

TEST_CASE("amalgam sums: splines need the centered cell") {
  for (int m : {1, 2, 3}) {
    const auto literal = amalgam_sums(generator::bspline(m), 128, 600, 0.0);
    CHECK(literal.lower_c == 0.0);  // closure of the k = 0 cell reaches a zero
    const auto centered = amalgam_sums(generator::bspline(m), 128, 600, -0.5);
    const double edge = std::pow(2.0 / 3.14159265358979323846, 2 * (m + 1));
    CHECK(centered.lower_c == doctest::Approx(edge).epsilon(1e-9));
    CHECK(centered.lower_c < centered.upper_big_c);
    CHECK(std::isfinite(centered.upper_big_c));
  }
}

TEST_CASE("comparison constant for the relatively-separated route") {
  // |b1'| has cell suprema 1 on two unit cells: amalgam norm 2
  const double c_prime = fmr_constant(generator::bspline(1), 0.01);
  CHECK(c_prime == doctest::Approx(1e-4 * 1.02 * 1.02 * 4.0).epsilon(1e-10));
  CHECK(fmr_constant(generator::bspline(1), 0.0) == 0.0);
  CHECK_THROWS_AS(fmr_constant(generator::rect(), 0.01), not_sobolev);
}

TEST_CASE("fmr constant against the rectangle budget at small L") {
  // at L in {1e-3, 1e-2, 5e-2} both constants are tiny; the quadratic one
  // wins below the crossover
  for (double l : {1e-3, 1e-2, 5e-2}) {
    const double c_prime = fmr_constant(generator::bspline(1), l);
    const double rectangle = l * 3.0 * 2.0;  // (1+floor(2+L))^{p-1} ||b1'||_2^2
    CHECK(c_prime == doctest::Approx(l * l * std::pow(1.0 + 2.0 * l, 2.0) * 4.0));
    CHECK(c_prime < rectangle);
  }
}

TEST_CASE("profile json carries the convention tag and amalgam block") {
  auto profile = periodization(generator::bspline(1), 64, 100);
  profile.amalgam = amalgam_sums(generator::bspline(1), 64, 100, -0.5);
  const auto j = to_json(profile);
  CHECK(j.at("convention") == "squared");
  CHECK(j.at("values").size() == 64);
  CHECK(j.at("amalgam").at("cell_offset") == doctest::Approx(-0.5));
}
