#pragma once

#include <complex>
#include <functional>
#include <vector>

namespace qsis {

/// Knobs for every norm integral in the library.
///   points_per_unit   target evaluation density per unit length
///   truncation_radius half-width used when a support is unbounded;
///                     <= 0 means "refuse" (unbounded_support is thrown)
///   gl_order          Gauss-Legendre nodes per cell; raised automatically
///                     when integer exponents allow an exactness guarantee
struct quadrature_spec {
  int points_per_unit = 512;
  double truncation_radius = 64.0;
  int gl_order = 8;
};

/// Gauss-Legendre nodes/weights on [-1, 1], computed once per order.
struct gl_rule {
  std::vector<double> nodes;
  std::vector<double> weights;
};
const gl_rule& gauss_legendre(int order);

/// Sorted unique copy of `points` clipped to [lo, hi], with lo/hi included.
std::vector<double> make_segments(double lo, double hi,
                                  const std::vector<double>& points);

/// Integral of f over consecutive segments with a composite GL rule.
/// Each segment is split into ceil(len * cells_per_unit) equal cells.
double integrate_segments(const std::function<double(double)>& f,
                          const std::vector<double>& segments,
                          int gl_order, double cells_per_unit);

/// integral of |f|^p for a real piecewise-smooth f whose only kinks lie on
/// the segment boundaries. piece_degree >= 0 declares f piecewise polynomial
/// of that degree, which fixes the GL order needed for exactness at integer
/// p and enables sign-change root hunting for odd/fractional p;
/// piece_degree < 0 means "analytic pieces, no exactness claim".
double lp_power_real(const std::function<double(double)>& f, double p,
                     const std::vector<double>& segments,
                     const quadrature_spec& spec, int piece_degree);

/// Same for complex-valued f; integrand is (re^2 + im^2)^{p/2}. Exact for
/// even integer p (given the degree hint); no root augmentation since |f|
/// only vanishes where both parts do.
double lp_power_complex(const std::function<std::complex<double>(double)>& f,
                        double p, const std::vector<double>& segments,
                        const quadrature_spec& spec, int piece_degree);

}  // namespace qsis
