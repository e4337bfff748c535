#pragma once

#include <complex>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "qsis/exponent.hpp"
#include "qsis/quadrature.hpp"

namespace qsis {

enum class generator_kind { rect, bspline, sinc, step, tabulated, tensor_product };

/// Closed box support, or the unbounded flag. Intervals are stored per axis;
/// the half-open right edge of rect is an evaluation convention, not a
/// property of the box.
struct support_box {
  bool unbounded = false;
  std::vector<std::pair<double, double>> intervals;
};

/// Window function whose translates span the space under study. Immutable
/// value type; every operation on it is pure.
///
/// Translates are placed signal-processing style: the translate "at" y is
/// x |-> g(x - y) throughout the library.
class generator {
 public:
  static generator rect();
  static generator bspline(int order);
  static generator sinc();
  /// coeffs holds s_j for j = -j_radius..j_radius (size 2*j_radius+1).
  static generator step(std::vector<double> coeffs, int j_radius);
  /// Piecewise-linear interpolant of uniform samples on
  /// [lo, lo + (n-1)*step], treated as zero outside.
  static generator tabulated(std::vector<double> samples, double step, double lo);
  static generator tensor_product(std::vector<generator> factors);

  generator_kind kind() const { return kind_; }
  int dimension() const { return dimension_; }
  const support_box& support() const { return support_; }
  bool compact_support() const { return !support_.unbounded; }
  bool band_limited() const { return band_limited_; }
  bool in_w1p() const { return in_w1p_; }

  int order() const { return order_; }               // bspline
  int j_radius() const { return j_radius_; }         // step
  const std::vector<double>& coeffs() const { return coeffs_; }  // step
  const std::vector<double>& samples() const { return samples_; }  // tabulated
  double sample_step() const { return sample_step_; }              // tabulated
  double sample_lo() const { return sample_lo_; }                  // tabulated
  const std::vector<generator>& factors() const { return factors_; }

  double eval(double x) const;                     // 1-D kinds
  double eval(std::span<const double> x) const;    // any dimension

  /// Closed-form transform with the e^{+2 pi i x.xi} kernel. Throws
  /// no_closed_form_transform for tabulated; use spectrum::transform.
  std::complex<double> fourier(double xi) const;
  std::complex<double> fourier(std::span<const double> xi) const;

  /// Breakpoints of the piecewise-polynomial structure (1-D kinds).
  /// Empty for sinc.
  std::vector<double> knots() const;
  /// Polynomial degree between knots; -1 for analytic (sinc).
  int piece_degree() const;

  /// Pointwise value of the distributional derivative (1-D, in_w1p only).
  double derivative_eval(double x) const;

  std::string describe() const;

 private:
  generator() = default;

  generator_kind kind_ = generator_kind::rect;
  int dimension_ = 1;
  support_box support_;
  bool band_limited_ = false;
  bool in_w1p_ = false;

  int order_ = 0;
  int j_radius_ = 0;
  std::vector<double> coeffs_;
  std::vector<double> samples_;
  double sample_step_ = 0.0;
  double sample_lo_ = 0.0;
  std::vector<generator> factors_;
};

/// ||g||_p^p. Exact closed forms where available (rect, step, bspline mass),
/// otherwise knot-aligned composite quadrature; unbounded supports are
/// truncated at spec.truncation_radius (throws unbounded_support when the
/// radius is <= 0).
double lp_norm_power(const generator& g, const exponent& p,
                     const quadrature_spec& spec = {});
double lp_norm(const generator& g, const exponent& p,
               const quadrature_spec& spec = {});

/// ||d_axis g||_p^p and its root, from the closed-form distributional
/// derivative. Throws not_sobolev when the generator is not W^{1,p}.
double grad_lp_norm_power(const generator& g, const exponent& p, int axis = 0,
                          const quadrature_spec& spec = {});
double grad_lp_norm(const generator& g, const exponent& p, int axis = 0,
                    const quadrature_spec& spec = {});

/// rect * g. bspline(m) -> bspline(m+1); step -> exact piecewise-linear
/// tabulated; tabulated -> tabulated resampled on a refined grid.
generator convolve_rect(const generator& g);

/// Estimate of w_p(delta, g) = sup_{|t|<delta} ||g(.+t) - g||_p over `probes`
/// shift magnitudes in both directions along each axis.
double modulus_continuity(const generator& g, double delta, const exponent& p,
                          int probes, const quadrature_spec& spec = {});

/// sin(pi x)/(pi x) with the removable singularity filled in.
double sinc_value(double x);

generator generator_from_json(const nlohmann::json& j);
nlohmann::json to_json(const generator& g);

}  // namespace qsis
