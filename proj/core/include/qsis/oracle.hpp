#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <vector>

#include <Eigen/Dense>
#include <nlohmann/json.hpp>

#include "qsis/certify.hpp"
#include "qsis/exponent.hpp"
#include "qsis/generator.hpp"
#include "qsis/perturb.hpp"
#include "qsis/quadrature.hpp"

namespace qsis {

/// Coefficients over the grid's index box, l^p-normalized unless stated.
struct coefficient_vector {
  std::vector<std::complex<double>> values;
  double p = 2.0;
  bool normalized = false;
};

coefficient_vector normalize_lp(coefficient_vector a);
/// Isotropic complex Gaussian entries, then l^p normalization.
coefficient_vector random_coefficients(const translation_grid& grid, double p,
                                       std::uint64_t seed, std::uint64_t index);

/// Empirical evidence from one brute-force run. min/max ratios can only
/// narrow the true bound range from inside: the observed minimum
/// over-estimates the true lower bound and the observed maximum
/// under-estimates the upper one.
struct oracle_report {
  int grid_k = 0;
  int dimension = 1;
  quadrature_spec quad;
  int sample_count = 0;  // random samples + deterministic probes
  double min_ratio = 0.0;
  double max_ratio = 0.0;
  double perturbation_power_max = 0.0;
  std::optional<double> gram_eig_min;
  std::optional<double> gram_eig_max;
  std::uint64_t seed = 0;
  std::string notes;
  std::vector<double> per_sample_ratios;  // kept only when requested
};

/// f(x) = sum_k a_k g(x - y_k) at a point (1-D systems).
double synthesize_eval_real(const generator& g, const perturbation_set& y,
                            const std::vector<double>& a, double x);
std::complex<double> synthesize_eval(const generator& g,
                                     const perturbation_set& y,
                                     const coefficient_vector& a, double x);

/// ||f||_p^p of the synthesized function by knot-aligned quadrature.
double synthesis_norm_power(const generator& g, const perturbation_set& y,
                            const coefficient_vector& a, double p,
                            const quadrature_spec& spec = {});

/// Gram matrix <g(.-y_j), g(.-y_k)> in closed form where available
/// (rect/spline correlation, sinc, step, tensor products), quadrature
/// otherwise.
Eigen::MatrixXd gram_matrix(const generator& g, const perturbation_set& y,
                            const quadrature_spec& spec = {});

/// Extreme eigenvalues of a symmetric Gram section (squared convention).
std::pair<double, double> empirical_bounds_p2(const Eigen::MatrixXd& gram);

struct ratio_range {
  double min_ratio;
  double max_ratio;
};

/// Observed range of ||f||_p over random unit-l^p coefficient vectors plus
/// the deterministic probes (single spike, alternating signs, flat).
ratio_range empirical_ratio_lp(const generator& g, const perturbation_set& y,
                               const exponent& p, int samples,
                               std::uint64_t seed,
                               const quadrature_spec& spec = {},
                               std::vector<double>* per_sample = nullptr);

/// sup over sampled unit-l^p vectors of
/// || sum a_k ( g(.-k) - g(.-y_k) ) ||_p^p.
double perturbation_power(const generator& g, const perturbation_set& y,
                          const exponent& p, int samples, std::uint64_t seed,
                          const quadrature_spec& spec = {});

/// Extreme eigenvalues of the exponential-system Gram
/// integral_{[0,1)^d} e^{2 pi i (y_j - y_k).x} dx (closed form), as
/// empirical (A1, B1); any dimension.
std::pair<double, double> exponential_gram_bounds(const perturbation_set& y);

/// Least-squares residual of the gap indicator against the span of the
/// (optionally single-node-perturbed) indicator translates, p = 2.
double problem1_residual(double delta, int grid_k, bool perturbed = true);

nlohmann::json to_json(const oracle_report& r);

}  // namespace qsis
