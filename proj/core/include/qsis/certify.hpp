#pragma once

#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "qsis/exponent.hpp"
#include "qsis/frame_bounds.hpp"
#include "qsis/generator.hpp"
#include "qsis/perturb.hpp"
#include "qsis/spectrum.hpp"

namespace qsis {

enum class theorem_id {
  pw_update,
  sobolev_rect,
  rect,
  rect_conv,
  bspline,
  step,
  amalgam_kadec,
  per_index,
};

std::string to_string(theorem_id id);

struct hypothesis {
  std::string name;
  bool holds;
  double value;
};

/// Outcome of one stability check. budget_cp bounds the p-th power
/// || sum a_k (g(.-k) - g(.-y_k)) ||_p^p per unit l^p coefficients; the
/// triangle inequality then perturbs the bounds by rho = budget_cp^{1/p}.
/// Both the stated margin A - budget_cp and the corrected margin A - rho are
/// reported; the corrected one governs the verdict, and the verdict also
/// requires every gating hypothesis (so it is never less strict than the
/// stated condition).
struct certificate {
  theorem_id id;
  double p;
  double deviation;  // L actually measured from the perturbation set
  std::vector<hypothesis> hypotheses;   // gating
  std::vector<hypothesis> info_checks;  // reported, not gating
  double budget_cp = 0.0;
  double rho = 0.0;
  double literal_paper_margin = 0.0;  // A - budget_cp (unsquared A)
  double corrected_margin = 0.0;      // A - rho
  bool pass = false;
  frame_bounds base;                   // unsquared
  std::optional<frame_bounds> updated; // unsquared (A - rho, B + rho)
  std::string notes;
};

/// Riesz bounds of the exponential system on the unit cell.
struct exponential_bounds {
  double a1;
  double b1;
  std::string provenance;  // "user" | "oracle-gram"
};

/// Per-index admissible radii delta_j = t w_j with the largest t keeping
/// ||grad g||_p (sum delta_j^{p'})^{1/p'} <= (1 - eps) A.
struct per_index_radii {
  std::vector<double> radii;
  double scale_t = 0.0;
  double budget_check = 0.0;
  double bound_a = 0.0;
};

/// Bound update under a perturbation whose p-power is bounded by budget_cp.
/// `bounds` must be in the unsquared convention.
certificate paley_wiener_update(const frame_bounds& bounds, double budget_cp,
                                const exponent& p);

/// Rectangle-support Sobolev budget
///   C = L sum_j (1 + floor(b_j - a_j + L))^{p-1} ||d_j g||_p^p.
certificate certify_sobolev_rectangle(const generator& g,
                                      const perturbation_set& y,
                                      const exponent& p, const frame_bounds& a,
                                      const quadrature_spec& spec = {});

/// Indicator generator: budget 2^p L against unit base bounds, requires L < 1.
certificate certify_rect(const perturbation_set& y, const exponent& p);

/// g = rect * g0: budget 2^p L ||g0||_1^p against supplied base bounds.
certificate certify_rect_convolution(const generator& g0,
                                     const perturbation_set& y,
                                     const exponent& p, const frame_bounds& a,
                                     const quadrature_spec& spec = {});

/// Spline specialization of the convolution route; condition
/// L < 2^{-p} A_p(m) with the supplied constant in its stated convention.
certificate certify_bspline(int order, const perturbation_set& y,
                            const exponent& p, const frame_bounds& ap_m);

/// Step generator: budget 2^p L J ||g||_{p'}^p. Throws
/// dual_exponent_infinite at p = 1.
certificate certify_step(const generator& g, const perturbation_set& y,
                         const exponent& p, const frame_bounds& a);

/// p = 2 amalgam route: emits squared bounds (A1 c, B1 C) when the cell sums
/// are non-degenerate and the node set carries exponential-basis evidence
/// (quarter criterion or user-supplied bounds).
certificate certify_amalgam_kadec(const generator& g, const perturbation_set& y,
                                  const exponential_bounds& expb,
                                  const amalgam_sums_result& amalgam);

per_index_radii compute_per_index_radii(const generator& g, const exponent& p,
                                        const frame_bounds& a,
                                        const std::vector<double>& weights,
                                        const quadrature_spec& spec = {});

nlohmann::json to_json(const certificate& c);
nlohmann::json to_json(const per_index_radii& r);

}  // namespace qsis
