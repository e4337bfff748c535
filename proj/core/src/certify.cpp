#include "qsis/certify.hpp"

#include <cmath>
#include <limits>

#include "qsis/errors.hpp"

namespace qsis {

namespace {

certificate make_base(theorem_id id, const exponent& p, double deviation,
                      const frame_bounds& unsquared_bounds) {
  certificate c{.id = id,
                .p = p.p(),
                .deviation = deviation,
                .hypotheses = {},
                .info_checks = {},
                .budget_cp = 0.0,
                .rho = 0.0,
                .literal_paper_margin = 0.0,
                .corrected_margin = 0.0,
                .pass = false,
                .base = unsquared_bounds,
                .updated = std::nullopt,
                .notes = ""};
  return c;
}

// Shared tail: budget -> rho -> margins -> verdict -> updated bounds.
void apply_update(certificate* c, double budget_cp) {
  if (budget_cp < 0.0) throw config_error("perturbation budget must be >= 0");
  const double a = c->base.lower();
  const double b = c->base.upper();
  c->budget_cp = budget_cp;
  c->rho = std::pow(budget_cp, 1.0 / c->p);
  c->literal_paper_margin = a - budget_cp;
  c->corrected_margin = a - c->rho;
  bool all = c->rho < a;
  for (const auto& h : c->hypotheses) all = all && h.holds;
  c->pass = all;
  if (c->pass) {
    c->updated = frame_bounds(a - c->rho, b + c->rho,
                              bounds_convention::unsquared, "certificate");
  }
}

double deviation_of(const perturbation_set& y) { return y.l2_deviation(); }

}  // namespace

std::string to_string(theorem_id id) {
  switch (id) {
    case theorem_id::pw_update: return "PW_UPDATE";
    case theorem_id::sobolev_rect: return "SOBOLEV_RECT";
    case theorem_id::rect: return "RECT";
    case theorem_id::rect_conv: return "RECT_CONV";
    case theorem_id::bspline: return "BSPLINE";
    case theorem_id::step: return "STEP";
    case theorem_id::amalgam_kadec: return "AMALGAM_KADEC";
    case theorem_id::per_index: return "PER_INDEX";
  }
  return "UNKNOWN";
}

certificate paley_wiener_update(const frame_bounds& bounds, double budget_cp,
                                const exponent& p) {
  if (bounds.convention() != bounds_convention::unsquared) {
    throw config_error("paley_wiener_update expects unsquared bounds");
  }
  certificate c = make_base(theorem_id::pw_update, p, 0.0, bounds);
  apply_update(&c, budget_cp);
  return c;
}

certificate certify_sobolev_rectangle(const generator& g,
                                      const perturbation_set& y,
                                      const exponent& p, const frame_bounds& a,
                                      const quadrature_spec& spec) {
  if (!g.in_w1p()) {
    throw not_sobolev("rectangle certificate needs a W^{1,p} generator");
  }
  if (g.support().unbounded) {
    throw unbounded_support("rectangle certificate needs compact support");
  }
  if (y.grid().dimension != g.dimension()) {
    throw config_error("generator/perturbation dimension mismatch");
  }
  const double L = deviation_of(y);
  const frame_bounds base = a.as(bounds_convention::unsquared);
  certificate c = make_base(theorem_id::sobolev_rect, p, L, base);

  double budget = 0.0;
  for (int axis = 0; axis < g.dimension(); ++axis) {
    const auto& side = g.support().intervals[axis];
    const double width = side.second - side.first;
    const double overlap = std::pow(1.0 + std::floor(width + L), p.p() - 1.0);
    budget += overlap * grad_lp_norm_power(g, p, axis, spec);
  }
  budget *= L;

  c.hypotheses.push_back({"generator in W^{1,p} with rectangle support", true, 1.0});
  c.hypotheses.push_back(
      {"stated condition C < A", budget < base.lower(), budget});
  apply_update(&c, budget);
  return c;
}

certificate certify_rect(const perturbation_set& y, const exponent& p) {
  if (y.grid().dimension != 1) {
    throw config_error("indicator certificate is one-dimensional");
  }
  const double L = deviation_of(y);
  if (L >= 1.0) {
    throw deviation_too_large("indicator certificate requires L < 1");
  }
  const frame_bounds base(1.0, 1.0, bounds_convention::unsquared, "paper");
  certificate c = make_base(theorem_id::rect, p, L, base);
  const double budget = std::pow(2.0, p.p()) * L;
  c.hypotheses.push_back({"deviation L < 1", true, L});
  c.hypotheses.push_back({"stated condition 2^p L < 1", budget < 1.0, budget});
  apply_update(&c, budget);
  return c;
}

certificate certify_rect_convolution(const generator& g0,
                                     const perturbation_set& y,
                                     const exponent& p, const frame_bounds& a,
                                     const quadrature_spec& spec) {
  if (g0.dimension() != 1) {
    throw config_error("convolution certificate is one-dimensional");
  }
  if (g0.support().unbounded) {
    throw unbounded_support("convolution certificate: factor must be integrable"
                            " with compact support");
  }
  const double L = deviation_of(y);
  const frame_bounds base = a.as(bounds_convention::unsquared);
  certificate c = make_base(theorem_id::rect_conv, p, L, base);

  const double mass = lp_norm(g0, exponent(1.0), spec);
  const double budget = std::pow(2.0, p.p()) * L * std::pow(mass, p.p());

  // Sufficient (not necessary) base-system condition from the transform;
  // informational because the supplied bounds already witness the base
  // system. Spline factors fail it at nonzero integers yet are fine.
  double min_abs = std::numeric_limits<double>::infinity();
  for (int i = -512; i <= 512; ++i) {
    const double xi = static_cast<double>(i) / 64.0;
    min_abs = std::min(min_abs, std::abs(transform(g0, xi)));
  }
  c.info_checks.push_back(
      {"factor transform nonvanishing on probe grid", min_abs > 1e-9, min_abs});

  c.hypotheses.push_back({"base bounds supplied for rect * g0", true, base.lower()});
  c.hypotheses.push_back({"stated condition 2^p L ||g0||_1^p < A",
                          budget < base.lower(), budget});
  apply_update(&c, budget);
  return c;
}

certificate certify_bspline(int order, const perturbation_set& y,
                            const exponent& p, const frame_bounds& ap_m) {
  if (order < 1) throw config_error("spline certificate needs order >= 1");
  if (y.grid().dimension != 1) {
    throw config_error("spline certificate is one-dimensional");
  }
  const double L = deviation_of(y);
  const frame_bounds base = ap_m.as(bounds_convention::unsquared);
  certificate c = make_base(theorem_id::bspline, p, L, base);

  // ||beta_{m-1}||_1 = 1, so the convolution budget collapses to 2^p L.
  const double budget = std::pow(2.0, p.p()) * L;
  const double threshold = std::pow(2.0, -p.p()) * ap_m.lower();
  c.hypotheses.push_back({"spline order m >= 1", true, static_cast<double>(order)});
  c.hypotheses.push_back(
      {"stated condition L < 2^-p A_p(m) [" + to_string(ap_m.convention()) +
           " constant " + std::to_string(ap_m.lower()) + "]",
       L < threshold, threshold});
  apply_update(&c, budget);
  return c;
}

certificate certify_step(const generator& g, const perturbation_set& y,
                         const exponent& p, const frame_bounds& a) {
  if (g.kind() != generator_kind::step) {
    throw config_error("step certificate needs a step generator");
  }
  const dual_exponent dual = p.dual();
  if (!dual.finite) {
    throw dual_exponent_infinite(
        "step certificate: p' = inf at p = 1; the sup-norm variant "
        "||g||_inf = max|s_j| is not covered by the stated result");
  }
  if (g.j_radius() < 1) {
    throw config_error("step certificate needs J >= 1");
  }
  const double L = deviation_of(y);
  if (L >= 1.0) {
    throw deviation_too_large("step certificate requires L < 1");
  }
  const frame_bounds base = a.as(bounds_convention::unsquared);
  certificate c = make_base(theorem_id::step, p, L, base);

  double dual_power_sum = 0.0;  // sum |s_j|^{p'} = ||g||_{p'}^{p'}
  for (double s : g.coeffs()) dual_power_sum += std::pow(std::abs(s), dual.value);
  const double dual_norm_pow_p = std::pow(dual_power_sum, p.p() / dual.value);
  const double budget =
      std::pow(2.0, p.p()) * L * g.j_radius() * dual_norm_pow_p;

  c.hypotheses.push_back({"deviation L < 1", true, L});
  c.hypotheses.push_back({"stated condition 2^p L J ||g||_p'^p < A",
                          budget < base.lower(), budget});
  apply_update(&c, budget);
  c.notes = "conclusion read as p-Riesz basis";
  return c;
}

certificate certify_amalgam_kadec(const generator& g, const perturbation_set& y,
                                  const exponential_bounds& expb,
                                  const amalgam_sums_result& amalgam) {
  if (!(expb.a1 > 0.0) || !(expb.b1 >= expb.a1)) {
    throw non_positive_bounds("exponential bounds require 0 < A1 <= B1");
  }
  if (!(amalgam.lower_c > 0.0)) {
    throw amalgam_degenerate(
        "amalgam lower sum c <= 0 at the working resolution for " +
        g.describe());
  }
  const double L = y.l2_deviation();
  const frame_bounds squared(expb.a1 * amalgam.lower_c,
                             expb.b1 * amalgam.upper_big_c,
                             bounds_convention::squared, "amalgam");
  certificate c = make_base(theorem_id::amalgam_kadec, exponent(2.0), L,
                            squared.as(bounds_convention::unsquared));

  const kadec_result kadec = kadec_check(y);
  const bool evidence = kadec.pass || expb.provenance == "user";
  c.hypotheses.push_back(
      {"amalgam lower sum c > 0", amalgam.lower_c > 0.0, amalgam.lower_c});
  c.hypotheses.push_back({"amalgam upper sum C finite",
                          std::isfinite(amalgam.upper_big_c),
                          amalgam.upper_big_c});
  c.hypotheses.push_back(
      {"exponential basis evidence (linf < 1/4 or user bounds)", evidence,
       y.linf_deviation()});
  c.info_checks.push_back({"quarter-criterion margin", kadec.pass, kadec.margin});

  // No perturbation budget on this route; the bounds come out directly.
  apply_update(&c, 0.0);
  if (c.pass) {
    c.updated = squared;
  } else {
    c.updated.reset();
  }
  c.notes = "bounds (A1 c, B1 C) in the squared convention; cell offset " +
            std::to_string(amalgam.cell_offset);
  return c;
}

per_index_radii compute_per_index_radii(const generator& g, const exponent& p,
                                        const frame_bounds& a,
                                        const std::vector<double>& weights,
                                        const quadrature_spec& spec) {
  if (p.p() == 1.0) {
    throw exponent_out_of_range("per-index radii need 1 < p < inf");
  }
  if (!g.in_w1p()) {
    throw not_sobolev("per-index radii need a W^{1,p} generator");
  }
  if (weights.empty()) throw config_error("weights must be non-empty");
  for (double w : weights) {
    if (!(w > 0.0)) throw config_error("weights must be positive");
  }
  const double dual_p = p.dual().value;
  double dual_sum = 0.0;
  for (double w : weights) dual_sum += std::pow(w, dual_p);
  const double weight_norm = std::pow(dual_sum, 1.0 / dual_p);

  double grad_norm = 0.0;
  if (g.dimension() == 1) {
    grad_norm = grad_lp_norm(g, p, 0, spec);
  } else {
    // upper bound: || |grad g|_2 ||_p <= sum_j ||d_j g||_p
    for (int axis = 0; axis < g.dimension(); ++axis) {
      grad_norm += grad_lp_norm(g, p, axis, spec);
    }
  }
  if (!(grad_norm > 0.0)) {
    throw numerical_breakdown("gradient norm vanished");
  }

  const frame_bounds base = a.as(bounds_convention::unsquared);
  constexpr double safety = 1.0 - 1e-6;  // keeps the strict inequality checkable
  per_index_radii out;
  out.bound_a = base.lower();
  out.scale_t = safety * base.lower() / (grad_norm * weight_norm);
  out.radii.reserve(weights.size());
  for (double w : weights) out.radii.push_back(out.scale_t * w);
  out.budget_check = grad_norm * out.scale_t * weight_norm;
  return out;
}

nlohmann::json to_json(const certificate& c) {
  nlohmann::json hyp = nlohmann::json::array();
  for (const auto& h : c.hypotheses) {
    hyp.push_back({{"name", h.name}, {"holds", h.holds}, {"value", h.value}});
  }
  nlohmann::json info = nlohmann::json::array();
  for (const auto& h : c.info_checks) {
    info.push_back({{"name", h.name}, {"holds", h.holds}, {"value", h.value}});
  }
  nlohmann::json j{{"theorem", to_string(c.id)},
                   {"p", c.p},
                   {"deviation_L", c.deviation},
                   {"hypotheses", std::move(hyp)},
                   {"info_checks", std::move(info)},
                   {"budget_Cp", c.budget_cp},
                   {"rho", c.rho},
                   {"literal_paper_margin", c.literal_paper_margin},
                   {"corrected_margin", c.corrected_margin},
                   {"verdict", c.pass ? "pass" : "fail"},
                   {"base_bounds", to_json(c.base)}};
  if (c.updated.has_value()) j["updated_bounds"] = to_json(*c.updated);
  if (!c.notes.empty()) j["notes"] = c.notes;
  return j;
}

nlohmann::json to_json(const per_index_radii& r) {
  return nlohmann::json{{"radii", r.radii},
                        {"scale_t", r.scale_t},
                        {"budget_check", r.budget_check},
                        {"bound_A", r.bound_a}};
}

}  // namespace qsis
