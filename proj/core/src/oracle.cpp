#include "qsis/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "qsis/errors.hpp"
#include "qsis/parallel.hpp"
#include "qsis/rng.hpp"

namespace qsis {

namespace {

constexpr double kPi = 3.14159265358979323846;

// 1-D synthesis helper: nodes in index order, support window, breakpoints.
struct synth_context {
  const generator* g;
  std::vector<double> nodes;  // nodes[flat] = y_k for k = flat - K
  int radius = 0;
  double support_lo = 0.0;
  double support_hi = 0.0;
  double slack = 0.0;  // max |y_k - k|
  bool unbounded = false;
};

synth_context make_context(const generator& g, const perturbation_set& y) {
  if (g.dimension() != 1 || y.grid().dimension != 1) {
    throw config_error("synthesis quadrature is one-dimensional");
  }
  synth_context ctx;
  ctx.g = &g;
  ctx.radius = y.grid().radius;
  ctx.nodes.resize(y.grid().size());
  for (std::size_t flat = 0; flat < y.grid().size(); ++flat) {
    ctx.nodes[flat] = y.point(flat)[0];
  }
  ctx.slack = y.linf_deviation() + 1e-9;
  if (g.support().unbounded) {
    ctx.unbounded = true;
  } else {
    ctx.support_lo = g.support().intervals[0].first;
    ctx.support_hi = g.support().intervals[0].second;
  }
  return ctx;
}

std::complex<double> context_eval(const synth_context& ctx,
                                  const std::vector<std::complex<double>>& a,
                                  double x) {
  std::complex<double> acc = 0.0;
  if (ctx.unbounded) {
    for (std::size_t flat = 0; flat < ctx.nodes.size(); ++flat) {
      acc += a[flat] * ctx.g->eval(x - ctx.nodes[flat]);
    }
    return acc;
  }
  const int k_lo = std::max(
      -ctx.radius,
      static_cast<int>(std::ceil(x - ctx.support_hi - ctx.slack)));
  const int k_hi = std::min(
      ctx.radius, static_cast<int>(std::floor(x - ctx.support_lo + ctx.slack)));
  for (int k = k_lo; k <= k_hi; ++k) {
    const std::size_t flat = static_cast<std::size_t>(k + ctx.radius);
    const double v = ctx.g->eval(x - ctx.nodes[flat]);
    if (v != 0.0) acc += a[flat] * v;
  }
  return acc;
}

std::vector<double> context_segments(const synth_context& ctx,
                                     const quadrature_spec& spec,
                                     const std::vector<double>* extra_nodes) {
  double lo, hi;
  std::vector<double> pts;
  auto add_family = [&](const std::vector<double>& nodes) {
    if (ctx.unbounded) return;
    const auto knots = ctx.g->knots();
    for (double n : nodes) {
      for (double k : knots) pts.push_back(n + k);
    }
  };
  if (ctx.unbounded) {
    if (!(spec.truncation_radius > 0.0)) {
      throw unbounded_support("synthesis quadrature: no truncation radius");
    }
    const auto [mn, mx] = std::minmax_element(ctx.nodes.begin(), ctx.nodes.end());
    lo = *mn - spec.truncation_radius;
    hi = *mx + spec.truncation_radius;
    for (double k = std::ceil(lo); k <= hi; k += 1.0) pts.push_back(k);
  } else {
    add_family(ctx.nodes);
    if (extra_nodes != nullptr) add_family(*extra_nodes);
    const auto [mn, mx] = std::minmax_element(pts.begin(), pts.end());
    lo = *mn;
    hi = *mx;
  }
  return make_segments(lo, hi, pts);
}

// deterministic probes: single spike at the center, alternating signs, flat
std::vector<coefficient_vector> probe_vectors(const translation_grid& grid,
                                              double p) {
  const std::size_t n = grid.size();
  std::vector<coefficient_vector> probes;

  coefficient_vector spike;
  spike.p = p;
  spike.values.assign(n, 0.0);
  const std::vector<int> origin(grid.dimension, 0);
  spike.values[grid.flatten(origin)] = 1.0;
  spike.normalized = true;
  probes.push_back(std::move(spike));

  coefficient_vector alternating;
  alternating.p = p;
  alternating.values.resize(n);
  for (std::size_t flat = 0; flat < n; ++flat) {
    const auto idx = grid.index_of(flat);
    long parity = 0;
    for (int c : idx) parity += std::abs(c);
    alternating.values[flat] = (parity % 2 == 0) ? 1.0 : -1.0;
  }
  probes.push_back(normalize_lp(std::move(alternating)));

  coefficient_vector flat_ones;
  flat_ones.p = p;
  flat_ones.values.assign(n, 1.0);
  probes.push_back(normalize_lp(std::move(flat_ones)));
  return probes;
}

double rect_overlap(double t) { return std::max(0.0, 1.0 - std::abs(t)); }

double correlation_1d(const generator& g, double t, const quadrature_spec& spec) {
  switch (g.kind()) {
    case generator_kind::rect:
      return rect_overlap(t);
    case generator_kind::bspline: {
      // even factors: correlation = (2m+1)-order spline at the lag
      return generator::bspline(2 * g.order() + 1).eval(t);
    }
    case generator_kind::sinc:
      return sinc_value(t);
    case generator_kind::step: {
      const int J = g.j_radius();
      double acc = 0.0;
      for (int j = -J; j <= J; ++j) {
        for (int j2 = -J; j2 <= J; ++j2) {
          acc += g.coeffs()[j + J] * g.coeffs()[j2 + J] *
                 rect_overlap(t + j - j2);
        }
      }
      return acc;
    }
    case generator_kind::tabulated: {
      if (g.support().unbounded) {
        throw unbounded_support("gram quadrature needs compact support");
      }
      std::vector<double> pts = g.knots();
      for (double k : g.knots()) pts.push_back(k + t);
      const double lo = g.support().intervals[0].first;
      const double hi = g.support().intervals[0].second;
      const auto segments = make_segments(lo, hi, pts);
      return integrate_segments(
          [&](double x) { return g.eval(x) * g.eval(x - t); }, segments, 3,
          std::max(1.0, spec.points_per_unit / 64.0));
    }
    case generator_kind::tensor_product:
      throw config_error("correlation is per-axis; handled by caller");
  }
  return 0.0;
}

}  // namespace

coefficient_vector normalize_lp(coefficient_vector a) {
  double power = 0.0;
  for (const auto& v : a.values) power += std::pow(std::abs(v), a.p);
  if (!(power > 0.0)) throw config_error("cannot normalize a zero vector");
  const double scale = std::pow(power, -1.0 / a.p);
  for (auto& v : a.values) v *= scale;
  a.normalized = true;
  return a;
}

coefficient_vector random_coefficients(const translation_grid& grid, double p,
                                       std::uint64_t seed, std::uint64_t index) {
  rng r = rng::derived(seed, index);
  coefficient_vector a;
  a.p = p;
  a.values.resize(grid.size());
  for (auto& v : a.values) v = r.gaussian_complex();
  return normalize_lp(std::move(a));
}

double synthesize_eval_real(const generator& g, const perturbation_set& y,
                            const std::vector<double>& a, double x) {
  const std::vector<std::complex<double>> c(a.begin(), a.end());
  const synth_context ctx = make_context(g, y);
  return context_eval(ctx, c, x).real();
}

std::complex<double> synthesize_eval(const generator& g,
                                     const perturbation_set& y,
                                     const coefficient_vector& a, double x) {
  const synth_context ctx = make_context(g, y);
  if (a.values.size() != y.grid().size()) {
    throw config_error("coefficient vector does not match the grid");
  }
  return context_eval(ctx, a.values, x);
}

double synthesis_norm_power(const generator& g, const perturbation_set& y,
                            const coefficient_vector& a, double p,
                            const quadrature_spec& spec) {
  if (spec.points_per_unit < 8) {
    throw grid_too_coarse("synthesis quadrature: points_per_unit < 8");
  }
  const synth_context ctx = make_context(g, y);
  if (a.values.size() != y.grid().size()) {
    throw config_error("coefficient vector does not match the grid");
  }
  const auto segments = context_segments(ctx, spec, nullptr);
  return lp_power_complex(
      [&](double x) { return context_eval(ctx, a.values, x); }, p, segments,
      spec, g.piece_degree());
}

Eigen::MatrixXd gram_matrix(const generator& g, const perturbation_set& y,
                            const quadrature_spec& spec) {
  const std::size_t n = y.grid().size();
  const int d = y.grid().dimension;
  if (g.dimension() != d) {
    throw config_error("generator/perturbation dimension mismatch");
  }
  Eigen::MatrixXd gram(n, n);
  parallel_for(n, [&](std::size_t i) {
    for (std::size_t j = 0; j <= i; ++j) {
      double value = 1.0;
      if (g.kind() == generator_kind::tensor_product) {
        for (int a = 0; a < d; ++a) {
          value *= correlation_1d(g.factors()[a],
                                  y.point(i)[a] - y.point(j)[a], spec);
        }
      } else {
        value = correlation_1d(g, y.point(i)[0] - y.point(j)[0], spec);
      }
      gram(i, j) = value;
    }
  });
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) gram(i, j) = gram(j, i);
  }
  return gram;
}

std::pair<double, double> empirical_bounds_p2(const Eigen::MatrixXd& gram) {
  if (gram.rows() != gram.cols()) {
    throw numerical_breakdown("gram section is not square");
  }
  const double scale = 1.0 + gram.cwiseAbs().maxCoeff();
  if ((gram - gram.transpose()).cwiseAbs().maxCoeff() > 1e-10 * scale) {
    throw numerical_breakdown("gram section is not symmetric");
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(gram,
                                                        Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw numerical_breakdown("eigenvalue iteration failed");
  }
  const auto& ev = solver.eigenvalues();
  return {ev(0), ev(ev.size() - 1)};
}

ratio_range empirical_ratio_lp(const generator& g, const perturbation_set& y,
                               const exponent& p, int samples,
                               std::uint64_t seed, const quadrature_spec& spec,
                               std::vector<double>* per_sample) {
  if (samples < 1) throw config_error("empirical_ratio_lp: samples < 1");
  auto probes = probe_vectors(y.grid(), p.p());
  const std::size_t total = probes.size() + static_cast<std::size_t>(samples);
  std::vector<double> ratios(total);
  parallel_for(total, [&](std::size_t i) {
    const coefficient_vector a =
        i < probes.size()
            ? probes[i]
            : random_coefficients(y.grid(), p.p(), seed, i - probes.size());
    const double power = synthesis_norm_power(g, y, a, p.p(), spec);
    ratios[i] = std::pow(power, 1.0 / p.p());
  });
  ratio_range out{std::numeric_limits<double>::infinity(), 0.0};
  for (double r : ratios) {
    out.min_ratio = std::min(out.min_ratio, r);
    out.max_ratio = std::max(out.max_ratio, r);
  }
  if (per_sample != nullptr) *per_sample = std::move(ratios);
  return out;
}

double perturbation_power(const generator& g, const perturbation_set& y,
                          const exponent& p, int samples, std::uint64_t seed,
                          const quadrature_spec& spec) {
  if (samples < 1) throw config_error("perturbation_power: samples < 1");
  const perturbation_set lattice = identity_set(y.grid());
  const synth_context ctx_x = make_context(g, lattice);
  const synth_context ctx_y = make_context(g, y);
  std::vector<double> lattice_nodes(ctx_x.nodes);
  const auto segments = context_segments(ctx_y, spec, &lattice_nodes);

  auto probes = probe_vectors(y.grid(), p.p());
  const std::size_t total = probes.size() + static_cast<std::size_t>(samples);
  std::vector<double> powers(total);
  parallel_for(total, [&](std::size_t i) {
    const coefficient_vector a =
        i < probes.size()
            ? probes[i]
            : random_coefficients(y.grid(), p.p(), seed, i - probes.size());
    powers[i] = lp_power_complex(
        [&](double x) {
          return context_eval(ctx_x, a.values, x) -
                 context_eval(ctx_y, a.values, x);
        },
        p.p(), segments, spec, g.piece_degree());
  });
  double sup = 0.0;
  for (double v : powers) sup = std::max(sup, v);
  return sup;
}

std::pair<double, double> exponential_gram_bounds(const perturbation_set& y) {
  const std::size_t n = y.grid().size();
  const int d = y.grid().dimension;
  Eigen::MatrixXcd gram(n, n);
  parallel_for(n, [&](std::size_t i) {
    for (std::size_t j = 0; j <= i; ++j) {
      std::complex<double> value = 1.0;
      for (int a = 0; a < d; ++a) {
        const double t = y.point(i)[a] - y.point(j)[a];
        // integral over [0,1) of e^{2 pi i t x}
        value *= std::complex<double>(std::cos(kPi * t), std::sin(kPi * t)) *
                 sinc_value(t);
      }
      gram(i, j) = value;
      gram(j, i) = std::conj(value);
    }
  });
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(gram,
                                                         Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw numerical_breakdown("exponential gram eigenvalue iteration failed");
  }
  const auto& ev = solver.eigenvalues();
  return {ev(0), ev(ev.size() - 1)};
}

double problem1_residual(double delta, int grid_k, bool perturbed) {
  if (!(delta >= 0.0 && delta < 1.0)) {
    throw config_error("problem1 residual needs delta in [0, 1)");
  }
  if (grid_k < 1) throw config_error("problem1 residual needs K >= 1");
  if (delta == 0.0) return 0.0;  // the gap has measure zero

  const translation_grid grid{1, grid_k};
  const std::vector<int> origin{0};
  const perturbation_set y = perturbed
                                 ? single_node_displacement(grid, origin, delta)
                                 : identity_set(grid);
  const generator g = generator::rect();
  const Eigen::MatrixXd gram = gram_matrix(g, y);

  // target: indicator of [-1/2, -1/2 + delta]
  const double t_lo = -0.5;
  const double t_hi = -0.5 + delta;
  const std::size_t n = y.grid().size();
  Eigen::VectorXd rhs(n);
  for (std::size_t flat = 0; flat < n; ++flat) {
    const double c = y.point(flat)[0];
    rhs(flat) = std::max(0.0, std::min(t_hi, c + 0.5) - std::max(t_lo, c - 0.5));
  }

  Eigen::LLT<Eigen::MatrixXd> llt(gram);
  if (llt.info() != Eigen::Success) {
    throw singular_gram("problem1 residual: gram section is singular");
  }
  const Eigen::VectorXd coef = llt.solve(rhs);
  const double target_power = delta;  // squared norm of the indicator
  const double projected = rhs.dot(coef);
  return std::sqrt(std::max(0.0, target_power - projected));
}

nlohmann::json to_json(const oracle_report& r) {
  nlohmann::json j{{"grid_K", r.grid_k},
                   {"dimension", r.dimension},
                   {"quadrature",
                    {{"points_per_unit", r.quad.points_per_unit},
                     {"truncation_radius", r.quad.truncation_radius},
                     {"gl_order", r.quad.gl_order}}},
                   {"sample_count", r.sample_count},
                   {"min_ratio", r.min_ratio},
                   {"max_ratio", r.max_ratio},
                   {"perturbation_power_max", r.perturbation_power_max},
                   {"seed", r.seed},
                   {"notes", r.notes}};
  if (r.gram_eig_min.has_value()) j["gram_eig_min"] = *r.gram_eig_min;
  if (r.gram_eig_max.has_value()) j["gram_eig_max"] = *r.gram_eig_max;
  if (!r.per_sample_ratios.empty()) j["per_sample_ratios"] = r.per_sample_ratios;
  return j;
}

}  // namespace qsis
