#include "qsis/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "qsis/errors.hpp"
#include "qsis/parallel.hpp"

namespace qsis {

namespace {

constexpr double kPi = 3.14159265358979323846;

std::complex<double> cis(double phase) {
  return {std::cos(phase), std::sin(phase)};
}

// Transform of the piecewise-linear interpolant, one closed-form term per
// sample segment.
std::complex<double> tabulated_transform(const generator& g, double xi) {
  const double omega = 2.0 * kPi * xi;
  const double h = g.sample_step();
  std::complex<double> total = 0.0;
  if (std::abs(omega) * h < 1e-2) {
    // near-zero frequency: the integrand is almost polynomial; a short GL
    // rule per segment is cheaper and stable
    const gl_rule& rule = gauss_legendre(4);
    for (std::size_t i = 0; i + 1 < g.samples().size(); ++i) {
      const double x0 = g.sample_lo() + h * static_cast<double>(i);
      const double mid = x0 + 0.5 * h;
      std::complex<double> acc = 0.0;
      for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
        const double x = mid + 0.5 * h * rule.nodes[k];
        acc += rule.weights[k] * g.eval(x) * cis(omega * x);
      }
      total += acc * (0.5 * h);
    }
    return total;
  }
  const std::complex<double> iw(0.0, omega);
  const std::complex<double> eh = cis(omega * h);
  for (std::size_t i = 0; i + 1 < g.samples().size(); ++i) {
    const double x0 = g.sample_lo() + h * static_cast<double>(i);
    const double v0 = g.samples()[i];
    const double slope = (g.samples()[i + 1] - v0) / h;
    const std::complex<double> base = (eh - 1.0) / iw;
    const std::complex<double> ramp = h * eh / iw - base / iw;
    total += cis(omega * x0) * (v0 * base + slope * ramp);
  }
  return total;
}

struct decay_model {
  bool band_limited = false;
  double coefficient = 1.0;  // |g^(xi)| <= coefficient / (pi |xi|)^order
  int order = 1;
};

decay_model transform_decay(const generator& g) {
  decay_model d;
  switch (g.kind()) {
    case generator_kind::rect:
      d = {false, 1.0, 1};
      break;
    case generator_kind::bspline:
      d = {false, 1.0, g.order() + 1};
      break;
    case generator_kind::sinc:
      d = {true, 0.0, 1};
      break;
    case generator_kind::step: {
      double mass = 0.0;
      for (double s : g.coeffs()) mass += std::abs(s);
      d = {false, mass, 1};
      break;
    }
    case generator_kind::tabulated: {
      // integration by parts: |g^| <= TV(g) / (2 pi |xi|), jumps included
      double tv = std::abs(g.samples().front()) + std::abs(g.samples().back());
      for (std::size_t i = 0; i + 1 < g.samples().size(); ++i) {
        tv += std::abs(g.samples()[i + 1] - g.samples()[i]);
      }
      d = {false, 0.5 * tv, 1};
      break;
    }
    case generator_kind::tensor_product:
      throw config_error("decay model is per-axis; query factors");
  }
  return d;
}

// sum_{|m| > K} |g^(y+m)|^2 over one axis, for y in [-1/2, 1/2).
double axis_tail_bound(const decay_model& d, int tail_k) {
  if (d.band_limited) return 0.0;
  const double s = 2.0 * d.order;
  const double k_eff = tail_k - 0.5;
  return 2.0 * d.coefficient * d.coefficient * std::pow(kPi, -s) *
         std::pow(k_eff, 1.0 - s) / (s - 1.0);
}

std::complex<double> axis_transform(const generator& g, double xi) {
  if (g.kind() == generator_kind::tabulated) return tabulated_transform(g, xi);
  return g.fourier(xi);
}

// Truncated periodization on one axis at a single point.
double axis_periodization_value(const generator& g, double y, int tail_k) {
  double acc = 0.0;
  for (int m = -tail_k; m <= tail_k; ++m) {
    const std::complex<double> v = axis_transform(g, y + m);
    acc += v.real() * v.real() + v.imag() * v.imag();
  }
  return acc;
}

struct axis_profile {
  std::vector<double> values;
  double tail = 0.0;
};

axis_profile compute_axis_profile(const generator& g, int resolution, int tail_k) {
  axis_profile prof;
  prof.values.resize(resolution);
  prof.tail = axis_tail_bound(transform_decay(g), tail_k);
  parallel_for(resolution, [&](std::size_t i) {
    const double y = -0.5 + static_cast<double>(i) / resolution;
    prof.values[i] = axis_periodization_value(g, y, tail_k);
  });
  return prof;
}

}  // namespace

std::complex<double> transform(const generator& g, double xi) {
  return axis_transform(g, xi);
}

spectrum_profile periodization(const generator& g, int resolution, int tail_k) {
  if (resolution < 16) throw config_error("periodization: resolution must be >= 16");
  if (tail_k < 8) throw config_error("periodization: tail_k must be >= 8");

  spectrum_profile profile;
  profile.dimension = g.dimension();
  profile.resolution = resolution;
  profile.tail_k = tail_k;

  if (g.kind() != generator_kind::tensor_product) {
    const axis_profile ap = compute_axis_profile(g, resolution, tail_k);
    profile.values = ap.values;
    profile.tail_bound = ap.tail;
  } else {
    double cells = 1.0;
    for (int a = 0; a < g.dimension(); ++a) cells *= resolution;
    if (cells > static_cast<double>(1 << 22)) {
      throw config_error("periodization: grid too large; lower the resolution");
    }
    std::vector<axis_profile> axes;
    axes.reserve(g.factors().size());
    for (const auto& f : g.factors()) {
      axes.push_back(compute_axis_profile(f, resolution, tail_k));
    }
    const auto n = static_cast<std::size_t>(cells);
    profile.values.resize(n);
    double worst_gap = 0.0;
    for (std::size_t flat = 0; flat < n; ++flat) {
      std::size_t rem = flat;
      double lo = 1.0, hi = 1.0;
      for (std::size_t a = axes.size(); a-- > 0;) {
        const std::size_t idx = rem % resolution;
        rem /= resolution;
        lo *= axes[a].values[idx];
        hi *= axes[a].values[idx] + axes[a].tail;
      }
      profile.values[flat] = lo;
      worst_gap = std::max(worst_gap, hi - lo);
    }
    profile.tail_bound = worst_gap;
  }

  const auto [mn, mx] =
      std::minmax_element(profile.values.begin(), profile.values.end());
  profile.g_min = *mn;
  profile.g_max = *mx;
  return profile;
}

frame_bounds riesz_bounds_p2(const spectrum_profile& profile) {
  if (!std::isfinite(profile.tail_bound)) {
    throw degenerate_spectrum("tail bound is not finite");
  }
  const double lower = profile.g_min - profile.tail_bound;
  const double upper = profile.g_max + profile.tail_bound;
  if (!(lower > 0.0)) {
    throw degenerate_spectrum(
        "not a Riesz basis at this resolution: lower spectral bound <= 0");
  }
  return frame_bounds(lower, upper, bounds_convention::squared, "spectrum");
}

amalgam_sums_result amalgam_sums(const generator& g, int resolution, int tail_k,
                                 double cell_offset) {
  if (resolution < 16) throw config_error("amalgam_sums: resolution must be >= 16");
  if (tail_k < 8) throw config_error("amalgam_sums: tail_k must be >= 8");

  amalgam_sums_result out;
  out.cell_offset = cell_offset;
  out.resolution = resolution;
  out.tail_k = tail_k;

  if (g.kind() == generator_kind::tensor_product) {
    // |g^|^2 separates; inf/sup of a non-negative product over a product
    // grid factor, and so do the k-sums.
    out.lower_c = 1.0;
    out.upper_big_c = 1.0;
    for (const auto& f : g.factors()) {
      const auto part = amalgam_sums(f, resolution, tail_k, cell_offset);
      out.lower_c *= part.lower_c;
      out.upper_big_c *= part.upper_big_c;
    }
    out.note = "per-axis grid extrema of a separable transform";
    return out;
  }

  // Continuous transforms: the cell infimum equals the minimum over the cell
  // closure, so the grid includes both endpoints (and lands exactly on the
  // integer zeros of sinc-type transforms). A band-limited indicator
  // transform is discontinuous and is sampled on the literal half-open grid.
  const bool closed_grid = !g.band_limited();
  const int grid_points = closed_grid ? resolution + 1 : resolution;

  std::vector<double> cell_min(2 * tail_k + 1);
  std::vector<double> cell_max(2 * tail_k + 1);
  parallel_for(cell_min.size(), [&](std::size_t ci) {
    const int k = static_cast<int>(ci) - tail_k;
    double mn = std::numeric_limits<double>::infinity();
    double mx = 0.0;
    for (int j = 0; j < grid_points; ++j) {
      const double x = cell_offset + static_cast<double>(j) / resolution;
      const std::complex<double> v = axis_transform(g, x + k);
      const double m2 = v.real() * v.real() + v.imag() * v.imag();
      mn = std::min(mn, m2);
      mx = std::max(mx, m2);
    }
    cell_min[ci] = mn;
    cell_max[ci] = mx;
  });
  // fixed-order reductions
  double c = 0.0, big = 0.0;
  for (std::size_t i = 0; i < cell_min.size(); ++i) {
    c += cell_min[i];
    big += cell_max[i];
  }
  out.lower_c = c;
  out.upper_big_c = big;
  out.note = closed_grid ? "cell extrema sampled on the closed-cell grid"
                         : "cell extrema sampled on the half-open grid";
  return out;
}

double fmr_constant(const generator& g, double deviation) {
  if (!g.in_w1p()) {
    throw not_sobolev("fmr_constant: generator is not W^{1,p}");
  }
  if (g.dimension() != 1) {
    throw config_error("fmr_constant implemented for d = 1");
  }
  if (g.support().unbounded) {
    throw unbounded_support("fmr_constant: amalgam sum needs compact support");
  }
  if (deviation < 0.0) throw config_error("fmr_constant: L < 0");

  const double lo = g.support().intervals[0].first;
  const double hi = g.support().intervals[0].second;
  const auto knots = g.knots();
  const int samples_per_cell = 256;

  double amalgam = 0.0;
  for (int n = static_cast<int>(std::floor(lo)) - 1;
       n <= static_cast<int>(std::ceil(hi)); ++n) {
    double sup = 0.0;
    for (int j = 0; j < samples_per_cell; ++j) {
      const double x = n + (j + 0.5) / samples_per_cell;
      if (x < lo || x > hi) continue;
      sup = std::max(sup, std::abs(g.derivative_eval(x)));
    }
    for (double k : knots) {
      for (double x : {k - 1e-9, k + 1e-9}) {
        if (x < n || x >= n + 1.0 || x < lo || x > hi) continue;
        sup = std::max(sup, std::abs(g.derivative_eval(x)));
      }
    }
    amalgam += sup;
  }
  const double one_plus = 1.0 + 2.0 * deviation;
  return deviation * deviation * one_plus * one_plus * amalgam * amalgam;
}

nlohmann::json to_json(const amalgam_sums_result& a) {
  return nlohmann::json{{"lower_c", a.lower_c},
                        {"upper_C", a.upper_big_c},
                        {"cell_offset", a.cell_offset},
                        {"resolution", a.resolution},
                        {"tail_k", a.tail_k},
                        {"note", a.note}};
}

nlohmann::json to_json(const spectrum_profile& p) {
  nlohmann::json j{{"dimension", p.dimension},
                   {"resolution", p.resolution},
                   {"tail_k", p.tail_k},
                   {"tail_bound", p.tail_bound},
                   {"tail_bound_rigorous", p.tail_bound_rigorous},
                   {"g_min", p.g_min},
                   {"g_max", p.g_max},
                   {"values", p.values},
                   {"convention", "squared"}};
  if (p.amalgam.has_value()) j["amalgam"] = to_json(*p.amalgam);
  if (!p.note.empty()) j["note"] = p.note;
  return j;
}

}  // namespace qsis
