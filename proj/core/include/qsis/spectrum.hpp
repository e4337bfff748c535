#pragma once

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "qsis/frame_bounds.hpp"
#include "qsis/generator.hpp"

namespace qsis {

/// inf/sup sums of |g^(x+k)|^2 over unit-cell translates. `cell_offset` is
/// the lower corner of the cell per axis: 0 gives [0,1)^d, -0.5 gives the
/// centered cell. The choice matters (an indicator transform straddles two
/// cells of one offset and one of the other), so it is a parameter.
struct amalgam_sums_result {
  double lower_c = 0.0;
  double upper_big_c = 0.0;
  double cell_offset = 0.0;
  int resolution = 0;
  int tail_k = 0;
  std::string note;  // grid-approximation caveat
};

/// Sampled torus periodization G(y) = sum_m |g^(y+m)|^2 on the uniform grid
/// of [-1/2, 1/2)^d with `resolution` points per axis.
struct spectrum_profile {
  int dimension = 1;
  int resolution = 0;
  int tail_k = 0;
  double tail_bound = 0.0;       // bound on the discarded |m| > tail_k mass
  bool tail_bound_rigorous = true;
  std::vector<double> values;    // row-major over the grid, size resolution^d
  double g_min = 0.0;
  double g_max = 0.0;
  std::optional<amalgam_sums_result> amalgam;
  std::string note;
};

/// Transform value for generators without a closed form (tabulated): the
/// piecewise-linear interpolant is integrated against e^{+2 pi i x xi}
/// segment by segment, in closed form.
std::complex<double> transform(const generator& g, double xi);

spectrum_profile periodization(const generator& g, int resolution, int tail_k);

/// Squared-convention bounds (g_min - tail, g_max + tail) of the integer
/// lattice system at p = 2. Throws degenerate_spectrum when the lower bound
/// is non-positive at this resolution (not a Riesz basis as far as this
/// resolution can tell).
frame_bounds riesz_bounds_p2(const spectrum_profile& profile);

amalgam_sums_result amalgam_sums(const generator& g, int resolution, int tail_k,
                                 double cell_offset = 0.0);

/// Comparison constant L^2 (1+2L)^{2d} ||grad g||^2_{W(Linf, l1)} from the
/// relatively-separated-set route, for side-by-side tables against the
/// rectangle budget. p = 2 only; one-dimensional generators.
double fmr_constant(const generator& g, double deviation);

nlohmann::json to_json(const spectrum_profile& p);
nlohmann::json to_json(const amalgam_sums_result& a);

}  // namespace qsis
