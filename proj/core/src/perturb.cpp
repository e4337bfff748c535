#include "qsis/perturb.hpp"

#include <cmath>

#include "qsis/errors.hpp"
#include "qsis/rng.hpp"

namespace qsis {

std::size_t translation_grid::size() const {
  std::size_t n = 1;
  const std::size_t side = 2 * static_cast<std::size_t>(radius) + 1;
  for (int a = 0; a < dimension; ++a) n *= side;
  return n;
}

std::vector<int> translation_grid::index_of(std::size_t flat) const {
  const std::size_t side = 2 * static_cast<std::size_t>(radius) + 1;
  std::vector<int> idx(dimension);
  for (int a = dimension - 1; a >= 0; --a) {
    idx[a] = static_cast<int>(flat % side) - radius;
    flat /= side;
  }
  return idx;
}

std::size_t translation_grid::flatten(std::span<const int> index) const {
  if (static_cast<int>(index.size()) != dimension) {
    throw index_outside_grid("multi-index dimension mismatch");
  }
  const std::size_t side = 2 * static_cast<std::size_t>(radius) + 1;
  std::size_t flat = 0;
  for (int a = 0; a < dimension; ++a) {
    if (index[a] < -radius || index[a] > radius) {
      throw index_outside_grid("multi-index outside |k| <= K box");
    }
    flat = flat * side + static_cast<std::size_t>(index[a] + radius);
  }
  return flat;
}

perturbation_set perturbation_set::from_points(const translation_grid& grid,
                                               std::vector<double> points,
                                               std::optional<std::uint64_t> seed) {
  if (grid.radius < 1) throw config_error("translation grid radius must be >= 1");
  if (grid.dimension < 1) throw config_error("translation grid dimension must be >= 1");
  if (points.size() != grid.size() * static_cast<std::size_t>(grid.dimension)) {
    throw config_error("perturbation point array has wrong size");
  }
  perturbation_set y;
  y.grid_ = grid;
  y.points_ = std::move(points);
  y.seed_ = seed;
  // deviation caches from the stored points, nothing else
  double l2 = 0.0, linf = 0.0;
  for (std::size_t flat = 0; flat < grid.size(); ++flat) {
    const auto k = grid.index_of(flat);
    double s2 = 0.0, si = 0.0;
    for (int a = 0; a < grid.dimension; ++a) {
      const double u = y.points_[flat * grid.dimension + a] - k[a];
      s2 += u * u;
      si = std::max(si, std::abs(u));
    }
    l2 = std::max(l2, std::sqrt(s2));
    linf = std::max(linf, si);
  }
  y.l2_dev_ = l2;
  y.linf_dev_ = linf;
  return y;
}

std::span<const double> perturbation_set::point(std::size_t flat) const {
  return {points_.data() + flat * grid_.dimension,
          static_cast<std::size_t>(grid_.dimension)};
}

perturbation_set identity_set(const translation_grid& grid) {
  std::vector<double> pts(grid.size() * grid.dimension);
  for (std::size_t flat = 0; flat < grid.size(); ++flat) {
    const auto k = grid.index_of(flat);
    for (int a = 0; a < grid.dimension; ++a) {
      pts[flat * grid.dimension + a] = k[a];
    }
  }
  return perturbation_set::from_points(grid, std::move(pts));
}

perturbation_set jitter_uniform(const translation_grid& grid, double radius,
                                std::uint64_t seed) {
  if (radius < 0.0) throw config_error("jitter radius must be >= 0");
  std::vector<double> pts(grid.size() * grid.dimension);
  for (std::size_t flat = 0; flat < grid.size(); ++flat) {
    rng r = rng::derived(seed, flat);
    const auto k = grid.index_of(flat);
    for (int a = 0; a < grid.dimension; ++a) {
      pts[flat * grid.dimension + a] = k[a] + r.uniform(-radius, radius);
    }
  }
  return perturbation_set::from_points(grid, std::move(pts), seed);
}

perturbation_set jitter_adversarial(const translation_grid& grid, double radius,
                                    std::vector<double> direction) {
  if (radius < 0.0) throw config_error("jitter radius must be >= 0");
  if (static_cast<int>(direction.size()) != grid.dimension) {
    throw config_error("direction dimension mismatch");
  }
  double norm2 = 0.0;
  for (double d : direction) norm2 += d * d;
  if (std::abs(std::sqrt(norm2) - 1.0) > 1e-9) {
    throw config_error("direction must be a unit vector");
  }
  std::vector<double> pts(grid.size() * grid.dimension);
  for (std::size_t flat = 0; flat < grid.size(); ++flat) {
    const auto k = grid.index_of(flat);
    for (int a = 0; a < grid.dimension; ++a) {
      pts[flat * grid.dimension + a] = k[a] + radius * direction[a];
    }
  }
  return perturbation_set::from_points(grid, std::move(pts));
}

perturbation_set single_node_displacement(const translation_grid& grid,
                                          std::span<const int> index,
                                          double delta) {
  if (!std::isfinite(delta)) throw config_error("displacement must be finite");
  const std::size_t target = grid.flatten(index);  // throws if outside
  std::vector<double> pts(grid.size() * grid.dimension);
  for (std::size_t flat = 0; flat < grid.size(); ++flat) {
    const auto k = grid.index_of(flat);
    for (int a = 0; a < grid.dimension; ++a) {
      pts[flat * grid.dimension + a] = k[a];
    }
  }
  pts[target * grid.dimension] += delta;
  return perturbation_set::from_points(grid, std::move(pts));
}

double sup_deviation(const perturbation_set& y, deviation_norm norm) {
  return norm == deviation_norm::l2 ? y.l2_deviation() : y.linf_deviation();
}

kadec_result kadec_check(const perturbation_set& y) {
  const double dev = y.linf_deviation();
  return {dev < 0.25, 0.25 - dev};
}

perturbation_set perturbation_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("model")) {
    throw config_error("perturbation spec must be an object with a \"model\"");
  }
  translation_grid grid;
  grid.dimension = j.value("dimension", 1);
  grid.radius = j.value("grid_K", 16);

  const std::string model = j.at("model").get<std::string>();
  if (model == "uniform") {
    return jitter_uniform(grid, j.at("L").get<double>(),
                          j.value("seed", std::uint64_t{0}));
  }
  if (model == "adversarial") {
    std::vector<double> dir =
        j.contains("direction") ? j.at("direction").get<std::vector<double>>()
                                : std::vector<double>(grid.dimension, 0.0);
    if (!j.contains("direction")) dir[0] = 1.0;
    return jitter_adversarial(grid, j.at("L").get<double>(), std::move(dir));
  }
  if (model == "single") {
    std::vector<int> index =
        j.contains("index") ? j.at("index").get<std::vector<int>>()
                            : std::vector<int>(grid.dimension, 0);
    return single_node_displacement(grid, index, j.at("delta").get<double>());
  }
  if (model == "identity") {
    return identity_set(grid);
  }
  if (model == "explicit") {
    auto pts = j.at("points").get<std::vector<double>>();
    return perturbation_set::from_points(grid, std::move(pts));
  }
  throw config_error("unknown perturbation model: " + model);
}

nlohmann::json to_json(const perturbation_set& y) {
  nlohmann::json j;
  j["model"] = "explicit";
  j["dimension"] = y.grid().dimension;
  j["grid_K"] = y.grid().radius;
  std::vector<double> pts;
  pts.reserve(y.grid().size() * y.grid().dimension);
  for (std::size_t flat = 0; flat < y.grid().size(); ++flat) {
    for (double c : y.point(flat)) pts.push_back(c);
  }
  j["points"] = std::move(pts);
  j["L2_deviation"] = y.l2_deviation();
  j["Linf_deviation"] = y.linf_deviation();
  if (y.seed().has_value()) j["seed"] = *y.seed();
  return j;
}

}  // namespace qsis
