#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include <nlohmann/json.hpp>

namespace qsis {

/// Finite index box |k|_inf <= radius in Z^d; the desk-scale stand-in for
/// the full lattice. Indices enumerate row-major from (-K,..,-K).
struct translation_grid {
  int dimension = 1;
  int radius = 1;

  std::size_t size() const;
  /// Multi-index of the flat position.
  std::vector<int> index_of(std::size_t flat) const;
  /// Flat position of a multi-index; throws index_outside_grid.
  std::size_t flatten(std::span<const int> index) const;
};

enum class deviation_norm { l2, linf };

/// Perturbed translation nodes y_k = k + u_k over a translation_grid,
/// immutable after construction; deviation suprema are recomputed from the
/// stored points so the cached values can never drift.
class perturbation_set {
 public:
  static perturbation_set from_points(const translation_grid& grid,
                                      std::vector<double> points,
                                      std::optional<std::uint64_t> seed = {});

  const translation_grid& grid() const { return grid_; }
  /// Coordinates of node `flat`, length = dimension.
  std::span<const double> point(std::size_t flat) const;
  double l2_deviation() const { return l2_dev_; }
  double linf_deviation() const { return linf_dev_; }
  std::optional<std::uint64_t> seed() const { return seed_; }

 private:
  perturbation_set() = default;
  translation_grid grid_;
  std::vector<double> points_;
  double l2_dev_ = 0.0;
  double linf_dev_ = 0.0;
  std::optional<std::uint64_t> seed_;
};

/// y_k = k (no perturbation).
perturbation_set identity_set(const translation_grid& grid);

/// y_k = k + u_k, u_k uniform on the l-inf ball of radius L; deterministic
/// per seed.
perturbation_set jitter_uniform(const translation_grid& grid, double radius,
                                std::uint64_t seed);

/// y_k = k + L * direction for every k (|direction|_2 = 1).
perturbation_set jitter_adversarial(const translation_grid& grid, double radius,
                                    std::vector<double> direction);

/// Moves a single node along the first axis; all others stay on the lattice.
perturbation_set single_node_displacement(const translation_grid& grid,
                                          std::span<const int> index,
                                          double delta);

double sup_deviation(const perturbation_set& y, deviation_norm norm);

struct kadec_result {
  bool pass;
  double margin;  // 1/4 - linf deviation
};

/// Strict l-inf quarter criterion for the exponential system at the nodes.
kadec_result kadec_check(const perturbation_set& y);

perturbation_set perturbation_from_json(const nlohmann::json& j);
nlohmann::json to_json(const perturbation_set& y);

}  // namespace qsis
