#include <cmath>
#include <vector>

#include "doctest.h"
#include "qsis/errors.hpp"
#include "qsis/perturb.hpp"

using namespace qsis;

TEST_CASE("grid enumeration round-trips") {
  const translation_grid grid{2, 3};
  CHECK(grid.size() == 49);
  for (std::size_t flat = 0; flat < grid.size(); ++flat) {
    const auto idx = grid.index_of(flat);
    CHECK(grid.flatten(idx) == flat);
  }
  const std::vector<int> outside{4, 0};
  CHECK_THROWS_AS(grid.flatten(outside), index_outside_grid);
}

TEST_CASE("zero jitter is the lattice") {
  const auto y = jitter_uniform({1, 16}, 0.0, 5);
  CHECK(y.l2_deviation() == 0.0);
  CHECK(y.linf_deviation() == 0.0);
  for (std::size_t flat = 0; flat < y.grid().size(); ++flat) {
    CHECK(y.point(flat)[0] == static_cast<double>(y.grid().index_of(flat)[0]));
  }
}

TEST_CASE("uniform jitter respects its radius and its seed") {
  const auto a = jitter_uniform({1, 16}, 0.2, 7);
  CHECK(a.linf_deviation() <= 0.2);
  CHECK(a.linf_deviation() > 0.0);
  const auto b = jitter_uniform({1, 16}, 0.2, 7);
  for (std::size_t flat = 0; flat < a.grid().size(); ++flat) {
    CHECK(a.point(flat)[0] == b.point(flat)[0]);  // bit-identical per seed
  }
  const auto c = jitter_uniform({1, 16}, 0.2, 8);
  bool any_different = false;
  for (std::size_t flat = 0; flat < a.grid().size(); ++flat) {
    any_different = any_different || a.point(flat)[0] != c.point(flat)[0];
  }
  CHECK(any_different);
}

TEST_CASE("deviation caches equal recomputation (randomized)") {
  for (std::uint64_t seed = 0; seed < 24; ++seed) {
    const auto y = jitter_uniform({1, 8}, 0.2 + 0.01 * seed, seed);
    double l2 = 0.0, linf = 0.0;
    for (std::size_t flat = 0; flat < y.grid().size(); ++flat) {
      const double u = y.point(flat)[0] - y.grid().index_of(flat)[0];
      l2 = std::max(l2, std::abs(u));
      linf = std::max(linf, std::abs(u));
    }
    CHECK(y.l2_deviation() == l2);
    CHECK(y.linf_deviation() == linf);
    CHECK(y.linf_deviation() <= y.l2_deviation() + 1e-15);
    CHECK(y.l2_deviation() <=
          std::sqrt(1.0) * y.linf_deviation() + 1e-15);  // d = 1
  }
}

TEST_CASE("adversarial shift moves every node the same way") {
  const auto y = jitter_adversarial({1, 8}, 0.25, {1.0});
  CHECK(y.l2_deviation() == doctest::Approx(0.25));
  for (std::size_t flat = 0; flat < y.grid().size(); ++flat) {
    CHECK(y.point(flat)[0] ==
          doctest::Approx(y.grid().index_of(flat)[0] + 0.25));
  }
  const auto neg = jitter_adversarial({1, 8}, 0.3, {-1.0});
  CHECK(neg.linf_deviation() == doctest::Approx(0.3));
  CHECK_THROWS_AS(jitter_adversarial({1, 8}, 0.1, {2.0}), config_error);
}

TEST_CASE("single node displacement") {
  const std::vector<int> origin{0};
  const auto y = single_node_displacement({1, 8}, origin, 0.3);
  CHECK(y.l2_deviation() == doctest::Approx(0.3));
  std::size_t moved = 0;
  for (std::size_t flat = 0; flat < y.grid().size(); ++flat) {
    if (y.point(flat)[0] != static_cast<double>(y.grid().index_of(flat)[0])) {
      ++moved;
    }
  }
  CHECK(moved == 1);
  const auto none = single_node_displacement({1, 8}, origin, 0.0);
  CHECK(none.l2_deviation() == 0.0);
  const std::vector<int> outside{9};
  CHECK_THROWS_AS(single_node_displacement({1, 8}, outside, 0.1),
                  index_outside_grid);
}

TEST_CASE("sup deviation accessors") {
  const auto y = jitter_adversarial({1, 8}, 0.25, {1.0});
  CHECK(sup_deviation(y, deviation_norm::l2) == doctest::Approx(0.25));
  CHECK(sup_deviation(y, deviation_norm::linf) == doctest::Approx(0.25));
  const auto id = identity_set({1, 8});
  CHECK(sup_deviation(id, deviation_norm::l2) == 0.0);
}

TEST_CASE("quarter criterion is strict at the boundary") {
  CHECK(kadec_check(jitter_adversarial({1, 8}, 0.24, {1.0})).pass);
  CHECK(kadec_check(jitter_adversarial({1, 8}, 0.24, {1.0})).margin ==
        doctest::Approx(0.01));
  CHECK_FALSE(kadec_check(jitter_adversarial({1, 8}, 0.25, {1.0})).pass);
  CHECK(kadec_check(identity_set({1, 8})).margin == doctest::Approx(0.25));
}

TEST_CASE("quarter criterion is monotone under shrinking deviations") {
  for (std::uint64_t seed = 0; seed < 8; ++seed) {
    const auto y = jitter_uniform({1, 8}, 0.3, seed);
    std::vector<double> shrunk;
    for (std::size_t flat = 0; flat < y.grid().size(); ++flat) {
      const double k = y.grid().index_of(flat)[0];
      shrunk.push_back(k + 0.5 * (y.point(flat)[0] - k));
    }
    const auto half = perturbation_set::from_points(y.grid(), shrunk);
    if (kadec_check(y).pass) CHECK(kadec_check(half).pass);
  }
}

TEST_CASE("2-d deviations use the right norms") {
  // one node displaced diagonally by (0.3, 0.4): l2 = 0.5, linf = 0.4
  translation_grid grid{2, 2};
  std::vector<double> pts(grid.size() * 2);
  for (std::size_t flat = 0; flat < grid.size(); ++flat) {
    const auto k = grid.index_of(flat);
    pts[2 * flat] = k[0];
    pts[2 * flat + 1] = k[1];
  }
  const std::vector<int> corner{1, 1};
  const std::size_t target = grid.flatten(corner);
  pts[2 * target] += 0.3;
  pts[2 * target + 1] += 0.4;
  const auto y = perturbation_set::from_points(grid, std::move(pts));
  CHECK(y.l2_deviation() == doctest::Approx(0.5));
  CHECK(y.linf_deviation() == doctest::Approx(0.4));
}

TEST_CASE("perturbation json specs") {
  const auto uni = perturbation_from_json(nlohmann::json{
      {"model", "uniform"}, {"L", 0.1}, {"seed", 3}, {"grid_K", 4}});
  CHECK(uni.grid().radius == 4);
  CHECK(uni.linf_deviation() <= 0.1);
  CHECK(uni.seed().has_value());

  const auto single = perturbation_from_json(nlohmann::json{
      {"model", "single"}, {"delta", 0.3}, {"grid_K", 4}});
  CHECK(single.l2_deviation() == doctest::Approx(0.3));

  // round-trip through the explicit form
  const auto j = to_json(uni);
  const auto back = perturbation_from_json(j);
  for (std::size_t flat = 0; flat < uni.grid().size(); ++flat) {
    CHECK(back.point(flat)[0] == uni.point(flat)[0]);
  }
  CHECK_THROWS_AS(perturbation_from_json(nlohmann::json{{"model", "waves"}}),
                  config_error);
}
