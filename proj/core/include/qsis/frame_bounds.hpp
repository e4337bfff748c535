#pragma once

#include <optional>
#include <string>
#include <utility>

#include <nlohmann/json.hpp>

namespace qsis {

/// Two conventions coexist for Riesz bounds of a translate system:
///   unsquared  A ||d||_p <= || sum d_k g(.-y_k) ||_p <= B ||d||_p
///   squared    A <= || f ||_2^2 <= B for unit l^2 coefficients
/// Values are meaningless without the tag, so the tag travels with them.
enum class bounds_convention { unsquared, squared };

std::string to_string(bounds_convention c);
bounds_convention bounds_convention_from_string(const std::string& s);

class frame_bounds {
 public:
  frame_bounds(double lower, double upper, bounds_convention convention,
               std::string provenance);

  double lower() const { return lower_; }
  double upper() const { return upper_; }
  bounds_convention convention() const { return convention_; }
  const std::string& provenance() const { return provenance_; }

  /// View in the requested convention. Conversion is square / square root;
  /// converting back returns the original values bit-for-bit (the pre-image
  /// is carried along).
  frame_bounds as(bounds_convention target) const;

 private:
  double lower_;
  double upper_;
  bounds_convention convention_;
  std::string provenance_;
  std::optional<std::pair<double, double>> alt_;  // values in the other convention
};

nlohmann::json to_json(const frame_bounds& b);
frame_bounds frame_bounds_from_json(const nlohmann::json& j);

}  // namespace qsis
