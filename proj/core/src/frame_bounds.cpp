#include "qsis/frame_bounds.hpp"

#include <cmath>

#include "qsis/errors.hpp"

namespace qsis {

std::string to_string(bounds_convention c) {
  return c == bounds_convention::squared ? "squared" : "unsquared";
}

bounds_convention bounds_convention_from_string(const std::string& s) {
  if (s == "squared") return bounds_convention::squared;
  if (s == "unsquared") return bounds_convention::unsquared;
  throw config_error("unknown bounds convention: " + s);
}

frame_bounds::frame_bounds(double lower, double upper,
                           bounds_convention convention, std::string provenance)
    : lower_(lower),
      upper_(upper),
      convention_(convention),
      provenance_(std::move(provenance)) {
  if (!(lower > 0.0) || !(upper >= lower) || !std::isfinite(upper)) {
    throw non_positive_bounds("frame bounds require 0 < A <= B < inf");
  }
}

frame_bounds frame_bounds::as(bounds_convention target) const {
  if (target == convention_) return *this;
  double lo, hi;
  if (alt_.has_value()) {
    lo = alt_->first;
    hi = alt_->second;
  } else if (target == bounds_convention::unsquared) {
    lo = std::sqrt(lower_);
    hi = std::sqrt(upper_);
  } else {
    lo = lower_ * lower_;
    hi = upper_ * upper_;
  }
  frame_bounds out(lo, hi, target, provenance_);
  out.alt_ = {lower_, upper_};
  return out;
}

nlohmann::json to_json(const frame_bounds& b) {
  return nlohmann::json{{"lower", b.lower()},
                        {"upper", b.upper()},
                        {"convention", to_string(b.convention())},
                        {"provenance", b.provenance()}};
}

frame_bounds frame_bounds_from_json(const nlohmann::json& j) {
  return frame_bounds(
      j.at("lower").get<double>(), j.at("upper").get<double>(),
      bounds_convention_from_string(j.at("convention").get<std::string>()),
      j.at("provenance").get<std::string>());
}

}  // namespace qsis
