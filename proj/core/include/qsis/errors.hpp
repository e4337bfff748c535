#pragma once

#include <stdexcept>
#include <string>

namespace qsis {

/// Base class for all typed errors thrown by the library.
class error : public std::runtime_error {
 public:
  explicit error(const std::string& msg) : std::runtime_error(msg) {}
};

class config_error : public error {
 public:
  using error::error;
};

/// Operation requires a weak derivative the generator does not have.
class not_sobolev : public error {
 public:
  using error::error;
};

/// Generator has unbounded support and no truncation radius was supplied.
class unbounded_support : public error {
 public:
  using error::error;
};

class no_closed_form_transform : public error {
 public:
  using error::error;
};

class no_transform_path : public error {
 public:
  using error::error;
};

/// p' = infinity (p = 1) where a finite dual exponent is required.
class dual_exponent_infinite : public error {
 public:
  using error::error;
};

class exponent_out_of_range : public error {
 public:
  using error::error;
};

/// Lower spectral bound is non-positive at the working resolution;
/// the lattice system is not a Riesz basis as far as this run can tell.
class degenerate_spectrum : public error {
 public:
  using error::error;
};

class amalgam_degenerate : public error {
 public:
  using error::error;
};

class missing_bounds : public error {
 public:
  using error::error;
};

class deviation_too_large : public error {
 public:
  using error::error;
};

class index_outside_grid : public error {
 public:
  using error::error;
};

class grid_too_coarse : public error {
 public:
  using error::error;
};

class singular_gram : public error {
 public:
  using error::error;
};

class numerical_breakdown : public error {
 public:
  using error::error;
};

class non_positive_bounds : public error {
 public:
  using error::error;
};

}  // namespace qsis
