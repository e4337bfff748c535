#include "qsis/generator.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "qsis/errors.hpp"

namespace qsis {

namespace {

constexpr double kPi = 3.14159265358979323846;

double rect_value(double x) {
  return (x >= -0.5 && x < 0.5) ? 1.0 : 0.0;
}

double binomial(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// Centered cardinal B-spline of order m (degree m) via truncated powers.
double bspline_value(int m, double x) {
  if (m == 0) return rect_value(x);
  const double half_width = 0.5 * (m + 1);
  if (x <= -half_width || x >= half_width) return 0.0;
  const double t = x + half_width;
  double factorial = 1.0;
  for (int i = 2; i <= m; ++i) factorial *= i;
  double acc = 0.0;
  double sign = 1.0;
  for (int k = 0; k <= m + 1; ++k) {
    const double u = t - k;
    if (u > 0.0) acc += sign * binomial(m + 1, k) * std::pow(u, m);
    sign = -sign;
  }
  return acc / factorial;
}

}  // namespace

double sinc_value(double x) {
  // exact at integers: sin(pi k) never cancels in floating point
  if (x == std::nearbyint(x)) return x == 0.0 ? 1.0 : 0.0;
  const double px = kPi * x;
  if (std::abs(px) < 1e-8) return 1.0 - px * px / 6.0;
  return std::sin(px) / px;
}

generator generator::rect() {
  generator g;
  g.kind_ = generator_kind::rect;
  g.support_.intervals = {{-0.5, 0.5}};
  return g;
}

generator generator::bspline(int order) {
  if (order < 0) throw config_error("bspline order must be >= 0");
  generator g;
  g.kind_ = generator_kind::bspline;
  g.order_ = order;
  const double h = 0.5 * (order + 1);
  g.support_.intervals = {{-h, h}};
  g.in_w1p_ = order >= 1;
  return g;
}

generator generator::sinc() {
  generator g;
  g.kind_ = generator_kind::sinc;
  g.support_.unbounded = true;
  g.band_limited_ = true;
  return g;
}

generator generator::step(std::vector<double> coeffs, int j_radius) {
  if (j_radius < 0) throw config_error("step radius J must be >= 0");
  if (coeffs.size() != static_cast<std::size_t>(2 * j_radius + 1)) {
    throw config_error("step coeffs must have size 2J+1");
  }
  generator g;
  g.kind_ = generator_kind::step;
  g.j_radius_ = j_radius;
  g.coeffs_ = std::move(coeffs);
  g.support_.intervals = {{-j_radius - 0.5, j_radius + 0.5}};
  return g;
}

generator generator::tabulated(std::vector<double> samples, double step, double lo) {
  if (samples.size() < 2) throw config_error("tabulated needs >= 2 samples");
  if (!(step > 0.0)) throw config_error("tabulated step must be > 0");
  generator g;
  g.kind_ = generator_kind::tabulated;
  g.samples_ = std::move(samples);
  g.sample_step_ = step;
  g.sample_lo_ = lo;
  g.support_.intervals = {{lo, lo + step * (g.samples_.size() - 1)}};
  g.in_w1p_ = true;
  return g;
}

generator generator::tensor_product(std::vector<generator> factors) {
  if (factors.empty()) throw config_error("tensor product needs >= 1 factor");
  generator g;
  g.kind_ = generator_kind::tensor_product;
  g.dimension_ = 0;
  g.in_w1p_ = true;
  g.band_limited_ = true;
  for (const auto& f : factors) {
    if (f.dimension() != 1) {
      throw config_error("tensor factors must be one-dimensional");
    }
    g.dimension_ += 1;
    g.in_w1p_ = g.in_w1p_ && f.in_w1p();
    g.band_limited_ = g.band_limited_ && f.band_limited();
    if (f.support().unbounded) {
      g.support_.unbounded = true;
      g.support_.intervals.clear();
    }
    if (!g.support_.unbounded) {
      g.support_.intervals.push_back(f.support().intervals[0]);
    }
  }
  g.factors_ = std::move(factors);
  return g;
}

double generator::eval(double x) const {
  switch (kind_) {
    case generator_kind::rect:
      return rect_value(x);
    case generator_kind::bspline:
      return bspline_value(order_, x);
    case generator_kind::sinc:
      return sinc_value(x);
    case generator_kind::step: {
      double acc = 0.0;
      for (int j = -j_radius_; j <= j_radius_; ++j) {
        acc += coeffs_[j + j_radius_] * rect_value(x - j);
      }
      return acc;
    }
    case generator_kind::tabulated: {
      const double hi = support_.intervals[0].second;
      if (x < sample_lo_ || x > hi) return 0.0;
      const double u = (x - sample_lo_) / sample_step_;
      const auto i = static_cast<std::size_t>(std::min(
          static_cast<double>(samples_.size() - 2), std::floor(u)));
      const double frac = u - static_cast<double>(i);
      return samples_[i] + frac * (samples_[i + 1] - samples_[i]);
    }
    case generator_kind::tensor_product:
      throw config_error("tensor generator requires a d-dimensional point");
  }
  return 0.0;
}

double generator::eval(std::span<const double> x) const {
  if (static_cast<int>(x.size()) != dimension_) {
    throw config_error("eval: point dimension mismatch");
  }
  if (kind_ != generator_kind::tensor_product) return eval(x[0]);
  double acc = 1.0;
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    acc *= factors_[i].eval(x[i]);
    if (acc == 0.0) return 0.0;
  }
  return acc;
}

std::complex<double> generator::fourier(double xi) const {
  switch (kind_) {
    case generator_kind::rect:
      return {sinc_value(xi), 0.0};
    case generator_kind::bspline:
      return {std::pow(sinc_value(xi), order_ + 1), 0.0};
    case generator_kind::sinc:
      return {rect_value(xi), 0.0};
    case generator_kind::step: {
      std::complex<double> trig = 0.0;
      for (int j = -j_radius_; j <= j_radius_; ++j) {
        const double phase = 2.0 * kPi * j * xi;
        trig += coeffs_[j + j_radius_] *
                std::complex<double>(std::cos(phase), std::sin(phase));
      }
      return sinc_value(xi) * trig;
    }
    case generator_kind::tabulated:
      throw no_closed_form_transform(
          "tabulated generator: use spectrum transform path");
    case generator_kind::tensor_product:
      throw config_error("tensor generator requires a d-dimensional frequency");
  }
  return 0.0;
}

std::complex<double> generator::fourier(std::span<const double> xi) const {
  if (static_cast<int>(xi.size()) != dimension_) {
    throw config_error("fourier: frequency dimension mismatch");
  }
  if (kind_ != generator_kind::tensor_product) return fourier(xi[0]);
  std::complex<double> acc = 1.0;
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    acc *= factors_[i].fourier(xi[i]);
  }
  return acc;
}

std::vector<double> generator::knots() const {
  switch (kind_) {
    case generator_kind::rect:
      return {-0.5, 0.5};
    case generator_kind::bspline: {
      std::vector<double> k;
      const double lo = -0.5 * (order_ + 1);
      for (int i = 0; i <= order_ + 1; ++i) k.push_back(lo + i);
      return k;
    }
    case generator_kind::sinc:
      return {};
    case generator_kind::step: {
      std::vector<double> k;
      for (int j = -j_radius_; j <= j_radius_ + 1; ++j) k.push_back(j - 0.5);
      return k;
    }
    case generator_kind::tabulated: {
      std::vector<double> k;
      for (std::size_t i = 0; i < samples_.size(); ++i) {
        k.push_back(sample_lo_ + sample_step_ * static_cast<double>(i));
      }
      return k;
    }
    case generator_kind::tensor_product:
      throw config_error("knots() is one-dimensional; query factors");
  }
  return {};
}

int generator::piece_degree() const {
  switch (kind_) {
    case generator_kind::rect:
    case generator_kind::step:
      return 0;
    case generator_kind::bspline:
      return order_;
    case generator_kind::tabulated:
      return 1;
    case generator_kind::sinc:
      return -1;
    case generator_kind::tensor_product:
      throw config_error("piece_degree() is one-dimensional; query factors");
  }
  return -1;
}

double generator::derivative_eval(double x) const {
  if (!in_w1p_) {
    throw not_sobolev("derivative undefined: generator is not W^{1,p}");
  }
  switch (kind_) {
    case generator_kind::bspline:
      // beta_m' = beta_{m-1}(.+1/2) - beta_{m-1}(.-1/2)
      return bspline_value(order_ - 1, x + 0.5) - bspline_value(order_ - 1, x - 0.5);
    case generator_kind::tabulated: {
      const double hi = support_.intervals[0].second;
      if (x < sample_lo_ || x >= hi) return 0.0;
      const double u = (x - sample_lo_) / sample_step_;
      const auto i = static_cast<std::size_t>(std::min(
          static_cast<double>(samples_.size() - 2), std::floor(u)));
      return (samples_[i + 1] - samples_[i]) / sample_step_;
    }
    default:
      throw not_sobolev("derivative path exists for bspline/tabulated only");
  }
}

std::string generator::describe() const {
  std::ostringstream os;
  switch (kind_) {
    case generator_kind::rect: os << "rect"; break;
    case generator_kind::bspline: os << "bspline(" << order_ << ")"; break;
    case generator_kind::sinc: os << "sinc"; break;
    case generator_kind::step: os << "step(J=" << j_radius_ << ")"; break;
    case generator_kind::tabulated:
      os << "tabulated[" << samples_.size() << "]";
      break;
    case generator_kind::tensor_product:
      os << "tensor(d=" << dimension_ << ")";
      break;
  }
  return os.str();
}

namespace {

// Quadrature over a 1-D generator's support (or truncation window).
double lp_power_1d(const generator& g, double p, const quadrature_spec& spec) {
  double lo, hi;
  std::vector<double> interior;
  if (g.support().unbounded) {
    if (!(spec.truncation_radius > 0.0)) {
      throw unbounded_support(
          "lp_norm: unbounded support and no truncation radius");
    }
    lo = -spec.truncation_radius;
    hi = spec.truncation_radius;
    // |sinc|^p kinks at the integer zeros; use them as segment edges.
    for (double k = std::ceil(lo); k <= hi; k += 1.0) interior.push_back(k);
  } else {
    lo = g.support().intervals[0].first;
    hi = g.support().intervals[0].second;
    interior = g.knots();
  }
  const auto segments = make_segments(lo, hi, interior);
  return lp_power_real([&](double x) { return g.eval(x); }, p, segments, spec,
                       g.piece_degree());
}

}  // namespace

double lp_norm_power(const generator& g, const exponent& p,
                     const quadrature_spec& spec) {
  switch (g.kind()) {
    case generator_kind::rect:
      return 1.0;  // |rect| is an indicator of a measure-1 set
    case generator_kind::step: {
      // unit rect supports are disjoint
      double acc = 0.0;
      for (double s : g.coeffs()) acc += std::pow(std::abs(s), p.p());
      return acc;
    }
    case generator_kind::bspline:
      if (p.p() == 1.0) return 1.0;  // convolution preserves total mass
      return lp_power_1d(g, p.p(), spec);
    case generator_kind::sinc:
      if (p.p() == 1.0) {
        throw exponent_out_of_range("sinc is not integrable at p = 1");
      }
      return lp_power_1d(g, p.p(), spec);
    case generator_kind::tabulated:
      return lp_power_1d(g, p.p(), spec);
    case generator_kind::tensor_product: {
      double acc = 1.0;
      for (const auto& f : g.factors()) acc *= lp_norm_power(f, p, spec);
      return acc;
    }
  }
  return 0.0;
}

double lp_norm(const generator& g, const exponent& p, const quadrature_spec& spec) {
  return std::pow(lp_norm_power(g, p, spec), 1.0 / p.p());
}

double grad_lp_norm_power(const generator& g, const exponent& p, int axis,
                          const quadrature_spec& spec) {
  if (!g.in_w1p()) {
    throw not_sobolev("grad_lp_norm: generator is not W^{1,p}: " + g.describe());
  }
  if (axis < 0 || axis >= g.dimension()) {
    throw config_error("grad_lp_norm: axis out of range");
  }
  if (g.kind() == generator_kind::tensor_product) {
    double acc = 1.0;
    for (int i = 0; i < g.dimension(); ++i) {
      const generator& f = g.factors()[i];
      acc *= (i == axis) ? grad_lp_norm_power(f, p, 0, spec)
                         : lp_norm_power(f, p, spec);
    }
    return acc;
  }
  if (g.kind() == generator_kind::bspline) {
    if (g.order() == 1) return 2.0;  // |beta_1'| = 1 on a length-2 set
    const auto segments =
        make_segments(g.support().intervals[0].first,
                      g.support().intervals[0].second, g.knots());
    return lp_power_real([&](double x) { return g.derivative_eval(x); }, p.p(),
                         segments, spec, g.order() - 1);
  }
  // tabulated: piecewise-constant slopes, exact sum
  double acc = 0.0;
  for (std::size_t i = 0; i + 1 < g.samples().size(); ++i) {
    const double slope = (g.samples()[i + 1] - g.samples()[i]) / g.sample_step();
    acc += std::pow(std::abs(slope), p.p()) * g.sample_step();
  }
  return acc;
}

double grad_lp_norm(const generator& g, const exponent& p, int axis,
                    const quadrature_spec& spec) {
  return std::pow(grad_lp_norm_power(g, p, axis, spec), 1.0 / p.p());
}

generator convolve_rect(const generator& g) {
  switch (g.kind()) {
    case generator_kind::rect:
      return generator::bspline(1);
    case generator_kind::bspline:
      return generator::bspline(g.order() + 1);
    case generator_kind::step: {
      // rect * step = sum_j s_j beta_1(. - j): piecewise linear with integer
      // knots and nodal values s_j; the linear interpolant is exact.
      const int J = g.j_radius();
      std::vector<double> nodes(2 * J + 3, 0.0);
      for (int j = -J; j <= J; ++j) nodes[j + J + 1] = g.coeffs()[j + J];
      return generator::tabulated(std::move(nodes), 1.0, -J - 1.0);
    }
    case generator_kind::tabulated: {
      // exact sliding-window integral of the interpolant, resampled at half
      // the original step
      const double h = g.sample_step() / 2.0;
      const double lo = g.support().intervals[0].first - 0.5;
      const double hi = g.support().intervals[0].second + 0.5;
      const int n = static_cast<int>(std::round((hi - lo) / h)) + 1;
      const auto knots = g.knots();
      std::vector<double> out(n);
      quadrature_spec local;
      local.points_per_unit = 64;
      for (int i = 0; i < n; ++i) {
        const double x = lo + h * i;
        const auto segments = make_segments(x - 0.5, x + 0.5, knots);
        out[i] = integrate_segments([&](double t) { return g.eval(t); },
                                    segments, 2, 1.0);
      }
      return generator::tabulated(std::move(out), h, lo);
    }
    case generator_kind::sinc:
      throw unbounded_support("convolve_rect: sinc support is unbounded");
    case generator_kind::tensor_product:
      throw config_error("convolve_rect is one-dimensional");
  }
  throw config_error("convolve_rect: unhandled kind");
}

double modulus_continuity(const generator& g, double delta, const exponent& p,
                          int probes, const quadrature_spec& spec) {
  if (!(delta >= 0.0)) throw config_error("modulus_continuity: delta < 0");
  if (delta == 0.0) return 0.0;
  if (probes < 1) throw config_error("modulus_continuity: probes < 1");
  if (!g.in_w1p() && !g.compact_support()) {
    throw not_sobolev(
        "modulus_continuity needs W^{1,p} or compact support: " + g.describe());
  }
  if (g.dimension() != 1) {
    throw config_error("modulus_continuity implemented for d = 1");
  }

  const int magnitudes = std::max(1, probes / 2);
  const auto base_knots = g.knots();
  double best = 0.0;
  for (int i = 1; i <= magnitudes; ++i) {
    const double t = delta * static_cast<double>(i) / magnitudes;
    for (double sign : {+1.0, -1.0}) {
      const double shift = sign * t;
      // g(x + shift) - g(x): kinks at knots and shifted knots
      std::vector<double> pts = base_knots;
      for (double k : base_knots) pts.push_back(k - shift);
      double lo, hi;
      if (g.support().unbounded) {
        if (!(spec.truncation_radius > 0.0)) {
          throw unbounded_support("modulus_continuity: no truncation radius");
        }
        lo = -spec.truncation_radius;
        hi = spec.truncation_radius;
      } else {
        lo = g.support().intervals[0].first - std::abs(shift) - 1.0;
        hi = g.support().intervals[0].second + std::abs(shift) + 1.0;
      }
      const auto segments = make_segments(lo, hi, pts);
      const double power = lp_power_real(
          [&](double x) { return g.eval(x + shift) - g.eval(x); }, p.p(),
          segments, spec, g.piece_degree());
      best = std::max(best, std::pow(power, 1.0 / p.p()));
    }
  }
  return best;
}

generator generator_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("kind")) {
    throw config_error("generator spec must be an object with a \"kind\"");
  }
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "rect") return generator::rect();
  if (kind == "bspline") return generator::bspline(j.at("order").get<int>());
  if (kind == "sinc") return generator::sinc();
  if (kind == "step") {
    return generator::step(j.at("coeffs").get<std::vector<double>>(),
                           j.at("J").get<int>());
  }
  if (kind == "tabulated") {
    const auto support = j.at("support").get<std::vector<double>>();
    if (support.size() != 2) throw config_error("tabulated support must be [a, b]");
    const auto samples = j.at("samples").get<std::vector<double>>();
    const double step = j.at("step").get<double>();
    const double span = step * (static_cast<double>(samples.size()) - 1.0);
    if (std::abs((support[1] - support[0]) - span) > 1e-9) {
      throw config_error("tabulated support inconsistent with samples/step");
    }
    return generator::tabulated(samples, step, support[0]);
  }
  if (kind == "tensor") {
    std::vector<generator> factors;
    for (const auto& f : j.at("factors")) factors.push_back(generator_from_json(f));
    return generator::tensor_product(std::move(factors));
  }
  throw config_error("unknown generator kind: " + kind);
}

nlohmann::json to_json(const generator& g) {
  nlohmann::json j;
  switch (g.kind()) {
    case generator_kind::rect:
      j["kind"] = "rect";
      break;
    case generator_kind::bspline:
      j["kind"] = "bspline";
      j["order"] = g.order();
      break;
    case generator_kind::sinc:
      j["kind"] = "sinc";
      break;
    case generator_kind::step:
      j["kind"] = "step";
      j["J"] = g.j_radius();
      j["coeffs"] = g.coeffs();
      break;
    case generator_kind::tabulated:
      j["kind"] = "tabulated";
      j["samples"] = g.samples();
      j["step"] = g.sample_step();
      j["support"] = {g.support().intervals[0].first,
                      g.support().intervals[0].second};
      break;
    case generator_kind::tensor_product: {
      j["kind"] = "tensor";
      nlohmann::json factors = nlohmann::json::array();
      for (const auto& f : g.factors()) factors.push_back(to_json(f));
      j["factors"] = std::move(factors);
      break;
    }
  }
  return j;
}

}  // namespace qsis
