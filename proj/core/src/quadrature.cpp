#include "qsis/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>

#include "qsis/errors.hpp"

namespace qsis {

namespace {

gl_rule compute_gl(int order) {
  // Newton iteration on Legendre P_n; standard Golub-Welsch-free recipe.
  gl_rule rule;
  rule.nodes.resize(order);
  rule.weights.resize(order);
  const double pi = 3.14159265358979323846;
  for (int i = 0; i < order; ++i) {
    double x = std::cos(pi * (i + 0.75) / (order + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      if (order == 1) {
        p1 = x;
      }
      for (int k = 2; k <= order; ++k) {
        const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = pk;
      }
      const double pn = (order == 1) ? x : p1;
      const double pn1 = (order == 1) ? 1.0 : p0;
      dp = order * (x * pn - pn1) / (x * x - 1.0);
      const double dx = pn / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    rule.nodes[i] = x;
    rule.weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
  // ascending nodes
  for (int i = 0; i < order / 2; ++i) {
    std::swap(rule.nodes[i], rule.nodes[order - 1 - i]);
    std::swap(rule.weights[i], rule.weights[order - 1 - i]);
  }
  return rule;
}

int required_order(double p, const quadrature_spec& spec, int piece_degree) {
  int order = std::max(1, spec.gl_order);
  const double pr = std::round(p);
  if (piece_degree >= 0 && std::abs(p - pr) < 1e-12) {
    // |f|^p piecewise polynomial of degree piece_degree * p once roots are
    // on segment boundaries; GL(n) is exact through degree 2n-1.
    const int deg = piece_degree * static_cast<int>(pr);
    order = std::max(order, deg / 2 + 1);
  }
  return std::min(order, 64);
}

double cells_density(const quadrature_spec& spec, int order) {
  return std::max(1.0, static_cast<double>(spec.points_per_unit) / order);
}

// Bisection refinement of a bracketed sign change.
double refine_root(const std::function<double(double)>& f, double a, double b,
                   double fa) {
  for (int i = 0; i < 80; ++i) {
    const double m = 0.5 * (a + b);
    const double fm = f(m);
    if (fm == 0.0) return m;
    if ((fa < 0.0) != (fm < 0.0)) {
      b = m;
    } else {
      a = m;
      fa = fm;
    }
    if (b - a < 1e-14) break;
  }
  return 0.5 * (a + b);
}

// Sign-change roots of f inside (lo, hi), located by dense probing followed
// by bisection. Enough for the piecewise-polynomial integrands used here;
// touching roots do not create |f|^p kinks and may be missed harmlessly.
void append_sign_roots(const std::function<double(double)>& f, double lo,
                       double hi, int piece_degree,
                       std::vector<double>* roots) {
  const int probes = std::max(8, 4 * std::max(1, piece_degree + 1));
  double xa = lo;
  double fa = f(std::nextafter(lo, hi));
  for (int i = 1; i <= probes; ++i) {
    const double xb = lo + (hi - lo) * i / probes;
    const double fb =
        (i == probes) ? f(std::nextafter(hi, lo)) : f(xb);
    if (fa != 0.0 && fb != 0.0 && (fa < 0.0) != (fb < 0.0)) {
      roots->push_back(refine_root(f, xa, xb, fa));
    }
    xa = xb;
    fa = fb;
  }
}

double integrate_cells(const std::function<double(double)>& g, double a,
                       double b, const gl_rule& rule, double cells_per_unit) {
  const double len = b - a;
  if (!(len > 0.0)) return 0.0;
  const int cells = std::max(1, static_cast<int>(std::ceil(len * cells_per_unit)));
  double total = 0.0;
  for (int c = 0; c < cells; ++c) {
    const double clo = a + len * c / cells;
    const double chi = a + len * (c + 1) / cells;
    const double mid = 0.5 * (clo + chi);
    const double half = 0.5 * (chi - clo);
    double acc = 0.0;
    for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
      acc += rule.weights[k] * g(mid + half * rule.nodes[k]);
    }
    total += acc * half;
  }
  return total;
}

}  // namespace

const gl_rule& gauss_legendre(int order) {
  static std::map<int, gl_rule> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(order);
  if (it == cache.end()) {
    it = cache.emplace(order, compute_gl(order)).first;
  }
  return it->second;
}

std::vector<double> make_segments(double lo, double hi,
                                  const std::vector<double>& points) {
  std::vector<double> seg;
  seg.push_back(lo);
  for (double x : points) {
    if (x > lo && x < hi) seg.push_back(x);
  }
  seg.push_back(hi);
  std::sort(seg.begin(), seg.end());
  seg.erase(std::unique(seg.begin(), seg.end(),
                        [](double a, double b) { return std::abs(a - b) < 1e-13; }),
            seg.end());
  return seg;
}

double integrate_segments(const std::function<double(double)>& f,
                          const std::vector<double>& segments, int gl_order,
                          double cells_per_unit) {
  const gl_rule& rule = gauss_legendre(std::max(1, gl_order));
  double total = 0.0;
  for (std::size_t s = 0; s + 1 < segments.size(); ++s) {
    total += integrate_cells(f, segments[s], segments[s + 1], rule, cells_per_unit);
  }
  return total;
}

double lp_power_real(const std::function<double(double)>& f, double p,
                     const std::vector<double>& segments,
                     const quadrature_spec& spec, int piece_degree) {
  if (!(p >= 1.0)) throw exponent_out_of_range("lp_power_real: p must be >= 1");
  const double pr = std::round(p);
  const bool integer_p = std::abs(p - pr) < 1e-12;
  const bool even_p = integer_p && (static_cast<long>(pr) % 2 == 0);

  std::vector<double> seg = segments;
  if (!even_p) {
    // |f|^p loses smoothness where f changes sign; make those cell edges.
    std::vector<double> roots;
    for (std::size_t s = 0; s + 1 < seg.size(); ++s) {
      append_sign_roots(f, seg[s], seg[s + 1], piece_degree, &roots);
    }
    if (!roots.empty()) {
      seg.insert(seg.end(), roots.begin(), roots.end());
      std::sort(seg.begin(), seg.end());
      seg.erase(std::unique(seg.begin(), seg.end(),
                            [](double a, double b) { return std::abs(a - b) < 1e-13; }),
                seg.end());
    }
  }

  const int order = required_order(p, spec, piece_degree);
  const gl_rule& rule = gauss_legendre(order);
  const double density = cells_density(spec, order);
  double total = 0.0;
  for (std::size_t s = 0; s + 1 < seg.size(); ++s) {
    total += integrate_cells(
        [&](double x) { return std::pow(std::abs(f(x)), p); }, seg[s],
        seg[s + 1], rule, density);
  }
  return total;
}

double lp_power_complex(const std::function<std::complex<double>(double)>& f,
                        double p, const std::vector<double>& segments,
                        const quadrature_spec& spec, int piece_degree) {
  if (!(p >= 1.0)) throw exponent_out_of_range("lp_power_complex: p must be >= 1");
  const int order = required_order(p, spec, piece_degree);
  const gl_rule& rule = gauss_legendre(order);
  const double density = cells_density(spec, order);
  const double half_p = 0.5 * p;
  double total = 0.0;
  for (std::size_t s = 0; s + 1 < segments.size(); ++s) {
    total += integrate_cells(
        [&](double x) {
          const std::complex<double> v = f(x);
          const double m2 = v.real() * v.real() + v.imag() * v.imag();
          return std::pow(m2, half_p);
        },
        segments[s], segments[s + 1], rule, density);
  }
  return total;
}

}  // namespace qsis
