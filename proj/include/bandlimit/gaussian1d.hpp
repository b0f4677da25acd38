#pragma once

// One-dimensional Gaussian g(x) = exp(-delta pi x^2) and its extremal
// one-sided approximations of exponential type 2 pi (spectrum in [-1, 1]).
//
// Both extremal functions are written in the cardinal basis
//
//   A_p(x) = sinc^2(x - p),   B_p(x) = (x - p) sinc^2(x - p),
//
//   H(x) = sum_p g(p) A_p(x) + g'(p) B_p(x)
//
// with nodes p in Z for the majorant and p in Z + 1/2 for the minorant. This
// is the Hermite-interpolation series with the sin^2 (resp. cos^2) prefactor
// folded into each summand, so there are no removable singularities left
// except inside sinc itself.

#include <cmath>
#include <cstddef>
#include <vector>

#include "bandlimit/errors.hpp"
#include "bandlimit/theta.hpp"

namespace bandlimit {

enum class ExtremalKind { Majorant, Minorant };

inline const char* to_string(ExtremalKind kind) {
  return kind == ExtremalKind::Majorant ? "majorant" : "minorant";
}

inline double gaussian_value(double delta, double x) {
  detail::require_positive(delta, "gaussian: delta");
  return std::exp(-delta * kPi * x * x);
}

inline double gaussian_derivative(double delta, double x) {
  return -2.0 * kPi * delta * x * gaussian_value(delta, x);
}

// Fourier transform of g under e^{-2 pi i x xi}: delta^{-1/2} exp(-pi xi^2 / delta).
inline double gaussian_fourier(double delta, double xi) {
  detail::require_positive(delta, "gaussian: delta");
  return std::exp(-kPi * xi * xi / delta) / std::sqrt(delta);
}

namespace detail {

// Within this distance of a node sinc^2 is taken from its Taylor expansion.
inline constexpr double kNodeNeighbourhood = 1e-6;

inline constexpr std::size_t kMaxNodes = 2'000'000;

inline double sinc_sq_from(double sin_pi_r, double y) {
  if (std::abs(y) < kNodeNeighbourhood) {
    const double u = kPi * y;
    const double s = 1.0 - u * u / 6.0;
    return s * s;
  }
  const double s = sin_pi_r / (kPi * y);
  return s * s;
}

// Smallest K with 2 sum_{k>K} g(k)(1 + 2 delta k) < tol.
inline std::size_t node_cutoff(double delta, double tol) {
  for (std::size_t k = 1; k < kMaxNodes; ++k) {
    const double kk = static_cast<double>(k);
    const double e = std::exp(-delta * kPi * kk * kk);
    const double bound = 2.0 * e * (1.0 / (2.0 * delta * kPi * kk) + 1.0 / kPi + 1.0 + 2.0 * delta * kk);
    if (bound < tol) return k;
  }
  throw ConvergenceError("extremal node series: delta too small for the node budget", tol);
}

}  // namespace detail

class Extremal1D {
 public:
  Extremal1D(double delta, ExtremalKind kind, double tol = 1e-16) : delta_(delta), kind_(kind) {
    detail::require_positive(delta, "extremal: delta");
    detail::require_positive(tol, "extremal: tol");
    offset_ = kind == ExtremalKind::Majorant ? 0.0 : 0.5;
    const std::size_t cutoff = detail::node_cutoff(delta, tol);
    const auto span = static_cast<long>(cutoff);
    first_ = -span - (kind == ExtremalKind::Minorant ? 1 : 0);
    for (long k = first_; k <= span; ++k) {
      const double p = static_cast<double>(k) + offset_;
      values_.push_back(gaussian_value(delta, p));
      slopes_.push_back(gaussian_derivative(delta, p));
    }
  }

  double delta() const { return delta_; }
  ExtremalKind kind() const { return kind_; }
  std::size_t node_count() const { return values_.size(); }

  double node(std::size_t i) const { return static_cast<double>(first_ + static_cast<long>(i)) + offset_; }

  double operator()(double x) const {
    const double y0 = x - offset_;
    const double k0 = std::round(y0);
    const double r = y0 - k0;
    const double s = std::sin(kPi * r);
    double sum = 0.0;
    for (std::size_t i = 0; i < values_.size(); ++i) {
      const double k = static_cast<double>(first_ + static_cast<long>(i));
      const double y = (k0 - k) + r;
      const double a = detail::sinc_sq_from(s, y);
      sum += (values_[i] + slopes_[i] * y) * a;
    }
    return sum;
  }

  // Exact integral over R: delta^{-1/2} Theta(v; i/delta), v = 0 or 1/2.
  double integral(double tol = theta::kDefaultTol) const {
    return theta::theta(offset_, 1.0 / delta_, tol) / std::sqrt(delta_);
  }

  // Closed-form transform, zero for |xi| >= 1:
  //   (1 - |xi|) sum_p g(p) cos(2 pi p xi) + delta sgn(xi) sum_p p g(p) sin(2 pi p xi).
  double fourier(double xi) const {
    const double ax = std::abs(xi);
    if (ax >= 1.0) return 0.0;
    double even = 0.0;
    double odd = 0.0;
    for (std::size_t i = 0; i < values_.size(); ++i) {
      const double p = node(i);
      even += values_[i] * std::cos(2.0 * kPi * p * ax);
      odd += p * values_[i] * std::sin(2.0 * kPi * p * ax);
    }
    return (1.0 - ax) * even + delta_ * odd;
  }

  // C with |H(x)| <= C / (pi^2 (|x| - R)^2) for |x| > R, R = outermost node.
  double decay_constant() const {
    double c = 0.0;
    for (std::size_t i = 0; i < values_.size(); ++i) {
      c += values_[i] + std::abs(node(i) * slopes_[i]);
    }
    return c;
  }

  double outer_node() const { return std::abs(node(0)); }

 private:
  double delta_;
  ExtremalKind kind_;
  double offset_ = 0.0;
  long first_ = 0;
  std::vector<double> values_;
  std::vector<double> slopes_;
};

inline double majorant_1d(double delta, double x, double tol = 1e-16) {
  return Extremal1D(delta, ExtremalKind::Majorant, tol)(x);
}

inline double minorant_1d(double delta, double x, double tol = 1e-16) {
  return Extremal1D(delta, ExtremalKind::Minorant, tol)(x);
}

inline double majorant_integral_1d(double delta) {
  detail::require_positive(delta, "majorant_integral_1d: delta");
  return theta::theta(0.0, 1.0 / delta) / std::sqrt(delta);
}

inline double minorant_integral_1d(double delta) {
  detail::require_positive(delta, "minorant_integral_1d: delta");
  return theta::theta(0.5, 1.0 / delta) / std::sqrt(delta);
}

}  // namespace bandlimit
