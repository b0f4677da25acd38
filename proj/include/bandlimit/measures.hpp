#pragma once

// Radial targets written as Gaussian mixtures along the diagonal,
//
//   G(x) = int_0^inf exp(-pi t |x|^2) w(t) dt,
//
// and the machinery for integrating against such densities. Integration
// runs in s = log t over unit chunks scanned outward from a centre; a
// direction stops when its chunks are negligible and shrinking
// geometrically, otherwise the integral is declared not absolutely
// integrable.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <string>

#include "bandlimit/errors.hpp"
#include "bandlimit/quadrature.hpp"

namespace bandlimit {

enum class Family { Exponential, InversePower, LogRatio, Power };

inline const char* to_string(Family f) {
  switch (f) {
    case Family::Exponential: return "exponential";
    case Family::InversePower: return "inverse-power";
    case Family::LogRatio: return "log-ratio";
    case Family::Power: return "power";
  }
  return "?";
}

inline Family parse_family(const std::string& name) {
  if (name == "exponential" || name == "exp") return Family::Exponential;
  if (name == "inverse-power" || name == "inverse_power") return Family::InversePower;
  if (name == "log-ratio" || name == "log_ratio") return Family::LogRatio;
  if (name == "power") return Family::Power;
  throw ParameterError("unknown radial family '" + name + "'");
}

// exp(-alpha |x|)            Exponential(alpha)
// (|x|^2 + alpha^2)^-beta    InversePower(alpha, beta)
// log((|x|^2 + beta^2) / (|x|^2 + alpha^2))   LogRatio(alpha < beta)
// |x|^sigma                  Power(sigma), sigma not an even integer
struct RadialTarget {
  Family family = Family::Exponential;
  double alpha = 1.0;
  double beta = 1.0;
  double sigma = 1.0;
  std::size_t dim = 1;

  static RadialTarget exponential(double alpha, std::size_t d = 1) {
    RadialTarget t{Family::Exponential, alpha, 0.0, 0.0, d};
    t.validate();
    return t;
  }
  static RadialTarget inverse_power(double alpha, double beta, std::size_t d = 1) {
    RadialTarget t{Family::InversePower, alpha, beta, 0.0, d};
    t.validate();
    return t;
  }
  static RadialTarget log_ratio(double alpha, double beta, std::size_t d = 1) {
    RadialTarget t{Family::LogRatio, alpha, beta, 0.0, d};
    t.validate();
    return t;
  }
  static RadialTarget power(double sigma, std::size_t d = 1) {
    RadialTarget t{Family::Power, 0.0, 0.0, sigma, d};
    t.validate();
    return t;
  }

  void validate() const {
    if (dim == 0) throw ParameterError("RadialTarget: dimension must be at least 1");
    switch (family) {
      case Family::Exponential:
        detail::require_positive(alpha, "exponential: alpha");
        break;
      case Family::InversePower:
        detail::require_positive(alpha, "inverse-power: alpha");
        detail::require_positive(beta, "inverse-power: beta");
        break;
      case Family::LogRatio:
        detail::require_positive(alpha, "log-ratio: alpha");
        if (!(beta > alpha)) throw ParameterError("log-ratio: need 0 < alpha < beta");
        break;
      case Family::Power: {
        detail::require_positive(sigma, "power: sigma");
        const double half = 0.5 * sigma;
        if (std::abs(half - std::round(half)) < 1e-12) {
          throw ParameterError("power: sigma must not be an even integer");
        }
        break;
      }
    }
  }

  // Mixture density is sign-changing nowhere, but negative for Power with
  // 0 < sigma < 2 (and alternating in sign between even integers beyond).
  bool negative_density() const { return family == Family::Power && std::tgamma(-0.5 * sigma) < 0.0; }

  double profile(double r) const {
    const double r2 = r * r;
    switch (family) {
      case Family::Exponential: return std::exp(-alpha * r);
      case Family::InversePower: return std::pow(r2 + alpha * alpha, -beta);
      case Family::LogRatio: return std::log((r2 + beta * beta) / (r2 + alpha * alpha));
      case Family::Power: return std::pow(r, sigma);
    }
    return 0.0;
  }
};

inline double euclidean_norm(std::span<const double> x) {
  double s = 0.0;
  for (double v : x) s += v * v;
  return std::sqrt(s);
}

inline double target_value(const RadialTarget& target, std::span<const double> x) {
  target.validate();
  if (x.size() != target.dim) throw ParameterError("target_value: point dimension mismatch");
  return target.profile(euclidean_norm(x));
}

namespace detail {

struct ChunkScan {
  double tol;
  double s_min;
  double s_max;
  int min_chunks = 4;
  double budget = 300.0;
};

// sum of int over [s0 + k dir, s0 + (k+1) dir] along one direction.
inline quad::QuadResult scan_direction(const quad::Fn1& g, double s0, double dir, const ChunkScan& scan,
                                       double chunk_tol) {
  quad::QuadResult acc;
  double previous = std::numeric_limits<double>::quiet_NaN();
  for (int k = 0;; ++k) {
    double lo = s0 + dir * k;
    double hi = lo + dir;
    if (dir > 0 && lo >= scan.s_max) return acc;
    if (dir < 0 && lo <= scan.s_min) return acc;
    hi = std::clamp(hi, scan.s_min, scan.s_max);
    if (std::abs(lo - s0) > scan.budget) {
      throw IntegrabilityError("measure integral does not settle within |log t| <= " +
                               std::to_string(static_cast<int>(scan.budget)) +
                               "; the integrand is not absolutely integrable or decays too slowly");
    }
    auto r = quad::integrate_interval(g, std::min(lo, hi), std::max(lo, hi), chunk_tol);
    acc.value += r.value;
    acc.error_estimate += r.error_estimate;
    const double mag = std::abs(r.value);
    if (k + 1 >= scan.min_chunks && mag < scan.tol) {
      const double ratio = (std::isnan(previous) || previous == 0.0) ? (mag == 0.0 ? 0.0 : 1.0) : mag / previous;
      if (ratio < 1.0 && mag * ratio / (1.0 - ratio) < scan.tol) {
        acc.error_estimate += mag * ratio / (1.0 - ratio);
        return acc;
      }
    }
    previous = mag;
  }
}

}  // namespace detail

// A density w on (0, inf), optionally truncated to (0, upper], or a unit-free
// point mass. The centre is any point inside the bulk of the integrand.
class DiagonalMeasure {
 public:
  using Density = std::function<double(double)>;

  static DiagonalMeasure density(Density w, double centre = 1.0, std::string label = "custom") {
    DiagonalMeasure m;
    m.w_ = std::move(w);
    m.centre_ = centre;
    m.label_ = std::move(label);
    detail::require_positive(centre, "DiagonalMeasure: centre");
    return m;
  }

  static DiagonalMeasure atom(double t, double mass = 1.0) {
    detail::require_positive(t, "DiagonalMeasure: atom location");
    DiagonalMeasure m;
    m.atom_ = t;
    m.mass_ = mass;
    m.label_ = "atom";
    return m;
  }

  DiagonalMeasure truncated(double upper) const {
    detail::require_positive(upper, "DiagonalMeasure: truncation");
    DiagonalMeasure m = *this;
    m.upper_ = std::min(upper_, upper);
    return m;
  }

  bool is_atom() const { return atom_.has_value(); }
  double upper() const { return upper_; }
  const std::string& label() const { return label_; }

  double operator()(double t) const {
    if (is_atom()) return 0.0;
    return t <= upper_ ? w_(t) : 0.0;
  }

  // int F(t) w(t) dt. F receives t; the density is applied here.
  quad::QuadResult integrate(const std::function<double(double)>& F, double tol = 1e-10) const {
    detail::require_positive(tol, "DiagonalMeasure::integrate: tol");
    if (is_atom()) {
      return {*atom_ <= upper_ ? mass_ * F(*atom_) : 0.0, 0.0};
    }
    auto g = [&](double s) {
      const double t = std::exp(s);
      const double wt = w_(t);
      if (wt == 0.0) return 0.0;
      return F(t) * wt * t;
    };
    const double s_max = std::isinf(upper_) ? std::numeric_limits<double>::infinity() : std::log(upper_);
    double s0 = std::log(centre_);
    if (s0 > s_max) s0 = s_max - 1.0;
    detail::ChunkScan scan{tol * 1e-2, -std::numeric_limits<double>::infinity(), s_max};
    const double chunk_tol = tol * 1e-3;
    auto right = detail::scan_direction(g, s0, 1.0, scan, chunk_tol);
    auto left = detail::scan_direction(g, s0, -1.0, scan, chunk_tol);
    return {right.value + left.value, right.error_estimate + left.error_estimate};
  }

 private:
  Density w_;
  std::optional<double> atom_;
  double mass_ = 1.0;
  double centre_ = 1.0;
  double upper_ = std::numeric_limits<double>::infinity();
  std::string label_;
};

// Power-family normalising constant pi^{-sigma/2} / Gamma(-sigma/2).
inline double power_constant(double sigma) { return std::pow(kPi, -0.5 * sigma) / std::tgamma(-0.5 * sigma); }

inline DiagonalMeasure measure_for(const RadialTarget& target) {
  target.validate();
  const double a = target.alpha;
  const double b = target.beta;
  switch (target.family) {
    case Family::Exponential:
      return DiagonalMeasure::density(
          [a](double t) { return a / (2.0 * kPi) * std::pow(t, -1.5) * std::exp(-a * a / (4.0 * kPi * t)); },
          a * a / (4.0 * kPi), "exponential");
    case Family::InversePower: {
      const double c = std::pow(kPi, b) / std::tgamma(b);
      return DiagonalMeasure::density(
          [a, b, c](double t) { return c * std::pow(t, b - 1.0) * std::exp(-kPi * t * a * a); },
          std::max(b, 0.5) / (kPi * a * a), "inverse-power");
    }
    case Family::LogRatio:
      return DiagonalMeasure::density(
          [a, b](double t) {
            // e^{-pi t a^2} - e^{-pi t b^2} = e^{-pi t a^2} (1 - e^{-pi t (b^2 - a^2)})
            return -std::exp(-kPi * t * a * a) * std::expm1(-kPi * t * (b * b - a * a)) / t;
          },
          1.0 / (kPi * a * b), "log-ratio");
    case Family::Power: {
      const double s = target.sigma;
      const double c = power_constant(s);
      return DiagonalMeasure::density([s, c](double t) { return c * std::pow(t, -0.5 * s - 1.0); }, 1.0,
                                      "power");
    }
  }
  throw ParameterError("measure_for: unknown family");
}

namespace detail {

// e^{-y} - sum_{k<K} (-y)^k / k!, accurate for small y.
inline double exp_taylor_remainder(double y, int K) {
  if (K <= 0) return std::exp(-y);
  if (y < 1.0) {
    double term = 1.0;
    for (int k = 1; k <= K; ++k) term *= -y / k;
    double sum = 0.0;
    for (int k = K; k < K + 60; ++k) {
      sum += term;
      term *= -y / (k + 1);
      if (std::abs(term) < 1e-18 * std::abs(sum)) break;
    }
    return sum;
  }
  double partial = 0.0;
  double term = 1.0;
  for (int k = 0; k < K; ++k) {
    partial += term;
    term *= -y / (k + 1);
  }
  return std::exp(-y) - partial;
}

}  // namespace detail

// int (e^{-pi t r^2} - Taylor_{<sigma/2}) w(t) dt; reproduces the radial
// profile, with the Power family's renormalisation built in.
inline quad::QuadResult mixture_value(const RadialTarget& target, double r, double tol = 1e-10) {
  const auto w = measure_for(target);
  const int K = target.family == Family::Power ? static_cast<int>(std::ceil(0.5 * target.sigma)) : 0;
  return w.integrate([&](double t) { return detail::exp_taylor_remainder(kPi * t * r * r, K); }, tol);
}

}  // namespace bandlimit
