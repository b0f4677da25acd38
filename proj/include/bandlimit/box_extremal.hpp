#pragma once

// Multidimensional Gaussian G(x) = exp(-pi sum_j lambda_j x_j^2) and its
// one-sided approximations with spectrum in the box Q(a) = prod [-a_j, a_j].
//
// The majorant is the tensor product of one-dimensional extremal majorants;
// the minorant is Selberg's bootstrap combination of the one-dimensional
// majorant/minorant pairs. Both are rescaled from the unit box by
// H_{lambda,a}(x) = H_{lambda/a^2}(a x).

#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "bandlimit/errors.hpp"
#include "bandlimit/gaussian1d.hpp"
#include "bandlimit/theta.hpp"

namespace bandlimit {

struct BoxParams {
  std::vector<double> lambda;
  std::vector<double> a;

  BoxParams() = default;
  BoxParams(std::vector<double> lam, std::vector<double> box) : lambda(std::move(lam)), a(std::move(box)) {
    validate();
  }

  void validate() const {
    if (lambda.empty()) throw ParameterError("BoxParams: dimension must be at least 1");
    if (lambda.size() != a.size()) throw ParameterError("BoxParams: lambda and a differ in length");
    for (std::size_t j = 0; j < lambda.size(); ++j) {
      detail::require_positive(lambda[j], "BoxParams: lambda_j");
      detail::require_positive(a[j], "BoxParams: a_j");
    }
  }

  std::size_t dim() const { return lambda.size(); }

  // alpha = a_1 ... a_d
  double volume_factor() const {
    double p = 1.0;
    for (double aj : a) p *= aj;
    return p;
  }

  // gamma = min_j a_j^2 / lambda_j
  double gamma() const {
    double g = a[0] * a[0] / lambda[0];
    for (std::size_t j = 1; j < dim(); ++j) g = std::min(g, a[j] * a[j] / lambda[j]);
    return g;
  }

  // Theta argument a_j^2 / lambda_j on axis j.
  double theta_t(std::size_t j) const { return a[j] * a[j] / lambda[j]; }
};

inline double gaussian_nd(std::span<const double> lambda, std::span<const double> x) {
  if (lambda.size() != x.size()) throw ParameterError("gaussian_nd: dimension mismatch");
  double expo = 0.0;
  for (std::size_t j = 0; j < x.size(); ++j) {
    detail::require_positive(lambda[j], "gaussian_nd: lambda_j");
    expo += lambda[j] * x[j] * x[j];
  }
  return std::exp(-kPi * expo);
}

// -(d-1) prod uppers + sum_k lowers_k prod_{j != k} uppers_j
inline double bootstrap_combine(std::span<const double> lowers, std::span<const double> uppers) {
  if (lowers.size() != uppers.size() || lowers.empty()) {
    throw ParameterError("bootstrap_combine: lowers and uppers must have the same nonzero length");
  }
  const std::size_t d = lowers.size();
  // prefix/suffix products give prod_{j != k} without division
  std::vector<double> prefix(d + 1, 1.0), suffix(d + 1, 1.0);
  for (std::size_t j = 0; j < d; ++j) prefix[j + 1] = prefix[j] * uppers[j];
  for (std::size_t j = d; j-- > 0;) suffix[j] = suffix[j + 1] * uppers[j];
  double sum = -static_cast<double>(d - 1) * prefix[d];
  for (std::size_t k = 0; k < d; ++k) sum += lowers[k] * prefix[k] * suffix[k + 1];
  return sum;
}

class BoxExtremal {
 public:
  explicit BoxExtremal(BoxParams params, double tol = 1e-16) : params_(std::move(params)) {
    params_.validate();
    for (std::size_t j = 0; j < params_.dim(); ++j) {
      const double delta = params_.lambda[j] / (params_.a[j] * params_.a[j]);
      upper_.emplace_back(delta, ExtremalKind::Majorant, tol);
      lower_.emplace_back(delta, ExtremalKind::Minorant, tol);
    }
  }

  const BoxParams& params() const { return params_; }
  std::size_t dim() const { return params_.dim(); }
  const Extremal1D& axis_majorant(std::size_t j) const { return upper_[j]; }
  const Extremal1D& axis_minorant(std::size_t j) const { return lower_[j]; }

  double gaussian(std::span<const double> x) const { return gaussian_nd(params_.lambda, x); }

  double majorant(std::span<const double> x) const {
    check(x);
    double p = 1.0;
    for (std::size_t j = 0; j < dim(); ++j) p *= upper_[j](params_.a[j] * x[j]);
    return p;
  }

  double minorant(std::span<const double> x) const {
    check(x);
    std::vector<double> lo(dim()), up(dim());
    for (std::size_t j = 0; j < dim(); ++j) {
      up[j] = upper_[j](params_.a[j] * x[j]);
      lo[j] = lower_[j](params_.a[j] * x[j]);
    }
    return bootstrap_combine(lo, up);
  }

  double evaluate(ExtremalKind kind, std::span<const double> x) const {
    return kind == ExtremalKind::Majorant ? majorant(x) : minorant(x);
  }

  // Fourier transforms at xi (zero outside Q(a)).
  double majorant_fourier(std::span<const double> xi) const {
    check(xi);
    double p = 1.0;
    for (std::size_t j = 0; j < dim(); ++j) p *= axis_fourier(upper_[j], j, xi[j]);
    return p;
  }

  double minorant_fourier(std::span<const double> xi) const {
    check(xi);
    std::vector<double> lo(dim()), up(dim());
    for (std::size_t j = 0; j < dim(); ++j) {
      up[j] = axis_fourier(upper_[j], j, xi[j]);
      lo[j] = axis_fourier(lower_[j], j, xi[j]);
    }
    return bootstrap_combine(lo, up);
  }

  double fourier(ExtremalKind kind, std::span<const double> xi) const {
    return kind == ExtremalKind::Majorant ? majorant_fourier(xi) : minorant_fourier(xi);
  }

 private:
  void check(std::span<const double> x) const {
    if (x.size() != dim()) throw ParameterError("BoxExtremal: point dimension mismatch");
  }

  double axis_fourier(const Extremal1D& f, std::size_t j, double xi) const {
    const double aj = params_.a[j];
    return f.fourier(xi / aj) / aj;
  }

  BoxParams params_;
  std::vector<Extremal1D> upper_;
  std::vector<Extremal1D> lower_;
};

namespace detail {

// Small per-axis quantities of the theta ratios:
//   e0 = Theta(0; it) - 1,  eh = 1 - Theta(1/2; it),
//   eps = 1 - Theta(1/2)/Theta(0) = (eh + e0) / (1 + e0).
struct AxisTheta {
  double e0;
  double eh;
  double eps;
};

inline AxisTheta axis_theta(double t, double tol = theta::kDefaultTol) {
  const double e0 = theta::theta_zero_excess(t, tol);
  const double eh = theta::theta_half_deficit(t, tol);
  return {e0, eh, (eh + e0) / (1.0 + e0)};
}

// prod_j (1 + e_j) - 1 without cancellation.
inline double product_excess(std::span<const double> e) {
  double log_sum = 0.0;
  for (double v : e) log_sum += std::log1p(v);
  return std::expm1(log_sum);
}

// sum_{k >= 2} (-1)^k e_k(eps): the part of prod(1 - eps) not captured by 1 - sum eps.
inline double higher_symmetric(std::span<const double> eps) {
  // e[k] = elementary symmetric polynomial of degree k
  std::vector<double> e(eps.size() + 1, 0.0);
  e[0] = 1.0;
  for (double x : eps) {
    for (std::size_t k = e.size() - 1; k >= 1; --k) e[k] += e[k - 1] * x;
  }
  double s = 0.0;
  for (std::size_t k = 2; k < e.size(); ++k) s += (k % 2 == 0 ? 1.0 : -1.0) * e[k];
  return s;
}

}  // namespace detail

// Closed-form theta quantities of a box configuration (lambda_j, a_j) or,
// for the subordination integrals, of the diagonal point lambda = t u.
struct ThetaProfile {
  std::vector<detail::AxisTheta> axes;
  double inv_sqrt_lambda = 1.0;  // prod lambda_j^{-1/2}

  static ThetaProfile of(const BoxParams& p, double tol = theta::kDefaultTol) {
    ThetaProfile out;
    for (std::size_t j = 0; j < p.dim(); ++j) {
      out.axes.push_back(detail::axis_theta(p.theta_t(j), tol));
      out.inv_sqrt_lambda /= std::sqrt(p.lambda[j]);
    }
    return out;
  }

  // prod Theta(0) - 1
  double zero_product_excess() const {
    std::vector<double> e;
    for (const auto& ax : axes) e.push_back(ax.e0);
    return detail::product_excess(e);
  }

  // S = sum_j eps_j, so that sum_j Theta(1/2)/Theta(0) - (d - 1) = 1 - S.
  double ratio_deficit() const {
    double s = 0.0;
    for (const auto& ax : axes) s += ax.eps;
    return s;
  }

  // 1 - phi_a = 1 - (1 - S)(1 + P) = S - P + S P.
  double minorant_gap_factor() const {
    const double s = ratio_deficit();
    const double p = zero_product_excess();
    return s - p + s * p;
  }

  // 1 - prod Theta(1/2)
  double half_product_deficit() const {
    double log_sum = 0.0;
    for (const auto& ax : axes) log_sum += std::log1p(-ax.eh);
    return -std::expm1(log_sum);
  }

  double zero_product() const { return 1.0 + zero_product_excess(); }
  double half_product() const { return 1.0 - half_product_deficit(); }
  double bootstrap_factor() const { return (1.0 - ratio_deficit()) * zero_product(); }
};

// prod lambda_j^{-1/2} Theta(0; i a_j^2 / lambda_j)
inline double majorant_integral_nd(const BoxParams& p) {
  p.validate();
  const auto prof = ThetaProfile::of(p);
  return prof.inv_sqrt_lambda * prof.zero_product();
}

// prod lambda_j^{-1/2} Theta(1/2; i a_j^2 / lambda_j): no band-limited
// minorant can have a larger integral.
inline double minorant_upper_bound_nd(const BoxParams& p) {
  p.validate();
  const auto prof = ThetaProfile::of(p);
  return prof.inv_sqrt_lambda * prof.half_product();
}

// { sum_j Theta(1/2)/Theta(0) - (d-1) } prod_j Theta(0) lambda_j^{-1/2}; may be negative.
inline double minorant_integral_nd(const BoxParams& p) {
  p.validate();
  const auto prof = ThetaProfile::of(p);
  return prof.inv_sqrt_lambda * prof.bootstrap_factor();
}

inline double exact_gaussian_integral(const BoxParams& p) {
  double v = 1.0;
  for (double l : p.lambda) v /= std::sqrt(l);
  return v;
}

struct Certificate {
  double lhs = 0.0;     // minorant_upper_bound_nd
  double rhs = 0.0;     // (1 + 5 d e^{-pi gamma}) minorant_integral_nd
  double excess = 0.0;  // lhs / minorant_integral_nd - 1 (NaN if the integral is not positive)
  double allowance = 0.0;  // 5 d e^{-pi gamma}
  bool ok = false;
};

// Checks upper bound <= (1 + 5 d e^{-pi gamma}) * integral of the bootstrap minorant.
// The decision is taken on the excess ratio, which is computed from the small
// per-axis deficits and so stays meaningful when both sides agree to many digits.
inline Certificate asymptotic_certificate(const BoxParams& p) {
  p.validate();
  const auto prof = ThetaProfile::of(p);
  const double d = static_cast<double>(p.dim());
  Certificate c;
  c.allowance = 5.0 * d * std::exp(-kPi * p.gamma());
  c.lhs = prof.inv_sqrt_lambda * prof.half_product();
  const double integral = prof.inv_sqrt_lambda * prof.bootstrap_factor();
  c.rhs = (1.0 + c.allowance) * integral;
  const double s = prof.ratio_deficit();
  if (integral > 0.0 && s < 1.0) {
    std::vector<double> eps;
    for (const auto& ax : prof.axes) eps.push_back(ax.eps);
    c.excess = detail::higher_symmetric(eps) / (1.0 - s);
    c.ok = c.excess <= c.allowance;
  } else {
    c.excess = std::nan("");
    c.ok = false;
  }
  return c;
}

}  // namespace bandlimit
