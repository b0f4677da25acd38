#pragma once

// Gaussian subordination: one-sided band-limited approximations of radial
// targets, obtained by integrating the box extremal functions of G_{tu}
// against the target's diagonal density w(t).
//
// Values are formed as target + int (H_t - G_t) w dt. The difference decays
// like the aliasing error exp(-pi a^2 / t) at small t, so this stays finite
// for the Power family, whose mixture only converges after renormalisation.
// Where w < 0 the roles of majorant and minorant are exchanged pointwise in t.

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "bandlimit/box_extremal.hpp"
#include "bandlimit/errors.hpp"
#include "bandlimit/measures.hpp"
#include "bandlimit/quadrature.hpp"

namespace bandlimit {

inline ExtremalKind opposite(ExtremalKind k) {
  return k == ExtremalKind::Majorant ? ExtremalKind::Minorant : ExtremalKind::Majorant;
}

namespace detail {

// Below this multiple of a_min^2 the extremal functions agree with the Gaussian
// to ~exp(-75) and the difference is dropped.
inline constexpr double kAliasingCutoff = kPi / 75.0;

inline BoxParams diagonal_box(double t, std::span<const double> a) {
  return BoxParams(std::vector<double>(a.size(), t), std::vector<double>(a.begin(), a.end()));
}

inline double min_of(std::span<const double> a) {
  double m = a[0];
  for (double v : a) m = std::min(m, v);
  return m;
}

inline void check_box(std::span<const double> a, std::size_t d, const char* where) {
  if (a.size() != d) throw ParameterError(std::string(where) + ": box dimension mismatch");
  for (double v : a) require_positive(v, where);
}

// Gap densities of the single Gaussian G_{tu}: the integrals of M - G and G - L.
inline double gaussian_gap_density(double t, std::span<const double> a, ExtremalKind kind) {
  const auto prof = ThetaProfile::of(diagonal_box(t, a));
  const double g = kind == ExtremalKind::Majorant ? prof.zero_product_excess() : prof.minorant_gap_factor();
  return prof.inv_sqrt_lambda * g;
}

}  // namespace detail

// int (H_t(x) - G_t(x)) w(t) dt with H = majorant or minorant according to
// kind and the sign of w. negative_density swaps the roles throughout.
inline quad::QuadResult subordinate_difference(const DiagonalMeasure& w, std::span<const double> a,
                                               std::span<const double> x, ExtremalKind kind,
                                               bool negative_density, double tol = 1e-10) {
  detail::check_box(a, x.size(), "subordinate_difference");
  const ExtremalKind role = negative_density ? opposite(kind) : kind;
  const double cutoff = detail::kAliasingCutoff * detail::min_of(a) * detail::min_of(a);
  return w.integrate(
      [&](double t) {
        if (t < cutoff) return 0.0;
        BoxExtremal box(detail::diagonal_box(t, a));
        return box.evaluate(role, x) - box.gaussian(x);
      },
      tol);
}

inline double subordinate_value(const RadialTarget& target, std::span<const double> a, std::span<const double> x,
                                ExtremalKind kind, double tol = 1e-10) {
  target.validate();
  detail::check_box(a, target.dim, "subordinate_value");
  if (x.size() != target.dim) throw ParameterError("subordinate_value: point dimension mismatch");
  const auto diff = subordinate_difference(measure_for(target), a, x, kind, target.negative_density(), tol);
  return target_value(target, x) + diff.value;
}

// L1 distance between the target and its subordinated approximant.
inline quad::QuadResult gap_integral(const DiagonalMeasure& w, std::span<const double> a, ExtremalKind kind,
                                     bool negative_density = false, double tol = 1e-10) {
  for (double v : a) detail::require_positive(v, "gap_integral: a_j");
  const ExtremalKind role = negative_density ? opposite(kind) : kind;
  const double sign = negative_density ? -1.0 : 1.0;
  auto r = w.integrate([&](double t) { return sign * detail::gaussian_gap_density(t, a, role); }, tol);
  return r;
}

inline quad::QuadResult gap_integral(const RadialTarget& target, std::span<const double> a, ExtremalKind kind,
                                     double tol = 1e-10) {
  target.validate();
  detail::check_box(a, target.dim, "gap_integral");
  return gap_integral(measure_for(target), a, kind, target.negative_density(), tol);
}

// Lower bound on int (G - F) valid for every band-limited minorant F.
inline quad::QuadResult minorant_lower_bound(const DiagonalMeasure& w, std::span<const double> a,
                                             double tol = 1e-10) {
  for (double v : a) detail::require_positive(v, "minorant_lower_bound: a_j");
  return w.integrate(
      [&](double t) {
        const auto prof = ThetaProfile::of(detail::diagonal_box(t, a));
        return prof.inv_sqrt_lambda * prof.half_product_deficit();
      },
      tol);
}

inline quad::QuadResult minorant_lower_bound(const RadialTarget& target, std::span<const double> a,
                                             double tol = 1e-10) {
  target.validate();
  detail::check_box(a, target.dim, "minorant_lower_bound");
  if (target.negative_density()) {
    throw PreconditionError("minorant_lower_bound needs a non-negative mixture density");
  }
  return minorant_lower_bound(measure_for(target), a, tol);
}

struct TruncatedRatioCheck {
  double factor = 0.0;  // int (upper bound) / int (bootstrap minorant)
  double bound = 0.0;   // 1 + 5 d exp(-pi alpha^2 / R)
  bool ok = false;
};

// Measure truncated to (0, R]: compares the best-possible minorant integral
// with that of the subordinated bootstrap minorant.
inline TruncatedRatioCheck truncated_minorant_ratio(const RadialTarget& target, std::span<const double> a, double R,
                                                    double tol = 1e-10) {
  target.validate();
  detail::check_box(a, target.dim, "truncated_minorant_ratio");
  detail::require_positive(R, "truncated_minorant_ratio: R");
  if (target.negative_density()) throw PreconditionError("truncated_minorant_ratio needs a non-negative mixture density");
  const auto w = measure_for(target).truncated(R);
  const double d = static_cast<double>(target.dim);
  const double amin = detail::min_of(a);
  // numerator - denominator = int t^{-d/2} (phi gap - half deficit) w
  auto excess = w.integrate(
      [&](double t) {
        const auto prof = ThetaProfile::of(detail::diagonal_box(t, a));
        return prof.inv_sqrt_lambda * (prof.minorant_gap_factor() - prof.half_product_deficit());
      },
      tol);
  auto denom = w.integrate(
      [&](double t) {
        const auto prof = ThetaProfile::of(detail::diagonal_box(t, a));
        return prof.inv_sqrt_lambda * prof.bootstrap_factor();
      },
      tol);
  TruncatedRatioCheck c;
  c.bound = 1.0 + 5.0 * d * std::exp(-kPi * amin * amin / R);
  if (denom.value > 0.0) {
    c.factor = 1.0 + excess.value / denom.value;
    c.ok = c.factor <= c.bound;
  } else {
    c.factor = std::nan("");
  }
  return c;
}

// Power-family constant A(d, sigma) in the transform A / |xi|^{d + sigma}.
inline double power_kernel_constant(std::size_t d, double sigma) {
  const double dd = static_cast<double>(d);
  return std::pow(kPi, -sigma - 0.5 * dd) * std::tgamma(0.5 * (dd + sigma)) / std::tgamma(-0.5 * sigma);
}

// Fourier transform of the target away from the origin: int t^{-d/2} exp(-pi |xi|^2 / t) w(t) dt.
inline double subordinated_kernel(const RadialTarget& target, std::span<const double> xi, double tol = 1e-12) {
  target.validate();
  if (xi.size() != target.dim) throw ParameterError("subordinated_kernel: dimension mismatch");
  const double r = euclidean_norm(xi);
  const double d = static_cast<double>(target.dim);
  if (target.family == Family::Power) {
    if (r == 0.0) throw PreconditionError("subordinated_kernel: power kernel is singular at 0");
    return power_kernel_constant(target.dim, target.sigma) / std::pow(r, d + target.sigma);
  }
  const auto w = measure_for(target);
  return w.integrate([&](double t) { return std::pow(t, -0.5 * d) * std::exp(-kPi * r * r / t); }, tol).value;
}

// Sampled check that the subordinated approximant lies on the claimed side of
// the target, in the cube [-extent, extent]^d. Used as a guard for the Power
// family, whose signed density lies outside the non-negative theory.
inline quad::ScanReport subordination_scan(const RadialTarget& target, std::span<const double> a, ExtremalKind kind,
                                           std::size_t samples, double extent, std::uint64_t seed,
                                           double tol = 1e-10) {
  target.validate();
  detail::check_box(a, target.dim, "subordination_scan");
  quad::QuasiRandomSampler sampler(target.dim, -extent, extent, seed);
  const auto w = measure_for(target);
  const bool neg = target.negative_density();
  // margin = approximant - target for majorants, target - approximant for minorants
  auto diff = [&](std::span<const double> x) { return subordinate_difference(w, a, x, kind, neg, tol).value; };
  auto zero = [](std::span<const double>) { return 0.0; };
  if (kind == ExtremalKind::Majorant) return quad::domination_scan(diff, zero, sampler, samples);
  return quad::domination_scan(zero, diff, sampler, samples);
}

// Throws InvariantError when the scan finds a violation beyond slack.
inline quad::ScanReport require_one_sided(const RadialTarget& target, std::span<const double> a, ExtremalKind kind,
                                          std::size_t samples, double extent, std::uint64_t seed,
                                          double slack = 1e-9) {
  auto report = subordination_scan(target, a, kind, samples, extent, seed);
  if (!report.held(slack)) {
    throw InvariantError(std::string("subordinated ") + to_string(kind) + " of the " + to_string(target.family) +
                         " target crosses the target (worst margin " + std::to_string(report.worst_violation) +
                         ")");
  }
  return report;
}

}  // namespace bandlimit
