#pragma once

// Jacobi theta function on the imaginary axis,
//
//   Theta(v; i t) = sum_{n in Z} e(n v) q^{n^2},   q = exp(-pi t),  t > 0,
//
// evaluated three ways: the q-series, the modular dual obtained from Poisson
// summation of a Gaussian, and the Jacobi triple product. For real v the value
// is real and even in v, so the sign convention of e(.) is immaterial.
//
// The "deviation" entry points return Theta - 1 without forming Theta first;
// gap integrals over thin spectral boxes need these small quantities to full
// relative accuracy.

#include <cmath>
#include <cstddef>
#include <utility>

#include "bandlimit/errors.hpp"

namespace bandlimit::theta {

inline constexpr double kDefaultTol = 1e-12;

// Below this t the q-series needs many terms; evaluation goes through the dual.
inline constexpr double kDualCrossover = 0.05;

inline constexpr std::size_t kMaxTerms = 10'000'000;

struct ThetaArg {
  double v = 0.0;
  double t = 1.0;

  ThetaArg() = default;
  ThetaArg(double phase, double imag) : v(phase), t(imag) { detail::require_positive(t, "theta: t"); }

  double nome() const { return std::exp(-kPi * t); }
};

namespace detail {

// cos(2 pi n v) with the argument reduced first, so v = 1/2, 1/4 stay exact.
inline double cos_phase(double n, double v) {
  const double x = n * v;
  const double r = x - std::round(x);
  return std::cos(2.0 * kPi * r);
}

// Bound on sum_{k >= K} exp(-c pi k^2) for K >= 1 (term plus integral tail).
inline double gaussian_tail(double c, double k) {
  const double e = std::exp(-c * kPi * k * k);
  return e * (1.0 + 1.0 / (2.0 * c * kPi * k));
}

inline void check_tol(double tol) { bandlimit::detail::require_positive(tol, "theta: tol"); }

// sum_{n >= 1} cos(2 pi n v) q^{n^2 - shift}, stopping once the remaining
// terms are below tol.  shift = 0 gives (Theta - 1)/2, shift = 1 gives the
// nome-scaled tail used in asymptotic checks.
inline double half_tail_series(double v, double t, double tol, double shift) {
  const double q = std::exp(-kPi * t);
  double sum = 0.0;
  for (std::size_t n = 1; n < kMaxTerms; ++n) {
    const double nn = static_cast<double>(n);
    const double expo = nn * nn - shift;
    const double term = std::exp(-kPi * t * expo);
    sum += detail::cos_phase(nn, v) * term;
    // remaining: sum_{m > n} q^{m^2 - shift} <= q^{(n+1)^2 - shift} / (1 - q)
    const double next = (nn + 1.0) * (nn + 1.0) - shift;
    const double remaining = std::exp(-kPi * t * next) / (1.0 - q);
    if (2.0 * remaining < tol) {
      return sum;
    }
  }
  throw ConvergenceError("theta series did not reach tolerance", tol);
}

}  // namespace detail

// Direct q-series.
inline double theta_series(const ThetaArg& arg, double tol = kDefaultTol) {
  detail::check_tol(tol);
  return 1.0 + 2.0 * detail::half_tail_series(arg.v, arg.t, tol, 0.0);
}

inline double theta_series(double v, double t, double tol = kDefaultTol) {
  return theta_series(ThetaArg(v, t), tol);
}

// delta^{1/2} sum_m exp(-delta pi (v + m)^2)  ==  Theta(v; i / delta).
inline double theta_via_poisson(double v, double delta, double tol = kDefaultTol) {
  bandlimit::detail::require_positive(delta, "theta_via_poisson: delta");
  detail::check_tol(tol);
  const double centre = -std::round(v);
  const double shift = v + centre;  // in [-1/2, 1/2]
  const double scale = std::sqrt(delta);
  double sum = std::exp(-delta * kPi * shift * shift);
  for (std::size_t j = 1; j < kMaxTerms; ++j) {
    const double jj = static_cast<double>(j);
    sum += std::exp(-delta * kPi * (shift + jj) * (shift + jj));
    sum += std::exp(-delta * kPi * (shift - jj) * (shift - jj));
    // any remaining node is at distance >= j + 1/2 from -v
    const double remaining = 2.0 * detail::gaussian_tail(delta, jj + 0.5);
    if (scale * remaining < tol) {
      return scale * sum;
    }
  }
  throw ConvergenceError("Gaussian lattice sum did not reach tolerance", tol);
}

// Jacobi triple product prod_{n>=1} (1 - q^{2n})(1 + q^{2n-1} e(v))(1 + q^{2n-1} e(-v)).
inline double theta_product(const ThetaArg& arg, double tol = kDefaultTol) {
  detail::check_tol(tol);
  const double q = arg.nome();
  const double c = std::cos(2.0 * kPi * (arg.v - std::round(arg.v)));
  double prod = 1.0;
  for (std::size_t n = 1; n < kMaxTerms; ++n) {
    const double nn = static_cast<double>(n);
    const double q_even = std::exp(-kPi * arg.t * 2.0 * nn);
    const double q_odd = std::exp(-kPi * arg.t * (2.0 * nn - 1.0));
    prod *= (1.0 - q_even) * (1.0 + 2.0 * q_odd * c + q_odd * q_odd);
    // |log| of all remaining factors <= 3 q^{2n+1} / ((1 - q)(1 - q^2))
    const double log_rest = 3.0 * q_odd * q * q / ((1.0 - q) * (1.0 - q * q));
    if (std::abs(prod) * std::expm1(log_rest) < tol) {
      return prod;
    }
  }
  throw ConvergenceError("theta product did not reach tolerance", tol);
}

inline double theta_product(double v, double t, double tol = kDefaultTol) {
  return theta_product(ThetaArg(v, t), tol);
}

// Preferred evaluator: q-series for t >= 0.05, modular dual below.
inline double theta(double v, double t, double tol = kDefaultTol) {
  bandlimit::detail::require_positive(t, "theta: t");
  if (t < kDualCrossover) {
    return theta_via_poisson(v, 1.0 / t, tol);
  }
  return theta_series(v, t, tol);
}

// Theta(v; it) - 1, accurate when it is tiny.
inline double theta_deviation(double v, double t, double tol = kDefaultTol) {
  bandlimit::detail::require_positive(t, "theta_deviation: t");
  detail::check_tol(tol);
  if (t < kDualCrossover) {
    return theta_via_poisson(v, 1.0 / t, tol) - 1.0;
  }
  return 2.0 * detail::half_tail_series(v, t, tol * 0.5, 0.0);
}

// (Theta(v; it) - 1) / (2 q). Finite even where q itself underflows.
inline double theta_deviation_scaled(double v, double t, double tol = kDefaultTol) {
  bandlimit::detail::require_positive(t, "theta_deviation_scaled: t");
  detail::check_tol(tol);
  if (t < kDualCrossover) {
    return (theta_via_poisson(v, 1.0 / t, tol) - 1.0) / (2.0 * std::exp(-kPi * t));
  }
  return detail::half_tail_series(v, t, tol, 1.0);
}

// Theta(0; it) - 1 >= 0.
inline double theta_zero_excess(double t, double tol = kDefaultTol) { return theta_deviation(0.0, t, tol); }

// 1 - Theta(1/2; it), in (0, 1).
inline double theta_half_deficit(double t, double tol = kDefaultTol) { return -theta_deviation(0.5, t, tol); }

struct RatioBounds {
  double lower;
  double upper;
};

// Bounds 1 - 4q/(1-q)^2 < Theta(1/2; it)/Theta(0; it) < exp(-2q).
inline RatioBounds theta_ratio_bounds(double t) {
  bandlimit::detail::require_positive(t, "theta_ratio_bounds: t");
  const double q = std::exp(-kPi * t);
  return {1.0 - 4.0 * q / ((1.0 - q) * (1.0 - q)), std::exp(-2.0 * q)};
}

// ratio - lower and upper - ratio for the bounds above. Once q is small all
// three numbers round to 1, so the margins are assembled from q-series in
// which the leading terms have already cancelled:
//   lower: [4q(1 + e0) - (e0 + eh)(1 - q)^2] / [(1 - q)^2 (1 + e0)],   ~ 16 q^2
//   upper: (e0 + eh) / (1 + e0) + expm1(-2q),                           ~ 2 q
// with e0 + eh = 4 sum_{n odd} q^{n^2} and e0 = 2 sum_{n >= 1} q^{n^2}.
struct RatioMargins {
  double lower;
  double upper;

  bool strict() const { return lower > 0.0 && upper > 0.0; }
};

inline RatioMargins theta_ratio_margins(double t) {
  bandlimit::detail::require_positive(t, "theta_ratio_margins: t");
  const double q = std::exp(-kPi * t);
  double all = 0.0;        // sum_{n >= 1} q^{n^2}
  double odd_tail = 0.0;   // sum_{n odd >= 3} q^{n^2}
  for (std::size_t n = 1; n < kMaxTerms; ++n) {
    const double nn = static_cast<double>(n);
    const double term = std::exp(-kPi * t * nn * nn);
    all += term;
    if (n % 2 == 1 && n >= 3) odd_tail += term;
    if (term <= 1e-18 * all) break;
  }
  const double odd = q + odd_tail;
  const double one_e0 = 1.0 + 2.0 * all;
  const double num = -4.0 * odd_tail + 8.0 * q * all + 8.0 * q * odd - 4.0 * q * q * odd;
  return {num / ((1.0 - q) * (1.0 - q) * one_e0), 4.0 * odd / one_e0 + std::expm1(-2.0 * q)};
}

}  // namespace bandlimit::theta
