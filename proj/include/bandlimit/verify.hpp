#pragma once

// Numerical cross-checks of the box extremal functions against their
// closed forms: quadrature of the integrals, domination scans, lattice
// interpolation residuals and out-of-band Fourier samples.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "bandlimit/box_extremal.hpp"
#include "bandlimit/quadrature.hpp"

namespace bandlimit {

// Axis spec for integrating an extremal function of spectral half-width a:
// sin^2(pi a x) / x^2 tails with period 1/a. Cells and windows are whole
// multiples of the period.
inline quad::QuadSpec extremal_axis_spec(double a, double tol = 1e-10, double cell = 2.0, int windows = 4) {
  quad::QuadSpec s;
  s.tol = tol;
  s.tail_mode = quad::TailMode::QuadraticTail;
  const double period = 1.0 / a;
  // smallest cell that is a whole number of periods and >= the requested width
  s.cell = period * std::max(1.0, std::ceil(cell / period));
  s.window = s.cell * std::ceil(std::max(8.0, 8.0 * period) / s.cell);
  s.windows = windows;
  return s;
}

struct IntegralCheck {
  double closed_form = 0.0;
  double quadrature = 0.0;
  double error_estimate = 0.0;  // quadrature error estimate or Monte Carlo standard error
  bool monte_carlo = false;

  double abs_diff() const { return std::abs(quadrature - closed_form); }
  double rel_diff() const { return abs_diff() / std::max(std::abs(closed_form), 1e-300); }
};

// Closed form for the majorant, the minorant, or (for the Gaussian itself) the exact integral.
inline double closed_form_integral(const BoxParams& p, ExtremalKind kind) {
  return kind == ExtremalKind::Majorant ? majorant_integral_nd(p) : minorant_integral_nd(p);
}

// Tensor quadrature for d <= 2; importance-sampled Monte Carlo for d = 3.
inline IntegralCheck integral_check(const BoxExtremal& box, ExtremalKind kind, double tol = 1e-9,
                                    std::size_t mc_samples = 2'000'000, std::uint64_t seed = 0) {
  IntegralCheck out;
  out.closed_form = closed_form_integral(box.params(), kind);
  const std::size_t d = box.dim();
  auto f = [&](std::span<const double> x) { return box.evaluate(kind, x); };
  if (d <= 2) {
    std::vector<quad::QuadSpec> specs;
    for (std::size_t j = 0; j < d; ++j) specs.push_back(extremal_axis_spec(box.params().a[j], tol));
    auto r = quad::quad_nd(f, d, specs);
    out.quadrature = r.value;
    out.error_estimate = r.error_estimate;
    return out;
  }
  std::vector<double> scales;
  for (std::size_t j = 0; j < d; ++j) scales.push_back(1.0 / std::sqrt(box.params().lambda[j]));
  auto mc = quad::monte_carlo(f, scales, mc_samples, seed);
  out.quadrature = mc.value;
  out.error_estimate = mc.standard_error;
  out.monte_carlo = true;
  return out;
}

struct SandwichReport {
  quad::ScanReport majorant;  // M - G
  quad::ScanReport minorant;  // G - L

  bool held(double slack) const { return majorant.held(slack) && minorant.held(slack); }
  double worst() const { return std::min(majorant.worst_violation, minorant.worst_violation); }
};

inline SandwichReport sandwich_scan(const BoxExtremal& box, std::size_t samples, double extent, std::uint64_t seed) {
  SandwichReport out;
  auto G = [&](std::span<const double> x) { return box.gaussian(x); };
  auto M = [&](std::span<const double> x) { return box.majorant(x); };
  auto L = [&](std::span<const double> x) { return box.minorant(x); };
  quad::QuasiRandomSampler s1(box.dim(), -extent, extent, seed);
  out.majorant = quad::domination_scan(M, G, s1, samples);
  quad::QuasiRandomSampler s2(box.dim(), -extent, extent, seed);
  out.minorant = quad::domination_scan(G, L, s2, samples);
  return out;
}

// max |M(k/a) - G(k/a)| over |k_j| <= K.
inline double majorant_interpolation_residual(const BoxExtremal& box, int K) {
  const std::size_t d = box.dim();
  const auto side = static_cast<std::size_t>(2 * K + 1);
  std::size_t count = 1;
  for (std::size_t j = 0; j < d; ++j) count *= side;
  double worst = 0.0;
  std::vector<double> x(d);
  for (std::size_t i = 0; i < count; ++i) {
    std::size_t rest = i;
    for (std::size_t j = 0; j < d; ++j) {
      x[j] = (static_cast<double>(rest % side) - K) / box.params().a[j];
      rest /= side;
    }
    worst = std::max(worst, std::abs(box.majorant(x) - box.gaussian(x)));
  }
  return worst;
}

// max |l(k + 1/2) - g(k + 1/2)| over |k| <= K for a one-dimensional minorant.
inline double minorant_interpolation_residual(const Extremal1D& l, int K) {
  double worst = 0.0;
  for (int k = -K - 1; k <= K; ++k) {
    const double x = k + 0.5;
    worst = std::max(worst, std::abs(l(x) - gaussian_value(l.delta(), x)));
  }
  return worst;
}

struct BandLimitSample {
  double xi = 0.0;
  double closed_form = 0.0;
  double quadrature = 0.0;  // modulus of the numerically sampled transform
  double error_estimate = 0.0;
};

// The transform of the 1-D extremal function at xi, by the closed form and by
// oscillatory quadrature. Windows are whole multiples of the beat periods
// 1 / |xi - k| for the integer shifts k that appear in f cos(2 pi xi x).
inline BandLimitSample band_limit_sample(const Extremal1D& f, double xi, double tol = 1e-10) {
  BandLimitSample out;
  out.xi = xi;
  out.closed_form = f.fourier(xi);
  quad::QuadSpec s;
  s.tol = tol;
  s.tail_mode = quad::TailMode::QuadraticTail;
  s.windows = 6;
  double beat = std::abs(xi - std::round(xi));
  double period = beat > 1e-12 ? 1.0 / beat : 1.0;
  // keep the window at >= 16 and a whole number of periods
  s.window = period * std::ceil(16.0 / period);
  s.cell = std::min(1.0, s.window / 16.0);
  auto r = quad::fourier_sample([&](double x) { return f(x); }, xi, s);
  out.quadrature = std::abs(r.value);
  out.error_estimate = r.error_estimate;
  return out;
}

}  // namespace bandlimit
