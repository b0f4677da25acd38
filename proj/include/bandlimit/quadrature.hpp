#pragma once

// Verification machinery: adaptive Gauss-Kronrod quadrature on finite and
// infinite ranges, iterated product quadrature, importance-sampled Monte
// Carlo, one-sided domination scans and single-frequency Fourier sampling.
//
// Integrals over the real line are organised by the integrand's decay class:
//
//   GaussianTail  - cells are added outward until contributions vanish.
//   PowerTail(p)  - |f| ~ P(x)/|x|^p with P bounded and periodic. The window
//                   integrals I(T), I(2T), ... are Richardson-extrapolated in
//                   1/T with exponents p-1, p, p+1, ...  Windows must be
//                   multiples of the oscillation period for the boundary
//                   terms to drop out.
//
// Band-limited extremal functions decay like sin^2(pi a x)/x^2, i.e.
// PowerTail(2) with period 1/a.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <queue>
#include <random>
#include <span>
#include <vector>

#include "bandlimit/errors.hpp"

namespace bandlimit::quad {

using Fn1 = std::function<double(double)>;
using FnN = std::function<double(std::span<const double>)>;

struct QuadResult {
  double value = 0.0;
  double error_estimate = 0.0;
};

enum class TailMode { GaussianTail, QuadraticTail, PowerTail };
enum class Domain { RealLine, HalfLine };

struct QuadSpec {
  double tol = 1e-10;
  std::size_t max_subdivisions = 20000;
  TailMode tail_mode = TailMode::QuadraticTail;
  double tail_power = 2.0;  // used by PowerTail; QuadraticTail means 2
  Domain domain = Domain::RealLine;
  double cell = 1.0;        // integration cell width; window ends fall on cells
  double window = 8.0;      // first Richardson window (multiple of the period)
  int windows = 4;          // number of doubling windows
  double gaussian_limit = 1e4;

  double decay_power() const { return tail_mode == TailMode::PowerTail ? tail_power : 2.0; }

  void validate() const {
    detail::require_positive(tol, "QuadSpec: tol");
    detail::require_positive(cell, "QuadSpec: cell");
    detail::require_positive(window, "QuadSpec: window");
    if (max_subdivisions == 0) throw ParameterError("QuadSpec: max_subdivisions must be positive");
    if (windows < 1 || windows > 12) throw ParameterError("QuadSpec: windows must be in [1, 12]");
    if (tail_mode == TailMode::PowerTail && !(tail_power > 1.0)) {
      throw ParameterError("QuadSpec: tail power must exceed 1 for integrability");
    }
  }
};

namespace detail {

// Gauss-Kronrod 10/21 abscissae and weights (QUADPACK qk21).
inline constexpr std::array<double, 11> kXgk = {
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.000000000000000000000000000000000};
inline constexpr std::array<double, 11> kWgk = {
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077715201892965, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821};
inline constexpr std::array<double, 5> kWg = {
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651338};

struct Segment {
  double a, b, value, error;
  bool operator<(const Segment& other) const { return error < other.error; }
};

inline Segment gk21(const Fn1& f, double a, double b) {
  const double centre = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = f(centre);
  double kronrod = fc * kWgk[10];
  double gauss = 0.0;
  for (std::size_t j = 0; j < 10; ++j) {
    const double dx = half * kXgk[j];
    const double pair = f(centre - dx) + f(centre + dx);
    kronrod += kWgk[j] * pair;
    if (j % 2 == 1) gauss += kWg[j / 2] * pair;
  }
  const double value = kronrod * half;
  const double error = std::abs((kronrod - gauss) * half);
  return {a, b, value, error};
}

}  // namespace detail

// Globally adaptive bisection on [a, b] with the 10/21 Gauss-Kronrod pair.
inline QuadResult integrate_interval(const Fn1& f, double a, double b, double tol,
                                     std::size_t max_subdivisions = 20000) {
  if (a == b) return {};
  std::priority_queue<detail::Segment> heap;
  auto first = detail::gk21(f, a, b);
  double total = first.value;
  double err = first.error;
  heap.push(first);
  std::size_t count = 1;
  while (err > tol) {
    if (count >= max_subdivisions) {
      throw ConvergenceError("adaptive quadrature exhausted its subdivision budget", err);
    }
    auto worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    auto left = detail::gk21(f, worst.a, mid);
    auto right = detail::gk21(f, mid, worst.b);
    total += left.value + right.value - worst.value;
    err += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
    ++count;
    if (!(mid > worst.a && mid < worst.b)) {
      throw ConvergenceError("adaptive quadrature hit floating-point resolution", err);
    }
  }
  // recompute the error sum to shed accumulated cancellation
  double e = 0.0;
  while (!heap.empty()) {
    e += heap.top().error;
    heap.pop();
  }
  return {total, e};
}

namespace detail {

inline QuadResult integrate_cells(const Fn1& f, double from, double to, const QuadSpec& spec,
                                  double cell_tol) {
  QuadResult out;
  const auto cells = static_cast<std::size_t>(std::llround((to - from) / spec.cell));
  for (std::size_t k = 0; k < cells; ++k) {
    const double lo = from + spec.cell * static_cast<double>(k);
    const double hi = (k + 1 == cells) ? to : lo + spec.cell;
    auto r = integrate_interval(f, lo, hi, cell_tol, spec.max_subdivisions);
    out.value += r.value;
    out.error_estimate += r.error_estimate;
  }
  return out;
}

inline QuadResult gaussian_tail_integral(const Fn1& f, const QuadSpec& spec) {
  const double cell_tol = spec.tol * 1e-2;
  QuadResult out;
  int quiet = 0;
  const bool both = spec.domain == Domain::RealLine;
  for (double x = 0.0; x < spec.gaussian_limit; x += spec.cell) {
    auto r = integrate_interval(f, x, x + spec.cell, cell_tol, spec.max_subdivisions);
    double chunk = r.value;
    double chunk_err = r.error_estimate;
    if (both) {
      auto l = integrate_interval(f, -x - spec.cell, -x, cell_tol, spec.max_subdivisions);
      chunk += l.value;
      chunk_err += l.error_estimate;
    }
    out.value += chunk;
    out.error_estimate += chunk_err;
    // two consecutive negligible cells end the scan
    if (std::abs(chunk) < spec.tol * 1e-3) {
      if (++quiet >= 2) {
        out.error_estimate += std::abs(chunk);
        return out;
      }
    } else {
      quiet = 0;
    }
  }
  throw ConvergenceError("Gaussian-tail integrand did not decay within the range limit", out.error_estimate);
}

inline QuadResult power_tail_integral(const Fn1& f, const QuadSpec& spec) {
  const double p = spec.decay_power();
  const double cell_tol = spec.tol * 1e-3;
  const bool both = spec.domain == Domain::RealLine;
  // window integrals I(T 2^i)
  std::vector<double> window_values;
  QuadResult acc;
  double reach = 0.0;
  for (int i = 0; i < spec.windows; ++i) {
    const double target = spec.window * std::ldexp(1.0, i);
    auto r = integrate_cells(f, reach, target, spec, cell_tol);
    acc.value += r.value;
    acc.error_estimate += r.error_estimate;
    if (both) {
      auto l = integrate_cells(f, -target, -reach, spec, cell_tol);
      acc.value += l.value;
      acc.error_estimate += l.error_estimate;
    }
    reach = target;
    window_values.push_back(acc.value);
  }
  // Richardson in h = 1/T, eliminating h^{p-1}, h^{p}, ...
  std::vector<double> row = window_values;
  double previous_best = row.back();
  for (int level = 1; level < spec.windows; ++level) {
    const double factor = std::pow(2.0, p - 1.0 + static_cast<double>(level - 1));
    std::vector<double> next;
    for (std::size_t i = 0; i + 1 < row.size(); ++i) {
      next.push_back((factor * row[i + 1] - row[i]) / (factor - 1.0));
    }
    previous_best = row.back();
    row = std::move(next);
  }
  const double best = row.back();
  return {best, std::abs(best - previous_best) + acc.error_estimate};
}

}  // namespace detail

// One-dimensional integral over the real line or the half line [0, inf).
inline QuadResult quad_1d(const Fn1& f, const QuadSpec& spec = {}) {
  spec.validate();
  if (spec.tail_mode == TailMode::GaussianTail) {
    return detail::gaussian_tail_integral(f, spec);
  }
  return detail::power_tail_integral(f, spec);
}

// Iterated product quadrature for d <= 3, one spec per axis.
inline QuadResult quad_nd(const FnN& f, std::size_t d, std::span<const QuadSpec> axes) {
  if (d == 0 || d > 3) throw ParameterError("quad_nd supports 1 <= d <= 3");
  if (axes.size() != d) throw ParameterError("quad_nd: one QuadSpec per axis required");
  std::vector<double> point(d, 0.0);
  double error = 0.0;
  std::function<double(std::size_t)> level = [&](std::size_t axis) -> double {
    if (axis == d) {
      return f(std::span<const double>(point));
    }
    auto r = quad_1d(
        [&](double x) {
          point[axis] = x;
          return level(axis + 1);
        },
        axes[axis]);
    if (axis == 0) error = r.error_estimate;
    return r.value;
  };
  const double value = level(0);
  return {value, error};
}

struct MonteCarloResult {
  double value = 0.0;
  double standard_error = 0.0;
  std::size_t samples = 0;
};

// Importance-sampled Monte Carlo over R^d with a product Cauchy proposal of
// per-axis scale; suited to integrands with inverse-square tails.
inline MonteCarloResult monte_carlo(const FnN& f, std::span<const double> scales, std::size_t samples,
                                    std::uint64_t seed) {
  if (samples < 2) throw ParameterError("monte_carlo: need at least two samples");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const std::size_t d = scales.size();
  std::vector<double> x(d);
  double mean = 0.0;
  double m2 = 0.0;
  for (std::size_t n = 1; n <= samples; ++n) {
    double density = 1.0;
    for (std::size_t j = 0; j < d; ++j) {
      const double u = unit(rng);
      const double s = scales[j];
      x[j] = s * std::tan(kPi * (u - 0.5));
      density *= 1.0 / (kPi * s * (1.0 + (x[j] / s) * (x[j] / s)));
    }
    const double sample = f(std::span<const double>(x)) / density;
    const double delta = sample - mean;
    mean += delta / static_cast<double>(n);
    m2 += delta * (sample - mean);
  }
  const double variance = m2 / static_cast<double>(samples - 1);
  return {mean, std::sqrt(variance / static_cast<double>(samples)), samples};
}

// Low-discrepancy points in a box: additive recurrence on the generalised
// golden ratio with a seeded random rotation.
class QuasiRandomSampler {
 public:
  QuasiRandomSampler(std::size_t dim, std::vector<double> lo, std::vector<double> hi, std::uint64_t seed = 0)
      : lo_(std::move(lo)), hi_(std::move(hi)), alpha_(dim), state_(dim) {
    if (dim == 0 || lo_.size() != dim || hi_.size() != dim) {
      throw ParameterError("QuasiRandomSampler: box dimensions do not match");
    }
    // phi_d is the positive root of x^{d+1} = x + 1
    double phi = 2.0;
    for (int it = 0; it < 64; ++it) phi = std::pow(1.0 + phi, 1.0 / static_cast<double>(dim + 1));
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (std::size_t j = 0; j < dim; ++j) {
      alpha_[j] = std::fmod(1.0 / std::pow(phi, static_cast<double>(j + 1)), 1.0);
      state_[j] = unit(rng);
    }
  }

  QuasiRandomSampler(std::size_t dim, double lo, double hi, std::uint64_t seed = 0)
      : QuasiRandomSampler(dim, std::vector<double>(dim, lo), std::vector<double>(dim, hi), seed) {}

  std::size_t dim() const { return alpha_.size(); }

  void next(std::span<double> out) {
    for (std::size_t j = 0; j < alpha_.size(); ++j) {
      state_[j] += alpha_[j];
      state_[j] -= std::floor(state_[j]);
      out[j] = lo_[j] + (hi_[j] - lo_[j]) * state_[j];
    }
  }

 private:
  std::vector<double> lo_, hi_, alpha_, state_;
};

// min over samples of upper(x) - lower(x). The one-sided inequality held on
// the sample set iff worst_violation >= -slack.
struct ScanReport {
  std::size_t samples = 0;
  double worst_violation = std::numeric_limits<double>::infinity();
  std::vector<double> worst_point;

  bool held(double slack) const { return worst_violation >= -slack; }
};

inline ScanReport domination_scan(const FnN& upper, const FnN& lower, QuasiRandomSampler& sampler,
                                  std::size_t n) {
  ScanReport report;
  std::vector<double> x(sampler.dim());
  for (std::size_t i = 0; i < n; ++i) {
    sampler.next(x);
    const double margin = upper(std::span<const double>(x)) - lower(std::span<const double>(x));
    if (margin < report.worst_violation || report.worst_point.empty()) {
      report.worst_violation = margin;
      report.worst_point = x;
    }
  }
  report.samples = n;
  return report;
}

struct FourierSample {
  std::complex<double> value;
  double error_estimate = 0.0;
};

// F^(xi) = int f(x) e^{-2 pi i x xi} dx on the real line. For PowerTail
// integrands the spec's window must be a multiple of the beat periods of
// f(x) cos(2 pi xi x); slow decay with small |xi| shows up in the estimate.
inline FourierSample fourier_sample(const Fn1& f, double xi, const QuadSpec& spec) {
  auto re = quad_1d([&](double x) { return f(x) * std::cos(2.0 * kPi * x * xi); }, spec);
  auto im = quad_1d([&](double x) { return -f(x) * std::sin(2.0 * kPi * x * xi); }, spec);
  return {{re.value, im.value}, re.error_estimate + im.error_estimate};
}

}  // namespace bandlimit::quad
