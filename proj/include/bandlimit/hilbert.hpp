#pragma once

// Hilbert-type inequalities for a-separated point sets,
//
//   -A sum |w_n|^2  <=  sum_{n != m} w_n conj(w_m) / |xi_n - xi_m|^{d+sigma}  <=  B sum |w_n|^2,
//
// with B = sum_{n != 0} |a n|^{-d-sigma} and A the alternating combination
// (2d - 1) B(a) - 2 sum_j B(a with a_j doubled).

#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "bandlimit/box_extremal.hpp"
#include "bandlimit/errors.hpp"
#include "bandlimit/measures.hpp"
#include "bandlimit/quadrature.hpp"
#include "bandlimit/theta.hpp"

namespace bandlimit {

using Point = std::vector<double>;

// max_j |x_j / a_j|
inline double a_norm(std::span<const double> x, std::span<const double> a) {
  if (x.size() != a.size()) throw ParameterError("a_norm: dimension mismatch");
  double m = 0.0;
  for (std::size_t j = 0; j < x.size(); ++j) m = std::max(m, std::abs(x[j] / a[j]));
  return m;
}

struct SeparatedSet {
  std::vector<Point> points;
  std::vector<double> a;

  std::size_t dim() const { return a.size(); }
};

inline bool check_separated(std::span<const Point> points, std::span<const double> a) {
  for (double v : a) detail::require_positive(v, "check_separated: a_j");
  Point diff(a.size());
  for (std::size_t k = 0; k < points.size(); ++k) {
    if (points[k].size() != a.size()) throw ParameterError("check_separated: point dimension mismatch");
    for (std::size_t l = k + 1; l < points.size(); ++l) {
      for (std::size_t j = 0; j < a.size(); ++j) diff[j] = points[k][j] - points[l][j];
      if (a_norm(diff, a) < 1.0) return false;
    }
  }
  return true;
}

inline bool check_separated(const SeparatedSet& s) { return check_separated(s.points, s.a); }

// Auto sums shells for d <= 2 and integrates theta products beyond.
enum class LatticeMethod { Auto, Shells, ThetaIntegral };

struct LatticeSumSpec {
  std::vector<double> a;
  double sigma = 1.0;
  double tol = 1e-10;
  LatticeMethod method = LatticeMethod::Auto;
  std::size_t max_terms = 200'000'000;

  std::size_t dim() const { return a.size(); }

  void validate() const {
    if (a.empty()) throw ParameterError("LatticeSumSpec: dimension must be at least 1");
    for (double v : a) detail::require_positive(v, "LatticeSumSpec: a_j");
    detail::require_positive(sigma, "LatticeSumSpec: sigma");
    detail::require_positive(tol, "LatticeSumSpec: tol");
  }
};

namespace detail {

// sum over the max-norm shell |n|_inf = k of |a n|^{-s}, using the symmetry
// in the sign of each coordinate. The shell is split by the first axis that
// attains |n_j| = k.
inline double shell_sum(std::span<const double> a, double s, long k, std::size_t& terms) {
  const std::size_t d = a.size();
  double total = 0.0;
  std::vector<long> hi(d);
  std::function<double(std::size_t, double, double)> rec = [&](std::size_t axis, double r2, double mult) {
    if (axis == d) {
      ++terms;
      return mult * std::pow(r2, -0.5 * s);
    }
    double acc = 0.0;
    if (hi[axis] < 0) {  // pinned axis, |n_j| = k
      const double v = a[axis] * static_cast<double>(k);
      return rec(axis + 1, r2 + v * v, mult * 2.0);
    }
    for (long m = 0; m <= hi[axis]; ++m) {
      const double v = a[axis] * static_cast<double>(m);
      acc += rec(axis + 1, r2 + v * v, mult * (m == 0 ? 1.0 : 2.0));
    }
    return acc;
  };
  for (std::size_t first = 0; first < d; ++first) {
    for (std::size_t i = 0; i < d; ++i) hi[i] = i < first ? k - 1 : k;
    hi[first] = -1;
    total += rec(0, 0.0, 1.0);
  }
  return total;
}

// int over the surface of [-1,1]^d of |a theta|^{-s}: the angular factor of
// the integral tail, which then reads face_integral * r^{-sigma} / sigma.
inline double face_integral(std::span<const double> a, double s) {
  const std::size_t d = a.size();
  if (d == 1) return 2.0 * std::pow(a[0], -s);
  if (d > 3) throw ParameterError("lattice sums by shells support d <= 3");
  double total = 0.0;
  for (std::size_t j = 0; j < d; ++j) {
    std::vector<double> others;
    for (std::size_t i = 0; i < d; ++i) {
      if (i != j) others.push_back(a[i]);
    }
    const double aj2 = a[j] * a[j];
    double face = 0.0;
    if (others.size() == 1) {
      face = quad::integrate_interval(
                 [&](double u) { return std::pow(aj2 + others[0] * others[0] * u * u, -0.5 * s); }, -1.0, 1.0,
                 1e-15)
                 .value;
    } else {
      face = quad::integrate_interval(
                 [&](double u) {
                   return quad::integrate_interval(
                              [&](double v) {
                                return std::pow(aj2 + others[0] * others[0] * u * u + others[1] * others[1] * v * v,
                                                -0.5 * s);
                              },
                              -1.0, 1.0, 1e-15)
                       .value;
                 },
                 -1.0, 1.0, 1e-14)
                 .value;
    }
    total += 2.0 * face;
  }
  return total;
}

inline double lattice_sum_shells(const LatticeSumSpec& spec) {
  const double d = static_cast<double>(spec.dim());
  const double s = d + spec.sigma;
  const double angular = face_integral(spec.a, s);
  std::size_t terms = 0;
  double partial = 0.0;
  long reached = 0;
  auto advance = [&](long S) {
    for (long k = reached + 1; k <= S; ++k) partial += shell_sum(spec.a, s, k, terms);
    reached = S;
    // the shells are midpoint cells of the region |y|_inf > S + 1/2
    return partial + angular * std::pow(static_cast<double>(S) + 0.5, -spec.sigma) / spec.sigma;
  };
  // estimates at S, 2S, 4S, ...; the cell error decays like S^{-sigma-2}
  const double rate = std::pow(2.0, spec.sigma + 2.0);
  long S = 4;
  double prev = advance(S);
  double prev_extrap = std::nan("");
  double change = std::numeric_limits<double>::infinity();
  while (terms < spec.max_terms) {
    S *= 2;
    const double est = advance(S);
    const double extrap = est + (est - prev) / (rate - 1.0);
    if (!std::isnan(prev_extrap)) {
      change = std::abs(extrap - prev_extrap);
      if (change < spec.tol) return extrap;
    }
    prev = est;
    prev_extrap = extrap;
  }
  throw ConvergenceError("lattice shell sum exhausted its term budget", change);
}

// Ewald-type route: |y|^{-s} = pi^{s/2} / Gamma(s/2) int t^{s/2 - 1} exp(-pi t |y|^2) dt,
// summed over the lattice through the theta function.
inline double lattice_sum_theta(const LatticeSumSpec& spec) {
  const double s = static_cast<double>(spec.dim()) + spec.sigma;
  const double c = std::pow(kPi, 0.5 * s) / std::tgamma(0.5 * s);
  const auto w = DiagonalMeasure::density([c, s](double t) { return c * std::pow(t, 0.5 * s - 1.0); }, 1.0);
  const auto& a = spec.a;
  return w
      .integrate(
          [&](double t) {
            std::vector<double> e;
            for (double aj : a) e.push_back(theta::theta_deviation(0.0, t * aj * aj, 1e-16));
            return product_excess(e);
          },
          spec.tol)
      .value;
}

}  // namespace detail

inline double lattice_sum_B(const LatticeSumSpec& spec) {
  spec.validate();
  const bool shells =
      spec.method == LatticeMethod::Shells || (spec.method == LatticeMethod::Auto && spec.dim() <= 2);
  return shells ? detail::lattice_sum_shells(spec) : detail::lattice_sum_theta(spec);
}

// -sum_j sum (-1)^{n_j} |an|^{-d-sigma} + (d-1) B. Each alternating sum is
// 2 B(a with a_j doubled) - B(a), the even-n_j sublattice counted twice.
inline double lattice_sum_A(const LatticeSumSpec& spec) {
  spec.validate();
  const double d = static_cast<double>(spec.dim());
  const double B = lattice_sum_B(spec);
  double doubled = 0.0;
  for (std::size_t j = 0; j < spec.dim(); ++j) {
    LatticeSumSpec sj = spec;
    sj.a[j] *= 2.0;
    doubled += lattice_sum_B(sj);
  }
  return (2.0 * d - 1.0) * B - 2.0 * doubled;
}

using Kernel = std::function<double(std::span<const double>)>;

inline Kernel power_kernel(double exponent) {
  return [exponent](std::span<const double> xi) { return std::pow(euclidean_norm(xi), -exponent); };
}

// sum_{n != m} w_n conj(w_m) K(xi_n - xi_m)
inline double quadratic_form(const SeparatedSet& S, std::span<const std::complex<double>> w, const Kernel& kernel) {
  if (w.size() != S.points.size()) throw ParameterError("quadratic_form: one weight per point required");
  if (!check_separated(S)) throw PreconditionError("quadratic_form: points are not a-separated");
  std::complex<double> sum{0.0, 0.0};
  double scale = 0.0;
  Point diff(S.dim());
  for (std::size_t n = 0; n < w.size(); ++n) {
    for (std::size_t m = 0; m < w.size(); ++m) {
      if (n == m) continue;
      for (std::size_t j = 0; j < S.dim(); ++j) diff[j] = S.points[n][j] - S.points[m][j];
      const auto term = w[n] * std::conj(w[m]) * kernel(diff);
      sum += term;
      scale += std::abs(term);
    }
  }
  if (std::abs(sum.imag()) > 1e-10 * (1.0 + scale)) {
    throw InvariantError("quadratic_form: kernel is not even (imaginary residue " + std::to_string(sum.imag()) + ")");
  }
  return sum.real();
}

struct HilbertCheck {
  double q = 0.0;
  double lower_bound = 0.0;
  double upper_bound = 0.0;
  double norm2 = 0.0;
  bool ok = true;
};

struct HilbertConstants {
  double A = 0.0;
  double B = 0.0;
};

inline HilbertConstants hilbert_constants(const LatticeSumSpec& spec) {
  return {lattice_sum_A(spec), lattice_sum_B(spec)};
}

inline HilbertCheck verify_hilbert(const HilbertConstants& c, const SeparatedSet& S,
                                   std::span<const std::complex<double>> w, double sigma) {
  HilbertCheck out;
  for (const auto& v : w) out.norm2 += std::norm(v);
  out.q = quadratic_form(S, w, power_kernel(static_cast<double>(S.dim()) + sigma));
  out.lower_bound = -c.A * out.norm2;
  out.upper_bound = c.B * out.norm2;
  const double slack = 1e-12 * (1.0 + out.norm2 * (std::abs(c.A) + c.B));
  out.ok = out.q >= out.lower_bound - slack && out.q <= out.upper_bound + slack;
  return out;
}

inline HilbertCheck verify_hilbert(const LatticeSumSpec& spec, const SeparatedSet& S,
                                   std::span<const std::complex<double>> w) {
  if (S.a != spec.a) throw ParameterError("verify_hilbert: set and lattice spec use different boxes");
  return verify_hilbert(hilbert_constants(spec), S, w, spec.sigma);
}

struct HilbertInstance {
  SeparatedSet set;
  std::vector<std::complex<double>> weights;
};

// N points a (2 n + u), n on a cube of lattice sites, |u|_inf < 0.49, so any
// two points are at a-distance > 1. Weights are complex Gaussian.
inline HilbertInstance random_instance(std::span<const double> a, std::size_t N, std::uint64_t seed) {
  for (double v : a) detail::require_positive(v, "random_instance: a_j");
  const std::size_t d = a.size();
  if (d == 0) throw ParameterError("random_instance: dimension must be at least 1");
  std::size_t side = 1;
  while (static_cast<std::size_t>(std::pow(static_cast<double>(side), static_cast<double>(d))) < N) ++side;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> offset(-0.49, 0.49);
  std::normal_distribution<double> normal(0.0, 1.0);
  HilbertInstance inst;
  inst.set.a.assign(a.begin(), a.end());
  for (std::size_t i = 0; i < N; ++i) {
    Point p(d);
    std::size_t rest = i;
    for (std::size_t j = 0; j < d; ++j) {
      const auto n = static_cast<double>(rest % side);
      rest /= side;
      p[j] = a[j] * (2.0 * n + offset(rng));
    }
    inst.set.points.push_back(std::move(p));
    inst.weights.emplace_back(normal(rng), normal(rng));
  }
  return inst;
}

// J(R) = Q(R a) intersected with a Z^d.
inline SeparatedSet lattice_block(std::span<const double> a, int R) {
  if (R < 0) throw ParameterError("lattice_block: R must be non-negative");
  SeparatedSet S;
  S.a.assign(a.begin(), a.end());
  const std::size_t d = a.size();
  const auto side = static_cast<std::size_t>(2 * R + 1);
  std::size_t count = 1;
  for (std::size_t j = 0; j < d; ++j) count *= side;
  for (std::size_t i = 0; i < count; ++i) {
    Point p(d);
    std::size_t rest = i;
    for (std::size_t j = 0; j < d; ++j) {
      p[j] = a[j] * (static_cast<double>(rest % side) - R);
      rest /= side;
    }
    S.points.push_back(std::move(p));
  }
  return S;
}

struct SharpnessStep {
  int R = 0;
  std::size_t points = 0;
  double normalized = 0.0;  // form / number of points
  double fraction = 0.0;    // normalized / B
};

// w = 1 on J(R). The normalized form equals the sum over n != 0 with |n_j| <= 2R of
// prod (1 - |n_j| / (2R + 1)) |a n|^{-d - sigma}, computed here by the
// direct double loop.
inline std::vector<SharpnessStep> sharpness_sweep(std::span<const double> a, double sigma, int R_max, double B) {
  std::vector<SharpnessStep> out;
  const auto kernel = power_kernel(static_cast<double>(a.size()) + sigma);
  for (int R = 1; R <= R_max; ++R) {
    const auto S = lattice_block(a, R);
    std::vector<std::complex<double>> w(S.points.size(), {1.0, 0.0});
    SharpnessStep step;
    step.R = R;
    step.points = S.points.size();
    step.normalized = quadratic_form(S, w, kernel) / static_cast<double>(step.points);
    step.fraction = step.normalized / B;
    out.push_back(step);
  }
  return out;
}

}  // namespace bandlimit
