#pragma once

// Trigonometric polynomials on the torus T^d = R^d / Z^d obtained by
// periodizing band-limited majorants and minorants. If H has spectrum in the
// box Q(a) with integer a, then sum_n H(x + n) has Fourier coefficients
// H^(k) for -a < k < a and nothing else, so the polynomial is built directly
// from the closed-form transform of H.

#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "bandlimit/box_extremal.hpp"
#include "bandlimit/errors.hpp"
#include "bandlimit/measures.hpp"
#include "bandlimit/subordination.hpp"
#include "bandlimit/theta.hpp"

namespace bandlimit {

class TrigPolynomial {
 public:
  using Index = std::vector<int>;

  TrigPolynomial() = default;

  // All coefficients zero for frequencies -degree_j < n_j < degree_j.
  explicit TrigPolynomial(std::vector<int> degree) : degree_(std::move(degree)) {
    if (degree_.empty()) throw ParameterError("TrigPolynomial: dimension must be at least 1");
    std::size_t total = 1;
    for (int a : degree_) {
      if (a < 1) throw ParameterError("TrigPolynomial: degree entries must be positive integers");
      total *= static_cast<std::size_t>(2 * a - 1);
    }
    coeffs_.assign(total, {0.0, 0.0});
  }

  std::size_t dim() const { return degree_.size(); }
  const std::vector<int>& degree() const { return degree_; }
  std::size_t size() const { return coeffs_.size(); }

  bool in_support(std::span<const int> n) const {
    if (n.size() != dim()) return false;
    for (std::size_t j = 0; j < dim(); ++j) {
      if (std::abs(n[j]) >= degree_[j]) return false;
    }
    return true;
  }

  // Zero outside the open box, exactly.
  std::complex<double> coeff(std::span<const int> n) const {
    if (n.size() != dim()) throw ParameterError("TrigPolynomial: index dimension mismatch");
    if (!in_support(n)) return {0.0, 0.0};
    return coeffs_[offset(n)];
  }

  void set(std::span<const int> n, std::complex<double> c) {
    if (!in_support(n)) {
      throw ParameterError("TrigPolynomial: frequency outside the degree box");
    }
    coeffs_[offset(n)] = c;
  }

  // Frequency of the i-th stored coefficient (last axis fastest).
  Index frequency(std::size_t i) const {
    Index n(dim());
    for (std::size_t j = dim(); j-- > 0;) {
      const auto w = static_cast<std::size_t>(2 * degree_[j] - 1);
      n[j] = static_cast<int>(i % w) - (degree_[j] - 1);
      i /= w;
    }
    return n;
  }

  std::complex<double> stored(std::size_t i) const { return coeffs_[i]; }

  // Largest |c_{-n} - conj(c_n)|.
  double hermitian_defect() const {
    double worst = 0.0;
    for (std::size_t i = 0; i < size(); ++i) {
      auto n = frequency(i);
      for (int& v : n) v = -v;
      worst = std::max(worst, std::abs(coeff(n) - std::conj(coeffs_[i])));
    }
    return worst;
  }

  void require_hermitian(double tol = 1e-12) const {
    const double defect = hermitian_defect();
    if (defect > tol * (1.0 + abs_sum())) {
      throw InvariantError("TrigPolynomial: coefficients are not Hermitian (defect " + std::to_string(defect) + ")");
    }
  }

  double abs_sum() const {
    double s = 0.0;
    for (const auto& c : coeffs_) s += std::abs(c);
    return s;
  }

  // sum_n c_n e^{2 pi i n.x}; complex result, see eval for the real version.
  std::complex<double> eval_complex(std::span<const double> x) const {
    if (x.size() != dim()) throw ParameterError("TrigPolynomial: point dimension mismatch");
    // per-axis phase tables
    std::vector<std::vector<std::complex<double>>> phase(dim());
    for (std::size_t j = 0; j < dim(); ++j) {
      const int a = degree_[j];
      phase[j].resize(static_cast<std::size_t>(2 * a - 1));
      for (int n = -(a - 1); n <= a - 1; ++n) {
        const double r = static_cast<double>(n) * x[j];
        const double theta = 2.0 * kPi * (r - std::round(r));
        phase[j][static_cast<std::size_t>(n + a - 1)] = {std::cos(theta), std::sin(theta)};
      }
    }
    std::complex<double> sum{0.0, 0.0};
    std::vector<std::size_t> idx(dim(), 0);
    for (std::size_t i = 0; i < size(); ++i) {
      std::complex<double> p = coeffs_[i];
      for (std::size_t j = 0; j < dim(); ++j) p *= phase[j][idx[j]];
      sum += p;
      for (std::size_t j = dim(); j-- > 0;) {
        if (++idx[j] < phase[j].size()) break;
        idx[j] = 0;
      }
    }
    return sum;
  }

  double eval(std::span<const double> x) const {
    require_hermitian();
    const auto z = eval_complex(x);
    if (std::abs(z.imag()) > 1e-12 * (1.0 + abs_sum())) {
      throw InvariantError("TrigPolynomial: evaluation left an imaginary residue");
    }
    return z.real();
  }

  double mean() const {
    Index zero(dim(), 0);
    return coeff(zero).real();
  }

 private:
  std::size_t offset(std::span<const int> n) const {
    std::size_t off = 0;
    for (std::size_t j = 0; j < dim(); ++j) {
      off = off * static_cast<std::size_t>(2 * degree_[j] - 1) + static_cast<std::size_t>(n[j] + degree_[j] - 1);
    }
    return off;
  }

  std::vector<int> degree_;
  std::vector<std::complex<double>> coeffs_;
};

// Periodic targets on T^d.
//   ThetaProduct(lambda):         sum_n G_lambda(x + n) = prod lambda_j^{-1/2} Theta(x_j; i/lambda_j)
//   PeriodizedExponential(alpha): sum_n exp(-alpha |x + n|)
//   PowerCoefficientSeries(sigma): sum_{n != 0} |n|^{-d-sigma} e(n.x)
enum class PeriodicFamily { ThetaProduct, PeriodizedExponential, PowerCoefficientSeries };

inline const char* to_string(PeriodicFamily f) {
  switch (f) {
    case PeriodicFamily::ThetaProduct: return "theta-product";
    case PeriodicFamily::PeriodizedExponential: return "periodized-exponential";
    case PeriodicFamily::PowerCoefficientSeries: return "power-series";
  }
  return "?";
}

struct PeriodicTarget {
  PeriodicFamily family = PeriodicFamily::ThetaProduct;
  std::vector<double> lambda;  // ThetaProduct only
  double alpha = 1.0;
  double sigma = 1.0;
  std::size_t dim = 1;

  static PeriodicTarget theta_product(std::vector<double> lambda) {
    PeriodicTarget t;
    t.family = PeriodicFamily::ThetaProduct;
    t.dim = lambda.size();
    t.lambda = std::move(lambda);
    t.validate();
    return t;
  }
  static PeriodicTarget periodized_exponential(double alpha, std::size_t d) {
    PeriodicTarget t;
    t.family = PeriodicFamily::PeriodizedExponential;
    t.alpha = alpha;
    t.dim = d;
    t.validate();
    return t;
  }
  static PeriodicTarget power_series(double sigma, std::size_t d) {
    PeriodicTarget t;
    t.family = PeriodicFamily::PowerCoefficientSeries;
    t.sigma = sigma;
    t.dim = d;
    t.validate();
    return t;
  }

  void validate() const {
    if (dim == 0) throw ParameterError("PeriodicTarget: dimension must be at least 1");
    switch (family) {
      case PeriodicFamily::ThetaProduct:
        if (lambda.size() != dim) throw ParameterError("PeriodicTarget: lambda has the wrong length");
        for (double l : lambda) detail::require_positive(l, "PeriodicTarget: lambda_j");
        break;
      case PeriodicFamily::PeriodizedExponential:
        detail::require_positive(alpha, "PeriodicTarget: alpha");
        break;
      case PeriodicFamily::PowerCoefficientSeries:
        detail::require_positive(sigma, "PeriodicTarget: sigma");
        break;
    }
  }

  // Diagonal density whose Gaussians G_{tu} generate the target. For the
  // power series this is pi^{(d+s)/2} / Gamma((d+s)/2) t^{-s/2-1}, chosen so
  // that int t^{-d/2} exp(-pi |n|^2 / t) w dt = |n|^{-d-s}.
  DiagonalMeasure measure() const {
    validate();
    switch (family) {
      case PeriodicFamily::ThetaProduct:
        throw PreconditionError("PeriodicTarget: theta products are not diagonal mixtures");
      case PeriodicFamily::PeriodizedExponential:
        return measure_for(RadialTarget::exponential(alpha, dim));
      case PeriodicFamily::PowerCoefficientSeries: {
        const double dd = static_cast<double>(dim);
        const double s = sigma;
        const double c = std::pow(kPi, 0.5 * (dd + s)) / std::tgamma(0.5 * (dd + s));
        return DiagonalMeasure::density([c, s](double t) { return c * std::pow(t, -0.5 * s - 1.0); }, 1.0,
                                        "power-series");
      }
    }
    throw ParameterError("PeriodicTarget: unknown family");
  }

  // Fourier coefficient g^(n).
  double coefficient(std::span<const int> n) const {
    validate();
    double r2 = 0.0;
    for (int v : n) r2 += static_cast<double>(v) * v;
    const double dd = static_cast<double>(dim);
    switch (family) {
      case PeriodicFamily::ThetaProduct: {
        double c = 1.0;
        for (std::size_t j = 0; j < dim; ++j) c *= gaussian_fourier(lambda[j], n[j]);
        return c;
      }
      case PeriodicFamily::PeriodizedExponential: {
        // transform of exp(-alpha |x|) in R^d
        const double cd = std::tgamma(0.5 * (dd + 1.0)) / std::pow(kPi, 0.5 * (dd + 1.0));
        const double k = 2.0 * kPi / alpha;
        return std::pow(k, dd) * cd / std::pow(1.0 + k * k * r2, 0.5 * (dd + 1.0));
      }
      case PeriodicFamily::PowerCoefficientSeries:
        return r2 == 0.0 ? 0.0 : std::pow(r2, -0.5 * (dd + sigma));
    }
    return 0.0;
  }
};

namespace detail {

inline std::vector<double> reduce_to_cell(std::span<const double> x) {
  std::vector<double> y(x.begin(), x.end());
  for (double& v : y) v -= std::round(v);
  return y;
}

// sum_n exp(-alpha |x + n|) over max-norm shells, with x reduced to [-1/2, 1/2]^d.
inline double periodized_exponential_sum(double alpha, std::span<const double> x, double tol) {
  const auto y = reduce_to_cell(x);
  const std::size_t d = y.size();
  const double dd = static_cast<double>(d);
  double sum = 0.0;
  std::vector<int> n(d);
  for (int k = 0; k < 100000; ++k) {
    // enumerate the shell |n|_inf = k
    double shell = 0.0;
    const int side = 2 * k + 1;
    std::size_t count = 1;
    for (std::size_t j = 0; j < d; ++j) count *= static_cast<std::size_t>(side);
    for (std::size_t i = 0; i < count; ++i) {
      std::size_t rest = i;
      int mx = 0;
      double r2 = 0.0;
      for (std::size_t j = 0; j < d; ++j) {
        n[j] = static_cast<int>(rest % static_cast<std::size_t>(side)) - k;
        rest /= static_cast<std::size_t>(side);
        mx = std::max(mx, std::abs(n[j]));
        const double z = y[j] + n[j];
        r2 += z * z;
      }
      if (mx != k) continue;
      shell += std::exp(-alpha * std::sqrt(r2));
    }
    sum += shell;
    // shells m > k: at most (2m+1)^d - (2m-1)^d points, each at distance >= m - 1/2
    double tail = 0.0;
    for (int m = k + 1; m < k + 2000; ++m) {
      const double mm = static_cast<double>(m);
      const double pts = std::pow(2.0 * mm + 1.0, dd) - std::pow(2.0 * mm - 1.0, dd);
      const double term = pts * std::exp(-alpha * (mm - 0.5));
      tail += term;
      if (term < 1e-3 * tol && mm > dd / alpha + 1.0) break;
    }
    if (tail < tol) return sum;
  }
  throw ConvergenceError("periodized exponential sum did not converge", tol);
}

// int t^{-d/2} (prod_j Theta(x_j; i/t) - [include_zero ? 0 : 1]) w(t) dt: a
// diagonal mixture pushed through Poisson summation on the torus.
inline double torus_mixture(const DiagonalMeasure& w, std::span<const double> x, bool drop_zero_mode, double tol) {
  const auto y = reduce_to_cell(x);
  return w
      .integrate(
          [&](double t) {
            const double inv = std::pow(t, -0.5 * static_cast<double>(y.size()));
            if (drop_zero_mode) {
              std::vector<double> e;
              for (double v : y) e.push_back(theta::theta_deviation(v, 1.0 / t, 1e-15));
              return inv * product_excess(e);
            }
            double p = 1.0;
            for (double v : y) p *= theta::theta(v, 1.0 / t, 1e-15);
            return inv * p;
          },
          tol)
      .value;
}

}  // namespace detail

inline double periodic_target_value(const PeriodicTarget& target, std::span<const double> x, double tol = 1e-12) {
  target.validate();
  if (x.size() != target.dim) throw ParameterError("periodic_target_value: point dimension mismatch");
  switch (target.family) {
    case PeriodicFamily::ThetaProduct: {
      double p = 1.0;
      for (std::size_t j = 0; j < target.dim; ++j) {
        p *= theta::theta(x[j], 1.0 / target.lambda[j], tol) / std::sqrt(target.lambda[j]);
      }
      return p;
    }
    case PeriodicFamily::PeriodizedExponential:
      return detail::periodized_exponential_sum(target.alpha, x, tol);
    case PeriodicFamily::PowerCoefficientSeries:
      return detail::torus_mixture(target.measure(), x, true, tol);
  }
  return 0.0;
}

namespace detail {

inline std::vector<double> to_doubles(std::span<const int> a) {
  std::vector<double> out;
  for (int v : a) {
    if (v < 1) throw ParameterError("periodic: degree entries must be positive integers");
    out.push_back(static_cast<double>(v));
  }
  return out;
}

inline std::vector<int> to_degree(std::span<const double> a) {
  std::vector<int> out;
  for (double v : a) {
    if (!(v >= 1.0) || v != std::floor(v)) throw ParameterError("periodic: degree entries must be positive integers");
    out.push_back(static_cast<int>(v));
  }
  return out;
}

}  // namespace detail

// Coefficients H^(n) of the periodized majorant or minorant of G_lambda.
inline TrigPolynomial periodize_extremal(std::span<const double> lambda, std::span<const int> a, ExtremalKind kind) {
  if (lambda.size() != a.size()) throw ParameterError("periodize_extremal: lambda and a differ in length");
  BoxExtremal box(BoxParams(std::vector<double>(lambda.begin(), lambda.end()), detail::to_doubles(a)));
  TrigPolynomial P(std::vector<int>(a.begin(), a.end()));
  std::vector<double> xi(a.size());
  for (std::size_t i = 0; i < P.size(); ++i) {
    const auto n = P.frequency(i);
    for (std::size_t j = 0; j < n.size(); ++j) xi[j] = n[j];
    P.set(n, box.fourier(kind, xi));
  }
  return P;
}

// Periodic subordination: c_n = g^(n) + int (H_{tu,a}^(n) - G_{tu}^(n)) w(t) dt.
// The zero mode goes through the theta deviations so that the mean gap is
// resolved to full relative accuracy.
inline TrigPolynomial periodize_subordinated(const PeriodicTarget& target, std::span<const int> a,
                                             ExtremalKind kind, double tol = 1e-12) {
  target.validate();
  if (a.size() != target.dim) throw ParameterError("periodize_subordinated: degree dimension mismatch");
  if (target.family == PeriodicFamily::ThetaProduct) return periodize_extremal(target.lambda, a, kind);
  const auto w = target.measure();
  const auto box_a = detail::to_doubles(a);
  const double amin = detail::min_of(box_a);
  const double cutoff = detail::kAliasingCutoff * amin * amin;
  const double dd = static_cast<double>(target.dim);
  TrigPolynomial P(std::vector<int>(a.begin(), a.end()));
  std::vector<double> xi(a.size());
  for (std::size_t i = 0; i < P.size(); ++i) {
    const auto n = P.frequency(i);
    double r2 = 0.0;
    bool zero = true;
    for (std::size_t j = 0; j < n.size(); ++j) {
      xi[j] = n[j];
      r2 += xi[j] * xi[j];
      zero = zero && n[j] == 0;
    }
    double diff = 0.0;
    if (zero) {
      const double sign = kind == ExtremalKind::Majorant ? 1.0 : -1.0;
      diff = sign * gap_integral(w, box_a, kind, false, tol).value;
    } else {
      diff = w.integrate(
                  [&](double t) {
                    if (t < cutoff) return 0.0;
                    BoxExtremal box(detail::diagonal_box(t, box_a));
                    return box.fourier(kind, xi) - std::pow(t, -0.5 * dd) * std::exp(-kPi * r2 / t);
                  },
                  tol)
                 .value;
    }
    P.set(n, target.coefficient(n) + diff);
  }
  return P;
}

// Mean of (P - f) over the torus, from the closed theta expressions. With
// the unit atom at lambda this is prod lambda^{-1/2} (prod Theta(0) - 1) for
// the majorant and prod lambda^{-1/2} (1 - phi) for the minorant.
inline double periodic_gap(std::span<const double> lambda, std::span<const int> a, ExtremalKind kind) {
  const BoxParams p(std::vector<double>(lambda.begin(), lambda.end()), detail::to_doubles(a));
  const auto prof = ThetaProfile::of(p);
  const double g = kind == ExtremalKind::Majorant ? prof.zero_product_excess() : prof.minorant_gap_factor();
  return prof.inv_sqrt_lambda * g;
}

inline double periodic_gap(const PeriodicTarget& target, std::span<const int> a, ExtremalKind kind,
                           double tol = 1e-12) {
  target.validate();
  if (target.family == PeriodicFamily::ThetaProduct) return periodic_gap(target.lambda, a, kind);
  return gap_integral(target.measure(), detail::to_doubles(a), kind, false, tol).value;
}

struct PeriodizationSum {
  double value = 0.0;
  double tail_bound = 0.0;
};

namespace detail {

// sum over |n| <= N of |f(a (x + n))| and the bound on the remainder, for
// one axis of a product.
struct AxisWindow {
  std::vector<double> values;  // f(a (x + n)) for n = -N..N
  double abs_sum = 0.0;
  double tail = 0.0;
};

inline AxisWindow axis_window(const Extremal1D& f, double a, double x, int N) {
  AxisWindow w;
  const double y = x - std::round(x);
  for (int n = -N; n <= N; ++n) {
    const double v = f(a * (y + n));
    w.values.push_back(v);
    w.abs_sum += std::abs(v);
  }
  const double R = f.outer_node();
  const double reach = a * (static_cast<double>(N) - 0.5) - R;
  if (!(reach > 0.0)) throw PreconditionError("periodization window too small for the node range");
  // sum_{n > N} C / (pi^2 (a (n - 1/2) - R)^2) <= C / (pi^2 a reach), both sides
  w.tail = 2.0 * f.decay_constant() / (kPi * kPi * a * reach);
  return w;
}

// sum over n outside the window of prod |f_j| <= prod (A_j + T_j) - prod A_j
inline double product_tail(std::span<const AxisWindow* const> axes) {
  double full = 1.0;
  double inside = 1.0;
  for (const auto* w : axes) {
    full *= w->abs_sum + w->tail;
    inside *= w->abs_sum;
  }
  return full - inside;
}

}  // namespace detail

// sum_{|n|_inf <= N} H(x + n) for the box majorant or minorant, with a bound
// on the omitted translates. The windowed sum is the raw route to the
// periodization; it converges only like 1/N.
inline PeriodizationSum periodization_sum(const BoxExtremal& box, ExtremalKind kind, std::span<const double> x,
                                          int N) {
  const std::size_t d = box.dim();
  if (x.size() != d) throw ParameterError("periodization_sum: dimension mismatch");
  if (N < 1) throw ParameterError("periodization_sum: window must be at least 1");
  std::vector<detail::AxisWindow> up, lo;
  for (std::size_t j = 0; j < d; ++j) {
    up.push_back(detail::axis_window(box.axis_majorant(j), box.params().a[j], x[j], N));
    if (kind == ExtremalKind::Minorant) {
      lo.push_back(detail::axis_window(box.axis_minorant(j), box.params().a[j], x[j], N));
    }
  }
  const auto width = static_cast<std::size_t>(2 * N + 1);
  std::size_t count = 1;
  for (std::size_t j = 0; j < d; ++j) count *= width;
  PeriodizationSum out;
  std::vector<double> u(d), l(d);
  for (std::size_t i = 0; i < count; ++i) {
    std::size_t rest = i;
    for (std::size_t j = 0; j < d; ++j) {
      const std::size_t k = rest % width;
      rest /= width;
      u[j] = up[j].values[k];
      if (kind == ExtremalKind::Minorant) l[j] = lo[j].values[k];
    }
    if (kind == ExtremalKind::Majorant) {
      double p = 1.0;
      for (double v : u) p *= v;
      out.value += p;
    } else {
      out.value += bootstrap_combine(l, u);
    }
  }
  std::vector<const detail::AxisWindow*> axes;
  for (auto& w : up) axes.push_back(&w);
  if (kind == ExtremalKind::Majorant) {
    out.tail_bound = detail::product_tail(axes);
  } else {
    // (d-1) prod m + sum_k l_k prod_{j != k} m_j, bounded term by term
    out.tail_bound = static_cast<double>(d - 1) * detail::product_tail(axes);
    for (std::size_t k = 0; k < d; ++k) {
      auto swapped = axes;
      swapped[k] = &lo[k];
      out.tail_bound += detail::product_tail(swapped);
    }
  }
  return out;
}

struct DftCheck {
  double max_deviation = 0.0;  // max over frequencies of |closed form - DFT|
  double tail_bound = 0.0;     // largest periodization tail over the samples
  bool ok = false;
};

// Recovers the coefficients from 2 a_j samples per axis of the windowed
// periodization and compares with P.
inline DftCheck dft_check(const TrigPolynomial& P, std::span<const double> lambda, ExtremalKind kind, int N) {
  const std::size_t d = P.dim();
  if (lambda.size() != d) throw ParameterError("dft_check: lambda has the wrong length");
  std::vector<double> a;
  for (int v : P.degree()) a.push_back(v);
  BoxExtremal box(BoxParams(std::vector<double>(lambda.begin(), lambda.end()), a));
  std::vector<std::size_t> grid(d);
  std::size_t count = 1;
  for (std::size_t j = 0; j < d; ++j) {
    grid[j] = static_cast<std::size_t>(2 * P.degree()[j]);
    count *= grid[j];
  }
  std::vector<std::vector<double>> points;
  std::vector<double> samples;
  DftCheck out;
  std::vector<double> x(d);
  for (std::size_t i = 0; i < count; ++i) {
    std::size_t rest = i;
    for (std::size_t j = 0; j < d; ++j) {
      x[j] = static_cast<double>(rest % grid[j]) / static_cast<double>(grid[j]);
      rest /= grid[j];
    }
    const auto s = periodization_sum(box, kind, x, N);
    out.tail_bound = std::max(out.tail_bound, s.tail_bound);
    points.push_back(x);
    samples.push_back(s.value);
  }
  for (std::size_t k = 0; k < P.size(); ++k) {
    const auto n = P.frequency(k);
    std::complex<double> c{0.0, 0.0};
    for (std::size_t i = 0; i < count; ++i) {
      double phase = 0.0;
      for (std::size_t j = 0; j < d; ++j) phase += n[j] * points[i][j];
      c += samples[i] * std::polar(1.0, -2.0 * kPi * phase);
    }
    c /= static_cast<double>(count);
    out.max_deviation = std::max(out.max_deviation, std::abs(c - P.stored(k)));
  }
  out.ok = out.max_deviation <= out.tail_bound + 1e-12;
  return out;
}

}  // namespace bandlimit
