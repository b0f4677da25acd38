#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "bandlimit/periodic.hpp"
#include "bandlimit/quadrature.hpp"
#include "bandlimit/verify.hpp"

using namespace bandlimit;

namespace {

// min over a G^d grid of (P - f) for majorants, (f - P) for minorants
double torus_worst(const TrigPolynomial& P, const PeriodicTarget& f, ExtremalKind kind, int G) {
  const std::size_t d = P.dim();
  std::size_t count = 1;
  for (std::size_t j = 0; j < d; ++j) count *= static_cast<std::size_t>(G);
  std::vector<double> x(d);
  double worst = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < count; ++i) {
    std::size_t rest = i;
    for (std::size_t j = 0; j < d; ++j) {
      x[j] = static_cast<double>(rest % G) / G;
      rest /= G;
    }
    const double diff = P.eval(x) - periodic_target_value(f, x);
    worst = std::min(worst, kind == ExtremalKind::Majorant ? diff : -diff);
  }
  return worst;
}

}  // namespace

TEST(TrigPolynomial, Basics) {
  TrigPolynomial c({1});
  const int z[1] = {0};
  c.set(z, {2.5, 0.0});
  const double x[1] = {0.37};
  EXPECT_DOUBLE_EQ(c.eval(x), 2.5);
  EXPECT_DOUBLE_EQ(c.mean(), 2.5);

  TrigPolynomial pair({2});
  const int p1[1] = {1}, m1[1] = {-1}, far[1] = {2};
  pair.set(p1, {0.5, 0.0});
  pair.set(m1, {0.5, 0.0});
  const double zero[1] = {0.0}, quarter[1] = {0.25};
  EXPECT_NEAR(pair.eval(zero), 1.0, 1e-15);
  EXPECT_NEAR(pair.eval(quarter), 0.0, 1e-15);
  EXPECT_EQ(pair.coeff(far), std::complex<double>(0.0, 0.0));
  EXPECT_THROW(pair.set(far, {1.0, 0.0}), ParameterError);
  EXPECT_THROW(TrigPolynomial({0}), ParameterError);
}

TEST(TrigPolynomial, HermitianViolationRaises) {
  TrigPolynomial P({2});
  const int p1[1] = {1};
  P.set(p1, {0.5, 0.0});
  const double x[1] = {0.1};
  EXPECT_THROW(P.eval(x), InvariantError);
}

TEST(TrigPolynomial, AgreesWithDirectSummation) {
  std::mt19937_64 rng(5);
  std::normal_distribution<double> n01;
  TrigPolynomial P({3, 2});
  for (std::size_t i = 0; i < P.size(); ++i) {
    auto n = P.frequency(i);
    auto m = n;
    for (int& v : m) v = -v;
    if (n > m) continue;
    std::complex<double> c{n01(rng), n == m ? 0.0 : n01(rng)};
    P.set(n, c);
    P.set(m, std::conj(c));
  }
  for (double u : {0.03, 0.41, 0.77}) {
    const double x[2] = {u, 1.0 - 0.6 * u};
    std::complex<double> direct{0.0, 0.0};
    for (int a = -2; a <= 2; ++a) {
      for (int b = -1; b <= 1; ++b) {
        const int n[2] = {a, b};
        direct += P.coeff(n) * std::polar(1.0, 2.0 * kPi * (a * x[0] + b * x[1]));
      }
    }
    EXPECT_NEAR(P.eval(x), direct.real(), 1e-12);
  }
}

TEST(PeriodicTarget, Values) {
  const double z[1] = {0.0}, h[1] = {0.5};
  const auto th1 = PeriodicTarget::theta_product({1.0});
  EXPECT_NEAR(periodic_target_value(th1, z), 1.0864348112, 1e-10);
  EXPECT_NEAR(periodic_target_value(th1, h), 0.9135791, 1e-7);
  const auto e = PeriodicTarget::periodized_exponential(1.0, 1);
  EXPECT_NEAR(periodic_target_value(e, z), (1.0 + std::exp(-1.0)) / (1.0 - std::exp(-1.0)), 1e-12);
  EXPECT_NEAR(periodic_target_value(e, h), 2.0 * std::exp(-0.5) / (1.0 - std::exp(-1.0)), 1e-12);
  const auto p = PeriodicTarget::power_series(1.0, 1);
  EXPECT_NEAR(periodic_target_value(p, z), kPi * kPi / 3.0, 1e-10);
  EXPECT_NEAR(periodic_target_value(p, h), -kPi * kPi / 6.0, 1e-10);
  EXPECT_THROW(PeriodicTarget::theta_product({}), ParameterError);
  EXPECT_THROW(PeriodicTarget::power_series(0.0, 1), ParameterError);
}

TEST(PeriodicTarget, CoefficientsMatchValues) {
  // f(x) = sum_n c_n e(n x): check a truncated sum for the exponential
  const auto e = PeriodicTarget::periodized_exponential(2.0, 1);
  const double x[1] = {0.3};
  double s = 0.0;
  for (int n = -20000; n <= 20000; ++n) {
    const int nn[1] = {n};
    s += e.coefficient(nn) * std::cos(2.0 * kPi * n * x[0]);
  }
  EXPECT_NEAR(s, periodic_target_value(e, x), 1e-4);
}

TEST(Periodize, ConstantCoefficientAndDegree) {
  const double lam[1] = {1.0};
  const int a1[1] = {1};
  auto P = periodize_extremal(lam, a1, ExtremalKind::Majorant);
  EXPECT_EQ(P.size(), 1u);
  EXPECT_NEAR(P.mean(), 1.0864348112, 1e-10);
  EXPECT_NEAR(periodic_gap(lam, a1, ExtremalKind::Majorant), 0.0864348112, 1e-10);

  const double lam2[2] = {1.0, 2.0};
  const int a32[2] = {3, 2};
  auto Q = periodize_extremal(lam2, a32, ExtremalKind::Minorant);
  EXPECT_EQ(Q.size(), 15u);
  for (int i = -5; i <= 5; ++i) {
    for (int j = -5; j <= 5; ++j) {
      const int n[2] = {i, j};
      if (std::abs(i) >= 3 || std::abs(j) >= 2) EXPECT_EQ(Q.coeff(n), std::complex<double>(0.0, 0.0));
    }
  }
  EXPECT_LT(Q.hermitian_defect(), 1e-15);
  const int non[1] = {0};
  EXPECT_THROW(periodize_extremal(lam, non, ExtremalKind::Majorant), ParameterError);
}

TEST(Periodize, BasisTransformsMatchQuadrature) {
  for (auto kind : {ExtremalKind::Majorant, ExtremalKind::Minorant}) {
    Extremal1D f(0.8, kind);
    for (int i = 0; i < 10; ++i) {
      const double xi = 0.05 + 0.09 * i;
      auto s = band_limit_sample(f, xi);
      // oscillatory tails leave an O(1/W^2) residue
      EXPECT_NEAR(s.quadrature, std::abs(f.fourier(xi)), 2e-6) << xi;
    }
  }
}

TEST(Periodize, TorusOneSidedAndMeanGap) {
  const std::vector<double> lam{1.0, 0.6};
  const std::vector<int> a{2, 3};
  const auto f = PeriodicTarget::theta_product(lam);
  for (auto kind : {ExtremalKind::Majorant, ExtremalKind::Minorant}) {
    auto P = periodize_extremal(lam, a, kind);
    EXPECT_GE(torus_worst(P, f, kind, 120), -1e-9) << to_string(kind);
    // the grid mean of a trigonometric polynomial minus a smooth periodic
    // function converges spectrally
    const int G = 64;
    double mean = 0.0;
    for (int i = 0; i < G; ++i) {
      for (int j = 0; j < G; ++j) {
        const double x[2] = {static_cast<double>(i) / G, static_cast<double>(j) / G};
        const double diff = P.eval(x) - periodic_target_value(f, x);
        mean += kind == ExtremalKind::Majorant ? diff : -diff;
      }
    }
    mean /= G * G;
    EXPECT_NEAR(mean, periodic_gap(lam, a, kind), 1e-12);
  }
}

TEST(Periodize, MajorantInterpolatesLattice) {
  const std::vector<double> lam{1.3, 0.9};
  const std::vector<int> a{3, 2};
  const auto f = PeriodicTarget::theta_product(lam);
  auto P = periodize_extremal(lam, a, ExtremalKind::Majorant);
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 2; ++j) {
      const double x[2] = {i / 3.0, j / 2.0};
      EXPECT_NEAR(P.eval(x), periodic_target_value(f, x), 1e-8);
    }
  }
}

TEST(Periodize, GapVanishesForLargeDegree) {
  const double lam[1] = {1.0};
  const int big[1] = {6};
  EXPECT_LT(periodic_gap(lam, big, ExtremalKind::Majorant), 1e-40);
  EXPECT_LT(periodic_gap(lam, big, ExtremalKind::Minorant), 1e-40);
}

TEST(Periodize, PeriodizationSumAtOrigin) {
  BoxExtremal box(BoxParams({1.0}, {2.0}));
  const double lam[1] = {1.0};
  const int a[1] = {2};
  auto P = periodize_extremal(lam, a, ExtremalKind::Majorant);
  const double z[1] = {0.0};
  for (int N : {20, 80, 320}) {
    auto s = periodization_sum(box, ExtremalKind::Majorant, z, N);
    EXPECT_LE(std::abs(s.value - P.eval(z)), s.tail_bound) << N;
  }
}

TEST(Periodize, DftOracle) {
  const std::vector<double> lam{1.0, 2.0};
  const std::vector<int> a{2, 3};
  for (auto kind : {ExtremalKind::Majorant, ExtremalKind::Minorant}) {
    auto P = periodize_extremal(lam, a, kind);
    auto c = dft_check(P, lam, kind, 40);
    EXPECT_TRUE(c.ok) << c.max_deviation << " > " << c.tail_bound;
  }
}

TEST(PeriodicSubordination, OneSidedAndMeanGap) {
  for (const auto& f : {PeriodicTarget::periodized_exponential(1.0, 1), PeriodicTarget::power_series(1.0, 1),
                        PeriodicTarget::power_series(2.5, 1)}) {
    for (int deg : {1, 3}) {
      const int a[1] = {deg};
      for (auto kind : {ExtremalKind::Majorant, ExtremalKind::Minorant}) {
        auto P = periodize_subordinated(f, a, kind);
        EXPECT_GE(torus_worst(P, f, kind, 200), -1e-9) << to_string(f.family) << " a=" << deg;
        // kinks sit at the integers, so [0, 1] quadrature is smooth inside
        auto m = quad::integrate_interval(
            [&](double x) {
              const double xx[1] = {x};
              const double diff = P.eval(xx) - periodic_target_value(f, xx);
              return kind == ExtremalKind::Majorant ? diff : -diff;
            },
            0.0, 1.0, 1e-11, 4000);
        EXPECT_NEAR(m.value, periodic_gap(f, a, kind), 1e-7) << to_string(f.family) << " a=" << deg;
      }
    }
  }
}

TEST(PeriodicSubordination, PowerSeriesInterpolates) {
  const auto f = PeriodicTarget::power_series(1.0, 1);
  const int a[1] = {4};
  auto P = periodize_subordinated(f, a, ExtremalKind::Majorant);
  for (int k = 0; k < 4; ++k) {
    const double x[1] = {k / 4.0};
    EXPECT_NEAR(P.eval(x), periodic_target_value(f, x), 1e-8);
  }
}
