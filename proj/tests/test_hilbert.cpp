#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <vector>

#include "bandlimit/hilbert.hpp"

using namespace bandlimit;

TEST(Separation, Examples) {
  const std::vector<double> a{1.0, 2.0};
  std::vector<Point> lattice{{0.0, 0.0}, {1.0, 0.0}, {0.0, 2.0}, {3.0, -4.0}};
  EXPECT_TRUE(check_separated(lattice, a));
  std::vector<Point> dup{{0.5, 0.5}, {0.5, 0.5}};
  EXPECT_FALSE(check_separated(dup, a));
  std::vector<Point> close{{0.0, 0.0}, {0.999, 0.0}};
  EXPECT_FALSE(check_separated(close, a));
  std::vector<Point> ok{{0.0, 0.0}, {0.5, 2.0}};
  EXPECT_TRUE(check_separated(ok, a));
}

TEST(LatticeSums, OneDimensionalZeta) {
  LatticeSumSpec spec{{1.0}, 1.0};
  EXPECT_NEAR(lattice_sum_B(spec), kPi * kPi / 3.0, 1e-8);
  // alternating sum: A = -2 sum (-1)^n / n^2 = 2 eta(2) = pi^2 / 6
  double brute = 0.0;
  for (int n = 1; n <= 200000; ++n) brute -= 2.0 * ((n % 2) ? -1.0 : 1.0) / (static_cast<double>(n) * n);
  EXPECT_NEAR(lattice_sum_A(spec), kPi * kPi / 6.0, 1e-8);
  EXPECT_NEAR(lattice_sum_A(spec), brute, 1e-9);
}

TEST(LatticeSums, Scaling) {
  for (double sigma : {0.5, 1.0, 2.5}) {
    LatticeSumSpec base{{1.0, 1.5}, sigma};
    LatticeSumSpec scaled{{2.0, 3.0}, sigma};
    EXPECT_NEAR(lattice_sum_B(scaled), std::pow(2.0, -(2.0 + sigma)) * lattice_sum_B(base), 1e-9) << sigma;
  }
}

TEST(LatticeSums, RoutesAgree) {
  for (std::size_t d : {1u, 2u}) {
    for (double sigma : {0.5, 1.0, 2.5}) {
      LatticeSumSpec shells{std::vector<double>(d, 1.0), sigma, 1e-10, LatticeMethod::Shells};
      LatticeSumSpec theta{std::vector<double>(d, 1.0), sigma, 1e-10, LatticeMethod::ThetaIntegral};
      EXPECT_NEAR(lattice_sum_B(shells), lattice_sum_B(theta), 1e-8) << d << " " << sigma;
    }
  }
  LatticeSumSpec aniso{{1.0, 0.7}, 1.0, 1e-10, LatticeMethod::Shells};
  LatticeSumSpec aniso_t = aniso;
  aniso_t.method = LatticeMethod::ThetaIntegral;
  EXPECT_NEAR(lattice_sum_B(aniso), lattice_sum_B(aniso_t), 1e-8);
}

TEST(LatticeSums, ShellBudgetConverged) {
  LatticeSumSpec spec{{1.0, 1.0}, 1.0, 1e-10, LatticeMethod::Shells};
  LatticeSumSpec tight = spec;
  tight.tol = 1e-12;
  EXPECT_NEAR(lattice_sum_B(spec), lattice_sum_B(tight), 1e-10 * lattice_sum_B(spec) + 1e-10);
  LatticeSumSpec starved = spec;
  starved.max_terms = 1000;
  EXPECT_THROW(lattice_sum_B(starved), ConvergenceError);
}

TEST(LatticeSums, Validation) {
  EXPECT_THROW(lattice_sum_B(LatticeSumSpec{{}, 1.0}), ParameterError);
  EXPECT_THROW(lattice_sum_B(LatticeSumSpec{{1.0}, 0.0}), ParameterError);
  EXPECT_THROW(lattice_sum_B(LatticeSumSpec{{-1.0}, 1.0}), ParameterError);
}

TEST(QuadraticForm, SmallCases) {
  SeparatedSet one{{{0.0}}, {1.0}};
  std::vector<std::complex<double>> w1{{2.0, 1.0}};
  EXPECT_EQ(quadratic_form(one, w1, power_kernel(2.0)), 0.0);
  SeparatedSet two{{{0.0}, {1.5}}, {1.0}};
  std::vector<std::complex<double>> w2{{1.0, 0.0}, {1.0, 0.0}};
  EXPECT_NEAR(quadratic_form(two, w2, power_kernel(2.0)), 2.0 / 2.25, 1e-15);
  SeparatedSet bad{{{0.0}, {0.5}}, {1.0}};
  EXPECT_THROW(quadratic_form(bad, w2, power_kernel(2.0)), PreconditionError);
  auto odd = [](std::span<const double> x) { return x[0]; };
  std::vector<std::complex<double>> wc{{1.0, 0.0}, {0.0, 1.0}};
  EXPECT_THROW(quadratic_form(two, wc, odd), InvariantError);
}

TEST(QuadraticForm, EmptyWeights) {
  SeparatedSet none{{}, {1.0, 1.0}};
  std::vector<std::complex<double>> w;
  auto check = verify_hilbert(LatticeSumSpec{{1.0, 1.0}, 1.0}, none, w);
  EXPECT_EQ(check.q, 0.0);
  EXPECT_TRUE(check.ok);
}

TEST(QuadraticForm, MatchesIndependentLoop) {
  auto inst = random_instance(std::vector<double>{1.0, 2.0}, 40, 3);
  double re = 0.0;
  for (std::size_t n = 0; n < inst.weights.size(); ++n) {
    for (std::size_t m = 0; m < inst.weights.size(); ++m) {
      if (n == m) continue;
      const double dx = inst.set.points[n][0] - inst.set.points[m][0];
      const double dy = inst.set.points[n][1] - inst.set.points[m][1];
      const double k = std::pow(dx * dx + dy * dy, -1.5);
      re += (inst.weights[n] * std::conj(inst.weights[m])).real() * k;
    }
  }
  EXPECT_NEAR(quadratic_form(inst.set, inst.weights, power_kernel(3.0)), re, 1e-12 * (1.0 + std::abs(re)));
}

TEST(RandomInstance, SeparatedAndSeeded) {
  for (std::size_t d : {1u, 2u, 3u}) {
    std::vector<double> a(d, 0.8);
    auto i1 = random_instance(a, 60, 7);
    auto i2 = random_instance(a, 60, 7);
    EXPECT_TRUE(check_separated(i1.set));
    EXPECT_EQ(i1.set.points, i2.set.points);
    EXPECT_EQ(i1.weights, i2.weights);
    EXPECT_EQ(i1.set.points.size(), 60u);
  }
}

TEST(Hilbert, BoundsHoldOnRandomInstances) {
  for (std::size_t d : {1u, 2u, 3u}) {
    for (double sigma : {0.5, 1.0, 2.5}) {
      std::vector<double> a(d, 1.0);
      a[0] = 1.3;
      LatticeSumSpec spec{a, sigma, 1e-9};
      const auto c = hilbert_constants(spec);
      EXPECT_GT(c.B, 0.0);
      for (std::uint64_t seed = 0; seed < 10; ++seed) {
        auto inst = random_instance(a, 30, seed);
        auto h = verify_hilbert(c, inst.set, inst.weights, sigma);
        EXPECT_TRUE(h.ok) << "d=" << d << " sigma=" << sigma << " seed=" << seed;
      }
    }
  }
}

TEST(Hilbert, SharpnessTrendIsMonotone) {
  LatticeSumSpec spec{{1.0}, 1.0};
  const double B = lattice_sum_B(spec);
  auto steps = sharpness_sweep(spec.a, 1.0, 6, B);
  ASSERT_EQ(steps.size(), 6u);
  for (std::size_t i = 1; i < steps.size(); ++i) EXPECT_GT(steps[i].normalized, steps[i - 1].normalized);
  for (const auto& s : steps) EXPECT_LT(s.fraction, 1.0);
  // the Fejer-weighted sum has a closed form in d = 1
  const int R = 3;
  double fejer = 0.0;
  for (int n = 1; n <= 2 * R; ++n) fejer += 2.0 * (1.0 - n / (2.0 * R + 1.0)) / (static_cast<double>(n) * n);
  EXPECT_NEAR(steps[2].normalized, fejer, 1e-13);
}
