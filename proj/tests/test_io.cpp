#include <gtest/gtest.h>

#include "bandlimit/io.hpp"
#include "bandlimit/periodic.hpp"

using namespace bandlimit;

TEST(Io, PolynomialRoundTrip) {
  const std::vector<double> lam{1.0, 0.5};
  const std::vector<int> a{2, 3};
  auto P = periodize_extremal(lam, a, ExtremalKind::Minorant);
  const auto j = to_json(P);
  EXPECT_EQ(j["degree"], Json::parse("[2, 3]"));
  EXPECT_EQ(j["coeffs"].size(), P.size());
  auto Q = polynomial_from_json(Json::parse(j.dump()));
  ASSERT_EQ(Q.size(), P.size());
  for (std::size_t i = 0; i < P.size(); ++i) EXPECT_EQ(Q.stored(i), P.stored(i));
}

TEST(Io, PolynomialRejectsBadInput) {
  EXPECT_THROW(polynomial_from_json(Json::parse(R"({"coeffs": []})")), ParameterError);
  EXPECT_THROW(polynomial_from_json(Json::parse(R"({"degree": [1], "coeffs": [{"n": [3], "re": 1}]})")),
               ParameterError);
  EXPECT_THROW(polynomial_from_json(Json::parse(R"({"degree": [2], "coeffs": [{"n": [1], "re": 1}]})")),
               InvariantError);
}

TEST(Io, InstanceRoundTrip) {
  auto inst = random_instance(std::vector<double>{1.0, 2.0}, 12, 4);
  auto back = instance_from_json(Json::parse(to_json(inst).dump()));
  EXPECT_EQ(back.set.a, inst.set.a);
  EXPECT_EQ(back.set.points, inst.set.points);
  EXPECT_EQ(back.weights, inst.weights);
}

TEST(Io, InstanceAcceptsRealWeights) {
  auto inst = instance_from_json(Json::parse(R"({"a": [1], "points": [[0], [2]], "weights": [1.5, [2, -1]]})"));
  EXPECT_EQ(inst.weights[0], std::complex<double>(1.5, 0.0));
  EXPECT_EQ(inst.weights[1], std::complex<double>(2.0, -1.0));
}

TEST(Io, InstanceRejectsBadInput) {
  EXPECT_THROW(instance_from_json(Json::parse(R"({"a": [1], "points": [[0]], "weights": []})")), ParameterError);
  EXPECT_THROW(instance_from_json(Json::parse(R"({"a": [1], "points": [[0, 1]], "weights": [1]})")), ParameterError);
  EXPECT_THROW(instance_from_json(Json::parse(R"({"points": [], "weights": []})")), ParameterError);
}
