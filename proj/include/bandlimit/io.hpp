#pragma once

// JSON interchange for coefficient tables and Hilbert instances.
//
//   polynomial: {"degree": [a_1, ...], "coeffs": [{"n": [...], "re": x, "im": y}, ...]}
//   instance:   {"a": [...], "points": [[...], ...], "weights": [[re, im], ...]}

#include <complex>
#include <vector>

#include "json.hpp"

#include "bandlimit/errors.hpp"
#include "bandlimit/hilbert.hpp"
#include "bandlimit/periodic.hpp"

namespace bandlimit {

using Json = nlohmann::ordered_json;

inline Json to_json(const TrigPolynomial& P) {
  Json j;
  j["degree"] = P.degree();
  Json coeffs = Json::array();
  for (std::size_t i = 0; i < P.size(); ++i) {
    const auto c = P.stored(i);
    coeffs.push_back({{"n", P.frequency(i)}, {"re", c.real()}, {"im", c.imag()}});
  }
  j["coeffs"] = std::move(coeffs);
  return j;
}

inline TrigPolynomial polynomial_from_json(const Json& j) {
  try {
    TrigPolynomial P(j.at("degree").get<std::vector<int>>());
    for (const auto& c : j.at("coeffs")) {
      const auto n = c.at("n").get<std::vector<int>>();
      P.set(n, {c.at("re").get<double>(), c.value("im", 0.0)});
    }
    P.require_hermitian();
    return P;
  } catch (const Json::exception& e) {
    throw ParameterError(std::string("malformed polynomial JSON: ") + e.what());
  }
}

inline Json to_json(const HilbertInstance& inst) {
  Json j;
  j["a"] = inst.set.a;
  j["points"] = inst.set.points;
  Json w = Json::array();
  for (const auto& v : inst.weights) w.push_back({v.real(), v.imag()});
  j["weights"] = std::move(w);
  return j;
}

inline HilbertInstance instance_from_json(const Json& j) {
  try {
    HilbertInstance inst;
    inst.set.a = j.at("a").get<std::vector<double>>();
    inst.set.points = j.at("points").get<std::vector<Point>>();
    for (const auto& w : j.at("weights")) {
      if (w.is_array()) {
        inst.weights.emplace_back(w.at(0).get<double>(), w.size() > 1 ? w.at(1).get<double>() : 0.0);
      } else {
        inst.weights.emplace_back(w.get<double>(), 0.0);
      }
    }
    if (inst.weights.size() != inst.set.points.size()) {
      throw ParameterError("instance JSON: one weight per point required");
    }
    for (const auto& p : inst.set.points) {
      if (p.size() != inst.set.a.size()) throw ParameterError("instance JSON: point dimension mismatch");
    }
    return inst;
  } catch (const Json::exception& e) {
    throw ParameterError(std::string("malformed instance JSON: ") + e.what());
  }
}

}  // namespace bandlimit
