#pragma once

// Reference systems shared by the unit and acceptance suites.

#include <complex>
#include <random>
#include <string>
#include <vector>

#include "mpos/system.hpp"
#include "mpos/transform.hpp"

namespace corpus {

inline mpos::SystemConfig dyadic() {
  return mpos::SystemConfig::parse(R"({"label":"dyadic","matrix":[[2]],"digits":[0,1],"dual_digits":[0,1]})");
}

inline mpos::SystemConfig triadic() {
  return mpos::SystemConfig::parse(R"({"label":"triadic","matrix":[[3]],"digits":[0,1,2],"dual_digits":[0,1,2]})");
}

inline mpos::SystemConfig quad2() { return mpos::SystemConfig::parse(R"({"label":"2I2","matrix":[[2,0],[0,2]]})"); }

inline mpos::SystemConfig twindragon() {
  return mpos::SystemConfig::parse(
      R"({"label":"twindragon","matrix":[[1,1],[1,-1]],"digits":[[0,0],[1,0]],"dual_digits":[[0,0],[1,0]]})");
}

inline mpos::SystemConfig cubic3() {
  return mpos::SystemConfig::parse(R"({"label":"cubic3","matrix":[[1,-1,0],[0,1,-1],[1,1,1]]})");
}

inline mpos::SystemConfig cube8() {
  return mpos::SystemConfig::parse(R"({"label":"2I3","matrix":[[2,0,0],[0,2,0],[0,0,2]]})");
}

/// The four systems every acceptance criterion runs on.
inline std::vector<mpos::SystemConfig> acceptance_configs() { return {dyadic(), quad2(), twindragon(), cubic3()}; }

inline std::vector<mpos::System> acceptance_systems() {
  std::vector<mpos::System> out;
  for (const auto& c : acceptance_configs()) out.push_back(mpos::build_system(c));
  return out;
}

inline std::vector<std::complex<double>> random_complex(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<std::complex<double>> v(n);
  for (auto& c : v) c = {u(rng), u(rng)};
  return v;
}

inline mpos::StepFunction random_step(std::mt19937_64& rng, mpos::Space s, int n, int p, unsigned m) {
  mpos::StepFunction f = mpos::StepFunction::zeros(s, n, p, m);
  f.coeffs = random_complex(rng, f.coeffs.size());
  return f;
}

inline double max_abs_diff(const std::vector<std::complex<double>>& a, const std::vector<std::complex<double>>& b,
                           double scale_b = 1.0) {
  double r = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) r = std::max(r, std::abs(a[i] - scale_b * b[i]));
  return r;
}

}  // namespace corpus
