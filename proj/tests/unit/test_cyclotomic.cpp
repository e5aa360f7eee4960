#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "expect.hpp"
#include "mpos/cyclotomic.hpp"

using namespace mpos;

TEST_CASE("known cyclotomic polynomials") {
  using P = std::vector<std::int64_t>;
  CHECK(cyclotomic_polynomial(1) == P{-1, 1});
  CHECK(cyclotomic_polynomial(2) == P{1, 1});
  CHECK(cyclotomic_polynomial(3) == P{1, 1, 1});
  CHECK(cyclotomic_polynomial(4) == P{1, 0, 1});
  CHECK(cyclotomic_polynomial(6) == P{1, -1, 1});
  CHECK(cyclotomic_polynomial(8) == P{1, 0, 0, 0, 1});
  CHECK(cyclotomic_polynomial(12) == P{1, 0, -1, 0, 1});
  // First order with a coefficient other than 0, +-1.
  const P phi105 = cyclotomic_polynomial(105);
  CHECK(phi105.size() == 49);
  CHECK(phi105[7] == -2);
  CHECK(phi105[41] == -2);
  CHECK(testing::error_of([] { cyclotomic_polynomial(0); }) == Errc::InvalidArgument);
}

TEST_CASE("Phi_m vanishes at a primitive root") {
  for (unsigned m = 1; m <= 40; ++m) {
    const auto p = cyclotomic_polynomial(m);
    std::complex<double> z = std::polar(1.0, 2 * std::numbers::pi / m), acc = 0, zk = 1;
    for (auto c : p) {
      acc += static_cast<double>(c) * zk;
      zk *= z;
    }
    CHECK(std::abs(acc) < 1e-8);
  }
}

TEST_CASE("full sum of roots of unity is zero, exactly") {
  for (unsigned m = 2; m <= 30; ++m) {
    CyclotomicSum s(m);
    for (unsigned e = 0; e < m; ++e) s.add(e);
    CHECK(s.is_zero());
    CHECK(s.integer_value() == std::optional<std::int64_t>(0));
  }
}

TEST_CASE("integer detection") {
  CyclotomicSum s(6);
  s.add(0, 5);
  CHECK(s.integer_value() == std::optional<std::int64_t>(5));
  s.add(3);  // -1
  CHECK(s.integer_value() == std::optional<std::int64_t>(4));
  s.add(1);  // zeta_6 is not rational
  CHECK(!s.integer_value().has_value());
  CHECK(!s.is_zero());
  // zeta + zeta^5 = 2 cos(pi/3) = 1
  s.add(5);
  CHECK(s.integer_value() == std::optional<std::int64_t>(5));
}

TEST_CASE("exact reduction agrees with floating point on random multisets") {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 300; ++trial) {
    const unsigned m = 2 + trial % 15;
    CyclotomicSum s(m);
    std::uniform_int_distribution<unsigned> e(0, m - 1);
    std::uniform_int_distribution<int> c(-3, 3);
    std::complex<double> direct = 0;
    for (int i = 0; i < 12; ++i) {
      const unsigned ex = e(rng);
      const int cnt = c(rng);
      s.add(ex, cnt);
      direct += static_cast<double>(cnt) * std::polar(1.0, 2 * std::numbers::pi * ex / m);
    }
    CHECK(std::abs(s.to_complex() - direct) < 1e-9);
    if (auto v = s.integer_value()) {
      CHECK(std::abs(direct - std::complex<double>(static_cast<double>(*v))) < 1e-9);
    } else {
      // A non-rational element of Z[zeta] lies well away from the integers
      // or has a nonzero imaginary part; either way it is not an integer.
      const double re = std::round(direct.real());
      CHECK((std::abs(direct.imag()) > 1e-9 || std::abs(direct.real() - re) > 1e-9));
    }
  }
}
