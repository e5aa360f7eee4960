#include <doctest.h>

#include <algorithm>
#include <random>

#include "corpus.hpp"
#include "expect.hpp"
#include "mpos/digits.hpp"
#include "oracles.hpp"

using namespace mpos;
using testing::error_of;

namespace {

oracle::Matrix rows_of(const IntMatrix& m) {
  oracle::Matrix r(m.rows(), oracle::Vector(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r[i][j] = static_cast<long long>(m(i, j));
  return r;
}

oracle::Vector ll(const IntVector& v) {
  oracle::Vector r;
  for (const auto& x : v) r.push_back(static_cast<long long>(x));
  return r;
}

// Enumerates the box [-r, r]^d in the documented order and keeps the first
// member of each coset of Z^d / M Z^d.
std::vector<oracle::Vector> canonical_oracle(const oracle::Matrix& m, unsigned count) {
  const std::size_t d = m.size();
  for (int r = 1;; ++r) {
    std::vector<oracle::Vector> box;
    oracle::Vector v(d, -r);
    while (true) {
      box.push_back(v);
      std::size_t i = 0;
      while (i < d && v[i] == r) v[i++] = -r;
      if (i == d) break;
      ++v[i];
    }
    auto key = [](const oracle::Vector& a) {
      long long norm = 0;
      int neg = 0;
      for (auto x : a) {
        norm = std::max(norm, std::abs(x));
        neg += x < 0;
      }
      return std::make_pair(norm, neg);
    };
    std::stable_sort(box.begin(), box.end(), [&](const auto& a, const auto& b) {
      if (key(a) != key(b)) return key(a) < key(b);
      return std::lexicographical_compare(a.rbegin(), a.rend(), b.rbegin(), b.rend());
    });
    std::vector<oracle::Vector> reps;
    for (const auto& c : box) {
      bool fresh = true;
      for (const auto& s : reps) {
        oracle::Vector diff(d);
        for (std::size_t i = 0; i < d; ++i) diff[i] = c[i] - s[i];
        if (oracle::congruent_zero(m, diff)) fresh = false;
      }
      if (fresh) reps.push_back(c);
    }
    if (reps.size() == count) return reps;
  }
}

IntVector to_int(const oracle::Vector& v) {
  IntVector r;
  for (auto x : v) r.push_back(x);
  return r;
}

}  // namespace

TEST_CASE("digit set validation errors") {
  const DilationMatrix m(IntMatrix::from_rows({{2}}));
  CHECK(validate_digit_set(m, {make_vector({0}), make_vector({1})}).radix() == 2);
  CHECK(validate_digit_set(m, {make_vector({0}), make_vector({-1})}).radix() == 2);
  CHECK(error_of([&] { validate_digit_set(m, {make_vector({1}), make_vector({0})}); }) == Errc::MissingZero);
  CHECK(error_of([&] { validate_digit_set(m, {make_vector({0}), make_vector({2})}); }) == Errc::NotAResidueSystem);
  CHECK(error_of([&] { validate_digit_set(m, {make_vector({0})}); }) == Errc::InvalidArgument);
  CHECK(error_of([&] { validate_digit_set(m, {make_vector({0}), make_vector({1, 0})}); }) == Errc::InvalidArgument);

  const DilationMatrix twin(IntMatrix::from_rows({{1, 1}, {1, -1}}));
  CHECK(error_of([&] { validate_digit_set(twin, {make_vector({0, 0}), make_vector({1, 1})}); }) ==
        Errc::NotAResidueSystem);
  CHECK(validate_digit_set(twin, {make_vector({0, 0}), make_vector({0, 1})}).radix() == 2);
}

TEST_CASE("canonical digit sets match a brute-force enumeration") {
  for (const auto& rows : std::vector<oracle::Matrix>{{{2}},
                                                      {{-3}},
                                                      {{5}},
                                                      {{2, 0}, {0, 2}},
                                                      {{1, 1}, {1, -1}},
                                                      {{0, -3}, {1, 0}},
                                                      {{2, 1}, {-1, 2}},
                                                      {{1, -1, 0}, {0, 1, -1}, {1, 1, 1}},
                                                      {{2, 0, 0}, {0, 2, 0}, {0, 0, 2}}}) {
    const DilationMatrix m(IntMatrix::from_rows(rows));
    const DigitSet d = canonical_digit_set(m);
    const auto expect = canonical_oracle(rows, m.radix());
    REQUIRE(d.digits().size() == expect.size());
    for (std::size_t i = 0; i < expect.size(); ++i) CHECK(d.digit(static_cast<unsigned>(i)) == to_int(expect[i]));
  }
}

TEST_CASE("quotient-group tables") {
  for (const auto& cfg : corpus::acceptance_configs()) {
    const System s = build_system(cfg);
    for (Space sp : {Space::Primal, Space::Dual}) {
      const DigitSet& d = s.digits(sp);
      const auto rows = rows_of(d.matrix().entries());
      const unsigned m = d.radix();
      for (unsigned i = 0; i < m; ++i) {
        CHECK(d.add(0, i) == i);
        CHECK(d.add(i, d.negate(i)) == 0);
        for (unsigned j = 0; j < m; ++j) {
          CHECK(d.add(i, j) == d.add(j, i));
          CHECK(d.subtract(d.add(i, j), j) == i);
          // s_i + s_j - s_add(i,j) must lie in M Z^d.
          oracle::Vector diff = ll(d.digit(i) + d.digit(j) - d.digit(d.add(i, j)));
          CHECK(oracle::congruent_zero(rows, diff));
          for (unsigned k = 0; k < m; ++k) CHECK(d.add(d.add(i, j), k) == d.add(i, d.add(j, k)));
        }
      }
    }
  }
}

TEST_CASE("gamma_of_index is sum_j M^j s_{k_j} and index_of_gamma inverts it") {
  for (const auto& cfg : corpus::acceptance_configs()) {
    const System s = build_system(cfg);
    const DigitSet& d = s.primal();
    const unsigned m = d.radix();
    for (std::uint64_t k = 0; k < 300; ++k) {
      IntVector expect(d.dim(), 0);
      IntMatrix power = IntMatrix::identity(d.dim());
      for (std::uint64_t r = k; r != 0; r /= m) {
        expect = expect + power * d.digit(static_cast<unsigned>(r % m));
        power = power * d.matrix().entries();
      }
      const IntVector g = gamma_of_index(BigInt(k), d);
      CHECK(g == expect);
      CHECK(index_of_gamma(g, d) == BigInt(k));
    }
  }
}

TEST_CASE("index_of_gamma handles large indices exactly") {
  const System s = build_system(corpus::twindragon());
  BigInt k = 1;
  k <<= 100;
  k += 12345;
  CHECK(index_of_gamma(gamma_of_index(k, s.primal()), s.primal()) == k);
}

TEST_CASE("vectors outside H are reported") {
  const System dy = build_system(corpus::dyadic());
  CHECK(error_of([&] { index_of_gamma(make_vector({-1}), dy.primal()); }) == Errc::NotInH);
  CHECK(index_of_gamma(make_vector({6}), dy.primal()) == 6);
  const DilationMatrix m(IntMatrix::from_rows({{2}}));
  const DigitSet neg = validate_digit_set(m, {make_vector({0}), make_vector({-1})});
  CHECK(index_of_gamma(make_vector({-3}), neg) == 3);
  CHECK(error_of([&] { index_of_gamma(make_vector({1}), neg); }) == Errc::NotInH);
}

TEST_CASE("MPoint canonical form") {
  const MPoint x = MPoint::from_entries(Space::Primal, {{3, 1}, {-1, 0}, {1, 2}});
  CHECK(x.entries() == std::vector<DigitEntry>{{1, 2}, {3, 1}});
  CHECK(x.finest_position() == 3);
  CHECK(x.coarsest_position() == 1);
  CHECK(x.digit_at(2) == 0);
  CHECK(x.in_unit_tile());
  CHECK(MPoint(Space::Dual).is_zero());
  CHECK(MPoint().coarsest_position() == 1);
  CHECK(error_of([] { MPoint::from_entries(Space::Primal, {{1, 1}, {1, 1}}); }) == Errc::InvalidArgument);
  CHECK(x.scaled(2).entries() == std::vector<DigitEntry>{{-1, 2}, {1, 1}});
  CHECK(!x.scaled(2).in_unit_tile());
  CHECK(x.truncated(2).entries() == std::vector<DigitEntry>{{1, 2}});
}

TEST_CASE("oplus is a group law on expansions") {
  std::mt19937_64 rng(31);
  for (const auto& cfg : corpus::acceptance_configs()) {
    const System s = build_system(cfg);
    const DigitSet& d = s.primal();
    std::uniform_int_distribution<unsigned> dig(0, d.radix() - 1);
    auto random_point = [&] {
      std::vector<DigitEntry> e;
      for (int pos = -3; pos <= 4; ++pos) e.push_back({pos, dig(rng)});
      return MPoint::from_entries(Space::Primal, e);
    };
    for (int trial = 0; trial < 50; ++trial) {
      const MPoint x = random_point(), y = random_point(), z = random_point();
      CHECK(oplus(x, y, d) == oplus(y, x, d));
      CHECK(oplus(oplus(x, y, d), z, d) == oplus(x, oplus(y, z, d), d));
      CHECK(oplus(x, MPoint(Space::Primal), d) == x);
      const MPoint w = ominus(x, y, d);
      CHECK(oplus(w, y, d) == x);
      CHECK(ominus(x, x, d).is_zero());
      // Digitwise: each position adds independently.
      for (int pos = -3; pos <= 4; ++pos) CHECK(oplus(x, y, d).digit_at(pos) == d.add(x.digit_at(pos), y.digit_at(pos)));
    }
    CHECK(error_of([&] { oplus(MPoint(Space::Primal), MPoint(Space::Dual), d); }) == Errc::SpaceMismatch);
  }
}

TEST_CASE("anchors, grid points and cells") {
  const unsigned m = 3;
  for (int n = 0; n <= 4; ++n)
    for (std::uint64_t k = 0; k < 200; ++k) {
      const MPoint a = anchor_point(n, k, m, Space::Primal);
      const auto digits = base_m_digits(k, m, 8);
      for (int i = 0; i < 8; ++i) CHECK(a.digit_at(n - i) == digits[i]);
      CHECK(a == to_mpoint(GridPoint{n, BigInt(k)}, m, Space::Primal));
      CHECK(to_grid_point(a, n, m) == GridPoint{n, BigInt(k)});
      CHECK(cell_index(a, n, m) == k);
      CHECK(cell_of_point(a, n, m) == BigInt(k));
      // Finer digits do not move the cell.
      const MPoint finer = oplus(a, anchor_point(n + 2, 1, m, Space::Primal),
                                 canonical_digit_set(DilationMatrix(IntMatrix::from_rows({{3}}))));
      CHECK(cell_index(finer, n, m) == k);
      if (k > 0 && n > 0) CHECK(error_of([&] { to_grid_point(finer, n, m); }) == Errc::ScaleTooCoarse);
    }
  CHECK(base_m_digits(11, 2, 5) == std::vector<unsigned>{1, 1, 0, 1, 0});
  CHECK(ipow(3, 4) == 81);
  CHECK(error_of([] { ipow(2, 64); }) == Errc::InvalidArgument);
}

TEST_CASE("exact_value equals sum_j M^{-j} s_{x_j} over Q") {
  std::mt19937_64 rng(32);
  for (const auto& cfg : corpus::acceptance_configs()) {
    const System s = build_system(cfg);
    const DigitSet& d = s.primal();
    const auto rows = rows_of(d.matrix().entries());
    std::uniform_int_distribution<unsigned> dig(0, d.radix() - 1);
    for (int trial = 0; trial < 30; ++trial) {
      std::vector<DigitEntry> e;
      for (int pos = -2; pos <= 5; ++pos) e.push_back({pos, dig(rng)});
      const MPoint x = MPoint::from_entries(Space::Primal, e);
      // Oracle: accumulate M^{-j} s by repeated rational solves.
      std::vector<oracle::Rational> acc(d.dim(), 0);
      for (const auto& [pos, digit] : x.entries()) {
        std::vector<oracle::Rational> v;
        for (const auto& c : d.digit(digit)) v.emplace_back(static_cast<long long>(c));
        for (int j = pos; j > 0; --j) v = oracle::solve(rows, v);
        for (int j = pos; j < 0; ++j) {
          std::vector<oracle::Rational> w(d.dim(), 0);
          for (std::size_t r = 0; r < d.dim(); ++r)
            for (std::size_t c = 0; c < d.dim(); ++c) w[r] += rows[r][c] * v[c];
          v = w;
        }
        for (std::size_t i = 0; i < d.dim(); ++i) acc[i] += v[i];
      }
      const ScaledPoint sp = exact_value(x, d);
      std::vector<oracle::Rational> got;
      for (const auto& c : sp.numer) got.emplace_back(oracle::Rational(c));
      for (int j = 0; j < sp.scale; ++j) got = oracle::solve(rows, got);
      CHECK(got == acc);
      const auto dbl = to_double(x, d);
      for (std::size_t i = 0; i < d.dim(); ++i) CHECK(dbl[i] == doctest::Approx(static_cast<double>(acc[i])));
    }
  }
}
