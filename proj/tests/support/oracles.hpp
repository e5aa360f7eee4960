#pragma once

// Reference computations that do not go through the library's own machinery:
// rational Gaussian elimination instead of adjugates, bit tricks instead of
// butterflies, midpoint quadrature on the real line instead of closed forms.

#include <bit>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <optional>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace oracle {

using Rational = boost::multiprecision::cpp_rational;
using Matrix = std::vector<std::vector<long long>>;
using Vector = std::vector<long long>;

/// Solves A y = v over Q by Gauss-Jordan elimination; A must be invertible.
inline std::vector<Rational> solve(const Matrix& a, const std::vector<Rational>& v) {
  const std::size_t n = a.size();
  std::vector<std::vector<Rational>> w(n, std::vector<Rational>(n + 1));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) w[i][j] = a[i][j];
    w[i][n] = v[i];
  }
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (w[p][c] == 0) ++p;
    std::swap(w[p], w[c]);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || w[r][c] == 0) continue;
      const Rational f = w[r][c] / w[c][c];
      for (std::size_t j = c; j <= n; ++j) w[r][j] -= f * w[c][j];
    }
  }
  std::vector<Rational> y(n);
  for (std::size_t i = 0; i < n; ++i) y[i] = w[i][n] / w[i][i];
  return y;
}

inline std::vector<Rational> solve(const Matrix& a, const Vector& v) {
  return solve(a, std::vector<Rational>(v.begin(), v.end()));
}

inline Matrix transpose(const Matrix& a) {
  Matrix t(a[0].size(), std::vector<long long>(a.size()));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a[0].size(); ++j) t[j][i] = a[i][j];
  return t;
}

inline bool integral(const std::vector<Rational>& y) {
  for (const auto& q : y)
    if (denominator(q) != 1) return false;
  return true;
}

/// l = 0 mod M, i.e. M^{-1} l is an integer vector.
inline bool congruent_zero(const Matrix& m, const Vector& l) { return integral(solve(m, l)); }

inline Rational frac(const Rational& q) {
  using boost::multiprecision::cpp_int;
  cpp_int fl = numerator(q) / denominator(q);
  if (numerator(q) < 0 && fl * denominator(q) != numerator(q)) fl -= 1;
  return q - Rational(fl);
}

/// <M^{-1} s, t> mod 1.
inline Rational pairing(const Matrix& m, const Vector& s, const Vector& t) {
  const auto y = solve(m, s);
  Rational acc = 0;
  for (std::size_t i = 0; i < y.size(); ++i) acc += y[i] * t[i];
  return frac(acc);
}

/// Finite expansion as (position, digit vector) pairs.
struct Expansion {
  std::vector<std::pair<int, Vector>> terms;
};

/// chi(x, omega) = exp(2 pi i sum_j <M^{-1} x_j, omega_{1-j}>) as a fraction of a turn.
inline Rational chi_turns(const Matrix& m, const Expansion& x, const Expansion& omega) {
  Rational acc = 0;
  for (const auto& [j, s] : x.terms)
    for (const auto& [k, t] : omega.terms)
      if (j + k == 1) acc += pairing(m, s, t);
  return frac(acc);
}

/// Base-m digits of k at positions n, n-1, ..., (least significant first at position n).
inline Expansion anchor_expansion(int n, std::uint64_t k, unsigned m, const std::vector<Vector>& digits) {
  Expansion e;
  for (int pos = n; k != 0; k /= m, --pos)
    if (k % m) e.terms.push_back({pos, digits[k % m]});
  return e;
}

inline int sylvester_hadamard(std::uint64_t a, std::uint64_t b) { return std::popcount(a & b) % 2 ? -1 : 1; }

inline std::uint64_t digit_reverse(std::uint64_t j, unsigned m, int n) {
  std::uint64_t r = 0;
  for (int i = 0; i < n; ++i, j /= m) r = r * m + j % m;
  return r;
}

inline std::uint64_t upow(std::uint64_t b, int e) {
  std::uint64_t r = 1;
  while (e-- > 0) r *= b;
  return r;
}

/// Midpoint quadrature of f^(omega) = int_X f(x) conj(chi(x, omega)) dx for
/// d = 1, M = (m), D = D* = {0, ..., m-1}, where X is [0, inf) with base-m
/// digits, U = [0, 1] and chi(x, omega) = exp(2 pi i sum_j x_j omega_{1-j} / m).
/// f is constant on [k m^-n, (k+1) m^-n), supported in [0, m^p). Returns the
/// values at omega = j m^-p for j < m^(n+p). The integrand is sampled at the
/// midpoints of a grid of step m^-depth.
inline std::vector<std::complex<double>> quadrature_fourier_d1(const std::vector<std::complex<double>>& f,
                                                               unsigned m, int n, int p, int depth) {
  const std::uint64_t samples = upow(m, depth + p);
  const std::uint64_t per_cell = upow(m, depth - n);
  const std::uint64_t freqs = upow(m, n + p);
  const double h = std::pow(static_cast<double>(m), -depth);
  // Only x positions t in [1-p, n] meet a nonzero digit of omega (at 1-t).
  const int span = n + p;
  std::vector<unsigned> wdig(freqs * span);
  for (std::uint64_t j = 0; j < freqs; ++j)
    for (int t = 1 - p; t <= n; ++t) {
      const int k = 1 - t;  // omega = j / m^p has digit floor(j / m^{p-k}) mod m at position k
      wdig[j * span + (t + p - 1)] = static_cast<unsigned>((j / upow(m, p - k)) % m);
    }
  std::vector<std::complex<double>> roots(m);
  for (unsigned e = 0; e < m; ++e) roots[e] = std::polar(1.0, -2.0 * std::numbers::pi * e / m);

  std::vector<std::complex<double>> out(freqs, 0.0);
  std::vector<unsigned> xdig(span);
  for (std::uint64_t i = 0; i < samples; ++i) {
    // x = (i + 1/2) m^-depth has digit floor(i / m^{depth-t}) mod m at position t.
    for (int t = 1 - p; t <= n; ++t) xdig[t + p - 1] = static_cast<unsigned>((i / upow(m, depth - t)) % m);
    const std::complex<double> fx = f[i / per_cell];
    for (std::uint64_t j = 0; j < freqs; ++j) {
      unsigned turns = 0;
      for (int c = 0; c < span; ++c) turns += xdig[c] * wdig[j * span + c];
      out[j] += fx * roots[turns % m];
    }
  }
  for (auto& v : out) v *= h;
  return out;
}

}  // namespace oracle
