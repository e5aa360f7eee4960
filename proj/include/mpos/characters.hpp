#pragma once

// Exact characters chi(x, omega) and Walsh functions. Every value is an m-th
// root of unity, carried as its exponent.

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "mpos/cyclotomic.hpp"
#include "mpos/digits.hpp"

namespace mpos {

/// exp(2 pi i exponent / modulus).
struct CharValue {
  unsigned exponent = 0;
  unsigned modulus = 1;

  CharValue operator*(CharValue o) const noexcept {
    return {(exponent + o.exponent) % modulus, modulus};
  }
  CharValue conj() const noexcept { return {(modulus - exponent) % modulus, modulus}; }
  bool is_one() const noexcept { return exponent == 0; }
  std::complex<double> to_complex() const;
  bool operator==(const CharValue&) const = default;
};

/// exp(2 pi i <M^{-1} s, t>) for s a digit of M and t a digit of M*.
/// <M^{-1}s,t> = <adj(M) s, t> / det and det = sign * m, so the exponent is
/// sign * <adj(M) s, t> mod m.
CharValue digit_char(const IntVector& s, const IntVector& t, const DilationMatrix& m);

/// The m x m exponent table E(a, b) = digit_char(s_a, s*_b) plus a table of the
/// m roots of unity.
class CharacterTable {
 public:
  /// `dual` must be a digit set for the transpose of primal's matrix.
  CharacterTable(const DigitSet& primal, const DigitSet& dual);

  unsigned radix() const noexcept { return m_; }
  unsigned exponent(unsigned primal_digit, unsigned dual_digit) const noexcept {
    return table_[primal_digit * m_ + dual_digit];
  }
  const std::complex<double>& root(unsigned e) const noexcept { return roots_[e]; }
  std::span<const std::complex<double>> roots() const noexcept { return roots_; }

 private:
  unsigned m_;
  std::vector<unsigned> table_;
  std::vector<std::complex<double>> roots_;
};

/// chi(x, omega) with the digit pairing x_j <-> omega_{1-j}. Throws
/// SpaceMismatch unless x is primal and omega dual.
CharValue chi(const MPoint& x, const MPoint& omega, const CharacterTable& t);

/// W_alpha(x) = chi(x, gamma*_[alpha]).
CharValue walsh_eval(std::uint64_t alpha, const MPoint& x, const CharacterTable& t);

/// sum over s* in D* of exp(2 pi i <M^{-1} l, s*>), exactly. Equals m when
/// l = 0 mod M and 0 otherwise for a genuine digit set; takes raw digits so a
/// broken set can be diagnosed.
CyclotomicSum char_sum(const IntVector& l, const DilationMatrix& m,
                       std::span<const IntVector> dual_digits);

/// m^{-n} sum_{gamma* in H*_n} chi(x, gamma*): 1 on U_n, 0 on U \ U_n.
/// x must lie in U (digits at positions >= 1), else ScaleTooCoarse.
int kernel_partition_sum(const MPoint& x, int n, const CharacterTable& t);

/// Indicator of U_{n,k} on U as m^{-n} sum_{gamma*} conj(c_k(gamma*)) chi(x, gamma*)
/// with c_k(gamma*) = chi(M^{-n} gamma_[k], gamma*).
int cell_indicator_sum(const MPoint& x, int n, std::uint64_t k, const CharacterTable& t);

/// Batched form of the two sums above for many points at a fixed scale n:
/// precomputes the m^n dual anchors and the m^{2n} exponents of c_k.
class CellIndicatorKernel {
 public:
  CellIndicatorKernel(const CharacterTable& t, int n);

  int scale() const noexcept { return n_; }
  /// Same value as kernel_partition_sum(x, n, t).
  int partition(const MPoint& x) const;
  /// out[k] = cell_indicator_sum(x, n, k, t) for every k < m^n.
  std::vector<int> indicators(const MPoint& x) const;

 private:
  std::vector<unsigned> walsh_exponents(const MPoint& x) const;

  const CharacterTable* table_;
  int n_;
  std::uint64_t size_;
  std::vector<MPoint> dual_anchors_;
  std::vector<std::uint16_t> cell_exps_;  // [k * size + g] = exponent of c_k(gamma*_[g])
};

}  // namespace mpos
