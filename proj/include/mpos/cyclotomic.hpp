#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <vector>

namespace mpos {

/// Exact element of Z[zeta_m] written as a multiset of m-th roots of unity:
/// sum_e count[e] * exp(2 pi i e / m).
///
/// Equality tests are exact. The histogram polynomial is reduced modulo the
/// m-th cyclotomic polynomial, whose powers 1 .. zeta^{phi(m)-1} form a basis,
/// so "is this sum the integer c" has a yes/no answer with no rounding.
class CyclotomicSum {
 public:
  explicit CyclotomicSum(unsigned m);

  unsigned modulus() const noexcept { return static_cast<unsigned>(counts_.size()); }
  void add(unsigned exponent, std::int64_t count = 1);
  const std::vector<std::int64_t>& counts() const noexcept { return counts_; }

  /// Coordinates in the basis 1, zeta, ..., zeta^{phi(m)-1}.
  std::vector<std::int64_t> reduced() const;
  /// The integer this sum equals, if it is rational.
  std::optional<std::int64_t> integer_value() const;
  bool is_zero() const;
  std::complex<double> to_complex() const;

 private:
  std::vector<std::int64_t> counts_;
};

/// Integer coefficients of Phi_m, lowest degree first.
std::vector<std::int64_t> cyclotomic_polynomial(unsigned m);

}  // namespace mpos
