#pragma once

// Exact integer linear algebra: fraction-free determinants, adjugates and the
// dilation-matrix wrapper every other module is parameterised by.

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace mpos {

using BigInt = boost::multiprecision::cpp_int;
using IntVector = std::vector<BigInt>;

IntVector make_vector(std::initializer_list<long long> values);
std::string to_string(const IntVector& v);

IntVector operator+(const IntVector& a, const IntVector& b);
IntVector operator-(const IntVector& a, const IntVector& b);
IntVector operator*(const BigInt& s, const IntVector& v);
BigInt dot(const IntVector& a, const IntVector& b);
bool is_zero(const IntVector& v);
BigInt max_abs(const IntVector& v);

/// Dense row-major integer matrix.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols);

  static IntMatrix from_rows(const std::vector<std::vector<long long>>& rows);
  static IntMatrix identity(std::size_t n);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool square() const noexcept { return rows_ == cols_; }

  BigInt& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const BigInt& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  IntMatrix transpose() const;
  IntMatrix operator*(const IntMatrix& rhs) const;
  IntVector operator*(const IntVector& v) const;
  IntMatrix operator*(const BigInt& s) const;
  IntMatrix pow(unsigned e) const;
  BigInt max_abs() const;

  bool operator==(const IntMatrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<BigInt> data_;
};

std::string to_string(const IntMatrix& m);

/// Bareiss fraction-free elimination; exact for any square integer matrix.
BigInt determinant(const IntMatrix& a);

struct DetAdjugate {
  BigInt det;
  IntMatrix adjugate;
};

/// det and adjugate with entries * adjugate = det * I. A singular input is a
/// valid call (det = 0); rejecting it is the caller's business.
DetAdjugate det_adjugate(const IntMatrix& a);

struct DilationCertificate {
  bool accepted = false;
  double min_eigen_modulus = 0.0;
  /// Spectral norm of M^{-power}; must be < 1.
  double inverse_power_norm = 0.0;
  int power = 0;
};

/// Every eigenvalue modulus must be at least this; the strict inequality of the
/// definition is tightened by a margin so borderline matrices fail loudly.
inline constexpr double kDilationMargin = 1e-6;
inline constexpr int kDilationPowerCheck = 64;

/// Numeric certificate that all eigenvalues of `a` exceed 1 in modulus. Never
/// throws for square input; inspect `accepted`.
DilationCertificate check_dilation(const IntMatrix& a);

/// Integer matrix with m = |det| >= 2 whose eigenvalues all lie outside the
/// closed unit disc. Immutable after construction.
class DilationMatrix {
 public:
  /// Throws Error(NotExpanding) when the certificate rejects `entries`.
  explicit DilationMatrix(IntMatrix entries);

  std::size_t dim() const noexcept { return entries_.rows(); }
  const IntMatrix& entries() const noexcept { return entries_; }
  const IntMatrix& adjugate() const noexcept { return adjugate_; }
  const BigInt& det() const noexcept { return det_; }
  /// m = |det M|.
  unsigned radix() const noexcept { return radix_; }
  /// det / m, either +1 or -1.
  int sign() const noexcept { return sign_; }
  const DilationCertificate& certificate() const noexcept { return certificate_; }

  /// M*, the transpose. Its adjugate is the transposed adjugate.
  DilationMatrix transpose() const;

  /// True iff v is in M Z^d.
  bool divides(const IntVector& v) const;
  /// q with M q = v, if one exists.
  std::optional<IntVector> exact_preimage(const IntVector& v) const;

 private:
  DilationMatrix(IntMatrix entries, IntMatrix adjugate, BigInt det, DilationCertificate cert);

  IntMatrix entries_;
  IntMatrix adjugate_;
  BigInt det_;
  unsigned radix_ = 0;
  int sign_ = 1;
  DilationCertificate certificate_;
};

struct Residue {
  std::size_t digit = 0;
  IntVector quotient;
};

/// Splits v = digits[i] + M q. Throws Error(InvalidDigitSet) if no digit, or
/// more than one, is congruent to v.
Residue residue_decompose(const IntVector& v, const DilationMatrix& m,
                          std::span<const IntVector> digits);

}  // namespace mpos
