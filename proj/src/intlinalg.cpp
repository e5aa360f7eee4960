#include "mpos/intlinalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "mpos/error.hpp"

namespace {

// Kept outside namespace mpos: unqualified operator* lookup would otherwise
// drag the BigInt overloads into Eigen expressions.
Eigen::MatrixXd inverse_power(const Eigen::MatrixXd& m, int e) {
  Eigen::MatrixXd p = m.inverse();
  Eigen::MatrixXd acc = Eigen::MatrixXd::Identity(m.rows(), m.cols());
  for (; e; e >>= 1) {
    if (e & 1) acc = acc * p;
    p = p * p;
  }
  return acc;
}

}  // namespace

namespace mpos {

IntVector make_vector(std::initializer_list<long long> values) {
  IntVector v;
  v.reserve(values.size());
  for (long long x : values) v.emplace_back(x);
  return v;
}

std::string to_string(const IntVector& v) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) os << ',';
    os << v[i];
  }
  os << ')';
  return os.str();
}

IntVector operator+(const IntVector& a, const IntVector& b) {
  IntVector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

IntVector operator-(const IntVector& a, const IntVector& b) {
  IntVector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

IntVector operator*(const BigInt& s, const IntVector& v) {
  IntVector r(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) r[i] = s * v[i];
  return r;
}

BigInt dot(const IntVector& a, const IntVector& b) {
  BigInt s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

bool is_zero(const IntVector& v) {
  return std::all_of(v.begin(), v.end(), [](const BigInt& x) { return x == 0; });
}

BigInt max_abs(const IntVector& v) {
  BigInt best = 0;
  for (const auto& x : v) best = std::max(best, BigInt(abs(x)));
  return best;
}

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols) {}

IntMatrix IntMatrix::from_rows(const std::vector<std::vector<long long>>& rows) {
  if (rows.empty()) throw Error(Errc::InvalidArgument, "matrix has no rows");
  IntMatrix m(rows.size(), rows.front().size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != m.cols_) throw Error(Errc::InvalidArgument, "ragged matrix rows");
    for (std::size_t j = 0; j < m.cols_; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

IntMatrix IntMatrix::operator*(const IntMatrix& rhs) const {
  IntMatrix r(rows_, rhs.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      const BigInt& a = (*this)(i, k);
      if (a == 0) continue;
      for (std::size_t j = 0; j < rhs.cols_; ++j) r(i, j) += a * rhs(k, j);
    }
  return r;
}

IntVector IntMatrix::operator*(const IntVector& v) const {
  IntVector r(rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    BigInt s = 0;
    for (std::size_t j = 0; j < cols_; ++j) s += (*this)(i, j) * v[j];
    r[i] = std::move(s);
  }
  return r;
}

IntMatrix IntMatrix::operator*(const BigInt& s) const {
  IntMatrix r = *this;
  for (auto& x : r.data_) x *= s;
  return r;
}

IntMatrix IntMatrix::pow(unsigned e) const {
  IntMatrix result = identity(rows_);
  IntMatrix base = *this;
  while (e) {
    if (e & 1u) result = result * base;
    e >>= 1u;
    if (e) base = base * base;
  }
  return result;
}

BigInt IntMatrix::max_abs() const {
  BigInt best = 0;
  for (const auto& x : data_) best = std::max(best, BigInt(abs(x)));
  return best;
}

std::string to_string(const IntMatrix& m) {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < m.rows(); ++i) {
    if (i) os << ',';
    os << '[';
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (j) os << ',';
      os << m(i, j);
    }
    os << ']';
  }
  os << ']';
  return os.str();
}

BigInt determinant(const IntMatrix& a) {
  if (!a.square()) throw Error(Errc::InvalidArgument, "determinant of a non-square matrix");
  const std::size_t n = a.rows();
  if (n == 0) return 1;
  IntMatrix w = a;
  BigInt prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (w(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && w(p, k) == 0) ++p;
      if (p == n) return 0;
      for (std::size_t j = 0; j < n; ++j) std::swap(w(k, j), w(p, j));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        // Exact division: Bareiss' identity guarantees prev divides the numerator.
        w(i, j) = (w(i, j) * w(k, k) - w(i, k) * w(k, j)) / prev;
      }
      w(i, k) = 0;
    }
    prev = w(k, k);
  }
  return sign * w(n - 1, n - 1);
}

DetAdjugate det_adjugate(const IntMatrix& a) {
  if (!a.square()) throw Error(Errc::InvalidArgument, "adjugate of a non-square matrix");
  const std::size_t n = a.rows();
  DetAdjugate out{determinant(a), IntMatrix(n, n)};
  if (n == 1) {
    out.adjugate(0, 0) = 1;
    return out;
  }
  IntMatrix minor(n - 1, n - 1);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) {
      for (std::size_t i = 0, mi = 0; i < n; ++i) {
        if (i == r) continue;
        for (std::size_t j = 0, mj = 0; j < n; ++j) {
          if (j == c) continue;
          minor(mi, mj++) = a(i, j);
        }
        ++mi;
      }
      BigInt cof = determinant(minor);
      if ((r + c) % 2) cof = -cof;
      out.adjugate(c, r) = std::move(cof);
    }
  }
  return out;
}

namespace {

Eigen::MatrixXd to_eigen(const IntMatrix& a) {
  Eigen::MatrixXd m(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = a(i, j).convert_to<double>();
  return m;
}

}  // namespace

DilationCertificate check_dilation(const IntMatrix& a) {
  if (!a.square() || a.rows() == 0)
    throw Error(Errc::InvalidArgument, "dilation check needs a non-empty square matrix");
  DilationCertificate cert;
  cert.power = kDilationPowerCheck;

  const Eigen::MatrixXd m = to_eigen(a);
  Eigen::EigenSolver<Eigen::MatrixXd> solver(m, /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success) return cert;
  cert.min_eigen_modulus = solver.eigenvalues().cwiseAbs().minCoeff();
  if (!(cert.min_eigen_modulus >= 1.0 + kDilationMargin)) {
    cert.inverse_power_norm = std::numeric_limits<double>::infinity();
    return cert;
  }

  const Eigen::MatrixXd acc = inverse_power(m, kDilationPowerCheck);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(acc);
  cert.inverse_power_norm = svd.singularValues()(0);
  cert.accepted = cert.inverse_power_norm < 1.0;
  return cert;
}

DilationMatrix::DilationMatrix(IntMatrix entries) {
  DilationCertificate cert = check_dilation(entries);
  if (!cert.accepted) {
    std::ostringstream os;
    os << "matrix " << to_string(entries) << " has an eigenvalue of modulus "
       << cert.min_eigen_modulus << " (need >= 1 + " << kDilationMargin
       << "), ||M^-" << cert.power << "|| = " << cert.inverse_power_norm;
    throw Error(Errc::NotExpanding, os.str());
  }
  DetAdjugate da = det_adjugate(entries);
  *this = DilationMatrix(std::move(entries), std::move(da.adjugate), std::move(da.det), cert);
}

DilationMatrix::DilationMatrix(IntMatrix entries, IntMatrix adjugate, BigInt det,
                               DilationCertificate cert)
    : entries_(std::move(entries)),
      adjugate_(std::move(adjugate)),
      det_(std::move(det)),
      certificate_(cert) {
  const BigInt m = abs(det_);
  if (m < 2) throw Error(Errc::NotExpanding, "|det M| must be at least 2");
  if (m > 65536) throw Error(Errc::InvalidArgument, "|det M| above 65536 is not supported");
  radix_ = m.convert_to<unsigned>();
  sign_ = det_ > 0 ? 1 : -1;
}

DilationMatrix DilationMatrix::transpose() const {
  return DilationMatrix(entries_.transpose(), adjugate_.transpose(), det_, certificate_);
}

bool DilationMatrix::divides(const IntVector& v) const {
  const IntVector w = adjugate_ * v;
  return std::all_of(w.begin(), w.end(), [&](const BigInt& x) { return x % det_ == 0; });
}

std::optional<IntVector> DilationMatrix::exact_preimage(const IntVector& v) const {
  IntVector w = adjugate_ * v;
  for (auto& x : w) {
    if (x % det_ != 0) return std::nullopt;
    x /= det_;
  }
  return w;
}

Residue residue_decompose(const IntVector& v, const DilationMatrix& m,
                          std::span<const IntVector> digits) {
  std::optional<Residue> found;
  for (std::size_t i = 0; i < digits.size(); ++i) {
    auto q = m.exact_preimage(v - digits[i]);
    if (!q) continue;
    if (found)
      throw Error(Errc::InvalidDigitSet, "digits " + std::to_string(found->digit) + " and " +
                                             std::to_string(i) + " are congruent mod M");
    found = Residue{i, std::move(*q)};
  }
  if (!found) throw Error(Errc::InvalidDigitSet, "no digit congruent to " + to_string(v));
  return std::move(*found);
}

}  // namespace mpos
