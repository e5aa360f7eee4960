#pragma once

// Digit sets, the carry-free group X^0 with its digitwise addition, and the
// m-adic numbering of H and of the scale-n cells U_{n,k}.

#include <cstdint>
#include <span>
#include <vector>

#include "mpos/intlinalg.hpp"

namespace mpos {

enum class Space : std::uint8_t { Primal, Dual };

const char* space_name(Space s) noexcept;
inline Space dual_of(Space s) noexcept { return s == Space::Primal ? Space::Dual : Space::Primal; }

/// Complete residue system of Z^d / M Z^d with s_0 = 0, plus the quotient-group
/// tables: s_i + s_j = s_{add(i,j)} + M c with the carry c discarded.
class DigitSet {
 public:
  /// Throws MissingZero, NotAResidueSystem, InvalidArgument (wrong count/dim).
  static DigitSet validate(const DilationMatrix& m, std::vector<IntVector> candidates);

  const DilationMatrix& matrix() const noexcept { return matrix_; }
  unsigned radix() const noexcept { return matrix_.radix(); }
  std::size_t dim() const noexcept { return matrix_.dim(); }
  std::span<const IntVector> digits() const noexcept { return digits_; }
  const IntVector& digit(unsigned i) const { return digits_.at(i); }

  unsigned add(unsigned i, unsigned j) const noexcept { return add_[i * radix() + j]; }
  unsigned negate(unsigned i) const noexcept { return neg_[i]; }
  unsigned subtract(unsigned i, unsigned j) const noexcept { return add(i, negate(j)); }

  Residue decompose(const IntVector& v) const { return residue_decompose(v, matrix_, digits_); }

 private:
  DigitSet(DilationMatrix m, std::vector<IntVector> digits);

  DilationMatrix matrix_;
  std::vector<IntVector> digits_;
  std::vector<unsigned> add_;
  std::vector<unsigned> neg_;
};

inline DigitSet validate_digit_set(const DilationMatrix& m, std::vector<IntVector> candidates) {
  return DigitSet::validate(m, std::move(candidates));
}

/// Minimal max-norm representative of each coset, ordered by
/// (max-norm, number of negative entries, colexicographic).
DigitSet canonical_digit_set(const DilationMatrix& m);

/// gamma_[k] = sum_j M^j s_{k_j}, k_j the base-m digits of k.
/// Works on raw digit lists so diagnostics can feed unvalidated sets.
IntVector gamma_of_index(const BigInt& k, const DilationMatrix& m, std::span<const IntVector> digits);
inline IntVector gamma_of_index(const BigInt& k, const DigitSet& d) {
  return gamma_of_index(k, d.matrix(), d.digits());
}

/// Inverse of gamma_of_index. Throws NotInH when the greedy digit extraction
/// cycles without reaching 0.
BigInt index_of_gamma(const IntVector& gamma, const DigitSet& d);

struct DigitEntry {
  int position;
  unsigned digit;
  bool operator==(const DigitEntry&) const = default;
};

/// Finite expansion x = sum_j M^{-j} s_{x_j} (dual side: (M*)^{-j} s*_{x_j}).
/// Canonical: entries sorted by position, zero digits never stored.
class MPoint {
 public:
  MPoint() = default;
  explicit MPoint(Space s) : space_(s) {}

  /// Drops zero digits; duplicate positions are an InvalidArgument.
  static MPoint from_entries(Space s, std::vector<DigitEntry> entries);

  Space space() const noexcept { return space_; }
  const std::vector<DigitEntry>& entries() const noexcept { return entries_; }
  bool is_zero() const noexcept { return entries_.empty(); }
  unsigned digit_at(int position) const noexcept;
  /// Finest (largest) occupied position; 0 for the zero point by convention.
  int finest_position() const noexcept { return entries_.empty() ? 0 : entries_.back().position; }
  /// Coarsest (smallest) occupied position; 1 for the zero point.
  int coarsest_position() const noexcept { return entries_.empty() ? 1 : entries_.front().position; }

  /// M^k x (or (M*)^k x): every digit moves from position j to j - k.
  MPoint scaled(int k) const;
  /// Keeps the digits at positions <= n.
  MPoint truncated(int n) const;
  /// True iff x lies in U (no digits at positions <= 0).
  bool in_unit_tile() const noexcept { return coarsest_position() >= 1; }

  bool operator==(const MPoint&) const = default;

 private:
  Space space_ = Space::Primal;
  std::vector<DigitEntry> entries_;
};

/// Digitwise group addition, no carries. Throws SpaceMismatch.
MPoint oplus(const MPoint& x, const MPoint& y, const DigitSet& d);
/// z = x (-) y, i.e. z (+) y = x.
MPoint ominus(const MPoint& x, const MPoint& y, const DigitSet& d);

/// Anchor M^{-n} gamma_[k] of the cell U_{n,k}.
struct GridPoint {
  int scale = 0;
  BigInt index = 0;
  bool operator==(const GridPoint&) const = default;
};

MPoint to_mpoint(const GridPoint& g, unsigned m, Space s);
/// Exact inverse of to_mpoint. Throws ScaleTooCoarse if x has digits at
/// positions > n (x is not a scale-n anchor).
GridPoint to_grid_point(const MPoint& x, int n, unsigned m);

/// 64-bit fast path of to_mpoint for transform-sized indices.
MPoint anchor_point(int n, std::uint64_t k, unsigned m, Space s);

/// k with x in U_{n,k}. Digits finer than scale n do not affect the cell.
BigInt cell_of_point(const MPoint& x, int n, unsigned m);
/// 64-bit variant; throws InvalidArgument on overflow.
std::uint64_t cell_index(const MPoint& x, int n, unsigned m);

/// x = M^{-scale} numer with numer integral, scale = max(0, finest position).
struct ScaledPoint {
  int scale = 0;
  IntVector numer;
};

ScaledPoint exact_value(const MPoint& x, const DigitSet& d);
/// Floating-point coordinates; exact rational until the final division.
std::vector<double> to_double(const MPoint& x, const DigitSet& d);

/// Base-m digits of k, least significant first, padded to `count`.
std::vector<unsigned> base_m_digits(std::uint64_t k, unsigned m, int count);
std::uint64_t ipow(std::uint64_t base, int exp);

}  // namespace mpos
