#include "mpos/characters.hpp"

#include <algorithm>
#include <numbers>
#include <string>

#include "mpos/error.hpp"

namespace mpos {

namespace {

unsigned reduce_mod(const BigInt& v, unsigned m) {
  BigInt r = v % m;
  if (r < 0) r += m;
  return r.convert_to<unsigned>();
}

std::complex<double> root_of_unity(unsigned e, unsigned m) {
  // Exact values at the quarter turns keep +-1 and +-i free of rounding.
  if (4 * e % m == 0) {
    static constexpr std::complex<double> quarter[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    return quarter[4 * e / m];
  }
  return std::polar(1.0, 2.0 * std::numbers::pi * e / m);
}

std::vector<std::complex<double>> root_table(unsigned m) {
  std::vector<std::complex<double>> roots(m);
  for (unsigned e = 0; e < m; ++e) roots[e] = root_of_unity(e, m);
  return roots;
}

int exact_indicator(const CyclotomicSum& s, std::uint64_t total) {
  auto v = s.integer_value();
  if (v && *v == 0) return 0;
  if (v && static_cast<std::uint64_t>(*v) == total) return 1;
  throw Error(Errc::InvalidDigitSet, "character sum is neither 0 nor m^n; digit sets are inconsistent");
}

}  // namespace

std::complex<double> CharValue::to_complex() const {
  return root_of_unity(exponent, modulus);
}

CharValue digit_char(const IntVector& s, const IntVector& t, const DilationMatrix& m) {
  const BigInt raw = dot(m.adjugate() * s, t) * m.sign();
  return {reduce_mod(raw, m.radix()), m.radix()};
}

CharacterTable::CharacterTable(const DigitSet& primal, const DigitSet& dual)
    : m_(primal.radix()), table_(static_cast<std::size_t>(m_) * m_), roots_(root_table(m_)) {
  if (!(dual.matrix().entries() == primal.matrix().entries().transpose()))
    throw Error(Errc::InvalidArgument, "dual digit set is not built on the transposed matrix");
  for (unsigned a = 0; a < m_; ++a)
    for (unsigned b = 0; b < m_; ++b)
      table_[a * m_ + b] = digit_char(primal.digit(a), dual.digit(b), primal.matrix()).exponent;
}

CharValue chi(const MPoint& x, const MPoint& omega, const CharacterTable& t) {
  if (x.space() != Space::Primal || omega.space() != Space::Dual)
    throw Error(Errc::SpaceMismatch, "chi expects (x in X, omega in X*)");
  const auto& xs = x.entries();
  const auto& ws = omega.entries();
  unsigned e = 0;
  // x ascends in j while the partner position 1 - j descends.
  std::size_t i = 0;
  std::size_t k = ws.size();
  while (i < xs.size() && k > 0) {
    const int partner = 1 - xs[i].position;
    const int wp = ws[k - 1].position;
    if (wp == partner) {
      e += t.exponent(xs[i].digit, ws[k - 1].digit);
      ++i;
      --k;
    } else if (wp > partner) {
      --k;
    } else {
      ++i;
    }
  }
  return {e % t.radix(), t.radix()};
}

CharValue walsh_eval(std::uint64_t alpha, const MPoint& x, const CharacterTable& t) {
  return chi(x, anchor_point(0, alpha, t.radix(), Space::Dual), t);
}

CyclotomicSum char_sum(const IntVector& l, const DilationMatrix& m,
                       std::span<const IntVector> dual_digits) {
  CyclotomicSum s(m.radix());
  const IntVector al = m.adjugate() * l;
  for (const auto& t : dual_digits) s.add(reduce_mod(dot(al, t) * m.sign(), m.radix()));
  return s;
}

int kernel_partition_sum(const MPoint& x, int n, const CharacterTable& t) {
  if (!x.in_unit_tile())
    throw Error(Errc::ScaleTooCoarse, "kernel sums are defined for points of U (digits at positions >= 1)");
  const unsigned m = t.radix();
  const std::uint64_t count = ipow(m, n);
  CyclotomicSum s(m);
  for (std::uint64_t a = 0; a < count; ++a) s.add(chi(x, anchor_point(0, a, m, Space::Dual), t).exponent);
  return exact_indicator(s, count);
}

int cell_indicator_sum(const MPoint& x, int n, std::uint64_t k, const CharacterTable& t) {
  if (!x.in_unit_tile())
    throw Error(Errc::ScaleTooCoarse, "kernel sums are defined for points of U (digits at positions >= 1)");
  const unsigned m = t.radix();
  const std::uint64_t count = ipow(m, n);
  if (k >= count) throw Error(Errc::InvalidArgument, "cell index beyond m^n - 1");
  const MPoint a = anchor_point(n, k, m, Space::Primal);
  CyclotomicSum s(m);
  for (std::uint64_t g = 0; g < count; ++g) {
    const MPoint w = anchor_point(0, g, m, Space::Dual);
    s.add((chi(a, w, t).conj() * chi(x, w, t)).exponent);
  }
  return exact_indicator(s, count);
}

CellIndicatorKernel::CellIndicatorKernel(const CharacterTable& t, int n)
    : table_(&t), n_(n), size_(ipow(t.radix(), n)) {
  if (size_ > (std::uint64_t{1} << 13))
    throw Error(Errc::DepthTooLarge, "indicator kernel limited to m^n <= 8192");
  const unsigned m = t.radix();
  dual_anchors_.reserve(size_);
  for (std::uint64_t g = 0; g < size_; ++g) dual_anchors_.push_back(anchor_point(0, g, m, Space::Dual));
  cell_exps_.resize(size_ * size_);
  for (std::uint64_t k = 0; k < size_; ++k) {
    const MPoint a = anchor_point(n, k, m, Space::Primal);
    for (std::uint64_t g = 0; g < size_; ++g)
      cell_exps_[k * size_ + g] = static_cast<std::uint16_t>(chi(a, dual_anchors_[g], t).exponent);
  }
}

std::vector<unsigned> CellIndicatorKernel::walsh_exponents(const MPoint& x) const {
  if (!x.in_unit_tile())
    throw Error(Errc::ScaleTooCoarse, "kernel sums are defined for points of U (digits at positions >= 1)");
  std::vector<unsigned> e(size_);
  for (std::uint64_t g = 0; g < size_; ++g) e[g] = chi(x, dual_anchors_[g], *table_).exponent;
  return e;
}

int CellIndicatorKernel::partition(const MPoint& x) const {
  CyclotomicSum s(table_->radix());
  for (unsigned e : walsh_exponents(x)) s.add(e);
  return exact_indicator(s, size_);
}

std::vector<int> CellIndicatorKernel::indicators(const MPoint& x) const {
  const unsigned m = table_->radix();
  const std::vector<unsigned> ex = walsh_exponents(x);
  std::vector<int> out(size_);
  std::vector<std::int64_t> hist(m);
  for (std::uint64_t k = 0; k < size_; ++k) {
    std::fill(hist.begin(), hist.end(), 0);
    const std::uint16_t* c = &cell_exps_[k * size_];
    for (std::uint64_t g = 0; g < size_; ++g) ++hist[(ex[g] + m - c[g]) % m];
    CyclotomicSum s(m);
    for (unsigned e = 0; e < m; ++e) s.add(e, hist[e]);
    out[k] = exact_indicator(s, size_);
  }
  return out;
}

}  // namespace mpos
