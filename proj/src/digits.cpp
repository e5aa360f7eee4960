#include "mpos/digits.hpp"

#include <algorithm>
#include <limits>
#include <set>
#include <string>

#include "mpos/error.hpp"

namespace mpos {

const char* space_name(Space s) noexcept { return s == Space::Primal ? "X" : "X*"; }

std::uint64_t ipow(std::uint64_t base, int exp) {
  if (exp < 0) throw Error(Errc::InvalidArgument, "negative exponent in ipow");
  std::uint64_t r = 1;
  for (int i = 0; i < exp; ++i) {
    if (base != 0 && r > std::numeric_limits<std::uint64_t>::max() / base)
      throw Error(Errc::InvalidArgument, "m^n overflows 64 bits");
    r *= base;
  }
  return r;
}

std::vector<unsigned> base_m_digits(std::uint64_t k, unsigned m, int count) {
  std::vector<unsigned> out(static_cast<std::size_t>(std::max(count, 0)), 0);
  for (auto& d : out) {
    d = static_cast<unsigned>(k % m);
    k /= m;
  }
  return out;
}

DigitSet::DigitSet(DilationMatrix m, std::vector<IntVector> digits)
    : matrix_(std::move(m)), digits_(std::move(digits)) {}

DigitSet DigitSet::validate(const DilationMatrix& m, std::vector<IntVector> candidates) {
  const unsigned r = m.radix();
  if (candidates.size() != r)
    throw Error(Errc::InvalidArgument, "expected " + std::to_string(r) + " digits, got " +
                                           std::to_string(candidates.size()));
  for (const auto& c : candidates)
    if (c.size() != m.dim())
      throw Error(Errc::InvalidArgument, "digit " + to_string(c) + " has the wrong dimension");
  if (!is_zero(candidates[0]))
    throw Error(Errc::MissingZero, "first digit is " + to_string(candidates[0]) + ", expected 0");
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = i + 1; j < r; ++j)
      if (m.divides(candidates[i] - candidates[j]))
        throw Error(Errc::NotAResidueSystem,
                    "digits " + std::to_string(i) + " and " + std::to_string(j) + " (" +
                        to_string(candidates[i]) + ", " + to_string(candidates[j]) +
                        ") are congruent mod M");

  DigitSet d(m, std::move(candidates));
  d.add_.resize(static_cast<std::size_t>(r) * r);
  d.neg_.resize(r);
  for (unsigned i = 0; i < r; ++i) {
    for (unsigned j = 0; j < r; ++j)
      d.add_[i * r + j] = static_cast<unsigned>(d.decompose(d.digits_[i] + d.digits_[j]).digit);
    d.neg_[i] = static_cast<unsigned>(d.decompose(BigInt(-1) * d.digits_[i]).digit);
  }
  return d;
}

namespace {

struct CandidateKey {
  BigInt norm;
  std::size_t negatives;
  const IntVector* v;
};

bool candidate_less(const CandidateKey& a, const CandidateKey& b) {
  if (a.norm != b.norm) return a.norm < b.norm;
  if (a.negatives != b.negatives) return a.negatives < b.negatives;
  for (std::size_t i = a.v->size(); i-- > 0;)
    if ((*a.v)[i] != (*b.v)[i]) return (*a.v)[i] < (*b.v)[i];
  return false;
}

std::vector<IntVector> box_vectors(std::size_t dim, long long bound) {
  std::vector<IntVector> out;
  IntVector cur(dim, BigInt(-bound));
  while (true) {
    out.push_back(cur);
    std::size_t i = 0;
    while (i < dim && cur[i] == bound) cur[i++] = -bound;
    if (i == dim) break;
    ++cur[i];
  }
  return out;
}

}  // namespace

DigitSet canonical_digit_set(const DilationMatrix& m) {
  const unsigned r = m.radix();
  long long bound = m.adjugate().max_abs().convert_to<long long>() + 1;
  while (true) {
    const auto box = box_vectors(m.dim(), bound);
    std::vector<CandidateKey> keys;
    keys.reserve(box.size());
    for (const auto& v : box) {
      const auto neg = static_cast<std::size_t>(
          std::count_if(v.begin(), v.end(), [](const BigInt& x) { return x < 0; }));
      keys.push_back({max_abs(v), neg, &v});
    }
    std::sort(keys.begin(), keys.end(), candidate_less);

    std::vector<IntVector> accepted;
    for (const auto& k : keys) {
      const bool fresh = std::none_of(accepted.begin(), accepted.end(),
                                      [&](const IntVector& s) { return m.divides(*k.v - s); });
      if (fresh) accepted.push_back(*k.v);
      if (accepted.size() == r) return DigitSet::validate(m, std::move(accepted));
    }
    bound *= 2;
  }
}

IntVector gamma_of_index(const BigInt& k, const DilationMatrix& m, std::span<const IntVector> digits) {
  if (k < 0) throw Error(Errc::InvalidArgument, "negative H index");
  std::vector<unsigned> ds;
  for (BigInt rest = k; rest != 0; rest /= m.radix())
    ds.push_back(static_cast<unsigned>(rest % m.radix()));
  IntVector v(m.dim(), BigInt(0));
  for (std::size_t i = ds.size(); i-- > 0;) v = m.entries() * v + digits[ds[i]];
  return v;
}

BigInt index_of_gamma(const IntVector& gamma, const DigitSet& d) {
  std::set<IntVector> seen;
  BigInt k = 0;
  BigInt place = 1;
  IntVector v = gamma;
  while (!is_zero(v)) {
    if (!seen.insert(v).second)
      throw Error(Errc::NotInH, to_string(gamma) + " has no finite expansion over the digit set");
    Residue r = d.decompose(v);
    k += place * r.digit;
    place *= d.radix();
    v = std::move(r.quotient);
  }
  return k;
}

MPoint MPoint::from_entries(Space s, std::vector<DigitEntry> entries) {
  std::sort(entries.begin(), entries.end(),
            [](const DigitEntry& a, const DigitEntry& b) { return a.position < b.position; });
  for (std::size_t i = 1; i < entries.size(); ++i)
    if (entries[i].position == entries[i - 1].position)
      throw Error(Errc::InvalidArgument, "duplicate digit position " + std::to_string(entries[i].position));
  std::erase_if(entries, [](const DigitEntry& e) { return e.digit == 0; });
  MPoint p(s);
  p.entries_ = std::move(entries);
  return p;
}

unsigned MPoint::digit_at(int position) const noexcept {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), position,
                             [](const DigitEntry& e, int p) { return e.position < p; });
  return (it != entries_.end() && it->position == position) ? it->digit : 0;
}

MPoint MPoint::scaled(int k) const {
  MPoint p = *this;
  for (auto& e : p.entries_) e.position -= k;
  return p;
}

MPoint MPoint::truncated(int n) const {
  MPoint p(space_);
  for (const auto& e : entries_)
    if (e.position <= n) p.entries_.push_back(e);
  return p;
}

MPoint oplus(const MPoint& x, const MPoint& y, const DigitSet& d) {
  if (x.space() != y.space())
    throw Error(Errc::SpaceMismatch, std::string("cannot add a point of ") + space_name(x.space()) +
                                         " to a point of " + space_name(y.space()));
  std::vector<DigitEntry> out;
  const auto& a = x.entries();
  const auto& b = y.entries();
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].position < b[j].position)) {
      out.push_back(a[i++]);
    } else if (i == a.size() || b[j].position < a[i].position) {
      out.push_back(b[j++]);
    } else {
      const unsigned s = d.add(a[i].digit, b[j].digit);
      if (s) out.push_back({a[i].position, s});
      ++i;
      ++j;
    }
  }
  return MPoint::from_entries(x.space(), std::move(out));
}

MPoint ominus(const MPoint& x, const MPoint& y, const DigitSet& d) {
  std::vector<DigitEntry> neg;
  neg.reserve(y.entries().size());
  for (const auto& e : y.entries()) neg.push_back({e.position, d.negate(e.digit)});
  return oplus(x, MPoint::from_entries(y.space(), std::move(neg)), d);
}

MPoint to_mpoint(const GridPoint& g, unsigned m, Space s) {
  if (g.index < 0) throw Error(Errc::InvalidArgument, "negative cell index");
  std::vector<DigitEntry> entries;
  int pos = g.scale;
  for (BigInt rest = g.index; rest != 0; rest /= m, --pos) {
    const auto dgt = static_cast<unsigned>(rest % m);
    if (dgt) entries.push_back({pos, dgt});
  }
  return MPoint::from_entries(s, std::move(entries));
}

GridPoint to_grid_point(const MPoint& x, int n, unsigned m) {
  if (!x.is_zero() && x.finest_position() > n)
    throw Error(Errc::ScaleTooCoarse, "point has a digit at position " +
                                          std::to_string(x.finest_position()) + " > scale " +
                                          std::to_string(n));
  GridPoint g{n, 0};
  BigInt mm = m;
  for (const auto& e : x.entries()) g.index += BigInt(e.digit) * pow(mm, static_cast<unsigned>(n - e.position));
  return g;
}

MPoint anchor_point(int n, std::uint64_t k, unsigned m, Space s) {
  std::vector<DigitEntry> entries;
  for (int pos = n; k != 0; k /= m, --pos) {
    const auto dgt = static_cast<unsigned>(k % m);
    if (dgt) entries.push_back({pos, dgt});
  }
  return MPoint::from_entries(s, std::move(entries));
}

BigInt cell_of_point(const MPoint& x, int n, unsigned m) {
  return to_grid_point(x.truncated(n), n, m).index;
}

std::uint64_t cell_index(const MPoint& x, int n, unsigned m) {
  std::uint64_t k = 0;
  for (const auto& e : x.entries()) {
    if (e.position > n) break;
    const std::uint64_t w = ipow(m, n - e.position);
    if (w != 0 && e.digit > std::numeric_limits<std::uint64_t>::max() / w)
      throw Error(Errc::InvalidArgument, "cell index overflows 64 bits");
    const std::uint64_t add = e.digit * w;
    if (k > std::numeric_limits<std::uint64_t>::max() - add)
      throw Error(Errc::InvalidArgument, "cell index overflows 64 bits");
    k += add;
  }
  return k;
}

ScaledPoint exact_value(const MPoint& x, const DigitSet& d) {
  ScaledPoint out{std::max(0, x.finest_position()), IntVector(d.dim(), BigInt(0))};
  if (x.is_zero()) return out;
  const IntMatrix& m = d.matrix().entries();
  for (int pos = x.coarsest_position(); pos <= out.scale; ++pos) {
    out.numer = m * out.numer;
    if (unsigned dg = x.digit_at(pos)) out.numer = out.numer + d.digit(dg);
  }
  return out;
}

std::vector<double> to_double(const MPoint& x, const DigitSet& d) {
  using boost::multiprecision::cpp_rational;
  const ScaledPoint sp = exact_value(x, d);
  const IntVector num = d.matrix().adjugate().pow(static_cast<unsigned>(sp.scale)) * sp.numer;
  const BigInt den = pow(d.matrix().det(), static_cast<unsigned>(sp.scale));
  // cpp_rational rejects a negative denominator, so carry the sign on top.
  const int sign = den < 0 ? -1 : 1;
  std::vector<double> out;
  out.reserve(num.size());
  for (const auto& v : num) out.push_back(cpp_rational(sign * v, sign * den).convert_to<double>());
  return out;
}

}  // namespace mpos
