#include "mpos/cyclotomic.hpp"

#include <map>
#include <mutex>
#include <numbers>

#include "mpos/error.hpp"

namespace mpos {

namespace {

using Poly = std::vector<std::int64_t>;

// Exact quotient of monic-divisor polynomial division; remainder must vanish.
Poly divide_exact(Poly num, const Poly& den) {
  const std::size_t dn = den.size() - 1;
  Poly q(num.size() - dn, 0);
  for (std::size_t i = num.size(); i-- > dn;) {
    const std::int64_t c = num[i];
    q[i - dn] = c;
    for (std::size_t j = 0; j <= dn; ++j) num[i - dn + j] -= c * den[j];
  }
  return q;
}

Poly compute_cyclotomic(unsigned m) {
  Poly p(m + 1, 0);  // x^m - 1
  p[0] = -1;
  p[m] = 1;
  for (unsigned d = 1; d < m; ++d)
    if (m % d == 0) p = divide_exact(p, cyclotomic_polynomial(d));
  return p;
}

}  // namespace

std::vector<std::int64_t> cyclotomic_polynomial(unsigned m) {
  static std::mutex mu;
  static std::map<unsigned, Poly> cache;
  if (m == 0) throw Error(Errc::InvalidArgument, "cyclotomic polynomial of order 0");
  {
    std::lock_guard lock(mu);
    if (auto it = cache.find(m); it != cache.end()) return it->second;
  }
  Poly p = compute_cyclotomic(m);
  std::lock_guard lock(mu);
  return cache.emplace(m, std::move(p)).first->second;
}

CyclotomicSum::CyclotomicSum(unsigned m) : counts_(m, 0) {
  if (m == 0) throw Error(Errc::InvalidArgument, "root-of-unity order 0");
}

void CyclotomicSum::add(unsigned exponent, std::int64_t count) {
  counts_[exponent % counts_.size()] += count;
}

std::vector<std::int64_t> CyclotomicSum::reduced() const {
  const Poly phi = cyclotomic_polynomial(modulus());
  const std::size_t deg = phi.size() - 1;
  Poly r = counts_;
  for (std::size_t i = r.size(); i-- > deg;) {
    const std::int64_t c = r[i];
    if (c == 0) continue;
    for (std::size_t j = 0; j <= deg; ++j) r[i - deg + j] -= c * phi[j];
  }
  r.resize(deg);
  return r;
}

std::optional<std::int64_t> CyclotomicSum::integer_value() const {
  const Poly r = reduced();
  for (std::size_t i = 1; i < r.size(); ++i)
    if (r[i] != 0) return std::nullopt;
  return r.empty() ? 0 : r[0];
}

bool CyclotomicSum::is_zero() const {
  auto v = integer_value();
  return v && *v == 0;
}

std::complex<double> CyclotomicSum::to_complex() const {
  std::complex<double> s = 0.0;
  const double m = static_cast<double>(modulus());
  for (std::size_t e = 0; e < counts_.size(); ++e)
    if (counts_[e])
      s += static_cast<double>(counts_[e]) *
           std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(e) / m);
  return s;
}

}  // namespace mpos
