#include "mpos/transform.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "mpos/error.hpp"

namespace mpos {

namespace {

constexpr std::uint64_t kNaiveKernelLimit = std::uint64_t{1} << 26;

void require_length(const SpectrumVector& v, unsigned m) {
  if (v.scale < 0) throw Error(Errc::InvalidArgument, "negative transform scale");
  const std::uint64_t want = ipow(m, v.scale);
  if (v.coeffs.size() != want)
    throw Error(Errc::LengthMismatch, "expected " + std::to_string(want) + " coefficients at scale " +
                                          std::to_string(v.scale) + ", got " +
                                          std::to_string(v.coeffs.size()));
}

void require_side(const SpectrumVector& v, SpectrumSide side) {
  if (v.side != side)
    throw Error(Errc::SpaceMismatch, side == SpectrumSide::Time
                                         ? "forward transform expects time-side coefficients"
                                         : "inverse transform expects frequency-side coefficients");
}

double mpow(unsigned m, int e) { return std::pow(static_cast<double>(m), e); }

}  // namespace

double vc_round_trip_constant(unsigned m, int n) { return mpow(m, -n); }

NaiveVcKernel::NaiveVcKernel(const System& s, int n)
    : m_(s.radix()), n_(n), size_(ipow(s.radix(), n)) {
  if (n < 0) throw Error(Errc::InvalidArgument, "negative transform scale");
  if (size_ > kNaiveKernelLimit / size_)
    throw Error(Errc::DepthTooLarge, "naive kernel at scale " + std::to_string(n) + " needs m^2n > 2^26 entries");
  const CharacterTable& t = s.characters();
  std::vector<MPoint> time(size_);
  std::vector<MPoint> freq(size_);
  for (std::uint64_t k = 0; k < size_; ++k) {
    time[k] = anchor_point(n, k, m_, Space::Primal);
    freq[k] = anchor_point(0, k, m_, Space::Dual);
  }
  exps_.resize(size_ * size_);
  for (std::uint64_t j = 0; j < size_; ++j)
    for (std::uint64_t k = 0; k < size_; ++k)
      exps_[j * size_ + k] = static_cast<std::uint16_t>(chi(time[k], freq[j], t).exponent);
  roots_.assign(t.roots().begin(), t.roots().end());
}

SpectrumVector NaiveVcKernel::forward(const SpectrumVector& b) const {
  require_side(b, SpectrumSide::Time);
  if (b.scale != n_) throw Error(Errc::LengthMismatch, "input scale differs from the kernel scale");
  require_length(b, m_);
  const double norm = mpow(m_, -n_);
  SpectrumVector a{n_, SpectrumSide::Frequency, std::vector<Complex>(size_)};
  for (std::uint64_t j = 0; j < size_; ++j) {
    const std::uint16_t* row = &exps_[j * size_];
    Complex acc = 0.0;
    for (std::uint64_t k = 0; k < size_; ++k) acc += b.coeffs[k] * std::conj(roots_[row[k]]);
    a.coeffs[j] = norm * acc;
  }
  return a;
}

SpectrumVector NaiveVcKernel::inverse(const SpectrumVector& a) const {
  require_side(a, SpectrumSide::Frequency);
  if (a.scale != n_) throw Error(Errc::LengthMismatch, "input scale differs from the kernel scale");
  require_length(a, m_);
  const double norm = mpow(m_, -n_);
  SpectrumVector b{n_, SpectrumSide::Time, std::vector<Complex>(size_, 0.0)};
  for (std::uint64_t j = 0; j < size_; ++j) {
    const std::uint16_t* row = &exps_[j * size_];
    const Complex aj = a.coeffs[j];
    for (std::uint64_t k = 0; k < size_; ++k) b.coeffs[k] += aj * roots_[row[k]];
  }
  for (auto& c : b.coeffs) c *= norm;
  return b;
}

SpectrumVector vc_forward_naive(const SpectrumVector& b, const System& s) {
  return NaiveVcKernel(s, b.scale).forward(b);
}

SpectrumVector vc_inverse_naive(const SpectrumVector& a, const System& s) {
  return NaiveVcKernel(s, a.scale).inverse(a);
}

VcPlan::VcPlan(const CharacterTable& t, int n) : m_(t.radix()), n_(n), size_(ipow(t.radix(), n)) {
  if (n < 0) throw Error(Errc::InvalidArgument, "negative transform scale");
  reversal_.resize(size_);
  for (std::uint64_t j = 0; j < size_; ++j) {
    std::uint64_t rest = j;
    std::uint64_t rev = 0;
    for (int i = 0; i < n; ++i) {
      rev = rev * m_ + rest % m_;
      rest /= m_;
    }
    reversal_[j] = rev;
  }
  forward_butterfly_.resize(static_cast<std::size_t>(m_) * m_);
  inverse_butterfly_.resize(static_cast<std::size_t>(m_) * m_);
  for (unsigned a = 0; a < m_; ++a)
    for (unsigned b = 0; b < m_; ++b) {
      const Complex z = t.root(t.exponent(a, b));
      forward_butterfly_[b * m_ + a] = std::conj(z);
      inverse_butterfly_[a * m_ + b] = z;
    }
}

SpectrumVector VcPlan::execute(const SpectrumVector& v, Direction dir) const {
  require_side(v, dir == Direction::Forward ? SpectrumSide::Time : SpectrumSide::Frequency);
  if (v.scale != n_) throw Error(Errc::LengthMismatch, "input scale differs from the plan scale");
  require_length(v, m_);

  std::vector<Complex> x(size_);
  if (dir == Direction::Forward) {
    x = v.coeffs;
  } else {
    // Position i of the working index pairs time digit k_i with frequency digit j_{n-1-i}.
    for (std::uint64_t j = 0; j < size_; ++j) x[reversal_[j]] = v.coeffs[j];
  }

  const std::vector<Complex>& bf = dir == Direction::Forward ? forward_butterfly_ : inverse_butterfly_;
  std::vector<Complex> in(m_);
  std::uint64_t stride = 1;
  for (int stage = 0; stage < n_; ++stage, stride *= m_) {
    const std::uint64_t block = stride * m_;
    for (std::uint64_t base = 0; base < size_; base += block) {
      for (std::uint64_t off = 0; off < stride; ++off) {
        Complex* p = &x[base + off];
        for (unsigned a = 0; a < m_; ++a) in[a] = p[a * stride];
        for (unsigned r = 0; r < m_; ++r) {
          const Complex* row = &bf[static_cast<std::size_t>(r) * m_];
          Complex acc = 0.0;
          for (unsigned a = 0; a < m_; ++a) acc += row[a] * in[a];
          p[r * stride] = acc;
        }
      }
    }
  }

  const double norm = mpow(m_, -n_);
  SpectrumVector out{n_, dir == Direction::Forward ? SpectrumSide::Frequency : SpectrumSide::Time,
                     std::vector<Complex>(size_)};
  if (dir == Direction::Forward) {
    for (std::uint64_t j = 0; j < size_; ++j) out.coeffs[j] = norm * x[reversal_[j]];
  } else {
    for (std::uint64_t k = 0; k < size_; ++k) out.coeffs[k] = norm * x[k];
  }
  return out;
}

SpectrumVector vc_fast(const SpectrumVector& v, Direction dir, const System& s) {
  return VcPlan(s.characters(), v.scale).execute(v, dir);
}

StepFunction StepFunction::zeros(Space s, int n, int p, unsigned m) {
  if (n + p < 0) throw Error(Errc::ScaleContract, "value scale + support scale must be >= 0");
  return {s, n, p, std::vector<Complex>(ipow(m, n + p), 0.0)};
}

void check_shape(const StepFunction& f, unsigned m) {
  if (f.value_scale + f.support_scale < 0)
    throw Error(Errc::ScaleContract, "value scale + support scale must be >= 0");
  const std::uint64_t want = ipow(m, f.value_scale + f.support_scale);
  if (f.coeffs.size() != want)
    throw Error(Errc::LengthMismatch, "step function on scales (" + std::to_string(f.value_scale) + "," +
                                          std::to_string(f.support_scale) + ") needs " +
                                          std::to_string(want) + " values, got " +
                                          std::to_string(f.coeffs.size()));
}

Complex value_at(const StepFunction& f, const MPoint& x, unsigned m) {
  if (x.space() != f.space) throw Error(Errc::SpaceMismatch, "point and function live on different spaces");
  // M^p(U) is the set of points without digits at positions <= -p.
  if (!x.is_zero() && x.coarsest_position() < 1 - f.support_scale) return 0.0;
  return f.coeffs[cell_index(x, f.value_scale, m)];
}

StepFunction refine(const StepFunction& f, int n, int p, unsigned m) {
  check_shape(f, m);
  if (n < f.value_scale || p < f.support_scale)
    throw Error(Errc::InvalidArgument, "refine cannot coarsen a step function");
  StepFunction g = StepFunction::zeros(f.space, n, p, m);
  for (std::uint64_t k = 0; k < g.coeffs.size(); ++k)
    g.coeffs[k] = value_at(f, anchor_point(n, k, m, f.space), m);
  return g;
}

StepFunction fourier_step(const StepFunction& f, const System& s) {
  if (f.space != Space::Primal) throw Error(Errc::SpaceMismatch, "fourier_step expects a function on X");
  const unsigned m = s.radix();
  check_shape(f, m);
  const int n = f.value_scale;
  const int p = f.support_scale;
  // Evaluated at the dual anchors (M*)^{-p} gamma*_[j]: the closed form equals
  // m^p times the forward VC transform at scale n + p.
  SpectrumVector a = vc_fast({n + p, SpectrumSide::Time, f.coeffs}, Direction::Forward, s);
  StepFunction out{Space::Dual, p, n, std::move(a.coeffs)};
  const double scale = mpow(m, p);
  for (auto& c : out.coeffs) c *= scale;
  if (out.coeffs.size() != ipow(m, out.value_scale + out.support_scale))
    throw Error(Errc::ScaleContract, "transform produced a coefficient count off the dual grid");
  return out;
}

StepFunction inverse_fourier_step(const StepFunction& g, const System& s) {
  if (g.space != Space::Dual) throw Error(Errc::SpaceMismatch, "inverse_fourier_step expects a function on X*");
  const unsigned m = s.radix();
  check_shape(g, m);
  const int a = g.value_scale;
  const int b = g.support_scale;
  SpectrumVector t = vc_fast({a + b, SpectrumSide::Frequency, g.coeffs}, Direction::Inverse, s);
  StepFunction out{Space::Primal, b, a, std::move(t.coeffs)};
  const double scale = mpow(m, b);
  for (auto& c : out.coeffs) c *= scale;
  if (out.coeffs.size() != ipow(m, out.value_scale + out.support_scale))
    throw Error(Errc::ScaleContract, "transform produced a coefficient count off the primal grid");
  return out;
}

StepFunction shift_step(const StepFunction& f, const MPoint& h, const System& s) {
  const unsigned m = s.radix();
  check_shape(f, m);
  if (h.space() != f.space) throw Error(Errc::SpaceMismatch, "shift and function live on different spaces");
  if (!h.is_zero() && h.finest_position() > 0)
    throw Error(Errc::InvalidArgument, "shift must be an integer point (digits at positions <= 0)");
  // h in H_L with L = 1 - (coarsest position); M^p(U) (-) h stays in M^max(p,L)(U).
  const int reach = h.is_zero() ? 0 : 1 - h.coarsest_position();
  const int p = std::max(f.support_scale, reach);
  const DigitSet& d = s.digits(f.space);
  StepFunction g = StepFunction::zeros(f.space, f.value_scale, p, m);
  for (std::uint64_t k = 0; k < g.coeffs.size(); ++k)
    g.coeffs[k] = value_at(f, oplus(anchor_point(f.value_scale, k, m, f.space), h, d), m);
  return g;
}

StepFunction shift_step(const StepFunction& f, const IntVector& h, const System& s) {
  const BigInt k = index_of_gamma(h, s.digits(f.space));
  return shift_step(f, to_mpoint(GridPoint{0, k}, s.radix(), f.space), s);
}

PoissonSums poisson_check(const StepFunction& f, const System& s) {
  if (f.space != Space::Primal) throw Error(Errc::SpaceMismatch, "poisson_check expects a function on X");
  const unsigned m = s.radix();
  check_shape(f, m);
  PoissonSums out{0.0, 0.0};
  // H meets M^p(U) exactly in H_p; H* meets (M*)^n(U*) in H*_n.
  const std::uint64_t lhs_terms = ipow(m, std::max(f.support_scale, 0));
  for (std::uint64_t i = 0; i < lhs_terms; ++i)
    out.lhs += value_at(f, anchor_point(0, i, m, Space::Primal), m);
  const StepFunction fh = fourier_step(f, s);
  const std::uint64_t rhs_terms = ipow(m, std::max(fh.support_scale, 0));
  for (std::uint64_t j = 0; j < rhs_terms; ++j)
    out.rhs += value_at(fh, anchor_point(0, j, m, Space::Dual), m);
  return out;
}

double energy(const StepFunction& f, unsigned m) {
  check_shape(f, m);
  double acc = 0.0;
  for (const auto& c : f.coeffs) acc += std::norm(c);
  return acc * mpow(m, -f.value_scale);
}

Complex inner_product(const StepFunction& f, const StepFunction& g, unsigned m) {
  if (f.space != g.space) throw Error(Errc::SpaceMismatch, "inner product across X and X*");
  const int n = std::max(f.value_scale, g.value_scale);
  const int p = std::max(f.support_scale, g.support_scale);
  const StepFunction a = refine(f, n, p, m);
  const StepFunction b = refine(g, n, p, m);
  Complex acc = 0.0;
  for (std::size_t k = 0; k < a.coeffs.size(); ++k) acc += a.coeffs[k] * std::conj(b.coeffs[k]);
  return acc * mpow(m, -n);
}

}  // namespace mpos
