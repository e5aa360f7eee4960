#pragma once

// Vilenkin-Chrestenson transforms over H_n / H*_n and the Fourier transform of
// compactly supported step functions.
//
// Normalisation. Both directions carry m^{-n}:
//
//   a_{gamma*} = m^{-n} sum_{gamma in H_n}   b_gamma conj(chi(M^{-n} gamma, gamma*))
//   b_gamma    = m^{-n} sum_{gamma* in H*_n} a_{gamma*}    chi(M^{-n} gamma, gamma*)
//
// The kernel K = chi(M^{-n} gamma, gamma*) satisfies K K^H = m^n I, so the pair
// as written composes to m^{-n} times the identity (pinned at n = 1, where
// b = (1,0) -> a = (1/2,1/2) -> (1/2,0) for M = 2). The formulas are kept as
// written; vc_round_trip_constant() reports the factor. The step-function
// Fourier transform below rescales by m^p / m^n and is an exact inverse pair.

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "mpos/system.hpp"

namespace mpos {

using Complex = std::complex<double>;

enum class Direction { Forward, Inverse };
enum class SpectrumSide { Time, Frequency };

/// m^n coefficients indexed by the m-adic index of gamma (time side) or
/// gamma* (frequency side).
struct SpectrumVector {
  int scale = 0;
  SpectrumSide side = SpectrumSide::Time;
  std::vector<Complex> coeffs;
};

/// inverse(forward(b)) = vc_round_trip_constant(m, n) * b.
double vc_round_trip_constant(unsigned m, int n);

/// Direct O(m^{2n}) evaluation with the kernel exponents taken from chi() on
/// the anchors. Reusable across inputs of the same scale; the oracle for the
/// fast path.
class NaiveVcKernel {
 public:
  /// Throws DepthTooLarge when the m^{2n} exponent matrix would exceed 2^26 entries.
  NaiveVcKernel(const System& s, int n);

  int scale() const noexcept { return n_; }
  std::uint64_t size() const noexcept { return size_; }
  /// Exponent of chi(M^{-n} gamma_[time], gamma*_[freq]).
  unsigned exponent(std::uint64_t freq, std::uint64_t time) const noexcept {
    return exps_[freq * size_ + time];
  }

  SpectrumVector forward(const SpectrumVector& time_side) const;
  SpectrumVector inverse(const SpectrumVector& freq_side) const;

 private:
  unsigned m_;
  int n_;
  std::uint64_t size_;
  std::vector<std::uint16_t> exps_;
  std::vector<Complex> roots_;
};

SpectrumVector vc_forward_naive(const SpectrumVector& b, const System& s);
SpectrumVector vc_inverse_naive(const SpectrumVector& a, const System& s);

/// Radix-m decimation: n stages of m^{n-1} independent m-point butterflies
/// with the digit matrix exp(+-2 pi i <M^{-1}s, s*>). The twiddle characters
/// chi(M^{-n} s, gamma*) of the classical derivation are identically 1 here,
/// so every stage is a plain butterfly, followed by a base-m digit reversal of
/// the frequency index.
class VcPlan {
 public:
  VcPlan(const CharacterTable& t, int n);

  int scale() const noexcept { return n_; }
  std::uint64_t size() const noexcept { return size_; }
  /// rev[j]: index whose n base-m digits are those of j reversed.
  std::span<const std::uint64_t> digit_reversal() const noexcept { return reversal_; }

  SpectrumVector execute(const SpectrumVector& v, Direction dir) const;

 private:
  unsigned m_;
  int n_;
  std::uint64_t size_;
  std::vector<std::uint64_t> reversal_;
  std::vector<Complex> forward_butterfly_;  // [b * m + a] = conj(zeta^{E(a,b)})
  std::vector<Complex> inverse_butterfly_;  // [a * m + b] = zeta^{E(a,b)}
};

SpectrumVector vc_fast(const SpectrumVector& v, Direction dir, const System& s);

/// Element of S_n^{(p)}: constant on the cells U_{n,k}, supported in M^p(U).
/// coeffs[k] is the value on U_{n,k} (resp. U*_{n,k}), k < m^{n+p}.
struct StepFunction {
  Space space = Space::Primal;
  int value_scale = 0;
  int support_scale = 0;
  std::vector<Complex> coeffs;

  static StepFunction zeros(Space s, int n, int p, unsigned m);
};

/// Throws ScaleContract if n + p < 0 and LengthMismatch on a bad length.
void check_shape(const StepFunction& f, unsigned m);

/// f(x); zero outside M^p(U). Throws SpaceMismatch.
Complex value_at(const StepFunction& f, const MPoint& x, unsigned m);

/// Same function on a finer/larger grid (n' >= n, p' >= p).
StepFunction refine(const StepFunction& f, int n, int p, unsigned m);

/// S_n^{(p)}(X) -> S_p^{(n)}(X*):
///   f^(omega) = m^{-n} sum_k f_k conj(chi(M^{-n} gamma_[k], omega)) on (M*)^n U*.
StepFunction fourier_step(const StepFunction& f, const System& s);
/// S_a^{(b)}(X*) -> S_b^{(a)}(X): f(x) = m^{-a} sum_j g_j chi(x, (M*)^{-a} gamma*_[j]).
StepFunction inverse_fourier_step(const StepFunction& g, const System& s);

/// x -> f(x (+) h) for an integer point h (h in H, resp. H*). The support
/// scale grows to cover the translated cells when needed.
StepFunction shift_step(const StepFunction& f, const MPoint& h, const System& s);
/// Same, with h given as a vector of H; throws NotInH.
StepFunction shift_step(const StepFunction& f, const IntVector& h, const System& s);

struct PoissonSums {
  Complex lhs;  // sum over gamma in H of f(gamma)
  Complex rhs;  // sum over gamma* in H* of f^(gamma*)
};
PoissonSums poisson_check(const StepFunction& f, const System& s);

/// (1/mu(U)) int |f|^2 = m^{-n} sum_k |f_k|^2.
double energy(const StepFunction& f, unsigned m);
/// (1/mu(U)) int f conj(g), on the common refinement. Throws SpaceMismatch.
Complex inner_product(const StepFunction& f, const StepFunction& g, unsigned m);

}  // namespace mpos
