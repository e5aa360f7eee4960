#include "mpos/verify.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "mpos/error.hpp"
#include "mpos/transform.hpp"

namespace mpos {

namespace {

constexpr std::uint64_t kGridCap = 4096;
constexpr std::uint64_t kNaiveCap = 1024;
constexpr std::uint64_t kIndicatorWork = std::uint64_t{1} << 22;
constexpr std::uint64_t kGramWork = std::uint64_t{1} << 24;

constexpr double kRoundTripTol = 1e-12;
constexpr double kFastNaiveTol = 1e-10;
constexpr double kPoissonTol = 1e-10;
constexpr double kIsometryTol = 1e-12;

/// m^e if it stays within `cap`, 0 otherwise.
std::uint64_t bounded_pow(unsigned m, int e, std::uint64_t cap) {
  std::uint64_t r = 1;
  for (int i = 0; i < e; ++i) {
    if (r > cap / m) return 0;
    r *= m;
  }
  return r;
}

class Recorder {
 public:
  Recorder(VerifyReport& report, const IdentityCallback& cb) : report_(report), cb_(cb) {}

  void record(std::string name, bool passed, std::string detail) {
    report_.results.push_back({std::move(name), passed, std::move(detail)});
    if (cb_) cb_(report_.results.back());
  }

 private:
  VerifyReport& report_;
  const IdentityCallback& cb_;
};

std::vector<Complex> random_vector(std::mt19937_64& rng, std::uint64_t n) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<Complex> v(n);
  for (auto& c : v) c = {u(rng), u(rng)};
  return v;
}

double max_abs(const std::vector<Complex>& v) {
  double r = 0.0;
  for (const auto& c : v) r = std::max(r, std::abs(c));
  return r;
}

double max_diff(const std::vector<Complex>& a, const std::vector<Complex>& b, double scale = 1.0) {
  double r = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) r = std::max(r, std::abs(a[i] - scale * b[i]));
  return r;
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(3);
  os << v;
  return os.str();
}

/// sum over `digits` of exp(2 pi i <M^{-1} l, t>) against m-or-0 for l in
/// H_2 and in H_2 + M H_2, with H built on `h_digits` over the same matrix.
bool check_char_sums(const DilationMatrix& m, std::span<const IntVector> h_digits,
                     std::span<const IntVector> sum_digits, const DilationMatrix& sum_matrix,
                     std::string& detail) {
  const unsigned r = m.radix();
  std::uint64_t checked = 0;
  for (std::uint64_t k = 0; k < std::uint64_t{r} * r; ++k) {
    const IntVector base = gamma_of_index(k, m, h_digits);
    for (std::uint64_t j = 0; j < std::uint64_t{r} * r; ++j) {
      const IntVector l = j == 0 ? base : base + m.entries() * gamma_of_index(j, m, h_digits);
      const CyclotomicSum s = char_sum(l, sum_matrix, sum_digits);
      const std::int64_t want = sum_matrix.divides(l) ? r : 0;
      const auto got = s.integer_value();
      ++checked;
      if (!got || *got != want) {
        detail = "l = " + to_string(l) + ": expected " + std::to_string(want) + ", sum is " +
                 (got ? std::to_string(*got) : std::string("irrational"));
        return false;
      }
    }
  }
  detail = std::to_string(checked) + " vectors";
  return true;
}

bool digits_fit(std::span<const IntVector> d, const DilationMatrix& m) {
  return d.size() == m.radix() &&
         std::all_of(d.begin(), d.end(), [&](const IntVector& v) { return v.size() == m.dim(); });
}

StepFunction random_step(std::mt19937_64& rng, Space s, int n, int p, unsigned m) {
  StepFunction f = StepFunction::zeros(s, n, p, m);
  f.coeffs = random_vector(rng, f.coeffs.size());
  return f;
}

}  // namespace

bool VerifyReport::passed() const noexcept { return first_failure() == nullptr; }

const IdentityResult* VerifyReport::first_failure() const noexcept {
  for (const auto& r : results)
    if (!r.passed) return &r;
  return nullptr;
}

VerifyReport run_identity_suite(const SystemConfig& config, const VerifyOptions& options,
                                const IdentityCallback& on_result) {
  if (options.level < 1 || options.level > 2) throw Error(Errc::InvalidArgument, "verify level must be 1 or 2");
  const int nmax = options.level == 1 ? 3 : 6;
  VerifyReport report;
  Recorder rec(report, on_result);

  const IntMatrix entries = IntMatrix::from_rows(config.matrix);
  if (!entries.square()) throw Error(Errc::InvalidArgument, "matrix must be square");
  const DilationMatrix mat(entries);
  const DilationMatrix mat_t = mat.transpose();
  const unsigned m = mat.radix();

  // Raw digit lists: the character sums are the first thing to break on a
  // corrupted set, so they run before validation.
  auto raw_digits = [](const std::optional<std::vector<IntVector>>& given, const DilationMatrix& a) {
    if (given) return *given;
    const DigitSet d = canonical_digit_set(a);
    return std::vector<IntVector>(d.digits().begin(), d.digits().end());
  };
  const std::vector<IntVector> raw_d = raw_digits(config.digits, mat);
  const std::vector<IntVector> raw_ds = raw_digits(config.dual_digits, mat_t);
  if (digits_fit(raw_d, mat) && digits_fit(raw_ds, mat_t)) {
    std::string detail_primal, detail_dual;
    const bool ok_primal = check_char_sums(mat, raw_d, raw_ds, mat, detail_primal);
    const bool ok_dual = ok_primal && check_char_sums(mat_t, raw_ds, raw_d, mat_t, detail_dual);
    rec.record("char_sum", ok_primal && ok_dual,
               !ok_primal ? "sum over D*, " + detail_primal
                          : !ok_dual ? "sum over D, " + detail_dual
                                     : detail_primal + " over D*, " + detail_dual + " over D");
  }

  std::optional<System> sys;
  try {
    sys.emplace(build_system(config));
    rec.record("digit_sets", true, "D and D* are residue systems containing 0");
  } catch (const Error& e) {
    rec.record("digit_sets", false, e.what());
    return report;
  }
  const CharacterTable& t = sys->characters();
  std::mt19937_64 rng(options.seed);

  {
    // Kernel sums over H*_n against the indicators of M^{-n}U and of U_{n,k}.
    bool ok_partition = true, ok_cells = true;
    int reached = -1;
    std::string why;
    for (int n = 0; n <= nmax && ok_partition && ok_cells; ++n) {
      const std::uint64_t points = bounded_pow(m, n + 2, kIndicatorWork);
      const std::uint64_t cells = bounded_pow(m, n, kGridCap);
      if (!points || !cells || points > kIndicatorWork / (cells * cells)) break;
      const CellIndicatorKernel kernel(t, n);
      for (std::uint64_t i = 0; i < points && ok_partition && ok_cells; ++i) {
        const MPoint x = anchor_point(n + 2, i, m, Space::Primal);
        const int want_partition = x.is_zero() || x.coarsest_position() > n ? 1 : 0;
        if (kernel.partition(x) != want_partition) {
          ok_partition = false;
          why = "n = " + std::to_string(n) + ", point index " + std::to_string(i);
        }
        const std::uint64_t home = cell_index(x, n, m);
        const std::vector<int> ind = kernel.indicators(x);
        for (std::uint64_t k = 0; k < cells; ++k)
          if (ind[k] != (k == home ? 1 : 0)) {
            ok_cells = false;
            why = "n = " + std::to_string(n) + ", point index " + std::to_string(i) + ", cell " + std::to_string(k);
            break;
          }
      }
      if (ok_partition && ok_cells) reached = n;
    }
    const std::string span = "scale-(n+2) grid points, n <= " + std::to_string(reached);
    rec.record("kernel_partition", ok_partition, ok_partition ? span : why);
    rec.record("cell_indicator", ok_cells, ok_cells ? span : why);
  }

  {
    bool ok = true;
    int reached = -1;
    std::string why;
    for (int n = 0; n <= nmax && ok; ++n) {
      const std::uint64_t size = bounded_pow(m, n, kGridCap);
      if (!size || size > kGramWork / (size * size)) break;
      std::vector<unsigned> w(size * size);  // [alpha * size + k] = exponent of W_alpha(x_k)
      for (std::uint64_t k = 0; k < size; ++k) {
        const MPoint x = anchor_point(n, k, m, Space::Primal);
        for (std::uint64_t a = 0; a < size; ++a) w[a * size + k] = walsh_eval(a, x, t).exponent;
      }
      std::vector<std::int64_t> hist(m);
      for (std::uint64_t a = 0; a < size && ok; ++a)
        for (std::uint64_t b = 0; b < size && ok; ++b) {
          std::fill(hist.begin(), hist.end(), 0);
          for (std::uint64_t k = 0; k < size; ++k) ++hist[(w[a * size + k] + m - w[b * size + k]) % m];
          CyclotomicSum s(m);
          for (unsigned e = 0; e < m; ++e) s.add(e, hist[e]);
          const auto v = s.integer_value();
          const std::int64_t want = a == b ? static_cast<std::int64_t>(size) : 0;
          if (!v || *v != want) {
            ok = false;
            why = "n = " + std::to_string(n) + ", <W_" + std::to_string(a) + ", W_" + std::to_string(b) + ">";
          }
        }
      if (ok) reached = n;
    }
    rec.record("walsh_orthogonality", ok, ok ? "m^-n Gram = I for n <= " + std::to_string(reached) : why);
  }

  {
    double worst_trip = 0.0, worst_naive = 0.0;
    int reached = -1, reached_naive = -1;
    for (int n = 0; n <= nmax; ++n) {
      const std::uint64_t size = bounded_pow(m, n, kGridCap);
      if (!size) break;
      const VcPlan plan(t, n);
      std::optional<NaiveVcKernel> naive;
      if (size <= kNaiveCap) naive.emplace(*sys, n);
      const double c = vc_round_trip_constant(m, n);
      for (int s = 0; s < options.samples; ++s) {
        const SpectrumVector b{n, SpectrumSide::Time, random_vector(rng, size)};
        const SpectrumVector a = plan.execute(b, Direction::Forward);
        const SpectrumVector back = plan.execute(a, Direction::Inverse);
        worst_trip = std::max(worst_trip, max_diff(back.coeffs, b.coeffs, c));
        if (naive) {
          worst_naive = std::max(worst_naive, max_diff(naive->forward(b).coeffs, a.coeffs));
          worst_naive = std::max(worst_naive, max_diff(naive->inverse(a).coeffs, back.coeffs));
        }
      }
      reached = n;
      if (naive) reached_naive = n;
    }
    rec.record("vc_round_trip", worst_trip < kRoundTripTol,
               "inverse(forward(b)) = m^-n b, n <= " + std::to_string(reached) + ", max error " + fmt(worst_trip));
    rec.record("vc_fast_matches_naive", worst_naive < kFastNaiveTol,
               "n <= " + std::to_string(reached_naive) + ", max error " + fmt(worst_naive));
  }

  {
    double trip = 0.0, poisson = 0.0, plancherel = 0.0, shift = 0.0;
    bool shapes = true;
    std::string shape_why;
    std::uniform_int_distribution<std::uint64_t> pick_h(0, std::uint64_t{m} * m - 1);
    for (int n = 0; n <= nmax; ++n)
      for (int p = 0; p <= nmax; ++p) {
        const std::uint64_t size = bounded_pow(m, n + p, kGridCap);
        if (!size) continue;
        for (int s = 0; s < options.samples; ++s) {
          const StepFunction f = random_step(rng, Space::Primal, n, p, m);
          const double unit = std::max(1.0, max_abs(f.coeffs));
          const StepFunction fh = fourier_step(f, *sys);
          if (fh.space != Space::Dual || fh.value_scale != p || fh.support_scale != n ||
              fh.coeffs.size() != size) {
            shapes = false;
            shape_why = "(" + std::to_string(n) + "," + std::to_string(p) + ") did not map to (" +
                        std::to_string(p) + "," + std::to_string(n) + ")";
          }
          const StepFunction back = inverse_fourier_step(fh, *sys);
          if (back.value_scale != n || back.support_scale != p) {
            shapes = false;
            shape_why = "inverse transform broke the (n,p) shape";
          } else {
            trip = std::max(trip, max_diff(back.coeffs, f.coeffs) / unit);
          }

          const PoissonSums ps = poisson_check(f, *sys);
          poisson = std::max(poisson, std::abs(ps.lhs - ps.rhs) / std::max(1.0, std::abs(ps.lhs)));

          const double e = energy(f, m);
          plancherel = std::max(plancherel, std::abs(e - energy(fh, m)) / std::max(1.0, e));

          const MPoint h = anchor_point(0, pick_h(rng), m, Space::Primal);
          const StepFunction shifted_hat = fourier_step(shift_step(f, h, *sys), *sys);
          const double scale = std::max(1.0, max_abs(fh.coeffs));
          for (std::uint64_t j = 0; j < shifted_hat.coeffs.size(); ++j) {
            const MPoint w = anchor_point(shifted_hat.value_scale, j, m, Space::Dual);
            const Complex want = chi(h, w, t).to_complex() * value_at(fh, w, m);
            shift = std::max(shift, std::abs(shifted_hat.coeffs[j] - want) / scale);
          }
        }
      }
    rec.record("fourier_round_trip", trip < kRoundTripTol, "max relative error " + fmt(trip));
    rec.record("fourier_duality", shapes, shapes ? "S_n^(p)(X) -> S_p^(n)(X*) on every shape" : shape_why);
    rec.record("poisson", poisson < kPoissonTol, "max |lhs - rhs| " + fmt(poisson));
    rec.record("plancherel", plancherel < kIsometryTol, "max energy gap " + fmt(plancherel));
    rec.record("shift", shift < kIsometryTol, "max gap " + fmt(shift));
  }
  return report;
}

}  // namespace mpos
