#include "mpos/tile.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <random>
#include <string>
#include <unordered_map>

#include <Eigen/Dense>
#include <boost/multiprecision/cpp_int.hpp>

#include "mpos/error.hpp"

namespace {

double inverse_power_norm(const Eigen::MatrixXd& m, int n) {
  Eigen::MatrixXd p = m.inverse();
  Eigen::MatrixXd acc = Eigen::MatrixXd::Identity(m.rows(), m.cols());
  for (int e = n; e; e >>= 1) {
    if (e & 1) acc = acc * p;
    p = p * p;
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(acc);
  return svd.singularValues()(0);
}

}  // namespace

namespace mpos {

namespace {

using boost::multiprecision::cpp_rational;

void check_budget(unsigned m, int n, std::uint64_t budget) {
  if (n < 0) throw Error(Errc::InvalidArgument, "negative tile depth");
  std::uint64_t count = 1;
  for (int i = 0; i < n; ++i) {
    if (count > budget / m)
      throw Error(Errc::DepthTooLarge, "m^" + std::to_string(n) + " points exceed the budget of " +
                                           std::to_string(budget));
    count *= m;
  }
}

/// numer[k] with M^{-n} gamma_[k] = numer[k] / det^n, built finest digit last:
/// anchor_n(k) = anchor_{n-1}(k / m) + M^{-n} s_{k mod m}.
std::vector<IntVector> anchor_numerators(const DilationMatrix& m, std::span<const IntVector> digits, int n) {
  const unsigned r = m.radix();
  std::vector<IntVector> level{IntVector(m.dim(), BigInt(0))};
  IntMatrix adj_pow = IntMatrix::identity(m.dim());
  for (int depth = 1; depth <= n; ++depth) {
    adj_pow = adj_pow * m.adjugate();
    std::vector<IntVector> finest;
    finest.reserve(r);
    for (unsigned a = 0; a < r; ++a) finest.push_back(adj_pow * digits[a]);
    std::vector<IntVector> next(level.size() * r);
    for (std::size_t k = 0; k < next.size(); ++k) next[k] = m.det() * level[k / r] + finest[k % r];
    level = std::move(next);
  }
  return level;
}

double to_double(const BigInt& num, const BigInt& den) {
  static const BigInt exact_limit = BigInt(1) << 53;
  if (abs(num) < exact_limit && abs(den) < exact_limit)
    return num.convert_to<double>() / den.convert_to<double>();
  // cpp_rational rejects a negative denominator.
  return (den < 0 ? cpp_rational(-num, -den) : cpp_rational(num, den)).convert_to<double>();
}

std::uint64_t count_duplicates(std::vector<IntVector> v) {
  std::sort(v.begin(), v.end());
  std::uint64_t dup = 0;
  for (std::size_t i = 1; i < v.size(); ++i)
    if (v[i] == v[i - 1]) ++dup;
  return dup;
}

double euclidean(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
  return std::sqrt(s);
}

double digit_diameter(std::span<const IntVector> digits) {
  double best = 0.0;
  for (std::size_t i = 0; i < digits.size(); ++i)
    for (std::size_t j = i + 1; j < digits.size(); ++j) {
      double s = 0.0;
      for (std::size_t c = 0; c < digits[i].size(); ++c) {
        const double d = (digits[i][c] - digits[j][c]).convert_to<double>();
        s += d * d;
      }
      best = std::max(best, std::sqrt(s));
    }
  return best;
}

Eigen::MatrixXd as_eigen(const IntMatrix& a) {
  Eigen::MatrixXd e(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      e(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = a(i, j).convert_to<double>();
  return e;
}

}  // namespace

TileCloud tile_points(const DilationMatrix& m, std::span<const IntVector> digits, int n, std::uint64_t budget,
                      bool keep_exact) {
  if (digits.size() != m.radix()) throw Error(Errc::InvalidArgument, "digit count differs from |det M|");
  check_budget(m.radix(), n, budget);
  TileCloud c;
  c.depth = n;
  c.dim = m.dim();
  c.denominator = pow(m.det(), static_cast<unsigned>(n));
  std::vector<IntVector> numer = anchor_numerators(m, digits, n);

  c.points.resize(numer.size() * c.dim);
  c.box_min.assign(c.dim, std::numeric_limits<double>::infinity());
  c.box_max.assign(c.dim, -std::numeric_limits<double>::infinity());
  for (std::size_t k = 0; k < numer.size(); ++k)
    for (std::size_t i = 0; i < c.dim; ++i) {
      const double x = to_double(numer[k][i], c.denominator);
      c.points[k * c.dim + i] = x;
      c.box_min[i] = std::min(c.box_min[i], x);
      c.box_max[i] = std::max(c.box_max[i], x);
    }
  if (keep_exact) {
    c.coincident = count_duplicates(numer);
    c.numerators = std::move(numer);
  } else {
    c.coincident = count_duplicates(std::move(numer));
  }
  return c;
}

SelfSimilarityReport self_similarity_check(const DilationMatrix& m, std::span<const IntVector> digits, int n,
                                           std::uint64_t budget) {
  if (n < 1) throw Error(Errc::InvalidArgument, "self-similarity needs depth >= 1");
  if (digits.size() != m.radix()) throw Error(Errc::InvalidArgument, "digit count differs from |det M|");
  check_budget(m.radix(), n, budget);
  SelfSimilarityReport rep;

  std::vector<IntVector> fine = anchor_numerators(m, digits, n);
  const std::vector<IntVector> coarse = anchor_numerators(m, digits, n - 1);

  // M^{-1}(p / det^{n-1} + s) = adj(p + det^{n-1} s) / det^n.
  const BigInt lift = pow(m.det(), static_cast<unsigned>(n - 1));
  std::vector<IntVector> image;
  image.reserve(coarse.size() * digits.size());
  for (const auto& s : digits) {
    const IntVector shift = lift * s;
    for (const auto& p : coarse) image.push_back(m.adjugate() * (p + shift));
  }
  std::sort(fine.begin(), fine.end());
  std::sort(image.begin(), image.end());
  rep.set_identity = fine == image;

  const BigInt den = abs(pow(m.det(), static_cast<unsigned>(n)));
  for (auto& p : fine)
    for (auto& x : p) {
      x %= den;
      if (x < 0) x += den;
    }
  std::sort(fine.begin(), fine.end());
  rep.distinct_mod_lattice = std::adjacent_find(fine.begin(), fine.end()) == fine.end();
  return rep;
}

std::vector<double> series_identity_check(const DilationMatrix& m, std::span<const IntVector> digits, int max_k) {
  auto it = std::find_if(digits.begin(), digits.end(), [](const IntVector& v) { return !is_zero(v); });
  if (it == digits.end()) throw Error(Errc::InvalidArgument, "digit set has no nonzero digit");
  const IntVector& s = *it;
  const IntVector target = m.entries() * (m.entries() * s);
  const IntMatrix adj2 = m.adjugate() * m.adjugate();
  const BigInt det2 = m.det() * m.det();

  std::vector<cpp_rational> partial(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) partial[i] = cpp_rational(s[i]);
  IntVector numer = s;
  BigInt den = 1;
  std::vector<double> out;
  for (int k = 1; k <= max_k; ++k) {
    numer = adj2 * numer;
    den *= det2;
    double sq = 0.0;
    for (std::size_t i = 0; i < s.size(); ++i) {
      partial[i] += cpp_rational(numer[i], den);
      const double r = (cpp_rational(target[i]) - partial[i]).convert_to<double>();
      sq += r * r;
    }
    out.push_back(std::sqrt(sq));
  }
  return out;
}

MeasureEstimate measure_estimate(const DilationMatrix& m, std::span<const IntVector> digits,
                                 std::uint64_t samples, int depth, std::uint64_t seed, std::uint64_t budget) {
  if (samples == 0) throw Error(Errc::InvalidArgument, "measure estimate needs at least one sample");
  const TileCloud cloud = tile_points(m, digits, depth, budget);
  const std::size_t d = cloud.dim;

  MeasureEstimate est;
  est.depth = depth;
  est.radius = 2.0 * inverse_power_norm(as_eigen(m.entries()), depth) * digit_diameter(digits);
  const double r = est.radius > 0 ? est.radius : 1.0;

  std::vector<double> lo(d), hi(d);
  double volume = 1.0;
  for (std::size_t i = 0; i < d; ++i) {
    lo[i] = cloud.box_min[i] - r;
    hi[i] = cloud.box_max[i] + r;
    volume *= hi[i] - lo[i];
  }

  // Uniform grid with cell side r: a hit lies in the cell of the sample or
  // one of its 3^d neighbours.
  auto cell_of = [&](std::span<const double> x, std::vector<std::int64_t>& key) {
    for (std::size_t i = 0; i < d; ++i) key[i] = static_cast<std::int64_t>(std::floor((x[i] - lo[i]) / r));
  };
  auto pack = [&](const std::vector<std::int64_t>& key) {
    std::uint64_t h = 1469598103934665603ull;
    for (auto v : key) h = (h ^ static_cast<std::uint64_t>(v)) * 1099511628211ull;
    return h;
  };
  std::unordered_map<std::uint64_t, std::vector<std::uint32_t>> grid;
  std::vector<std::int64_t> key(d);
  for (std::uint64_t k = 0; k < cloud.size(); ++k) {
    cell_of(cloud.point(k), key);
    grid[pack(key)].push_back(static_cast<std::uint32_t>(k));
  }

  std::mt19937_64 rng(seed);
  std::vector<std::uniform_real_distribution<double>> axis;
  for (std::size_t i = 0; i < d; ++i) axis.emplace_back(lo[i], hi[i]);
  std::vector<double> x(d);
  std::vector<std::int64_t> base(d), probe(d);
  std::size_t neighbours = 1;
  for (std::size_t i = 0; i < d; ++i) neighbours *= 3;

  std::uint64_t hits = 0;
  for (std::uint64_t t = 0; t < samples; ++t) {
    for (std::size_t i = 0; i < d; ++i) x[i] = axis[i](rng);
    cell_of(x, base);
    bool inside = false;
    for (std::size_t code = 0; code < neighbours && !inside; ++code) {
      std::size_t c = code;
      for (std::size_t i = 0; i < d; ++i, c /= 3) probe[i] = base[i] + static_cast<std::int64_t>(c % 3) - 1;
      auto it = grid.find(pack(probe));
      if (it == grid.end()) continue;
      for (std::uint32_t k : it->second)
        if (euclidean(x, cloud.point(k)) <= r) {
          inside = true;
          break;
        }
    }
    hits += inside;
  }
  const double p = static_cast<double>(hits) / static_cast<double>(samples);
  est.estimate = volume * p;
  est.standard_error = volume * std::sqrt(p * (1.0 - p) / static_cast<double>(samples));
  return est;
}

double Raster::occupancy() const {
  if (pixels.empty()) return 0.0;
  const auto set = std::count_if(pixels.begin(), pixels.end(), [](std::uint32_t v) { return v != 0; });
  return static_cast<double>(set) / static_cast<double>(pixels.size());
}

Raster raster(const TileCloud& cloud, int width, int height, std::optional<int> colour_scale, unsigned radix) {
  if (cloud.dim != 2)
    throw Error(Errc::DimensionUnsupported, "raster output needs d = 2, got d = " + std::to_string(cloud.dim));
  if (width <= 0 || height <= 0) throw Error(Errc::InvalidArgument, "raster size must be positive");
  std::uint64_t divisor = 1;
  if (colour_scale) {
    if (*colour_scale < 0 || *colour_scale > cloud.depth)
      throw Error(Errc::InvalidArgument, "colour scale must lie in [0, depth]");
    if (radix < 2) throw Error(Errc::InvalidArgument, "cell colouring needs the radix m");
    divisor = ipow(radix, cloud.depth - *colour_scale);
  }
  Raster r{width, height, std::vector<std::uint32_t>(static_cast<std::size_t>(width) * height, 0)};
  const double sx = cloud.box_max[0] - cloud.box_min[0];
  const double sy = cloud.box_max[1] - cloud.box_min[1];
  for (std::uint64_t k = 0; k < cloud.size(); ++k) {
    const auto p = cloud.point(k);
    const double u = sx > 0 ? (p[0] - cloud.box_min[0]) / sx : 0.0;
    const double v = sy > 0 ? (cloud.box_max[1] - p[1]) / sy : 0.0;
    const int col = std::clamp(static_cast<int>(std::lround(u * (width - 1))), 0, width - 1);
    const int row = std::clamp(static_cast<int>(std::lround(v * (height - 1))), 0, height - 1);
    // The scale-c cell of anchor k at depth n is k / m^{n-c}.
    r.pixels[static_cast<std::size_t>(row) * width + col] =
        colour_scale ? static_cast<std::uint32_t>(k / divisor + 1) : 1u;
  }
  return r;
}

void write_pgm(std::ostream& os, const Raster& r, PgmFormat format) {
  std::uint32_t peak = 0;
  for (auto v : r.pixels) peak = std::max(peak, v);
  // Occupancy grids are stretched to white; labelled grids keep their values.
  const bool binary_grid = peak <= 1;
  const std::uint32_t maxval = binary_grid ? 255u : std::min<std::uint32_t>(peak, 65535u);
  auto level = [&](std::uint32_t v) { return binary_grid ? v * 255u : std::min(v, maxval); };

  os << (format == PgmFormat::Ascii ? "P2" : "P5") << '\n' << r.width << ' ' << r.height << '\n' << maxval << '\n';
  if (format == PgmFormat::Ascii) {
    for (int y = 0; y < r.height; ++y) {
      for (int x = 0; x < r.width; ++x) {
        if (x) os << ' ';
        os << level(r.pixels[static_cast<std::size_t>(y) * r.width + x]);
      }
      os << '\n';
    }
    return;
  }
  for (auto v : r.pixels) {
    const std::uint32_t l = level(v);
    if (maxval > 255) os.put(static_cast<char>(l >> 8));
    os.put(static_cast<char>(l & 0xff));
  }
}

void write_points_csv(std::ostream& os, const TileCloud& cloud) {
  char buf[64];
  for (std::uint64_t k = 0; k < cloud.size(); ++k) {
    const auto p = cloud.point(k);
    for (std::size_t i = 0; i < cloud.dim; ++i) {
      if (i) os << ',';
      auto res = std::to_chars(buf, buf + sizeof buf, p[i], std::chars_format::general, 17);
      os.write(buf, res.ptr - buf);
    }
    os << '\n';
  }
}

}  // namespace mpos
