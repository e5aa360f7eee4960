#include "mpos/mpos.h"

#include <fstream>
#include <iostream>
#include <limits>
#include <new>
#include <optional>
#include <string>

#include "mpos/error.hpp"
#include "mpos/system.hpp"
#include "mpos/tile.hpp"
#include "mpos/transform.hpp"
#include "mpos/verify.hpp"

struct mpos_system {
  mpos::System sys;
};

struct mpos_tile {
  mpos::TileCloud cloud;
  unsigned radix;
};

namespace {

thread_local std::string g_last_error;

int fail(int code, std::string message) {
  g_last_error = std::move(message);
  return code;
}

/// Runs `body`, mapping every exception onto a status code.
template <class F>
int guarded(F&& body) {
  try {
    body();
    g_last_error.clear();
    return MPOS_OK;
  } catch (const mpos::Error& e) {
    return fail(static_cast<int>(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(MPOS_E_INTERNAL, "Internal: out of memory");
  } catch (const std::exception& e) {
    return fail(MPOS_E_INTERNAL, std::string("Internal: ") + e.what());
  }
}

void require(bool ok, const char* what) {
  if (!ok) throw mpos::Error(mpos::Errc::InvalidArgument, what);
}

mpos::Space to_space(int s) {
  require(s == MPOS_PRIMAL || s == MPOS_DUAL, "space must be MPOS_PRIMAL or MPOS_DUAL");
  return s == MPOS_PRIMAL ? mpos::Space::Primal : mpos::Space::Dual;
}

std::vector<mpos::Complex> read_complex(const double* in, size_t count) {
  require(in != nullptr || count == 0, "null input array");
  std::vector<mpos::Complex> v(count);
  for (size_t i = 0; i < count; ++i) v[i] = {in[2 * i], in[2 * i + 1]};
  return v;
}

void write_complex(const std::vector<mpos::Complex>& v, double* out) {
  for (size_t i = 0; i < v.size(); ++i) {
    out[2 * i] = v[i].real();
    out[2 * i + 1] = v[i].imag();
  }
}

long long to_ll(const mpos::BigInt& v) {
  if (v > std::numeric_limits<long long>::max() || v < std::numeric_limits<long long>::min())
    throw mpos::Error(mpos::Errc::InvalidArgument, "integer does not fit in 64 bits");
  return v.convert_to<long long>();
}

template <class Write>
void with_output(const char* path, Write&& write) {
  if (path == nullptr || *path == '\0' || std::string(path) == "-") {
    write(std::cout);
    std::cout.flush();
    return;
  }
  std::ofstream os(path, std::ios::binary);
  if (!os) throw mpos::Error(mpos::Errc::IoError, std::string("cannot open ") + path + " for writing");
  write(os);
  if (!os) throw mpos::Error(mpos::Errc::IoError, std::string("write to ") + path + " failed");
}

std::uint64_t budget_or_default(uint64_t b) { return b ? b : mpos::kDefaultPointBudget; }

int verify_config(const mpos::SystemConfig& cfg, int level, uint64_t seed, mpos_identity_callback cb, void* user,
                  int* all_passed) {
  mpos::VerifyOptions opt;
  opt.level = level;
  opt.seed = seed;
  const auto report = mpos::run_identity_suite(cfg, opt, [&](const mpos::IdentityResult& r) {
    if (cb) cb(r.name.c_str(), r.passed ? 1 : 0, r.detail.c_str(), user);
  });
  if (all_passed) *all_passed = report.passed() ? 1 : 0;
  return MPOS_OK;
}

}  // namespace

extern "C" {

const char* mpos_status_name(int status) {
  if (status == MPOS_OK) return "Ok";
  if (status == MPOS_E_INTERNAL) return "Internal";
  if (status < 1 || status > MPOS_E_IO) return "Unknown";
  return mpos::errc_name(static_cast<mpos::Errc>(status));
}

const char* mpos_last_error(void) { return g_last_error.c_str(); }

const char* mpos_version(void) { return "0.1.0"; }

int mpos_system_from_file(const char* path, mpos_system** out) {
  return guarded([&] {
    require(path && out, "null argument");
    *out = new mpos_system{mpos::build_system(mpos::SystemConfig::load(path))};
  });
}

int mpos_system_from_json(const char* json, mpos_system** out) {
  return guarded([&] {
    require(json && out, "null argument");
    *out = new mpos_system{mpos::build_system(mpos::SystemConfig::parse(json))};
  });
}

void mpos_system_free(mpos_system* sys) { delete sys; }

unsigned mpos_system_radix(const mpos_system* sys) { return sys ? sys->sys.radix() : 0; }

size_t mpos_system_dim(const mpos_system* sys) { return sys ? sys->sys.dim() : 0; }

int mpos_system_det_sign(const mpos_system* sys) { return sys ? sys->sys.matrix().sign() : 0; }

const char* mpos_system_label(const mpos_system* sys) { return sys ? sys->sys.label().c_str() : ""; }

int mpos_system_matrix(const mpos_system* sys, long long* out) {
  return guarded([&] {
    require(sys && out, "null argument");
    const auto& a = sys->sys.matrix().entries();
    for (size_t i = 0; i < a.rows(); ++i)
      for (size_t j = 0; j < a.cols(); ++j) out[i * a.cols() + j] = to_ll(a(i, j));
  });
}

int mpos_system_certificate(const mpos_system* sys, mpos_certificate* out) {
  return guarded([&] {
    require(sys && out, "null argument");
    const auto& c = sys->sys.matrix().certificate();
    *out = {c.accepted ? 1 : 0, c.min_eigen_modulus, c.inverse_power_norm, c.power};
  });
}

int mpos_system_digit(const mpos_system* sys, int space, unsigned index, long long* out) {
  return guarded([&] {
    require(sys && out, "null argument");
    const auto& d = sys->sys.digits(to_space(space));
    require(index < d.radix(), "digit index out of range");
    const auto& v = d.digit(index);
    for (size_t i = 0; i < v.size(); ++i) out[i] = to_ll(v[i]);
  });
}

int mpos_system_add_table(const mpos_system* sys, int space, unsigned* out) {
  return guarded([&] {
    require(sys && out, "null argument");
    const auto& d = sys->sys.digits(to_space(space));
    const unsigned m = d.radix();
    for (unsigned i = 0; i < m; ++i)
      for (unsigned j = 0; j < m; ++j) out[i * m + j] = d.add(i, j);
  });
}

int mpos_system_char_table(const mpos_system* sys, unsigned* out) {
  return guarded([&] {
    require(sys && out, "null argument");
    const auto& t = sys->sys.characters();
    const unsigned m = t.radix();
    for (unsigned a = 0; a < m; ++a)
      for (unsigned b = 0; b < m; ++b) out[a * m + b] = t.exponent(a, b);
  });
}

double mpos_vc_round_trip_constant(unsigned m, int n) { return mpos::vc_round_trip_constant(m, n); }

int mpos_vc(const mpos_system* sys, int n, int direction, int naive, const double* in, size_t count, double* out) {
  return guarded([&] {
    require(sys && out, "null argument");
    require(direction == MPOS_FORWARD || direction == MPOS_INVERSE, "direction must be forward or inverse");
    const bool fwd = direction == MPOS_FORWARD;
    const mpos::SpectrumVector v{n, fwd ? mpos::SpectrumSide::Time : mpos::SpectrumSide::Frequency,
                                 read_complex(in, count)};
    mpos::SpectrumVector r;
    if (naive)
      r = fwd ? mpos::vc_forward_naive(v, sys->sys) : mpos::vc_inverse_naive(v, sys->sys);
    else
      r = mpos::vc_fast(v, fwd ? mpos::Direction::Forward : mpos::Direction::Inverse, sys->sys);
    write_complex(r.coeffs, out);
  });
}

int mpos_fourier(const mpos_system* sys, int space, int n, int p, const double* in, size_t count, int* out_space,
                 int* out_n, int* out_p, double* out) {
  return guarded([&] {
    require(sys && out, "null argument");
    const mpos::StepFunction f{to_space(space), n, p, read_complex(in, count)};
    const mpos::StepFunction g =
        f.space == mpos::Space::Primal ? mpos::fourier_step(f, sys->sys) : mpos::inverse_fourier_step(f, sys->sys);
    if (out_space) *out_space = g.space == mpos::Space::Primal ? MPOS_PRIMAL : MPOS_DUAL;
    if (out_n) *out_n = g.value_scale;
    if (out_p) *out_p = g.support_scale;
    write_complex(g.coeffs, out);
  });
}

int mpos_poisson(const mpos_system* sys, int n, int p, const double* in, size_t count, double lhs[2],
                 double rhs[2]) {
  return guarded([&] {
    require(sys && lhs && rhs, "null argument");
    const mpos::StepFunction f{mpos::Space::Primal, n, p, read_complex(in, count)};
    const auto s = mpos::poisson_check(f, sys->sys);
    lhs[0] = s.lhs.real();
    lhs[1] = s.lhs.imag();
    rhs[0] = s.rhs.real();
    rhs[1] = s.rhs.imag();
  });
}

int mpos_verify_file(const char* path, int level, uint64_t seed, mpos_identity_callback cb, void* user,
                     int* all_passed) {
  return guarded([&] {
    require(path != nullptr, "null argument");
    verify_config(mpos::SystemConfig::load(path), level, seed, cb, user, all_passed);
  });
}

int mpos_verify_json(const char* json, int level, uint64_t seed, mpos_identity_callback cb, void* user,
                     int* all_passed) {
  return guarded([&] {
    require(json != nullptr, "null argument");
    verify_config(mpos::SystemConfig::parse(json), level, seed, cb, user, all_passed);
  });
}

int mpos_tile_create(const mpos_system* sys, int depth, uint64_t budget, mpos_tile** out) {
  return guarded([&] {
    require(sys && out, "null argument");
    *out = new mpos_tile{mpos::tile_points(sys->sys.primal(), depth, budget_or_default(budget)), sys->sys.radix()};
  });
}

void mpos_tile_free(mpos_tile* tile) { delete tile; }

uint64_t mpos_tile_size(const mpos_tile* tile) { return tile ? tile->cloud.size() : 0; }

size_t mpos_tile_dim(const mpos_tile* tile) { return tile ? tile->cloud.dim : 0; }

int mpos_tile_depth(const mpos_tile* tile) { return tile ? tile->cloud.depth : 0; }

uint64_t mpos_tile_coincident(const mpos_tile* tile) { return tile ? tile->cloud.coincident : 0; }

const double* mpos_tile_points(const mpos_tile* tile) { return tile ? tile->cloud.points.data() : nullptr; }

int mpos_tile_bounds(const mpos_tile* tile, double* box_min, double* box_max) {
  return guarded([&] {
    require(tile && box_min && box_max, "null argument");
    for (size_t i = 0; i < tile->cloud.dim; ++i) {
      box_min[i] = tile->cloud.box_min[i];
      box_max[i] = tile->cloud.box_max[i];
    }
  });
}

int mpos_tile_write_csv(const mpos_tile* tile, const char* path) {
  return guarded([&] {
    require(tile != nullptr, "null argument");
    with_output(path, [&](std::ostream& os) { mpos::write_points_csv(os, tile->cloud); });
  });
}

int mpos_tile_write_pgm(const mpos_tile* tile, const char* path, int width, int height, int binary,
                        int colour_scale) {
  return guarded([&] {
    require(tile != nullptr, "null argument");
    std::optional<int> scale;
    if (colour_scale >= 0) scale = colour_scale;
    const mpos::Raster r = mpos::raster(tile->cloud, width, height, scale, tile->radix);
    with_output(path, [&](std::ostream& os) {
      mpos::write_pgm(os, r, binary ? mpos::PgmFormat::Binary : mpos::PgmFormat::Ascii);
    });
  });
}

int mpos_self_similarity(const mpos_system* sys, int depth, uint64_t budget, int* passed) {
  return guarded([&] {
    require(sys && passed, "null argument");
    const auto& d = sys->sys.primal();
    *passed = mpos::self_similarity_check(d.matrix(), d.digits(), depth, budget_or_default(budget)).passed() ? 1 : 0;
  });
}

int mpos_measure_estimate(const mpos_system* sys, uint64_t samples, int depth, uint64_t seed, uint64_t budget,
                          double* estimate, double* standard_error) {
  return guarded([&] {
    require(sys && estimate && standard_error, "null argument");
    const auto& d = sys->sys.primal();
    const auto e = mpos::measure_estimate(d.matrix(), d.digits(), samples, depth, seed, budget_or_default(budget));
    *estimate = e.estimate;
    *standard_error = e.standard_error;
  });
}

}  // extern "C"
