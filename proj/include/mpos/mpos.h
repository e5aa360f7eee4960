/* C interface to the mpos library.
 *
 * Every fallible call returns an mpos_status; on failure the thread-local
 * message from mpos_last_error() says why. Complex arrays are interleaved
 * (re, im) doubles, so `count` complex values occupy 2 * count doubles.
 * Handles are opaque and owned by the caller once returned.
 */
#ifndef MPOS_MPOS_H
#define MPOS_MPOS_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(MPOS_BUILDING_LIBRARY)
#    define MPOS_API __declspec(dllexport)
#  else
#    define MPOS_API __declspec(dllimport)
#  endif
#else
#  define MPOS_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum mpos_status {
  MPOS_OK = 0,
  MPOS_E_NOT_EXPANDING = 1,
  MPOS_E_NOT_A_RESIDUE_SYSTEM = 2,
  MPOS_E_MISSING_ZERO = 3,
  MPOS_E_INVALID_DIGIT_SET = 4,
  MPOS_E_NOT_IN_H = 5,
  MPOS_E_SPACE_MISMATCH = 6,
  MPOS_E_SCALE_TOO_COARSE = 7,
  MPOS_E_SCALE_CONTRACT = 8,
  MPOS_E_DEPTH_TOO_LARGE = 9,
  MPOS_E_DIMENSION_UNSUPPORTED = 10,
  MPOS_E_LENGTH_MISMATCH = 11,
  MPOS_E_INVALID_ARGUMENT = 12,
  MPOS_E_PARSE = 13,
  MPOS_E_IO = 14,
  MPOS_E_INTERNAL = 100
} mpos_status;

typedef enum mpos_space { MPOS_PRIMAL = 0, MPOS_DUAL = 1 } mpos_space;
typedef enum mpos_direction { MPOS_FORWARD = 0, MPOS_INVERSE = 1 } mpos_direction;

typedef struct mpos_system mpos_system;
typedef struct mpos_tile mpos_tile;

typedef struct mpos_certificate {
  int accepted;
  double min_eigen_modulus;
  double inverse_power_norm; /* ||M^-power||_2 */
  int power;
} mpos_certificate;

/* Stable machine-readable name, e.g. "NotExpanding". */
MPOS_API const char* mpos_status_name(int status);
/* Message of the last failure on this thread; "" if none. */
MPOS_API const char* mpos_last_error(void);
MPOS_API const char* mpos_version(void);

/* ---- systems (M, D, D*) ---------------------------------------------- */

MPOS_API int mpos_system_from_file(const char* path, mpos_system** out);
MPOS_API int mpos_system_from_json(const char* json, mpos_system** out);
MPOS_API void mpos_system_free(mpos_system* sys);

MPOS_API unsigned mpos_system_radix(const mpos_system* sys);
MPOS_API size_t mpos_system_dim(const mpos_system* sys);
MPOS_API int mpos_system_det_sign(const mpos_system* sys);
MPOS_API const char* mpos_system_label(const mpos_system* sys);
/* Row-major d x d entries; fails with InvalidArgument if one does not fit. */
MPOS_API int mpos_system_matrix(const mpos_system* sys, long long* out);
MPOS_API int mpos_system_certificate(const mpos_system* sys, mpos_certificate* out);
/* Digit `index` of D (space = MPOS_PRIMAL) or D* into out[0 .. d). */
MPOS_API int mpos_system_digit(const mpos_system* sys, int space, unsigned index, long long* out);
/* out[i*m + j] = index of s_i + s_j in the quotient group. */
MPOS_API int mpos_system_add_table(const mpos_system* sys, int space, unsigned* out);
/* out[a*m + b] = e with exp(2 pi i <M^-1 s_a, s*_b>) = exp(2 pi i e / m). */
MPOS_API int mpos_system_char_table(const mpos_system* sys, unsigned* out);

/* ---- transforms --------------------------------------------------------- */

/* inverse(forward(b)) = mpos_vc_round_trip_constant(m, n) * b. */
MPOS_API double mpos_vc_round_trip_constant(unsigned m, int n);
/* m^n coefficients in, m^n out. naive != 0 uses the direct kernel. */
MPOS_API int mpos_vc(const mpos_system* sys, int n, int direction, int naive, const double* in, size_t count,
                     double* out);

/* Step function on `space` with value scale n and support scale p
 * (count = m^(n+p)). A primal input is transformed forward, a dual input
 * backward; the result lives on the other space with the scales swapped and
 * the same count. */
MPOS_API int mpos_fourier(const mpos_system* sys, int space, int n, int p, const double* in, size_t count,
                          int* out_space, int* out_n, int* out_p, double* out);
/* Both sides of the summation formula for a primal step function. */
MPOS_API int mpos_poisson(const mpos_system* sys, int n, int p, const double* in, size_t count, double lhs[2],
                          double rhs[2]);

/* ---- identity suite ---------------------------------------------------- */

typedef void (*mpos_identity_callback)(const char* name, int passed, const char* detail, void* user);

/* Runs the suite on a system file (digit sets are checked inside the suite,
 * so broken sets produce failing identities rather than an error status).
 * *all_passed receives 1 or 0. */
MPOS_API int mpos_verify_file(const char* path, int level, uint64_t seed, mpos_identity_callback cb, void* user,
                              int* all_passed);
MPOS_API int mpos_verify_json(const char* json, int level, uint64_t seed, mpos_identity_callback cb, void* user,
                              int* all_passed);

/* ---- tiles -------------------------------------------------------------- */

/* m^depth anchors; DepthTooLarge when m^depth > budget (0 = default 2^20). */
MPOS_API int mpos_tile_create(const mpos_system* sys, int depth, uint64_t budget, mpos_tile** out);
MPOS_API void mpos_tile_free(mpos_tile* tile);
MPOS_API uint64_t mpos_tile_size(const mpos_tile* tile);
MPOS_API size_t mpos_tile_dim(const mpos_tile* tile);
MPOS_API int mpos_tile_depth(const mpos_tile* tile);
MPOS_API uint64_t mpos_tile_coincident(const mpos_tile* tile);
/* size * dim doubles, row-major; valid until mpos_tile_free. */
MPOS_API const double* mpos_tile_points(const mpos_tile* tile);
/* box_min / box_max each receive dim doubles. */
MPOS_API int mpos_tile_bounds(const mpos_tile* tile, double* box_min, double* box_max);

/* path NULL, "" or "-" writes to standard output. */
MPOS_API int mpos_tile_write_csv(const mpos_tile* tile, const char* path);
/* binary != 0 writes P5, else P2. colour_scale < 0 gives an occupancy map,
 * otherwise pixels carry 1 + the scale-c cell index. */
MPOS_API int mpos_tile_write_pgm(const mpos_tile* tile, const char* path, int width, int height, int binary,
                                 int colour_scale);

/* 1 in *passed when the depth-n anchors satisfy the self-similarity identity
 * and are pairwise distinct modulo the integer lattice. */
MPOS_API int mpos_self_similarity(const mpos_system* sys, int depth, uint64_t budget, int* passed);
MPOS_API int mpos_measure_estimate(const mpos_system* sys, uint64_t samples, int depth, uint64_t seed,
                                   uint64_t budget, double* estimate, double* standard_error);

#ifdef __cplusplus
}
#endif

#endif /* MPOS_MPOS_H */
