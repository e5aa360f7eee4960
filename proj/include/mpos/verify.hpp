#pragma once

// The identity suite behind `mpos verify`: every algebraic identity the
// library relies on, checked on one system at a chosen depth.

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "mpos/system.hpp"

namespace mpos {

struct IdentityResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

using IdentityCallback = std::function<void(const IdentityResult&)>;

struct VerifyOptions {
  /// 1: scales n <= 3. 2: scales n <= 6. Either way grids stay below m^n = 4096.
  int level = 1;
  std::uint64_t seed = 1;
  /// Random vectors / step functions per shape.
  int samples = 4;
};

struct VerifyReport {
  std::vector<IdentityResult> results;

  bool passed() const noexcept;
  /// nullptr when everything passed.
  const IdentityResult* first_failure() const noexcept;
};

/// Runs, in order: char_sum (on the raw digit lists, before validation),
/// digit_sets, kernel_partition, cell_indicator, walsh_orthogonality,
/// vc_round_trip, vc_fast_matches_naive, fourier_round_trip, fourier_duality,
/// poisson, plancherel, shift. A failing digit_sets ends the run.
///
/// Throws for configurations that cannot be examined at all (NotExpanding,
/// malformed matrix), InvalidArgument for a level outside 1..2.
VerifyReport run_identity_suite(const SystemConfig& config, const VerifyOptions& options = {},
                                const IdentityCallback& on_result = {});

}  // namespace mpos
