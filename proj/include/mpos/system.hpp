#pragma once

// The triple (M, D, D*) every harmonic-analysis routine runs against, and its
// JSON configuration file.

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mpos/characters.hpp"
#include "mpos/digits.hpp"

namespace mpos {

class System {
 public:
  /// `dual` must be built on the transpose of primal's matrix.
  System(DigitSet primal, DigitSet dual, std::string label = {});

  /// Canonical digit sets for both M and M*.
  static System canonical(const DilationMatrix& m, std::string label = {});

  const DilationMatrix& matrix() const noexcept { return primal_.matrix(); }
  const DigitSet& primal() const noexcept { return primal_; }
  const DigitSet& dual() const noexcept { return dual_; }
  const DigitSet& digits(Space s) const noexcept { return s == Space::Primal ? primal_ : dual_; }
  const CharacterTable& characters() const noexcept { return table_; }
  unsigned radix() const noexcept { return primal_.radix(); }
  std::size_t dim() const noexcept { return primal_.dim(); }
  const std::string& label() const noexcept { return label_; }

 private:
  DigitSet primal_;
  DigitSet dual_;
  CharacterTable table_;
  std::string label_;
};

/// Raw contents of a system file:
///   {"label": "...", "matrix": [[1,1],[1,-1]],
///    "digits": [[0,0],[1,0]], "dual_digits": [[0,0],[1,0]]}
/// `digits` / `dual_digits` are optional (canonical sets are generated). For
/// d = 1 a digit may also be written as a bare integer.
struct SystemConfig {
  std::vector<std::vector<long long>> matrix;
  std::optional<std::vector<IntVector>> digits;
  std::optional<std::vector<IntVector>> dual_digits;
  std::string label;

  /// Throws ParseError on malformed JSON or a missing/ill-typed field.
  static SystemConfig parse(std::string_view json_text);
  /// Throws IoError if the file cannot be read, then as parse().
  static SystemConfig load(const std::filesystem::path& path);
};

/// Checks the matrix (NotExpanding) and both digit sets (MissingZero,
/// NotAResidueSystem), generating canonical sets where none are given.
System build_system(const SystemConfig& config);

}  // namespace mpos
