#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "corpus.hpp"
#include "expect.hpp"
#include "mpos/system.hpp"

using namespace mpos;
using testing::error_of;

TEST_CASE("parse a full system file") {
  const auto cfg = SystemConfig::parse(
      R"({"label":"tw","matrix":[[1,1],[1,-1]],"digits":[[0,0],[1,0]],"dual_digits":[[0,0],[0,1]]})");
  CHECK(cfg.label == "tw");
  CHECK(cfg.matrix == std::vector<std::vector<long long>>{{1, 1}, {1, -1}});
  REQUIRE(cfg.digits.has_value());
  CHECK((*cfg.digits)[1] == make_vector({1, 0}));
  REQUIRE(cfg.dual_digits.has_value());
  CHECK((*cfg.dual_digits)[1] == make_vector({0, 1}));
  const System s = build_system(cfg);
  CHECK(s.label() == "tw");
  CHECK(s.radix() == 2);
  CHECK(s.dim() == 2);
  CHECK(s.dual().matrix().entries() == s.matrix().entries().transpose());
}

TEST_CASE("digits are optional and bare integers work in one dimension") {
  const auto cfg = SystemConfig::parse(R"({"matrix":[[3]],"digits":[0,1,-1]})");
  CHECK(!cfg.dual_digits.has_value());
  const System s = build_system(cfg);
  CHECK(s.primal().digit(2) == make_vector({-1}));
  CHECK(s.dual().digit(0) == make_vector({0}));
  CHECK(s.label().empty());
}

TEST_CASE("canonical systems use canonical sets on both sides") {
  const System s = build_system(corpus::cubic3());
  const DilationMatrix m(IntMatrix::from_rows({{1, -1, 0}, {0, 1, -1}, {1, 1, 1}}));
  const DigitSet primal = canonical_digit_set(m);
  const DigitSet dual = canonical_digit_set(m.transpose());
  for (unsigned i = 0; i < 3; ++i) {
    CHECK(s.primal().digit(i) == primal.digit(i));
    CHECK(s.dual().digit(i) == dual.digit(i));
  }
  CHECK(s.dual().digit(1) == make_vector({1, 0, 0}));
  CHECK(s.dual().digit(2) == make_vector({1, 1, 0}));
}

TEST_CASE("malformed JSON is a ParseError") {
  for (const char* text : {"", "{", "[]", R"({"digits":[0,1]})", R"({"matrix":[]})", R"({"matrix":[[2.5]]})",
                           R"({"matrix":[["2"]]})", R"({"matrix":[2]})", R"({"matrix":[[2]],"label":3})",
                           R"({"matrix":[[2]],"digits":[0,"1"]})", R"({"matrix":[[2]],"digits":7})",
                           R"({"matrix":[[1,0],[0,1]],"digits":[0,1]})"}) {
    INFO(text);
    const auto code = error_of([&] { build_system(SystemConfig::parse(text)); });
    REQUIRE(code.has_value());
    // The last case parses and is then rejected for its content.
    CHECK((*code == Errc::ParseError || *code == Errc::NotExpanding || *code == Errc::InvalidArgument));
  }
  CHECK(error_of([] { SystemConfig::parse(R"({"matrix":[[2]],"digits":[0,1.5]})"); }) == Errc::ParseError);
  CHECK(error_of([] { SystemConfig::parse("not json"); }) == Errc::ParseError);
}

TEST_CASE("system content errors") {
  CHECK(error_of([] { build_system(SystemConfig::parse(R"({"matrix":[[1,0],[0,2]]})")); }) == Errc::NotExpanding);
  CHECK(error_of([] { build_system(SystemConfig::parse(R"({"matrix":[[2]],"digits":[1,0]})")); }) ==
        Errc::MissingZero);
  CHECK(error_of([] { build_system(SystemConfig::parse(R"({"matrix":[[2]],"digits":[0,2]})")); }) ==
        Errc::NotAResidueSystem);
  CHECK(error_of([] { build_system(SystemConfig::parse(R"({"matrix":[[2]],"dual_digits":[0,4]})")); }) ==
        Errc::NotAResidueSystem);
  CHECK(error_of([] { build_system(SystemConfig::parse(R"({"matrix":[[2,0],[0,2,1]]})")); }).has_value());
}

TEST_CASE("loading from disk") {
  const auto dir = std::filesystem::temp_directory_path() / "mpos_unit_system";
  std::filesystem::create_directories(dir);
  const auto path = dir / "dy.json";
  {
    std::ofstream os(path);
    os << R"({"label":"dy","matrix":[[2]],"digits":[0,1],"dual_digits":[0,1]})";
  }
  CHECK(SystemConfig::load(path).label == "dy");
  CHECK(error_of([&] { SystemConfig::load(dir / "missing.json"); }) == Errc::IoError);
  std::filesystem::remove_all(dir);
}
