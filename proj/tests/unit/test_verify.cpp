#include <doctest.h>

#include "corpus.hpp"
#include "expect.hpp"
#include "mpos/verify.hpp"

using namespace mpos;

namespace {

const std::vector<std::string> kIdentities = {
    "char_sum",       "digit_sets",         "kernel_partition", "cell_indicator", "walsh_orthogonality",
    "vc_round_trip",  "vc_fast_matches_naive", "fourier_round_trip", "fourier_duality", "poisson",
    "plancherel",     "shift"};

}  // namespace

TEST_CASE("every identity passes on the reference systems") {
  for (const auto& cfg : {corpus::dyadic(), corpus::triadic(), corpus::quad2(), corpus::twindragon(),
                          corpus::cubic3(), corpus::cube8()}) {
    INFO(cfg.label);
    std::vector<std::string> streamed;
    const VerifyReport r = run_identity_suite(cfg, {}, [&](const IdentityResult& x) { streamed.push_back(x.name); });
    CHECK(r.passed());
    CHECK(r.first_failure() == nullptr);
    std::vector<std::string> names;
    for (const auto& x : r.results) names.push_back(x.name);
    CHECK(names == kIdentities);
    CHECK(streamed == kIdentities);
  }
}

TEST_CASE("level 2 on a small system") {
  VerifyOptions o;
  o.level = 2;
  o.seed = 99;
  CHECK(run_identity_suite(corpus::twindragon(), o).passed());
}

TEST_CASE("a corrupted digit set fails the character sum first") {
  const auto cfg = SystemConfig::parse(R"({"matrix":[[2]],"digits":[0,2],"dual_digits":[0,1]})");
  const VerifyReport r = run_identity_suite(cfg);
  CHECK(!r.passed());
  REQUIRE(r.first_failure() != nullptr);
  CHECK(r.first_failure()->name == "char_sum");
  CHECK(r.results.back().name == "digit_sets");
  CHECK(!r.results.back().passed);
}

TEST_CASE("a corrupted dual set is caught as well") {
  const auto cfg = SystemConfig::parse(R"({"matrix":[[3]],"digits":[0,1,2],"dual_digits":[0,3,1]})");
  const VerifyReport r = run_identity_suite(cfg);
  REQUIRE(r.first_failure() != nullptr);
  CHECK(r.first_failure()->name == "char_sum");
}

TEST_CASE("suite options are validated") {
  VerifyOptions o;
  o.level = 3;
  CHECK(testing::error_of([&] { run_identity_suite(corpus::dyadic(), o); }) == Errc::InvalidArgument);
  const auto flat = SystemConfig::parse(R"({"matrix":[[1,0],[0,2]]})");
  CHECK(testing::error_of([&] { run_identity_suite(flat); }) == Errc::NotExpanding);
}
