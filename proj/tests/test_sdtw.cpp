#include "aqp/sdtw.hpp"

#include <random>

#include "aqp/error.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace aqp;

namespace {

FeatureMatrix column(std::initializer_list<double> values) {
  FeatureMatrix m(values.size(), 1);
  std::size_t r = 0;
  for (double v : values) m.at(r++, 0) = v;
  return m;
}

}  // namespace

TEST_CASE("an exact subsequence costs zero") {
  std::mt19937_64 rng(21);
  const FeatureMatrix ref = aqp::test::random_features(rng, 8, 2, 1.0);
  FeatureMatrix patch(3, 2);
  for (std::size_t r = 0; r < 3; ++r)
    for (std::size_t c = 0; c < 2; ++c)
      patch.at(r, c) = ref.at(r + 2, c);
  CHECK(sdtw_cost(ref, patch) == 0.0);
}

TEST_CASE("identical constant frames cost zero") {
  FeatureMatrix ref(5, 2);
  FeatureMatrix patch(3, 2);
  for (std::size_t r = 0; r < 5; ++r)
    for (std::size_t c = 0; c < 2; ++c) ref.at(r, c) = 0.7;
  for (std::size_t r = 0; r < 3; ++r)
    for (std::size_t c = 0; c < 2; ++c) patch.at(r, c) = 0.7;
  CHECK(sdtw_cost(ref, patch) == 0.0);
}

TEST_CASE("hand-worked alignment pins the tie-break") {
  // ref (0,1,2) vs patch (0,2). The cheapest cell at the final endpoint
  // costs 1; of the two cost-1 paths the shorter (length 2) wins, so the
  // score is 1/2, not the 1/3 a global cost-per-length search would find.
  const FeatureMatrix ref = column({0.0, 1.0, 2.0});
  const FeatureMatrix patch = column({0.0, 2.0});
  CHECK(sdtw_cost(ref, patch) == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("dp agrees with exhaustive path enumeration") {
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<std::size_t> ref_rows(2, 7);
  std::uniform_int_distribution<std::size_t> dims(1, 3);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n_ref = ref_rows(rng);
    std::uniform_int_distribution<std::size_t> patch_rows(
        2, std::min<std::size_t>(4, n_ref));
    const std::size_t n_patch = patch_rows(rng);
    const std::size_t d = dims(rng);
    const FeatureMatrix ref = aqp::test::random_features(rng, n_ref, d, 2.0);
    const FeatureMatrix patch =
        aqp::test::random_features(rng, n_patch, d, 2.0);
    CAPTURE(trial);
    CAPTURE(n_ref);
    CAPTURE(n_patch);
    CHECK(std::abs(sdtw_cost(ref, patch) -
                   aqp::test::sdtw_oracle(ref, patch)) < 1e-12);
  }
}

TEST_CASE("score is never negative") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    const FeatureMatrix ref = aqp::test::random_features(rng, 6, 2, 3.0);
    const FeatureMatrix patch = aqp::test::random_features(rng, 3, 2, 3.0);
    CHECK(sdtw_cost(ref, patch) >= 0.0);
  }
}

TEST_CASE("mismatched coefficient counts are rejected") {
  const FeatureMatrix ref(4, 3);
  const FeatureMatrix patch(2, 2);
  try {
    sdtw_cost(ref, patch);
    FAIL("expected dimension mismatch");
  } catch (const Error& e) {
    CHECK(e.code() == errc::dimension_mismatch);
  }
}

TEST_CASE("a patch longer than the reference is rejected") {
  const FeatureMatrix ref(3, 2);
  const FeatureMatrix patch(4, 2);
  try {
    sdtw_cost(ref, patch);
    FAIL("expected patch longer than reference");
  } catch (const Error& e) {
    CHECK(e.code() == errc::patch_longer_than_reference);
  }
}

TEST_CASE("a one-frame patch is rejected") {
  const FeatureMatrix ref(4, 2);
  const FeatureMatrix patch(1, 2);
  try {
    sdtw_cost(ref, patch);
    FAIL("expected bad param");
  } catch (const Error& e) {
    CHECK(e.code() == errc::bad_param);
  }
}
