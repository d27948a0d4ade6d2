#include <doctest.h>

#include <algorithm>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "lolpred/error.hpp"
#include "lolpred/synthetic.hpp"
#include "lolpred/timeline.hpp"
#include "test_util.hpp"

using namespace lolpred;

TEST_CASE("same seed reproduces the same corpus") {
  SynthConfig cfg;
  cfg.seed = 99;
  cfg.n_matches = 12;
  const auto a = generate_synthetic(cfg);
  const auto b = generate_synthetic(cfg);
  REQUIRE(a.size() == 12);
  CHECK(a == b);
}

TEST_CASE("a larger corpus extends a smaller one with the same seed") {
  SynthConfig small;
  small.seed = 5;
  small.n_matches = 3;
  SynthConfig big = small;
  big.n_matches = 7;
  const auto a = generate_synthetic(small);
  const auto b = generate_synthetic(big);
  REQUIRE(b.size() == 7);
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i] == b[i]);
}

TEST_CASE("every generated match passes timeline validation") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    SynthConfig cfg;
    cfg.seed = seed;
    cfg.n_matches = 20;
    for (const MatchTimeline& t : generate_synthetic(cfg)) {
      CAPTURE(seed);
      CAPTURE(t.match_id);
      const auto violations = validate_timeline(t);
      CHECK(violations.empty());
    }
  }
}

TEST_CASE("durations stay within the configured clamp") {
  SynthConfig cfg;
  cfg.seed = 11;
  cfg.n_matches = 300;
  for (const MatchTimeline& t : generate_synthetic(cfg)) {
    CHECK(t.duration_ms >= 150000);   // 2.5 minutes
    CHECK(t.duration_ms <= 4020000);  // 67 minutes
    // last frame sits exactly at the end of the match
    REQUIRE(!t.frames.empty());
    CHECK(t.frames.back().timestamp_ms == t.duration_ms);
  }
}

TEST_CASE("blue wins roughly half of a large corpus") {
  SynthConfig cfg;
  cfg.seed = 7;
  cfg.n_matches = 10000;
  const auto matches = generate_synthetic(cfg);
  std::size_t blue = 0;
  for (const MatchTimeline& t : matches)
    if (t.winner == TeamSide::Blue) ++blue;
  const double frac = static_cast<double>(blue) / matches.size();
  CHECK(frac > 0.47);
  CHECK(frac < 0.53);
}

TEST_CASE("invalid generator configs are rejected up front") {
  SynthConfig cfg;
  auto expect_invalid = [](const SynthConfig& c) {
    try {
      generate_synthetic(c);
      FAIL_CHECK("expected INVALID_CONFIG");
    } catch (const Error& e) {
      CHECK(e.code() == errc::invalid_config);
    }
  };
  SUBCASE("zero matches") {
    cfg.n_matches = 0;
    expect_invalid(cfg);
  }
  SUBCASE("too short a mean duration") {
    cfg.mean_duration_min = 4.0;
    expect_invalid(cfg);
  }
  SUBCASE("non-finite mean duration") {
    cfg.mean_duration_min = std::numeric_limits<double>::quiet_NaN();
    expect_invalid(cfg);
  }
  SUBCASE("non-positive skill spread") {
    cfg.skill_sigma = 0.0;
    expect_invalid(cfg);
  }
  SUBCASE("non-positive event rate scale") {
    cfg.event_rate_scale = -1.0;
    expect_invalid(cfg);
  }
}

TEST_CASE("match ids are unique and stable") {
  SynthConfig cfg;
  cfg.seed = 3;
  cfg.n_matches = 25;
  const auto matches = generate_synthetic(cfg);
  std::vector<std::string> ids;
  for (const auto& t : matches) ids.push_back(t.match_id);
  auto sorted = ids;
  std::sort(sorted.begin(), sorted.end());
  CHECK(std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end());
}
