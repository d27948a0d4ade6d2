#pragma once

#include <cstdint>
#include <vector>

#include "lolpred/timeline.hpp"

namespace lolpred {

// Desk-scale stand-in for a crawled corpus. Blue's minute-to-minute momentum
// follows a random walk; event intensities tilt toward whichever side the
// momentum currently favours, and the winner is decided by the accumulated
// advantage actually realised by the end of the match (plus a little noise).
// Early cutoffs therefore can't see future swings, and predictability rises
// steadily with elapsed time. skill_sigma scales the momentum spread.
struct SynthConfig {
  std::uint64_t seed = 0;
  int n_matches = 1;
  double mean_duration_min = 30.0;
  double skill_sigma = 1.0;
  double event_rate_scale = 1.0;
};

// Throws INVALID_CONFIG. Deterministic per seed; match i depends only on
// (seed, i), so any parallel schedule yields identical output.
std::vector<MatchTimeline> generate_synthetic(const SynthConfig& cfg);

}  // namespace lolpred
