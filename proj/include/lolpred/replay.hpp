#pragma once

#include <memory>
#include <string>
#include <vector>

#include "lolpred/model.hpp"
#include "lolpred/timeline.hpp"

namespace lolpred {

// Stage routing: the first entry whose bound is >= pet serves the
// prediction. Bounds must be strictly increasing and end at 1.0 or above so
// every pet in (0,1] routes somewhere.
struct RouteEntry {
  double pet_upper_bound = 1.0;
  std::string model_name;
  std::shared_ptr<const Model> model;
};

struct RoutingTable {
  std::vector<RouteEntry> entries;

  void validate() const;  // throws INVALID_CONFIG
  const RouteEntry& route(double pet) const;
};

struct ReplayLine {
  int elapsed_min = 0;
  double pet = 0.0;
  std::string model;
  double p_blue = 0.0;
};

// Re-enacts a finished match minute by minute: each line is computed purely
// from events and frames at or before that minute's cutoff, exactly as
// slice_at_pet would see them live.
std::vector<ReplayLine> replay_timeline(const MatchTimeline& t, const RoutingTable& routing);

// Tab-separated: elapsed_min, pet, model, p_blue. One line per minute, LF.
std::string replay_to_tsv(const std::vector<ReplayLine>& lines);

}  // namespace lolpred
