#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "lolpred/dataset.hpp"
#include "lolpred/evaluation.hpp"
#include "lolpred/learner_spec.hpp"

namespace lolpred {

// Sampling ranges; rates and penalties draw log-uniform, the integer knobs
// uniform inclusive, max_bins from the listed choices.
struct SearchSpace {
  // Gbdt
  int n_rounds_min = 50, n_rounds_max = 500;
  double learning_rate_min = 0.01, learning_rate_max = 0.3;
  int max_leaves_min = 15, max_leaves_max = 127;
  double l2_min = 1e-3, l2_max = 10.0;
  std::vector<int> max_bins_choices = {63, 127, 255};
  // RandomForest / Bagging
  int n_trees_min = 100, n_trees_max = 600;
  int max_depth_min = 4, max_depth_max = 24;
  int min_samples_leaf_min = 1, min_samples_leaf_max = 20;
};

struct TrialResult {
  int index = 0;
  LearnerSpec spec;
  double mean_accuracy = 0.0;
  MetricsReport report;
};

struct SearchResult {
  TrialResult best;  // highest accuracy, earliest trial on ties
  std::vector<TrialResult> trials;
};

// Draws n_iter specs for `family` (Gbdt or forest-like; other families have
// no searchable space and raise INVALID_ARGUMENT), scores each by
// cross-validated accuracy, and keeps the full log. Deterministic per seed;
// every trial shares one fold plan.
SearchResult random_search(Family family, const SearchSpace& space, int n_iter,
                           const FeatureTable& table, std::optional<double> pet,
                           int k, std::uint64_t seed);

}  // namespace lolpred
