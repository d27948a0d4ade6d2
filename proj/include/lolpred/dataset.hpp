#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "lolpred/features.hpp"
#include "lolpred/timeline.hpp"

namespace lolpred {

// Columnar training set: one row per (match, pet). `inputs` holds pet in
// column 0 followed by the 35 features; labels are blue-win {0,1}.
// Rectangular and immutable by convention.
struct FeatureTable {
  std::vector<std::string> match_ids;
  Eigen::MatrixXd inputs;  // rows x kNumModelInputs
  Eigen::VectorXd labels;

  Eigen::Index rows() const { return inputs.rows(); }

  // Row indices whose pet matches (exact within 1e-9).
  std::vector<int> rows_at_pet(double pet) const;

  static std::vector<int> all_rows(Eigen::Index n);

  // Column position of a model-input name, or -1.
  static int input_index(const std::string& name);
};

// Excludes likely remakes (duration under 5 minutes), then emits one row per
// (kept match, pet level). Throws EMPTY_INPUT when nothing survives,
// INVALID_ARGUMENT when pet_levels is empty or not strictly increasing.
FeatureTable build_dataset(std::span<const MatchTimeline> timelines,
                           const std::vector<double>& pet_levels);

constexpr std::int64_t kMinDurationMs = 5 * 60000;

// Dataset CSV: header `match_id,pet,<35 features>,blue_win`, UTF-8, LF,
// '.' decimals, shortest round-trip number formatting.
std::string dataset_to_csv(const FeatureTable& table);
void write_dataset_csv(const FeatureTable& table, const std::filesystem::path& path);

// Reads our schema; columns may be reordered and `match_id` may be absent
// (rows are then numbered). Accepts `blueWin` / `matchId` header aliases so
// externally published exports load unchanged.
FeatureTable read_dataset_csv(const std::filesystem::path& path);
FeatureTable dataset_from_csv(const std::string& text, const std::string& origin = "csv");

}  // namespace lolpred
