#pragma once

// Shared fixture builders for the test suite. Everything here is
// deterministic; timelines are hand-built so expected feature values can be
// computed by inspection.

#include <cstdint>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "lolpred/dataset.hpp"
#include "lolpred/synthetic.hpp"
#include "lolpred/timeline.hpp"

namespace testutil {

using namespace lolpred;

inline TimelineEvent kill(std::int64_t ts, TeamSide side) {
  return {ts, EventKind::ChampionKill, side, MonsterType::None, DragonElement::None,
          BuildingType::None};
}

inline TimelineEvent dragon(std::int64_t ts, TeamSide side, DragonElement element) {
  return {ts, EventKind::EliteMonsterKill, side, MonsterType::Dragon, element,
          BuildingType::None};
}

inline TimelineEvent herald(std::int64_t ts, TeamSide side) {
  return {ts, EventKind::EliteMonsterKill, side, MonsterType::RiftHerald,
          DragonElement::None, BuildingType::None};
}

inline TimelineEvent baron(std::int64_t ts, TeamSide side) {
  return {ts, EventKind::EliteMonsterKill, side, MonsterType::Baron,
          DragonElement::None, BuildingType::None};
}

inline TimelineEvent tower(std::int64_t ts, TeamSide side) {
  return {ts, EventKind::BuildingKill, side, MonsterType::None, DragonElement::None,
          BuildingType::Tower};
}

inline TimelineEvent inhibitor(std::int64_t ts, TeamSide side) {
  return {ts, EventKind::BuildingKill, side, MonsterType::None, DragonElement::None,
          BuildingType::Inhibitor};
}

inline FrameSnapshot frame(std::int64_t ts, std::int64_t blue_gold, std::int64_t red_gold,
                           double blue_level = 1.0, double red_level = 1.0) {
  FrameSnapshot f;
  f.timestamp_ms = ts;
  f.blue = {blue_gold, blue_gold / 20, blue_gold / 100, blue_level};
  f.red = {red_gold, red_gold / 20, red_gold / 100, red_level};
  return f;
}

// A valid ten-minute match with per-minute frames and no events; tests add
// the events they need. Average levels are written as integer-level-sum / 5
// (bit-for-bit how the wire format reconstructs them) so matches survive a
// JSON round trip exactly.
inline MatchTimeline ten_minute_match(const std::string& id = "M0") {
  MatchTimeline t;
  t.match_id = id;
  t.duration_ms = 600000;
  t.winner = TeamSide::Blue;
  for (int m = 0; m <= 10; ++m) {
    t.frames.push_back(frame(60000LL * m, 2500 + 700LL * m, 2500 + 650LL * m,
                             (5 + 4 * m) / 5.0, (5 + 3 * m) / 5.0));
  }
  return t;
}

// Synthetic corpus reduced to a training table; the workhorse input for
// learner and evaluation tests.
inline FeatureTable synth_table(std::uint64_t seed, int n_matches,
                                const std::vector<double>& pets = {0.2, 0.4, 0.6, 0.8}) {
  SynthConfig cfg;
  cfg.seed = seed;
  cfg.n_matches = n_matches;
  const auto timelines = generate_synthetic(cfg);
  return build_dataset(timelines, pets);
}

// Random dense matrix with a mix of continuous and low-cardinality columns,
// the texture split finders care about.
inline Eigen::MatrixXd random_features(std::mt19937_64& rng, int n, int d) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_int_distribution<int> small(0, 4);
  Eigen::MatrixXd X(n, d);
  for (int j = 0; j < d; ++j) {
    const bool discrete = j % 3 == 2;
    for (int i = 0; i < n; ++i) {
      X(i, j) = discrete ? static_cast<double>(small(rng)) : unit(rng);
    }
  }
  return X;
}

// Labels correlated with the first column so learners have something to fit.
inline Eigen::VectorXd noisy_labels(std::mt19937_64& rng, const Eigen::MatrixXd& X) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  Eigen::VectorXd y(X.rows());
  for (Eigen::Index i = 0; i < X.rows(); ++i) {
    const double p = 0.15 + 0.7 * (X(i, 0) > 0.5);
    y(i) = unit(rng) < p ? 1.0 : 0.0;
  }
  return y;
}

// Placeholder column names so models fitted outside lolpred::fit() can be
// queried through Model::predict_proba (which checks the schema width).
inline std::vector<std::string> gen_schema(Eigen::Index cols) {
  std::vector<std::string> names;
  for (Eigen::Index j = 0; j < cols; ++j) names.push_back("x" + std::to_string(j));
  return names;
}

class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    path_ = std::filesystem::temp_directory_path() /
            ("lolpred_test_" + tag + "_" + std::to_string(counter_++));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  const std::filesystem::path& path() const { return path_; }

 private:
  static inline int counter_ = 0;
  std::filesystem::path path_;
};

}  // namespace testutil
