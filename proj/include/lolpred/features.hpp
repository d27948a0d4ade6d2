#pragma once

#include <array>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "lolpred/timeline.hpp"

namespace lolpred {

// Training feature columns, in the canonical dataset order. Blue carries the
// first-blood indicator; the red mirror of it is redundant and excluded from
// training (it may still appear in correlation reports).
namespace feat {
enum Index : int {
  kBlueChampionKill = 0,
  kBlueFirstBlood,
  kBlueDragonKill,
  kBlueDragonHextechKill,
  kBlueDragonChemtechKill,
  kBlueDragonFireKill,
  kBlueDragonAirKill,
  kBlueDragonEarthKill,
  kBlueDragonWaterKill,
  kBlueDragonElderKill,
  kBlueRiftHeraldKill,
  kBlueBaronKill,
  kBlueTowerKill,
  kBlueInhibitorKill,
  kBlueTotalGold,
  kBlueMinionsKilled,
  kBlueJungleMinionsKilled,
  kBlueAvgPlayerLevel,
  kRedChampionKill,
  kRedDragonKill,
  kRedDragonHextechKill,
  kRedDragonChemtechKill,
  kRedDragonFireKill,
  kRedDragonAirKill,
  kRedDragonEarthKill,
  kRedDragonWaterKill,
  kRedDragonElderKill,
  kRedRiftHeraldKill,
  kRedBaronKill,
  kRedTowerKill,
  kRedInhibitorKill,
  kRedTotalGold,
  kRedMinionsKilled,
  kRedJungleMinionsKilled,
  kRedAvgPlayerLevel,
  kCount,
};
}  // namespace feat

inline constexpr int kNumFeatures = feat::kCount;       // 35
inline constexpr int kNumModelInputs = kNumFeatures + 1;  // pet + features

// The 35 feature names, dataset order.
const std::array<std::string, kNumFeatures>& feature_names();

// "pet" followed by the feature names; the model input schema.
const std::vector<std::string>& model_input_names();

// One observation cutoff of one match: the elapsed-time fraction plus the
// feature values aggregated from information available at or before it.
struct FeatureVector {
  double pet = 1.0;
  Eigen::Matrix<double, kNumFeatures, 1> values = Eigen::Matrix<double, kNumFeatures, 1>::Zero();

  // pet first, then the features; the row layout models consume.
  Eigen::Matrix<double, kNumModelInputs, 1> as_inputs() const {
    Eigen::Matrix<double, kNumModelInputs, 1> row;
    row(0) = pet;
    row.tail(kNumFeatures) = values;
    return row;
  }
};

// Aggregates everything observable at cutoff = pet * duration: event counts
// at-or-before the cutoff, frame aggregates from the latest frame at-or-before
// it (no interpolation). Rift Herald and Baron are binary indicators; dragons
// and buildings are counts. Throws PET_OUT_OF_RANGE unless 0 < pet <= 1.
FeatureVector slice_at_pet(const MatchTimeline& t, double pet);

// True when the earliest champion kill at-or-before the cutoff belongs to
// red; the report-only mirror of blue first blood.
bool red_first_blood_at_pet(const MatchTimeline& t, double pet);

}  // namespace lolpred
