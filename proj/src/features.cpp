#include "lolpred/features.hpp"

#include <cmath>

#include "lolpred/error.hpp"

namespace lolpred {

const std::array<std::string, kNumFeatures>& feature_names() {
  static const std::array<std::string, kNumFeatures> names = {
      "blueChampionKill",
      "blueFirstBlood",
      "blueDragonKill",
      "blueDragonHextechKill",
      "blueDragonChemtechKill",
      "blueDragonFireKill",
      "blueDragonAirKill",
      "blueDragonEarthKill",
      "blueDragonWaterKill",
      "blueDragonElderKill",
      "blueRiftHeraldKill",
      "blueBaronKill",
      "blueTowerKill",
      "blueInhibitorKill",
      "blueTotalGold",
      "blueMinionsKilled",
      "blueJungleMinionsKilled",
      "blueAvgPlayerLevel",
      "redChampionKill",
      "redDragonKill",
      "redDragonHextechKill",
      "redDragonChemtechKill",
      "redDragonFireKill",
      "redDragonAirKill",
      "redDragonEarthKill",
      "redDragonWaterKill",
      "redDragonElderKill",
      "redRiftHeraldKill",
      "redBaronKill",
      "redTowerKill",
      "redInhibitorKill",
      "redTotalGold",
      "redMinionsKilled",
      "redJungleMinionsKilled",
      "redAvgPlayerLevel",
  };
  return names;
}

const std::vector<std::string>& model_input_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    v.reserve(kNumModelInputs);
    v.emplace_back("pet");
    for (const auto& n : feature_names()) v.push_back(n);
    return v;
  }();
  return names;
}

namespace {

// Timestamps are integer milliseconds; a sub-millisecond slack keeps events
// that sit exactly on the cutoff inside the slice despite the pet*duration
// product rounding either way.
bool within_cutoff(std::int64_t ts_ms, double cutoff_ms) {
  return static_cast<double>(ts_ms) <= cutoff_ms + 1e-6;
}

struct SideCounts {
  int champion_kills = 0;
  int dragons = 0;
  int dragon_by_element[7] = {0, 0, 0, 0, 0, 0, 0};  // hextech..elder
  bool herald = false;
  bool baron = false;
  int towers = 0;
  int inhibitors = 0;
};

int element_slot(DragonElement e) {
  switch (e) {
    case DragonElement::Hextech: return 0;
    case DragonElement::Chemtech: return 1;
    case DragonElement::Fire: return 2;
    case DragonElement::Air: return 3;
    case DragonElement::Earth: return 4;
    case DragonElement::Water: return 5;
    case DragonElement::Elder: return 6;
    case DragonElement::None: break;
  }
  return -1;
}

}  // namespace

FeatureVector slice_at_pet(const MatchTimeline& t, double pet) {
  if (!(pet > 0.0) || pet > 1.0 || !std::isfinite(pet)) {
    throw Error(errc::pet_out_of_range, "pet must be in (0, 1]");
  }
  const double cutoff = pet * static_cast<double>(t.duration_ms);

  SideCounts blue, red;
  bool first_blood_seen = false;
  bool blue_first_blood = false;
  for (const TimelineEvent& e : t.events) {
    if (!within_cutoff(e.timestamp_ms, cutoff)) break;  // events are sorted
    SideCounts& side = e.team == TeamSide::Blue ? blue : red;
    switch (e.kind) {
      case EventKind::ChampionKill:
        ++side.champion_kills;
        if (!first_blood_seen) {
          first_blood_seen = true;
          blue_first_blood = e.team == TeamSide::Blue;
        }
        break;
      case EventKind::EliteMonsterKill:
        if (e.monster == MonsterType::Dragon) {
          ++side.dragons;
          if (int slot = element_slot(e.element); slot >= 0) {
            ++side.dragon_by_element[slot];
          }
        } else if (e.monster == MonsterType::RiftHerald) {
          side.herald = true;
        } else if (e.monster == MonsterType::Baron) {
          side.baron = true;
        }
        break;
      case EventKind::BuildingKill:
        if (e.building == BuildingType::Tower) {
          ++side.towers;
        } else if (e.building == BuildingType::Inhibitor) {
          ++side.inhibitors;
        }
        break;
    }
  }

  // Latest frame at-or-before the cutoff.
  const FrameSnapshot* frame = &t.frames.front();
  for (const FrameSnapshot& f : t.frames) {
    if (!within_cutoff(f.timestamp_ms, cutoff)) break;
    frame = &f;
  }

  FeatureVector out;
  out.pet = pet;
  auto& v = out.values;
  v[feat::kBlueChampionKill] = blue.champion_kills;
  v[feat::kBlueFirstBlood] = first_blood_seen && blue_first_blood ? 1.0 : 0.0;
  v[feat::kBlueDragonKill] = blue.dragons;
  for (int k = 0; k < 7; ++k) {
    v[feat::kBlueDragonHextechKill + k] = blue.dragon_by_element[k];
    v[feat::kRedDragonHextechKill + k] = red.dragon_by_element[k];
  }
  v[feat::kBlueRiftHeraldKill] = blue.herald ? 1.0 : 0.0;
  v[feat::kBlueBaronKill] = blue.baron ? 1.0 : 0.0;
  v[feat::kBlueTowerKill] = blue.towers;
  v[feat::kBlueInhibitorKill] = blue.inhibitors;
  v[feat::kBlueTotalGold] = static_cast<double>(frame->blue.total_gold);
  v[feat::kBlueMinionsKilled] = static_cast<double>(frame->blue.minions_killed);
  v[feat::kBlueJungleMinionsKilled] = static_cast<double>(frame->blue.jungle_minions_killed);
  v[feat::kBlueAvgPlayerLevel] = frame->blue.avg_player_level;
  v[feat::kRedChampionKill] = red.champion_kills;
  v[feat::kRedDragonKill] = red.dragons;
  v[feat::kRedRiftHeraldKill] = red.herald ? 1.0 : 0.0;
  v[feat::kRedBaronKill] = red.baron ? 1.0 : 0.0;
  v[feat::kRedTowerKill] = red.towers;
  v[feat::kRedInhibitorKill] = red.inhibitors;
  v[feat::kRedTotalGold] = static_cast<double>(frame->red.total_gold);
  v[feat::kRedMinionsKilled] = static_cast<double>(frame->red.minions_killed);
  v[feat::kRedJungleMinionsKilled] = static_cast<double>(frame->red.jungle_minions_killed);
  v[feat::kRedAvgPlayerLevel] = frame->red.avg_player_level;
  return out;
}

bool red_first_blood_at_pet(const MatchTimeline& t, double pet) {
  if (!(pet > 0.0) || pet > 1.0 || !std::isfinite(pet)) {
    throw Error(errc::pet_out_of_range, "pet must be in (0, 1]");
  }
  const double cutoff = pet * static_cast<double>(t.duration_ms);
  for (const TimelineEvent& e : t.events) {
    if (!within_cutoff(e.timestamp_ms, cutoff)) break;
    if (e.kind == EventKind::ChampionKill) return e.team == TeamSide::Red;
  }
  return false;
}

}  // namespace lolpred
