#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace lolpred {

enum class TeamSide { Blue, Red };

inline TeamSide opposite(TeamSide s) {
  return s == TeamSide::Blue ? TeamSide::Red : TeamSide::Blue;
}

enum class EventKind { ChampionKill, EliteMonsterKill, BuildingKill };

enum class MonsterType { None, Dragon, RiftHerald, Baron };

enum class DragonElement { None, Hextech, Chemtech, Fire, Air, Earth, Water, Elder };

enum class BuildingType { None, Tower, Inhibitor };

// One team-attributed event. `team` is the killer for champion/monster
// kills and the destroyer for building kills.
struct TimelineEvent {
  std::int64_t timestamp_ms = 0;
  EventKind kind = EventKind::ChampionKill;
  TeamSide team = TeamSide::Blue;
  MonsterType monster = MonsterType::None;
  DragonElement element = DragonElement::None;
  BuildingType building = BuildingType::None;

  friend bool operator==(const TimelineEvent&, const TimelineEvent&) = default;
};

struct SideStats {
  std::int64_t total_gold = 0;
  std::int64_t minions_killed = 0;
  std::int64_t jungle_minions_killed = 0;
  double avg_player_level = 1.0;

  friend bool operator==(const SideStats&, const SideStats&) = default;
};

// Per-minute aggregate snapshot for both sides.
struct FrameSnapshot {
  std::int64_t timestamp_ms = 0;
  SideStats blue;
  SideStats red;

  friend bool operator==(const FrameSnapshot&, const FrameSnapshot&) = default;
};

// Canonical in-memory match record: ordered event stream, per-minute frames
// (plus a final frame at the match end) and the final winner. Immutable by
// convention once built; safe to share across threads.
struct MatchTimeline {
  std::string match_id;
  std::int64_t duration_ms = 0;
  TeamSide winner = TeamSide::Blue;
  std::vector<TimelineEvent> events;
  std::vector<FrameSnapshot> frames;

  double duration_minutes() const { return static_cast<double>(duration_ms) / 60000.0; }

  friend bool operator==(const MatchTimeline&, const MatchTimeline&) = default;
};

enum class ViolationCode {
  DURATION_NOT_POSITIVE,
  EVENT_TIMESTAMP_NEGATIVE,
  EVENT_AFTER_END,
  EVENTS_UNSORTED,
  DRAGON_ELEMENT_MISMATCH,
  NO_FRAMES,
  FRAMES_UNSORTED,
  FRAME_NOT_MONOTONE,
  LAST_FRAME_NOT_AT_END,
  LEVEL_OUT_OF_RANGE,
  NEGATIVE_AGGREGATE,
};

const char* violation_name(ViolationCode code);

// Violations are data, not faults: `index` points at the offending event or
// frame (0 for whole-match violations).
struct Violation {
  ViolationCode code;
  std::size_t index = 0;
  std::string detail;
};

std::vector<Violation> validate_timeline(const MatchTimeline& t);

}  // namespace lolpred
