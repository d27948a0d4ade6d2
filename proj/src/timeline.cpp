#include "lolpred/timeline.hpp"

namespace lolpred {

const char* violation_name(ViolationCode code) {
  switch (code) {
    case ViolationCode::DURATION_NOT_POSITIVE: return "DURATION_NOT_POSITIVE";
    case ViolationCode::EVENT_TIMESTAMP_NEGATIVE: return "EVENT_TIMESTAMP_NEGATIVE";
    case ViolationCode::EVENT_AFTER_END: return "EVENT_AFTER_END";
    case ViolationCode::EVENTS_UNSORTED: return "EVENTS_UNSORTED";
    case ViolationCode::DRAGON_ELEMENT_MISMATCH: return "DRAGON_ELEMENT_MISMATCH";
    case ViolationCode::NO_FRAMES: return "NO_FRAMES";
    case ViolationCode::FRAMES_UNSORTED: return "FRAMES_UNSORTED";
    case ViolationCode::FRAME_NOT_MONOTONE: return "FRAME_NOT_MONOTONE";
    case ViolationCode::LAST_FRAME_NOT_AT_END: return "LAST_FRAME_NOT_AT_END";
    case ViolationCode::LEVEL_OUT_OF_RANGE: return "LEVEL_OUT_OF_RANGE";
    case ViolationCode::NEGATIVE_AGGREGATE: return "NEGATIVE_AGGREGATE";
  }
  return "UNKNOWN";
}

namespace {

void check_side_monotone(const SideStats& prev, const SideStats& cur,
                         std::size_t frame_index, const char* side,
                         std::vector<Violation>& out) {
  const bool ok = cur.total_gold >= prev.total_gold &&
                  cur.minions_killed >= prev.minions_killed &&
                  cur.jungle_minions_killed >= prev.jungle_minions_killed &&
                  cur.avg_player_level >= prev.avg_player_level;
  if (!ok) {
    out.push_back({ViolationCode::FRAME_NOT_MONOTONE, frame_index,
                   std::string(side) + " aggregates decreased"});
  }
}

void check_side_values(const SideStats& s, std::size_t frame_index,
                       const char* side, std::vector<Violation>& out) {
  if (s.total_gold < 0 || s.minions_killed < 0 || s.jungle_minions_killed < 0) {
    out.push_back({ViolationCode::NEGATIVE_AGGREGATE, frame_index,
                   std::string(side) + " has a negative count"});
  }
  if (s.avg_player_level < 1.0 || s.avg_player_level > 18.0) {
    out.push_back({ViolationCode::LEVEL_OUT_OF_RANGE, frame_index,
                   std::string(side) + " avg level outside [1,18]"});
  }
}

}  // namespace

std::vector<Violation> validate_timeline(const MatchTimeline& t) {
  std::vector<Violation> out;

  if (t.duration_ms <= 0) {
    out.push_back({ViolationCode::DURATION_NOT_POSITIVE, 0, "duration_ms must be > 0"});
  }

  for (std::size_t i = 0; i < t.events.size(); ++i) {
    const TimelineEvent& e = t.events[i];
    if (e.timestamp_ms < 0) {
      out.push_back({ViolationCode::EVENT_TIMESTAMP_NEGATIVE, i, ""});
    }
    if (e.timestamp_ms > t.duration_ms) {
      out.push_back({ViolationCode::EVENT_AFTER_END, i, "event past match end"});
    }
    if (i > 0 && e.timestamp_ms < t.events[i - 1].timestamp_ms) {
      out.push_back({ViolationCode::EVENTS_UNSORTED, i, "timestamp decreased"});
    }
    const bool is_dragon = e.kind == EventKind::EliteMonsterKill &&
                           e.monster == MonsterType::Dragon;
    const bool has_element = e.element != DragonElement::None;
    if (is_dragon != has_element) {
      out.push_back({ViolationCode::DRAGON_ELEMENT_MISMATCH, i,
                     is_dragon ? "dragon kill without element"
                               : "element on a non-dragon event"});
    }
  }

  if (t.frames.empty()) {
    out.push_back({ViolationCode::NO_FRAMES, 0, "at least one frame required"});
    return out;
  }

  for (std::size_t i = 0; i < t.frames.size(); ++i) {
    const FrameSnapshot& f = t.frames[i];
    check_side_values(f.blue, i, "blue", out);
    check_side_values(f.red, i, "red", out);
    if (i > 0) {
      if (f.timestamp_ms <= t.frames[i - 1].timestamp_ms) {
        out.push_back({ViolationCode::FRAMES_UNSORTED, i,
                       "frame timestamps must strictly increase"});
      }
      check_side_monotone(t.frames[i - 1].blue, f.blue, i, "blue", out);
      check_side_monotone(t.frames[i - 1].red, f.red, i, "red", out);
    }
  }

  if (t.frames.back().timestamp_ms != t.duration_ms) {
    out.push_back({ViolationCode::LAST_FRAME_NOT_AT_END, t.frames.size() - 1,
                   "final frame must sit at duration_ms"});
  }

  return out;
}

}  // namespace lolpred
