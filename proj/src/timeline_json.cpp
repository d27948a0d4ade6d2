#include "lolpred/timeline_json.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "lolpred/error.hpp"

namespace lolpred {

using nlohmann::json;

namespace {

constexpr int kBlueTeamId = 100;
constexpr int kRedTeamId = 200;

const json& require(const json& node, const char* key, const std::string& path) {
  auto it = node.find(key);
  if (it == node.end() || it->is_null()) {
    throw Error(errc::missing_field, path);
  }
  return *it;
}

TeamSide side_from_team_id(int team_id, const std::string& path) {
  if (team_id == kBlueTeamId) return TeamSide::Blue;
  if (team_id == kRedTeamId) return TeamSide::Red;
  throw Error(errc::missing_field, path + " (expected 100 or 200)");
}

TeamSide side_from_participant(int participant_id, const std::string& path) {
  if (participant_id >= 1 && participant_id <= 5) return TeamSide::Blue;
  if (participant_id >= 6 && participant_id <= 10) return TeamSide::Red;
  throw Error(errc::missing_field, path + " (expected participant 1-10)");
}

DragonElement dragon_element_from_subtype(const std::string& subtype) {
  if (subtype == "HEXTECH_DRAGON") return DragonElement::Hextech;
  if (subtype == "CHEMTECH_DRAGON") return DragonElement::Chemtech;
  if (subtype == "FIRE_DRAGON") return DragonElement::Fire;
  if (subtype == "AIR_DRAGON") return DragonElement::Air;
  if (subtype == "EARTH_DRAGON") return DragonElement::Earth;
  if (subtype == "WATER_DRAGON") return DragonElement::Water;
  if (subtype == "ELDER_DRAGON") return DragonElement::Elder;
  return DragonElement::None;
}

const char* dragon_subtype_name(DragonElement e) {
  switch (e) {
    case DragonElement::Hextech: return "HEXTECH_DRAGON";
    case DragonElement::Chemtech: return "CHEMTECH_DRAGON";
    case DragonElement::Fire: return "FIRE_DRAGON";
    case DragonElement::Air: return "AIR_DRAGON";
    case DragonElement::Earth: return "EARTH_DRAGON";
    case DragonElement::Water: return "WATER_DRAGON";
    case DragonElement::Elder: return "ELDER_DRAGON";
    case DragonElement::None: break;
  }
  return "";
}

// Returns true if the event was recognized and appended.
bool parse_event(const json& ev, const std::string& path,
                 std::vector<TimelineEvent>& out) {
  const std::string type = require(ev, "type", path + ".type").get<std::string>();
  TimelineEvent e;
  e.timestamp_ms = require(ev, "timestamp", path + ".timestamp").get<std::int64_t>();

  if (type == "CHAMPION_KILL") {
    e.kind = EventKind::ChampionKill;
    const int killer = require(ev, "killerId", path + ".killerId").get<int>();
    e.team = side_from_participant(killer, path + ".killerId");
  } else if (type == "ELITE_MONSTER_KILL") {
    e.kind = EventKind::EliteMonsterKill;
    const int team = require(ev, "killerTeamId", path + ".killerTeamId").get<int>();
    e.team = side_from_team_id(team, path + ".killerTeamId");
    const std::string monster =
        require(ev, "monsterType", path + ".monsterType").get<std::string>();
    if (monster == "DRAGON") {
      e.monster = MonsterType::Dragon;
      const std::string sub =
          require(ev, "monsterSubType", path + ".monsterSubType").get<std::string>();
      e.element = dragon_element_from_subtype(sub);
      if (e.element == DragonElement::None) return false;  // unknown dragon kind
    } else if (monster == "RIFTHERALD") {
      e.monster = MonsterType::RiftHerald;
    } else if (monster == "BARON_NASHOR") {
      e.monster = MonsterType::Baron;
    } else {
      return false;
    }
  } else if (type == "BUILDING_KILL") {
    e.kind = EventKind::BuildingKill;
    // The document carries the owner of the destroyed building; the
    // destroyer is the other side.
    const int owner = require(ev, "teamId", path + ".teamId").get<int>();
    e.team = opposite(side_from_team_id(owner, path + ".teamId"));
    const std::string building =
        require(ev, "buildingType", path + ".buildingType").get<std::string>();
    if (building == "TOWER_BUILDING") {
      e.building = BuildingType::Tower;
    } else if (building == "INHIBITOR_BUILDING") {
      e.building = BuildingType::Inhibitor;
    } else {
      return false;
    }
  } else {
    return false;
  }

  out.push_back(e);
  return true;
}

SideStats aggregate_side(const json& participant_frames, int first_id,
                         const std::string& path) {
  SideStats s;
  std::int64_t level_sum = 0;
  for (int pid = first_id; pid < first_id + 5; ++pid) {
    const std::string key = std::to_string(pid);
    const std::string ppath = path + "." + key;
    auto it = participant_frames.find(key);
    if (it == participant_frames.end()) {
      throw Error(errc::missing_field, ppath);
    }
    const json& pf = *it;
    s.total_gold += require(pf, "totalGold", ppath + ".totalGold").get<std::int64_t>();
    s.minions_killed +=
        require(pf, "minionsKilled", ppath + ".minionsKilled").get<std::int64_t>();
    s.jungle_minions_killed +=
        require(pf, "jungleMinionsKilled", ppath + ".jungleMinionsKilled")
            .get<std::int64_t>();
    level_sum += require(pf, "level", ppath + ".level").get<std::int64_t>();
  }
  s.avg_player_level = static_cast<double>(level_sum) / 5.0;
  return s;
}

// Splits a team total into five per-participant integers (first `rem`
// participants get one extra).
void split_total(std::int64_t total, std::int64_t out[5]) {
  const std::int64_t q = total / 5;
  const std::int64_t rem = total % 5;
  for (int i = 0; i < 5; ++i) out[i] = q + (i < rem ? 1 : 0);
}

}  // namespace

ParsedTimeline parse_timeline_json(std::string_view bytes) {
  json doc = json::parse(bytes, nullptr, false);
  if (doc.is_discarded() || !doc.is_object()) {
    throw Error(errc::malformed_json, "not a JSON object");
  }

  ParsedTimeline result;
  MatchTimeline& t = result.timeline;

  const json& metadata = require(doc, "metadata", "metadata");
  t.match_id = require(metadata, "matchId", "metadata.matchId").get<std::string>();

  const json& info = require(doc, "info", "info");
  t.duration_ms = require(info, "durationMs", "info.durationMs").get<std::int64_t>();
  const int winner_team = require(info, "winner", "info.winner").get<int>();
  t.winner = side_from_team_id(winner_team, "info.winner");

  const json& frames = require(info, "frames", "info.frames");
  if (!frames.is_array()) {
    throw Error(errc::malformed_json, "info.frames must be an array");
  }

  for (std::size_t i = 0; i < frames.size(); ++i) {
    const json& fr = frames[i];
    const std::string fpath = "info.frames[" + std::to_string(i) + "]";

    FrameSnapshot snap;
    snap.timestamp_ms = require(fr, "timestamp", fpath + ".timestamp").get<std::int64_t>();
    const json& pf = require(fr, "participantFrames", fpath + ".participantFrames");
    snap.blue = aggregate_side(pf, 1, fpath + ".participantFrames");
    snap.red = aggregate_side(pf, 6, fpath + ".participantFrames");
    t.frames.push_back(snap);

    if (auto ev_it = fr.find("events"); ev_it != fr.end() && ev_it->is_array()) {
      for (std::size_t j = 0; j < ev_it->size(); ++j) {
        const std::string epath = fpath + ".events[" + std::to_string(j) + "]";
        if (!parse_event((*ev_it)[j], epath, t.events)) {
          ++result.report.skipped_events;
        }
      }
    }
  }

  const auto violations = validate_timeline(t);
  if (!violations.empty()) {
    std::ostringstream oss;
    for (std::size_t i = 0; i < violations.size(); ++i) {
      if (i) oss << "; ";
      oss << violation_name(violations[i].code) << "@" << violations[i].index;
    }
    throw Error(errc::invalid_timeline, oss.str());
  }
  return result;
}

std::string render_timeline_json(const MatchTimeline& t) {
  json doc;
  doc["metadata"]["matchId"] = t.match_id;
  json& info = doc["info"];
  info["durationMs"] = t.duration_ms;
  info["winner"] = t.winner == TeamSide::Blue ? kBlueTeamId : kRedTeamId;
  info["frameInterval"] = 60000;

  json frames = json::array();
  std::size_t next_event = 0;
  for (std::size_t i = 0; i < t.frames.size(); ++i) {
    const FrameSnapshot& snap = t.frames[i];
    json fr;
    fr["timestamp"] = snap.timestamp_ms;

    json pf;
    const SideStats* sides[2] = {&snap.blue, &snap.red};
    for (int s = 0; s < 2; ++s) {
      std::int64_t gold[5], minions[5], jungle[5], levels[5];
      split_total(sides[s]->total_gold, gold);
      split_total(sides[s]->minions_killed, minions);
      split_total(sides[s]->jungle_minions_killed, jungle);
      // avg level is always a multiple of 1/5; recover the integer sum.
      split_total(std::llround(sides[s]->avg_player_level * 5.0), levels);
      for (int p = 0; p < 5; ++p) {
        json& entry = pf[std::to_string(s * 5 + p + 1)];
        entry["totalGold"] = gold[p];
        entry["minionsKilled"] = minions[p];
        entry["jungleMinionsKilled"] = jungle[p];
        entry["level"] = levels[p];
      }
    }
    fr["participantFrames"] = std::move(pf);

    // Events attach to the earliest frame whose timestamp covers them; the
    // last frame also absorbs any remainder.
    json evs = json::array();
    const bool last = i + 1 == t.frames.size();
    while (next_event < t.events.size() &&
           (last || t.events[next_event].timestamp_ms <= snap.timestamp_ms)) {
      const TimelineEvent& e = t.events[next_event];
      json ev;
      ev["timestamp"] = e.timestamp_ms;
      switch (e.kind) {
        case EventKind::ChampionKill:
          ev["type"] = "CHAMPION_KILL";
          ev["killerId"] = e.team == TeamSide::Blue ? 1 : 6;
          break;
        case EventKind::EliteMonsterKill:
          ev["type"] = "ELITE_MONSTER_KILL";
          ev["killerTeamId"] = e.team == TeamSide::Blue ? kBlueTeamId : kRedTeamId;
          if (e.monster == MonsterType::Dragon) {
            ev["monsterType"] = "DRAGON";
            ev["monsterSubType"] = dragon_subtype_name(e.element);
          } else if (e.monster == MonsterType::RiftHerald) {
            ev["monsterType"] = "RIFTHERALD";
          } else {
            ev["monsterType"] = "BARON_NASHOR";
          }
          break;
        case EventKind::BuildingKill:
          ev["type"] = "BUILDING_KILL";
          ev["teamId"] = opposite(e.team) == TeamSide::Blue ? kBlueTeamId : kRedTeamId;
          ev["buildingType"] = e.building == BuildingType::Inhibitor
                                   ? "INHIBITOR_BUILDING"
                                   : "TOWER_BUILDING";
          break;
      }
      evs.push_back(std::move(ev));
      ++next_event;
    }
    fr["events"] = std::move(evs);
    frames.push_back(std::move(fr));
  }
  info["frames"] = std::move(frames);

  return doc.dump(2) + "\n";
}

ParsedTimeline load_timeline_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(errc::io, "cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_timeline_json(buf.str());
}

void save_timeline_file(const MatchTimeline& t, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(errc::io, "cannot open " + path.string() + " for writing");
  out << render_timeline_json(t);
  if (!out) throw Error(errc::io, "write failed: " + path.string());
}

std::vector<MatchTimeline> load_timeline_dir(const std::filesystem::path& dir) {
  std::vector<std::filesystem::path> files;
  std::error_code ec;
  for (const auto& entry : std::filesystem::directory_iterator(dir, ec)) {
    if (entry.path().extension() == ".json") files.push_back(entry.path());
  }
  if (ec) throw Error(errc::io, "cannot read directory " + dir.string());
  std::sort(files.begin(), files.end());

  std::vector<MatchTimeline> out;
  out.reserve(files.size());
  for (const auto& f : files) out.push_back(load_timeline_file(f).timeline);
  return out;
}

}  // namespace lolpred
