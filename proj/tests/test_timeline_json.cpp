#include <doctest.h>

#include <fstream>
#include <string>

#include <json.hpp>

#include "lolpred/error.hpp"
#include "lolpred/synthetic.hpp"
#include "lolpred/timeline_json.hpp"
#include "test_util.hpp"

using namespace lolpred;
using namespace testutil;

namespace {

// One of everything: every event kind, both sides, totals that do not divide
// evenly across five participants.
MatchTimeline kitchen_sink_match() {
  MatchTimeline t = ten_minute_match("KS_1");
  t.winner = TeamSide::Red;
  t.frames[10].blue.total_gold += 3;  // not a multiple of 5
  t.frames[10].blue.minions_killed += 1;
  t.events = {
      kill(30000, TeamSide::Red),
      kill(90000, TeamSide::Blue),
      dragon(300000, TeamSide::Blue, DragonElement::Hextech),
      dragon(360000, TeamSide::Red, DragonElement::Elder),
      herald(420000, TeamSide::Blue),
      baron(480000, TeamSide::Red),
      tower(540000, TeamSide::Blue),
      inhibitor(570000, TeamSide::Red),
  };
  return t;
}

nlohmann::json parse_doc(const MatchTimeline& t) {
  return nlohmann::json::parse(render_timeline_json(t));
}

}  // namespace

TEST_CASE("render then parse reproduces the timeline field for field") {
  const MatchTimeline t = kitchen_sink_match();
  const ParsedTimeline back = parse_timeline_json(render_timeline_json(t));
  CHECK(back.timeline == t);
  CHECK(back.report.skipped_events == 0);
}

TEST_CASE("synthetic corpus round-trips through the wire format") {
  for (std::uint64_t seed : {1ULL, 2ULL, 3ULL}) {
    SynthConfig cfg;
    cfg.seed = seed;
    cfg.n_matches = 8;
    for (const MatchTimeline& t : generate_synthetic(cfg)) {
      CAPTURE(seed);
      CAPTURE(t.match_id);
      const ParsedTimeline back = parse_timeline_json(render_timeline_json(t));
      CHECK(back.timeline == t);
    }
  }
}

TEST_CASE("missing winner raises MISSING_FIELD with the path") {
  nlohmann::json doc = parse_doc(ten_minute_match());
  doc["info"].erase("winner");
  try {
    parse_timeline_json(doc.dump());
    FAIL("expected MISSING_FIELD");
  } catch (const Error& e) {
    CHECK(e.code() == errc::missing_field);
    CHECK(e.detail().find("info.winner") != std::string::npos);
  }
}

TEST_CASE("missing participant stats raise MISSING_FIELD") {
  nlohmann::json doc = parse_doc(ten_minute_match());
  doc["info"]["frames"][0]["participantFrames"]["4"].erase("totalGold");
  CHECK_THROWS_WITH_AS(parse_timeline_json(doc.dump()),
                       doctest::Contains("totalGold"), Error);
}

TEST_CASE("unknown event kinds are skipped and counted") {
  nlohmann::json doc = parse_doc(ten_minute_match());
  doc["info"]["frames"][1]["events"] = nlohmann::json::array(
      {{{"type", "WARD_PLACED"}, {"timestamp", 61000}},
       {{"type", "CHAMPION_KILL"}, {"timestamp", 62000}, {"killerId", 3}},
       {{"type", "ELITE_MONSTER_KILL"},
        {"timestamp", 63000},
        {"killerTeamId", 100},
        {"monsterType", "HORDE"}}});
  const ParsedTimeline parsed = parse_timeline_json(doc.dump());
  CHECK(parsed.report.skipped_events == 2);
  REQUIRE(parsed.timeline.events.size() == 1);
  CHECK(parsed.timeline.events[0].kind == EventKind::ChampionKill);
  CHECK(parsed.timeline.events[0].team == TeamSide::Blue);
}

TEST_CASE("unknown dragon subtype is skipped, known ones map per element") {
  nlohmann::json doc = parse_doc(ten_minute_match());
  doc["info"]["frames"][2]["events"] = nlohmann::json::array(
      {{{"type", "ELITE_MONSTER_KILL"},
        {"timestamp", 121000},
        {"killerTeamId", 200},
        {"monsterType", "DRAGON"},
        {"monsterSubType", "MECHA_DRAGON"}},
       {{"type", "ELITE_MONSTER_KILL"},
        {"timestamp", 122000},
        {"killerTeamId", 200},
        {"monsterType", "DRAGON"},
        {"monsterSubType", "CHEMTECH_DRAGON"}}});
  const ParsedTimeline parsed = parse_timeline_json(doc.dump());
  CHECK(parsed.report.skipped_events == 1);
  REQUIRE(parsed.timeline.events.size() == 1);
  CHECK(parsed.timeline.events[0].element == DragonElement::Chemtech);
  CHECK(parsed.timeline.events[0].team == TeamSide::Red);
}

TEST_CASE("building destroyer is the opponent of the listed owner") {
  nlohmann::json doc = parse_doc(ten_minute_match());
  doc["info"]["frames"][3]["events"] = nlohmann::json::array(
      {{{"type", "BUILDING_KILL"},
        {"timestamp", 185000},
        {"teamId", 200},
        {"buildingType", "TOWER_BUILDING"}}});
  const ParsedTimeline parsed = parse_timeline_json(doc.dump());
  REQUIRE(parsed.timeline.events.size() == 1);
  CHECK(parsed.timeline.events[0].team == TeamSide::Blue);  // red tower fell
  CHECK(parsed.timeline.events[0].building == BuildingType::Tower);
}

TEST_CASE("malformed input raises MALFORMED_JSON") {
  CHECK_THROWS_AS(parse_timeline_json("{ not json"), Error);
  try {
    parse_timeline_json("[1,2,3]");
    FAIL("expected MALFORMED_JSON");
  } catch (const Error& e) {
    CHECK(e.code() == errc::malformed_json);
  }
}

TEST_CASE("documents violating timeline invariants raise INVALID_TIMELINE") {
  nlohmann::json doc = parse_doc(ten_minute_match());
  doc["info"]["frames"][5]["events"] = nlohmann::json::array(
      {{{"type", "CHAMPION_KILL"}, {"timestamp", 300000}, {"killerId", 1}},
       {{"type", "CHAMPION_KILL"}, {"timestamp", 100000}, {"killerId", 6}}});
  try {
    parse_timeline_json(doc.dump());
    FAIL("expected INVALID_TIMELINE");
  } catch (const Error& e) {
    CHECK(e.code() == errc::invalid_timeline);
    CHECK(e.detail().find("EVENTS_UNSORTED") != std::string::npos);
  }
}

TEST_CASE("file save/load round-trip and sorted directory loading") {
  TempDir dir("timeline_json");
  const MatchTimeline a = kitchen_sink_match();
  MatchTimeline b = ten_minute_match("AA_2");  // sorts before KS_1's file

  save_timeline_file(a, dir.path() / "b_match.json");
  save_timeline_file(b, dir.path() / "a_match.json");
  std::ofstream(dir.path() / "notes.txt") << "ignored";

  CHECK(load_timeline_file(dir.path() / "b_match.json").timeline == a);

  const auto all = load_timeline_dir(dir.path());
  REQUIRE(all.size() == 2);
  CHECK(all[0] == b);  // filename order, not insertion order
  CHECK(all[1] == a);
}

TEST_CASE("loading a missing file raises IO") {
  try {
    load_timeline_file("/nonexistent/never/x.json");
    FAIL("expected IO");
  } catch (const Error& e) {
    CHECK(e.code() == errc::io);
  }
}
