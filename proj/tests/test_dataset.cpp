#include <doctest.h>

#include <fstream>
#include <set>
#include <string>
#include <vector>

#include "lolpred/dataset.hpp"
#include "lolpred/error.hpp"
#include "lolpred/synthetic.hpp"
#include "test_util.hpp"

using namespace lolpred;
using namespace testutil;

namespace {

MatchTimeline short_match(const std::string& id) {
  MatchTimeline t = ten_minute_match(id);
  t.duration_ms = 270000;  // 4.5 minutes: a remake
  t.frames.resize(5);      // minutes 0..4
  t.frames.push_back(t.frames.back());
  t.frames.back().timestamp_ms = 270000;
  return t;
}

const std::vector<double> kPets = {0.2, 0.4, 0.6, 0.8};

}  // namespace

TEST_CASE("matches shorter than five minutes are excluded") {
  std::vector<MatchTimeline> matches = {ten_minute_match("KEEP_1"),
                                        short_match("REMAKE"),
                                        ten_minute_match("KEEP_2")};
  const FeatureTable table = build_dataset(matches, kPets);
  CHECK(table.rows() == 2 * 4);
  for (const auto& id : table.match_ids) CHECK(id != "REMAKE");
}

TEST_CASE("a corpus of only remakes raises EMPTY_INPUT") {
  std::vector<MatchTimeline> matches = {short_match("R1"), short_match("R2")};
  try {
    build_dataset(matches, kPets);
    FAIL("expected EMPTY_INPUT");
  } catch (const Error& e) {
    CHECK(e.code() == errc::empty_input);
  }
}

TEST_CASE("one row per kept match per pet, in match-major order") {
  std::vector<MatchTimeline> matches = {ten_minute_match("A"),
                                        ten_minute_match("B")};
  const FeatureTable table = build_dataset(matches, kPets);
  REQUIRE(table.rows() == 8);
  REQUIRE(table.match_ids.size() == 8);
  const std::vector<std::string> want_ids = {"A", "A", "A", "A",
                                             "B", "B", "B", "B"};
  for (int i = 0; i < 8; ++i) {
    CHECK(table.match_ids[i] == want_ids[i]);
    CHECK(table.inputs(i, 0) == doctest::Approx(kPets[i % 4]));
    CHECK(table.labels(i) == 1.0);  // ten_minute_match is a blue win
  }
  CHECK(table.inputs.cols() == kNumModelInputs);
}

TEST_CASE("pet level validation") {
  std::vector<MatchTimeline> matches = {ten_minute_match("A")};
  auto expect_invalid = [&](const std::vector<double>& pets) {
    CAPTURE(pets.size());
    try {
      build_dataset(matches, pets);
      FAIL_CHECK("expected INVALID_ARGUMENT");
    } catch (const Error& e) {
      CHECK(e.code() == errc::invalid_argument);
    }
  };
  expect_invalid({});
  expect_invalid({0.0, 0.5});
  expect_invalid({0.5, 1.2});
  expect_invalid({0.4, 0.4});
  expect_invalid({0.6, 0.4});
  CHECK_NOTHROW(build_dataset(matches, {1.0}));
}

TEST_CASE("binary columns carry only zeros and ones on a synthetic corpus") {
  const FeatureTable table = synth_table(13, 60);
  const std::vector<std::string> binary_cols = {
      "blueFirstBlood", "blueRiftHeraldKill", "blueBaronKill",
      "redRiftHeraldKill", "redBaronKill"};
  for (const auto& name : binary_cols) {
    const int col = FeatureTable::input_index(name);
    REQUIRE(col >= 0);
    for (Eigen::Index r = 0; r < table.rows(); ++r) {
      const double v = table.inputs(r, col);
      CAPTURE(name);
      CAPTURE(r);
      CHECK((v == 0.0 || v == 1.0));
    }
  }
  for (Eigen::Index r = 0; r < table.rows(); ++r) {
    const double y = table.labels(r);
    CHECK((y == 0.0 || y == 1.0));
  }
}

TEST_CASE("CSV round-trip is bitwise exact") {
  const FeatureTable table = synth_table(29, 15);
  const std::string csv = dataset_to_csv(table);
  const FeatureTable back = dataset_from_csv(csv);
  REQUIRE(back.rows() == table.rows());
  CHECK(back.match_ids == table.match_ids);
  CHECK(back.inputs == table.inputs);  // element-wise, bit-for-bit
  CHECK(back.labels == table.labels);
  CHECK(dataset_to_csv(back) == csv);
}

TEST_CASE("CSV file write/read round-trip") {
  TempDir dir("dataset");
  const FeatureTable table = synth_table(31, 6);
  const auto path = dir.path() / "data.csv";
  write_dataset_csv(table, path);
  const FeatureTable back = read_dataset_csv(path);
  CHECK(back.inputs == table.inputs);
  CHECK(back.labels == table.labels);
  CHECK(back.match_ids == table.match_ids);
}

TEST_CASE("header aliases and reordered columns are accepted") {
  // Minimal two-feature reorder: put blue_win first, alias names, and swap
  // two feature columns; every other feature column must still be present.
  const FeatureTable table = synth_table(37, 3, {0.5});
  const std::string csv = dataset_to_csv(table);
  // Parse our own header to build a permuted copy.
  std::vector<std::string> lines;
  {
    std::size_t start = 0;
    while (start < csv.size()) {
      const std::size_t nl = csv.find('\n', start);
      lines.push_back(csv.substr(start, nl - start));
      start = nl + 1;
    }
  }
  auto split = [](const std::string& line) {
    std::vector<std::string> cells;
    std::size_t start = 0;
    while (true) {
      const std::size_t comma = line.find(',', start);
      cells.push_back(line.substr(start, comma - start));
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    return cells;
  };
  std::vector<std::vector<std::string>> grid;
  for (const auto& line : lines) grid.push_back(split(line));
  // Rename header cells to the aliases, then move the last column first.
  REQUIRE(grid[0][0] == "match_id");
  REQUIRE(grid[0].back() == "blue_win");
  grid[0][0] = "matchId";
  grid[0].back() = "blueWin";
  std::string permuted;
  for (const auto& row : grid) {
    permuted += row.back();
    for (std::size_t c = 0; c + 1 < row.size(); ++c) {
      permuted += ',';
      permuted += row[c];
    }
    permuted += '\n';
  }
  const FeatureTable back = dataset_from_csv(permuted);
  CHECK(back.match_ids == table.match_ids);
  CHECK(back.inputs == table.inputs);
  CHECK(back.labels == table.labels);
}

TEST_CASE("missing match_id column numbers the rows") {
  const FeatureTable table = synth_table(41, 2, {0.5, 1.0});
  std::string csv = dataset_to_csv(table);
  // Drop the first column from every line.
  std::string stripped;
  std::size_t start = 0;
  while (start < csv.size()) {
    const std::size_t nl = csv.find('\n', start);
    const std::string line = csv.substr(start, nl - start);
    stripped += line.substr(line.find(',') + 1);
    stripped += '\n';
    start = nl + 1;
  }
  const FeatureTable back = dataset_from_csv(stripped);
  REQUIRE(back.rows() == table.rows());
  CHECK(back.match_ids[0] == "row_0");
  CHECK(back.match_ids[1] == "row_1");
  CHECK(back.inputs == table.inputs);
}

TEST_CASE("defective CSVs are rejected with precise codes") {
  const FeatureTable table = synth_table(43, 2, {0.5});
  const std::string csv = dataset_to_csv(table);

  SUBCASE("missing label column") {
    std::string no_label = csv;
    const std::size_t pos = no_label.find(",blue_win");
    REQUIRE(pos != std::string::npos);
    // Remove the header cell and the last cell of each data row.
    no_label.erase(pos, 9);
    std::string out;
    std::size_t start = 0;
    bool first = true;
    while (start < no_label.size()) {
      const std::size_t nl = no_label.find('\n', start);
      std::string line = no_label.substr(start, nl - start);
      if (!first) line.erase(line.rfind(','));
      out += line;
      out += '\n';
      first = false;
      start = nl + 1;
    }
    try {
      dataset_from_csv(out);
      FAIL_CHECK("expected MISSING_FIELD");
    } catch (const Error& e) {
      CHECK(e.code() == errc::missing_field);
    }
  }

  SUBCASE("missing feature column") {
    // Rename a feature in the header so the schema lookup fails.
    std::string renamed = csv;
    const std::size_t pos = renamed.find("blueTowerKill");
    REQUIRE(pos != std::string::npos);
    renamed.replace(pos, 13, "blueTurretKill");  // same length, wrong name
    try {
      dataset_from_csv(renamed);
      FAIL_CHECK("expected MISSING_FIELD");
    } catch (const Error& e) {
      CHECK(e.code() == errc::missing_field);
      CHECK(e.detail().find("blueTowerKill") != std::string::npos);
    }
  }

  SUBCASE("unparseable number") {
    std::string bad = csv;
    const std::size_t header_end = bad.find('\n');
    const std::size_t cell = bad.find(",0.5,", header_end);
    REQUIRE(cell != std::string::npos);
    bad.replace(cell, 5, ",oops,");
    try {
      dataset_from_csv(bad);
      FAIL_CHECK("expected CORRUPT");
    } catch (const Error& e) {
      CHECK(e.code() == errc::corrupt);
    }
  }

  SUBCASE("wrong cell count") {
    std::string bad = csv;
    bad.insert(bad.size() - 1, ",17");  // extra trailing cell on last row
    try {
      dataset_from_csv(bad);
      FAIL_CHECK("expected CORRUPT");
    } catch (const Error& e) {
      CHECK(e.code() == errc::corrupt);
    }
  }

  SUBCASE("empty text") {
    try {
      dataset_from_csv("");
      FAIL_CHECK("expected EMPTY_INPUT");
    } catch (const Error& e) {
      CHECK(e.code() == errc::empty_input);
    }
  }

  SUBCASE("header only") {
    const std::string header = csv.substr(0, csv.find('\n') + 1);
    try {
      dataset_from_csv(header);
      FAIL_CHECK("expected EMPTY_INPUT");
    } catch (const Error& e) {
      CHECK(e.code() == errc::empty_input);
    }
  }
}

TEST_CASE("rows_at_pet and input_index") {
  const FeatureTable table = synth_table(47, 5);
  const auto rows = table.rows_at_pet(0.4);
  CHECK(rows.size() == 5);
  for (int r : rows) CHECK(table.inputs(r, 0) == doctest::Approx(0.4));
  CHECK(table.rows_at_pet(0.3).empty());

  CHECK(FeatureTable::input_index("pet") == 0);
  CHECK(FeatureTable::input_index("blueChampionKill") == 1);
  CHECK(FeatureTable::input_index("redAvgPlayerLevel") == kNumModelInputs - 1);
  CHECK(FeatureTable::input_index("nope") == -1);

  const auto all = FeatureTable::all_rows(4);
  CHECK(all == std::vector<int>{0, 1, 2, 3});
}
