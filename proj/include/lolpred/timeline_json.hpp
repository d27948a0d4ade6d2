#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "lolpred/timeline.hpp"

namespace lolpred {

struct ParseReport {
  int skipped_events = 0;  // events with an unrecognized "type"
};

struct ParsedTimeline {
  MatchTimeline timeline;
  ParseReport report;
};

// Parses one match timeline document (see docs/timeline_schema.md). Unknown
// event kinds are skipped and counted; the result is validated.
// Throws: MALFORMED_JSON, MISSING_FIELD, INVALID_TIMELINE.
ParsedTimeline parse_timeline_json(std::string_view bytes);

// Inverse of parse_timeline_json up to per-participant splitting of the
// per-side aggregates; parse(render(t)).timeline == t field-for-field.
std::string render_timeline_json(const MatchTimeline& t);

ParsedTimeline load_timeline_file(const std::filesystem::path& path);
void save_timeline_file(const MatchTimeline& t, const std::filesystem::path& path);

// All *.json timelines in a directory, sorted by filename.
std::vector<MatchTimeline> load_timeline_dir(const std::filesystem::path& dir);

}  // namespace lolpred
