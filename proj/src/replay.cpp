#include "lolpred/replay.hpp"

#include <charconv>

#include "lolpred/error.hpp"
#include "lolpred/features.hpp"

namespace lolpred {

void RoutingTable::validate() const {
  if (entries.empty()) throw Error(errc::invalid_config, "empty routing table");
  double prev = 0.0;
  for (const RouteEntry& e : entries) {
    if (!(e.pet_upper_bound > prev)) {
      throw Error(errc::invalid_config, "routing bounds must be strictly increasing");
    }
    if (e.model == nullptr) {
      throw Error(errc::invalid_config, "routing entry without a model: " + e.model_name);
    }
    prev = e.pet_upper_bound;
  }
  if (entries.back().pet_upper_bound < 1.0) {
    throw Error(errc::invalid_config, "routing bounds must cover pet up to 1.0");
  }
}

const RouteEntry& RoutingTable::route(double pet) const {
  for (const RouteEntry& e : entries) {
    if (pet <= e.pet_upper_bound) return e;
  }
  throw Error(errc::pet_out_of_range, "pet " + std::to_string(pet) + " above routing range");
}

std::vector<ReplayLine> replay_timeline(const MatchTimeline& t, const RoutingTable& routing) {
  routing.validate();

  std::vector<ReplayLine> lines;
  const auto whole_minutes = static_cast<int>(t.duration_ms / 60000);
  for (int minute = 1; minute <= whole_minutes; ++minute) {
    const double pet =
        static_cast<double>(minute * 60000LL) / static_cast<double>(t.duration_ms);
    const RouteEntry& entry = routing.route(pet);

    ReplayLine line;
    line.elapsed_min = minute;
    line.pet = pet;
    line.model = entry.model_name;
    line.p_blue = entry.model->predict_proba(slice_at_pet(t, pet));
    lines.push_back(std::move(line));
  }
  return lines;
}

std::string replay_to_tsv(const std::vector<ReplayLine>& lines) {
  std::string out;
  char buf[64];
  const auto append_double = [&](double v) {
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    out.append(buf, res.ptr);
  };
  for (const ReplayLine& l : lines) {
    out += std::to_string(l.elapsed_min);
    out += '\t';
    append_double(l.pet);
    out += '\t';
    out += l.model;
    out += '\t';
    append_double(l.p_blue);
    out += '\n';
  }
  return out;
}

}  // namespace lolpred
