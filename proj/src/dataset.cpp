#include "lolpred/dataset.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <unordered_map>

#include "lolpred/error.hpp"

namespace lolpred {

namespace {

// Shortest decimal that round-trips the exact double.
void append_number(std::string& out, double value) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  out.append(buf, ptr);
}

double parse_number(std::string_view token, const std::string& origin, std::size_t line) {
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size()) {
    throw Error(errc::corrupt, origin + ": bad number '" + std::string(token) +
                                   "' on line " + std::to_string(line));
  }
  return value;
}

std::vector<std::string_view> split_csv_line(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      out.push_back(line.substr(start));
      break;
    }
    out.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
  return out;
}

}  // namespace

std::vector<int> FeatureTable::rows_at_pet(double pet) const {
  std::vector<int> out;
  for (Eigen::Index i = 0; i < rows(); ++i) {
    if (std::abs(inputs(i, 0) - pet) < 1e-9) out.push_back(static_cast<int>(i));
  }
  return out;
}

std::vector<int> FeatureTable::all_rows(Eigen::Index n) {
  std::vector<int> out(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = static_cast<int>(i);
  return out;
}

int FeatureTable::input_index(const std::string& name) {
  const auto& names = model_input_names();
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (names[i] == name) return static_cast<int>(i);
  }
  return -1;
}

FeatureTable build_dataset(std::span<const MatchTimeline> timelines,
                           const std::vector<double>& pet_levels) {
  if (pet_levels.empty()) {
    throw Error(errc::invalid_argument, "pet_levels must be non-empty");
  }
  for (std::size_t i = 0; i < pet_levels.size(); ++i) {
    const double p = pet_levels[i];
    if (!(p > 0.0) || p > 1.0) {
      throw Error(errc::invalid_argument, "pet levels must lie in (0, 1]");
    }
    if (i > 0 && !(pet_levels[i - 1] < p)) {
      throw Error(errc::invalid_argument, "pet levels must be strictly increasing");
    }
  }

  std::vector<const MatchTimeline*> kept;
  kept.reserve(timelines.size());
  for (const MatchTimeline& t : timelines) {
    if (t.duration_ms >= kMinDurationMs) kept.push_back(&t);
  }
  if (kept.empty()) {
    throw Error(errc::empty_input, "no matches of at least 5 minutes");
  }

  const Eigen::Index n =
      static_cast<Eigen::Index>(kept.size() * pet_levels.size());
  FeatureTable table;
  table.match_ids.reserve(static_cast<std::size_t>(n));
  table.inputs.resize(n, kNumModelInputs);
  table.labels.resize(n);

  Eigen::Index row = 0;
  for (const MatchTimeline* t : kept) {
    const double label = t->winner == TeamSide::Blue ? 1.0 : 0.0;
    for (const double pet : pet_levels) {
      table.match_ids.push_back(t->match_id);
      table.inputs.row(row) = slice_at_pet(*t, pet).as_inputs();
      table.labels(row) = label;
      ++row;
    }
  }
  return table;
}

std::string dataset_to_csv(const FeatureTable& table) {
  std::string out;
  out.reserve(static_cast<std::size_t>(table.rows()) * 256 + 1024);

  out += "match_id";
  for (const auto& name : model_input_names()) {
    out += ',';
    out += name;
  }
  out += ",blue_win\n";

  for (Eigen::Index i = 0; i < table.rows(); ++i) {
    out += table.match_ids[static_cast<std::size_t>(i)];
    for (Eigen::Index j = 0; j < table.inputs.cols(); ++j) {
      out += ',';
      append_number(out, table.inputs(i, j));
    }
    out += ',';
    append_number(out, table.labels(i));
    out += '\n';
  }
  return out;
}

void write_dataset_csv(const FeatureTable& table, const std::filesystem::path& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error(errc::io, "cannot open " + path.string() + " for writing");
  f << dataset_to_csv(table);
  if (!f) throw Error(errc::io, "write failed: " + path.string());
}

FeatureTable dataset_from_csv(const std::string& text, const std::string& origin) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) {
    throw Error(errc::empty_input, origin + ": empty file");
  }
  if (!line.empty() && line.back() == '\r') line.pop_back();

  // Map header names to model-input columns. Aliases cover common exports.
  const auto header = split_csv_line(line);
  std::vector<int> input_col(header.size(), -1);
  int id_col = -1, label_col = -1;
  for (std::size_t c = 0; c < header.size(); ++c) {
    std::string name(header[c]);
    if (name == "match_id" || name == "matchId") {
      id_col = static_cast<int>(c);
    } else if (name == "blue_win" || name == "blueWin") {
      label_col = static_cast<int>(c);
    } else if (name == "PET") {
      input_col[c] = 0;
    } else {
      input_col[c] = FeatureTable::input_index(name);
    }
  }
  if (label_col < 0) throw Error(errc::missing_field, origin + ": blue_win column");
  std::vector<bool> seen(kNumModelInputs, false);
  for (int col : input_col) {
    if (col >= 0) seen[static_cast<std::size_t>(col)] = true;
  }
  for (int j = 0; j < kNumModelInputs; ++j) {
    if (!seen[static_cast<std::size_t>(j)]) {
      throw Error(errc::missing_field, origin + ": column " + model_input_names()[static_cast<std::size_t>(j)]);
    }
  }

  std::vector<std::string> ids;
  std::vector<Eigen::Matrix<double, kNumModelInputs, 1>> rows;
  std::vector<double> labels;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto cells = split_csv_line(line);
    if (cells.size() != header.size()) {
      throw Error(errc::corrupt, origin + ": wrong cell count on line " + std::to_string(line_no));
    }
    Eigen::Matrix<double, kNumModelInputs, 1> row;
    for (std::size_t c = 0; c < cells.size(); ++c) {
      if (input_col[c] >= 0) {
        row(input_col[c]) = parse_number(cells[c], origin, line_no);
      }
    }
    rows.push_back(row);
    labels.push_back(parse_number(cells[static_cast<std::size_t>(label_col)], origin, line_no));
    ids.push_back(id_col >= 0 ? std::string(cells[static_cast<std::size_t>(id_col)])
                              : "row_" + std::to_string(line_no - 2));
  }
  if (rows.empty()) throw Error(errc::empty_input, origin + ": no data rows");

  FeatureTable table;
  table.match_ids = std::move(ids);
  table.inputs.resize(static_cast<Eigen::Index>(rows.size()), kNumModelInputs);
  table.labels.resize(static_cast<Eigen::Index>(rows.size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    table.inputs.row(static_cast<Eigen::Index>(i)) = rows[i];
    table.labels(static_cast<Eigen::Index>(i)) = labels[i];
  }
  return table;
}

FeatureTable read_dataset_csv(const std::filesystem::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw Error(errc::io, "cannot open " + path.string());
  std::ostringstream buf;
  buf << f.rdbuf();
  return dataset_from_csv(buf.str(), path.filename().string());
}

}  // namespace lolpred
