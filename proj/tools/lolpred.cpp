// lolpred — win-prediction pipeline driver.
//
// Subcommands: synth | fetch | build | analyze | train | evaluate | tune |
// replay | report. Every command is deterministic given its inputs, flags,
// and --seed. Errors go to stderr as one-line JSON records; exit codes:
// 0 ok, 1 usage, 2 data, 3 internal.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "lolpred/dataset.hpp"
#include "lolpred/error.hpp"
#include "lolpred/evaluation.hpp"
#include "lolpred/features.hpp"
#include "lolpred/http_fetch.hpp"
#include "lolpred/learner_spec.hpp"
#include "lolpred/model.hpp"
#include "lolpred/random_search.hpp"
#include "lolpred/replay.hpp"
#include "lolpred/reports.hpp"
#include "lolpred/stats.hpp"
#include "lolpred/synthetic.hpp"
#include "lolpred/timeline_json.hpp"

namespace fs = std::filesystem;
using namespace lolpred;

namespace {

void write_text(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(errc::io, "cannot open " + path.string() + " for writing");
  out << text;
  if (!out) throw Error(errc::io, "short write to " + path.string());
}

std::string read_text(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(errc::io, "cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::vector<double> parse_pets(const std::vector<double>& pets) {
  if (pets.empty()) return {0.2, 0.4, 0.6, 0.8};
  return pets;
}

struct SynthArgs {
  std::uint64_t seed = 0;
  int n = 100;
  double mean_duration_min = 30.0;
  double skill_sigma = 1.0;
  double event_rate_scale = 1.0;
  std::string out = "data/timelines";
};

int cmd_synth(const SynthArgs& a) {
  SynthConfig cfg;
  cfg.seed = a.seed;
  cfg.n_matches = a.n;
  cfg.mean_duration_min = a.mean_duration_min;
  cfg.skill_sigma = a.skill_sigma;
  cfg.event_rate_scale = a.event_rate_scale;

  const auto timelines = generate_synthetic(cfg);
  fs::create_directories(a.out);
  for (const MatchTimeline& t : timelines) {
    save_timeline_file(t, fs::path(a.out) / (t.match_id + ".json"));
  }
  std::cout << "wrote " << timelines.size() << " timelines to " << a.out << "\n";
  return 0;
}

struct FetchArgs {
  std::string url = "http://127.0.0.1:8080";
  std::string api_key;
  std::string tier;
  int start = 0;
  int count = 20;
  std::string out = "data/timelines";
};

int cmd_fetch(const FetchArgs& a) {
  FetchConfig cfg;
  cfg.base_url = a.url;
  cfg.api_key = a.api_key;
  MatchHistoryClient client(cfg);

  MatchIdQuery query;
  query.tier = a.tier;
  query.start = a.start;
  query.count = a.count;

  const auto ids = client.fetch_match_ids(query);
  fs::create_directories(a.out);
  int skipped = 0;
  for (const std::string& id : ids) {
    ParsedTimeline parsed = client.fetch_timeline(id);
    skipped += parsed.report.skipped_events;
    save_timeline_file(parsed.timeline, fs::path(a.out) / (id + ".json"));
  }
  std::cout << "fetched " << ids.size() << " timelines to " << a.out;
  if (skipped > 0) std::cout << " (skipped " << skipped << " unknown events)";
  std::cout << "\n";
  return 0;
}

struct BuildArgs {
  std::string data_dir = "data/timelines";
  std::vector<double> pets;
  std::string out = "data/dataset.csv";
};

int cmd_build(const BuildArgs& a) {
  const auto timelines = load_timeline_dir(a.data_dir);
  const FeatureTable table = build_dataset(timelines, parse_pets(a.pets));
  if (fs::path(a.out).has_parent_path()) {
    fs::create_directories(fs::path(a.out).parent_path());
  }
  write_dataset_csv(table, a.out);
  std::cout << "wrote " << table.rows() << " rows (" << timelines.size()
            << " input matches) to " << a.out << "\n";
  return 0;
}

struct AnalyzeArgs {
  std::string dataset = "data/dataset.csv";
  std::string out = "reports";
};

int cmd_analyze(const AnalyzeArgs& a) {
  const FeatureTable table = read_dataset_csv(a.dataset);

  std::set<double> pets;
  for (Eigen::Index i = 0; i < table.rows(); ++i) pets.insert(table.inputs(i, 0));

  std::vector<CorrelationReport> reports;
  for (double pet : pets) reports.push_back(correlation_report(table, pet));

  write_text(fs::path(a.out) / "correlations.csv", correlations_to_csv(reports));
  write_text(fs::path(a.out) / "correlations.md", correlations_to_markdown(reports));
  std::cout << "wrote correlation reports for " << pets.size() << " pet levels to "
            << a.out << "\n";
  return 0;
}

struct TrainArgs {
  std::string dataset = "data/dataset.csv";
  std::string preset = "lgbm-style";
  std::optional<double> pet;
  std::uint64_t seed = 0;
  std::string out = "models/model.json";
};

int cmd_train(const TrainArgs& a) {
  const FeatureTable table = read_dataset_csv(a.dataset);
  const LearnerSpec spec = LearnerSpec::preset(a.preset, a.seed);

  std::vector<int> rows =
      a.pet ? table.rows_at_pet(*a.pet) : FeatureTable::all_rows(table.rows());
  if (rows.empty()) {
    throw Error(errc::no_rows_for_pet, "no training rows selected");
  }

  const auto model = fit(spec, table, rows);
  if (fs::path(a.out).has_parent_path()) {
    fs::create_directories(fs::path(a.out).parent_path());
  }
  save_model(*model, a.out);
  std::cout << "fitted " << a.preset << " on " << rows.size() << " rows -> " << a.out
            << "\n";
  return 0;
}

struct EvaluateArgs {
  std::string dataset = "data/dataset.csv";
  std::vector<std::string> presets;
  std::vector<double> pets;
  int k = 5;
  std::uint64_t seed = 0;
  std::string out = "reports";
};

int cmd_evaluate(const EvaluateArgs& a) {
  const FeatureTable table = read_dataset_csv(a.dataset);

  std::vector<std::string> names =
      a.presets.empty() ? LearnerSpec::comparison_presets() : a.presets;
  std::vector<NamedSpec> specs;
  for (const std::string& name : names) {
    specs.push_back({name, LearnerSpec::preset(name, a.seed)});
  }

  const MetricsMatrix matrix =
      metrics_matrix(specs, table, parse_pets(a.pets), a.k, a.seed);

  write_text(fs::path(a.out) / "metrics.csv", metrics_matrix_to_csv(matrix));
  write_text(fs::path(a.out) / "metrics.md", metrics_matrix_to_markdown(matrix));
  write_text(fs::path(a.out) / "accuracy_series.csv", accuracy_series_to_csv(matrix));
  std::cout << "evaluated " << names.size() << " presets x " << parse_pets(a.pets).size()
            << " pet levels -> " << a.out << "\n";
  return 0;
}

struct TuneArgs {
  std::string dataset = "data/dataset.csv";
  std::string family = "gbdt";
  double pet = 0.8;
  int n_iter = 25;
  int k = 5;
  std::uint64_t seed = 0;
  std::string out = "reports";
};

int cmd_tune(const TuneArgs& a) {
  const FeatureTable table = read_dataset_csv(a.dataset);
  const Family family = family_from_name(a.family);

  const SearchResult result =
      random_search(family, SearchSpace{}, a.n_iter, table, a.pet, a.k, a.seed);

  write_text(fs::path(a.out) / "trials.json", trials_to_json(result));
  write_text(fs::path(a.out) / "tuning.md", tuning_to_markdown(a.family, a.pet, result));
  std::cout << "best of " << a.n_iter << " trials: accuracy " << result.best.mean_accuracy
            << " -> " << a.out << "\n";
  return 0;
}

struct ReplayArgs {
  std::string timeline;
  std::vector<std::string> routes;  // BOUND:MODEL_FILE
  std::string model;                // single-model shorthand
  std::string out;                  // empty = stdout
};

int cmd_replay(const ReplayArgs& a) {
  RoutingTable routing;
  if (!a.routes.empty()) {
    for (const std::string& r : a.routes) {
      const auto colon = r.find(':');
      if (colon == std::string::npos || colon == 0 || colon + 1 >= r.size()) {
        throw Error(errc::invalid_config, "route must look like BOUND:MODEL_FILE, got " + r);
      }
      RouteEntry entry;
      try {
        entry.pet_upper_bound = std::stod(r.substr(0, colon));
      } catch (const std::exception&) {
        throw Error(errc::invalid_config, "bad routing bound in " + r);
      }
      const std::string file = r.substr(colon + 1);
      entry.model_name = fs::path(file).stem().string();
      entry.model = load_model(file);
      routing.entries.push_back(std::move(entry));
    }
  } else if (!a.model.empty()) {
    RouteEntry entry;
    entry.pet_upper_bound = 1.0;
    entry.model_name = fs::path(a.model).stem().string();
    entry.model = load_model(a.model);
    routing.entries.push_back(std::move(entry));
  } else {
    throw Error(errc::invalid_config, "replay needs --route entries or --model");
  }

  const ParsedTimeline parsed = load_timeline_file(a.timeline);
  const std::string tsv = replay_to_tsv(replay_timeline(parsed.timeline, routing));
  if (a.out.empty()) {
    std::cout << tsv;
  } else {
    write_text(a.out, tsv);
  }
  return 0;
}

struct ReportArgs {
  std::string in = "reports";
  std::string out = "reports/report.md";
};

int cmd_report(const ReportArgs& a) {
  std::string doc = "# Win prediction pipeline report\n";
  bool found = false;
  const std::pair<const char*, const char*> sections[] = {
      {"correlations.md", "Correlation analysis"},
      {"metrics.md", "Evaluation"},
      {"tuning.md", "Hyperparameter search"},
  };
  for (const auto& [file, title] : sections) {
    const fs::path path = fs::path(a.in) / file;
    if (!fs::exists(path)) continue;
    found = true;
    doc += "\n---\n\n## ";
    doc += title;
    doc += "\n\n";
    doc += read_text(path);
  }
  if (!found) {
    throw Error(errc::empty_input, "no report artifacts found under " + a.in);
  }
  write_text(a.out, doc);
  std::cout << "collated report -> " << a.out << "\n";
  return 0;
}

int exit_code_for(const Error& e) {
  switch (e.code()) {
    case errc::invalid_argument:
    case errc::invalid_config:
    case errc::rate_config_invalid:
    case errc::pet_out_of_range:
    case errc::unsupported_family:
      return 1;
    case errc::diverged:
    case errc::internal:
      return 3;
    default:
      return 2;
  }
}

void print_error_record(const std::string& code, const std::string& detail) {
  nlohmann::json j;
  j["error"] = code;
  j["detail"] = detail;
  std::cerr << j.dump() << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"League win-prediction pipeline"};
  app.require_subcommand(1);
  app.set_config("--config", "", "flat key=value config file; flags override it");
  app.option_defaults()->always_capture_default();

  SynthArgs synth;
  auto* synth_cmd = app.add_subcommand("synth", "generate synthetic timelines");
  synth_cmd->add_option("--seed", synth.seed, "rng seed");
  synth_cmd->add_option("--n", synth.n, "number of matches")->check(CLI::PositiveNumber);
  synth_cmd->add_option("--mean-duration", synth.mean_duration_min, "mean minutes");
  synth_cmd->add_option("--skill-sigma", synth.skill_sigma, "skill spread");
  synth_cmd->add_option("--event-rate-scale", synth.event_rate_scale, "event intensity");
  synth_cmd->add_option("--out", synth.out, "output directory");

  FetchArgs fetch;
  auto* fetch_cmd = app.add_subcommand("fetch", "fetch timelines over HTTP");
  fetch_cmd->add_option("--mock-server-url", fetch.url, "service base url");
  fetch_cmd->add_option("--api-key", fetch.api_key, "credential header value");
  fetch_cmd->add_option("--tier", fetch.tier, "tier range filter");
  fetch_cmd->add_option("--start", fetch.start, "id list offset");
  fetch_cmd->add_option("--count", fetch.count, "max ids")->check(CLI::PositiveNumber);
  fetch_cmd->add_option("--out", fetch.out, "output directory");

  BuildArgs build;
  auto* build_cmd = app.add_subcommand("build", "build the dataset CSV");
  build_cmd->add_option("--data-dir", build.data_dir, "timeline JSON directory");
  build_cmd->add_option("--pets", build.pets, "pet levels, ascending")->delimiter(',');
  build_cmd->add_option("--out", build.out, "dataset CSV path");

  AnalyzeArgs analyze;
  auto* analyze_cmd = app.add_subcommand("analyze", "correlation reports");
  analyze_cmd->add_option("--dataset", analyze.dataset, "dataset CSV");
  analyze_cmd->add_option("--out", analyze.out, "report directory");

  TrainArgs train;
  auto* train_cmd = app.add_subcommand("train", "fit one model");
  train_cmd->add_option("--dataset", train.dataset, "dataset CSV");
  train_cmd
      ->add_option("--preset", train.preset, "learner preset")
      ->check(CLI::IsMember({"logistic", "nb", "cart", "bagging", "rf", "gb", "xgb-style",
                             "lgbm-style", "mlp"}));
  train_cmd->add_option("--pet", train.pet, "train on one pet only");
  train_cmd->add_option("--seed", train.seed, "rng seed");
  train_cmd->add_option("--out", train.out, "model file");

  EvaluateArgs evaluate;
  auto* evaluate_cmd = app.add_subcommand("evaluate", "cross-validated metrics matrix");
  evaluate_cmd->add_option("--dataset", evaluate.dataset, "dataset CSV");
  evaluate_cmd->add_option("--preset", evaluate.presets,
                           "presets to compare (default: the full suite)");
  evaluate_cmd->add_option("--pets", evaluate.pets, "pet levels")->delimiter(',');
  evaluate_cmd->add_option("--k", evaluate.k, "folds")->check(CLI::Range(2, 100));
  evaluate_cmd->add_option("--seed", evaluate.seed, "rng seed");
  evaluate_cmd->add_option("--out", evaluate.out, "report directory");

  TuneArgs tune;
  auto* tune_cmd = app.add_subcommand("tune", "random hyperparameter search");
  tune_cmd->add_option("--dataset", tune.dataset, "dataset CSV");
  tune_cmd->add_option("--family", tune.family, "gbdt or rf")
      ->check(CLI::IsMember({"gbdt", "rf", "bagging"}));
  tune_cmd->add_option("--pet", tune.pet, "pet level to tune at");
  tune_cmd->add_option("--n-iter", tune.n_iter, "trials")->check(CLI::PositiveNumber);
  tune_cmd->add_option("--k", tune.k, "folds")->check(CLI::Range(2, 100));
  tune_cmd->add_option("--seed", tune.seed, "rng seed");
  tune_cmd->add_option("--out", tune.out, "report directory");

  ReplayArgs replay;
  auto* replay_cmd = app.add_subcommand("replay", "minute-by-minute win probability");
  replay_cmd->add_option("--timeline", replay.timeline, "timeline JSON file")->required();
  replay_cmd->add_option("--route", replay.routes,
                         "routing entry BOUND:MODEL_FILE (repeatable, ascending)");
  replay_cmd->add_option("--model", replay.model, "single model for every stage");
  replay_cmd->add_option("--out", replay.out, "output file (default stdout)");

  ReportArgs report;
  auto* report_cmd = app.add_subcommand("report", "collate artifacts into one document");
  report_cmd->add_option("--in", report.in, "artifact directory");
  report_cmd->add_option("--out", report.out, "output markdown file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    print_error_record("USAGE", e.what());
    return 1;
  }

  try {
    if (synth_cmd->parsed()) return cmd_synth(synth);
    if (fetch_cmd->parsed()) return cmd_fetch(fetch);
    if (build_cmd->parsed()) return cmd_build(build);
    if (analyze_cmd->parsed()) return cmd_analyze(analyze);
    if (train_cmd->parsed()) return cmd_train(train);
    if (evaluate_cmd->parsed()) return cmd_evaluate(evaluate);
    if (tune_cmd->parsed()) return cmd_tune(tune);
    if (replay_cmd->parsed()) return cmd_replay(replay);
    if (report_cmd->parsed()) return cmd_report(report);
  } catch (const Error& e) {
    print_error_record(errc_name(e.code()), e.detail());
    return exit_code_for(e);
  } catch (const std::exception& e) {
    print_error_record("INTERNAL", e.what());
    return 3;
  }
  return 0;
}
