// Pipeline driver: ingest -> fit -> sample / qq / grid / report.
// Exit codes: 0 success, 2 input or I/O error, 3 empty or degenerate data.

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "orient/diagnostics.hpp"
#include "orient/errors.hpp"
#include "orient/ingest.hpp"
#include "orient/io.hpp"
#include "orient/mixture.hpp"
#include "orient/report.hpp"
#include "orient/rng.hpp"
#include "orient/vmf.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitEmpty = 3;

struct Config {
  std::vector<std::string> inputs;
  std::string out;
  std::uint64_t seed = 0;
  std::optional<std::set<orient::UsageType>> subset;
  std::string taus_spec = "0.05:0.01:0.95";
  std::size_t grid_phi = 360;
  std::size_t grid_theta = 180;
  bool paper_compat = false;
  std::uint64_t n = 0;
};

std::vector<double> parse_taus(const std::string& spec) {
  double start = 0.0, step = 0.0, stop = 0.0;
  char colon1 = 0, colon2 = 0;
  std::istringstream in(spec);
  in >> start >> colon1 >> step >> colon2 >> stop;
  if (!in || colon1 != ':' || colon2 != ':' || step <= 0.0 || start <= 0.0 || stop >= 1.0 ||
      stop < start) {
    throw orient::FormatError("invalid tau grid spec (want start:step:stop in (0,1)): " + spec);
  }
  std::vector<double> taus;
  for (int i = 0;; ++i) {
    // round accumulated levels to 1e-9 so 0.05 + 0.01*i prints as 0.06, 0.07, ...
    const double tau = std::round((start + step * i) * 1e9) / 1e9;
    if (tau > stop + 1e-12) {
      break;
    }
    taus.push_back(tau);
  }
  return taus;
}

std::pair<std::size_t, std::size_t> parse_grid(const std::string& spec) {
  const auto x = spec.find('x');
  std::size_t n_phi = 0, n_theta = 0;
  if (x != std::string::npos) {
    const std::string a = spec.substr(0, x);
    const std::string b = spec.substr(x + 1);
    auto r1 = std::from_chars(a.data(), a.data() + a.size(), n_phi);
    auto r2 = std::from_chars(b.data(), b.data() + b.size(), n_theta);
    if (r1.ec == std::errc() && r2.ec == std::errc() && n_phi >= 2 && n_theta >= 2) {
      return {n_phi, n_theta};
    }
  }
  throw orient::FormatError("invalid grid spec (want PHIxTHETA, each >= 2): " + spec);
}

std::set<orient::UsageType> parse_subset(const std::string& spec) {
  std::set<orient::UsageType> subset;
  std::string item;
  std::istringstream in(spec);
  while (std::getline(in, item, ',')) {
    if (!item.empty()) {
      subset.insert(orient::UsageType::from_string(item));
    }
  }
  if (subset.empty()) {
    throw orient::FormatError("empty usage-type subset: " + spec);
  }
  return subset;
}

void apply_config_file(const std::string& path, Config& cfg) {
  const std::string text = orient::read_text(path);
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) {
    throw orient::FormatError("invalid config JSON: " + path);
  }
  if (j.contains("input")) {
    cfg.inputs.clear();
    if (j["input"].is_array()) {
      for (const auto& item : j["input"]) {
        cfg.inputs.push_back(item.get<std::string>());
      }
    } else {
      cfg.inputs.push_back(j["input"].get<std::string>());
    }
  }
  if (j.contains("out")) cfg.out = j["out"].get<std::string>();
  if (j.contains("seed")) cfg.seed = j["seed"].get<std::uint64_t>();
  if (j.contains("taus")) cfg.taus_spec = j["taus"].get<std::string>();
  if (j.contains("grid")) {
    const auto [p, t] = parse_grid(j["grid"].get<std::string>());
    cfg.grid_phi = p;
    cfg.grid_theta = t;
  }
  if (j.contains("subset")) {
    std::set<orient::UsageType> subset;
    for (const auto& item : j["subset"]) {
      subset.insert(orient::UsageType::from_string(item.get<std::string>()));
    }
    cfg.subset = std::move(subset);
  }
  if (j.contains("paper_compat")) cfg.paper_compat = j["paper_compat"].get<bool>();
  if (j.contains("n")) cfg.n = j["n"].get<std::uint64_t>();
}

json config_json(const Config& cfg, const std::string& command) {
  json subset = nullptr;
  if (cfg.subset) {
    subset = json::array();
    for (const orient::UsageType& u : *cfg.subset) {
      subset.push_back(u.str());
    }
  }
  return json{
      {"command", command},
      {"input", cfg.inputs},
      {"out", cfg.out},
      {"seed", cfg.seed},
      {"taus", cfg.taus_spec},
      {"grid", std::to_string(cfg.grid_phi) + "x" + std::to_string(cfg.grid_theta)},
      {"subset", subset},
      {"paper_compat", cfg.paper_compat},
      {"n", cfg.n},
  };
}

void write_manifest(const Config& cfg, const std::string& command,
                    const std::vector<std::string>& outputs, const json& skipped) {
  json manifest{
      {"config", config_json(cfg, command)},
      {"outputs", outputs},
      {"skipped", skipped},
      {"partial", !skipped.empty()},
  };
  orient::atomic_write_text(fs::path(cfg.out) / "manifest.json", manifest.dump(2) + "\n");
}

void ensure_out_dir(const Config& cfg) {
  if (cfg.out.empty()) {
    throw orient::FormatError("--out directory is required");
  }
  fs::create_directories(cfg.out);
}

// Sorted model/orientation files keyed by usage string.
std::map<std::string, fs::path> files_by_usage(const fs::path& dir, const std::string& prefix,
                                               const std::string& extension) {
  std::map<std::string, fs::path> found;
  if (!fs::is_directory(dir)) {
    throw orient::FormatError("not a directory: " + dir.string());
  }
  for (const auto& entry : fs::directory_iterator(dir)) {
    const std::string name = entry.path().filename().string();
    if (name.starts_with(prefix) && name.ends_with(extension)) {
      const std::string usage =
          name.substr(prefix.size(), name.size() - prefix.size() - extension.size());
      if (usage.size() == 4) {
        found[usage] = entry.path();
      }
    }
  }
  return found;
}

fs::path input_dir_or_out(const Config& cfg) {
  if (!cfg.inputs.empty()) {
    return cfg.inputs.front();
  }
  return cfg.out;
}

int cmd_ingest(const Config& cfg) {
  ensure_out_dir(cfg);
  if (cfg.inputs.empty()) {
    throw orient::FormatError("ingest: at least one --input CSV is required");
  }

  std::vector<orient::AccelSample> samples;
  std::string rejects_csv = "file,line,reason\n";
  std::size_t n_rejects = 0;
  for (const std::string& input : cfg.inputs) {
    std::ifstream in(input, std::ios::binary);
    if (!in) {
      throw orient::FormatError("cannot read input: " + input);
    }
    orient::ParseResult parsed = orient::parse_log(in);
    for (const orient::RejectedRow& r : parsed.rejects) {
      rejects_csv += input + "," + std::to_string(r.line) + ",\"" + r.reason + "\"\n";
      ++n_rejects;
    }
    samples.insert(samples.end(), parsed.samples.begin(), parsed.samples.end());
  }

  const auto buckets = orient::partition_by_usage(samples);
  json report = json::object();
  std::vector<std::string> outputs;
  std::size_t total_vectors = 0;
  for (const auto& [usage, bucket] : buckets) {
    orient::IqrFilterResult iqr;
    const orient::OrientationSet set = orient::process_bucket(usage, bucket, &iqr);
    total_vectors += set.vectors.size();
    const std::string filename = "orientations_" + usage.str() + ".csv";
    orient::write_orientations_csv(fs::path(cfg.out) / filename, set);
    outputs.push_back(filename);
    report[usage.str()] = json{
        {"n_raw", set.n_raw},
        {"n_after_iqr", set.n_after_iqr},
        {"n_after_dedup", set.n_after_dedup},
        {"n_zero_dropped", set.n_zero_dropped},
        {"iqr_passthrough", iqr.passthrough},
        {"iqr_fences", iqr.passthrough ? json(nullptr)
                                       : json{{"q1", iqr.q1},
                                              {"q3", iqr.q3},
                                              {"lower", iqr.lower_fence},
                                              {"upper", iqr.upper_fence}}},
    };
    if (set.vectors.size() <= 1) {
      std::cerr << "warning: usage " << usage.str() << " has " << set.vectors.size()
                << " surviving sample(s)\n";
    }
  }
  orient::atomic_write_text(fs::path(cfg.out) / "rejects.csv", rejects_csv);
  outputs.push_back("rejects.csv");
  json ingest_report{{"per_usage", report}, {"n_rejected_rows", n_rejects}};
  orient::atomic_write_text(fs::path(cfg.out) / "ingest_report.json",
                            ingest_report.dump(2) + "\n");
  outputs.push_back("ingest_report.json");
  write_manifest(cfg, "ingest", outputs, json::array());

  if (total_vectors == 0) {
    std::cerr << "error: no samples survived filtering\n";
    return kExitEmpty;
  }
  return kExitOk;
}

int cmd_fit(const Config& cfg) {
  ensure_out_dir(cfg);
  const fs::path dir = input_dir_or_out(cfg);
  const auto orientation_files = files_by_usage(dir, "orientations_", ".csv");
  if (orientation_files.empty()) {
    std::cerr << "error: no orientation files in " << dir << "\n";
    return kExitEmpty;
  }

  const orient::NewtonMode mode =
      cfg.paper_compat ? orient::NewtonMode::kTwoStep : orient::NewtonMode::kConverged;
  std::vector<orient::UsageFit> fits;
  std::vector<std::string> outputs;
  json skipped = json::array();
  for (const auto& [usage_str, path] : orientation_files) {
    const orient::UsageType usage = orient::UsageType::from_string(usage_str);
    const std::vector<orient::UnitVec3> vectors = orient::read_orientations_csv(path);
    try {
      const orient::FitReport fit = orient::fit_vmf(vectors, mode);
      const std::string filename = "model_" + usage_str + ".json";
      orient::write_fit_json(fs::path(cfg.out) / filename, usage, fit);
      outputs.push_back(filename);
      fits.push_back({usage, fit.params, fit.n});
    } catch (const std::exception& e) {
      std::cerr << "warning: skipping usage " << usage_str << ": " << e.what() << "\n";
      skipped.push_back(json{{"usage", usage_str}, {"reason", e.what()}});
    }
  }
  if (!fits.empty()) {
    const orient::MixtureModel mixture = orient::build_mixture(fits, cfg.subset);
    orient::write_mixture_json(fs::path(cfg.out) / "mixture.json", mixture);
    outputs.push_back("mixture.json");
  }
  write_manifest(cfg, "fit", outputs, skipped);
  if (fits.empty()) {
    std::cerr << "error: every usage type was degenerate\n";
    return kExitEmpty;
  }
  return kExitOk;
}

int cmd_sample(const Config& cfg) {
  ensure_out_dir(cfg);
  const fs::path model_path =
      cfg.inputs.empty() ? fs::path(cfg.out) / "mixture.json" : fs::path(cfg.inputs.front());
  const orient::MixtureModel model = orient::read_mixture_json(model_path);
  const auto samples = orient::sample_mixture(model, cfg.n, cfg.seed);
  orient::write_samples_csv(fs::path(cfg.out) / "samples.csv", samples);
  write_manifest(cfg, "sample", {"samples.csv"}, json::array());
  return kExitOk;
}

// Shared by qq/grid/report so `report` is exactly the union of the two.
struct StageResult {
  std::vector<std::string> outputs;
  json skipped = json::array();
  std::size_t produced = 0;
};

StageResult run_qq(const Config& cfg) {
  const fs::path dir = input_dir_or_out(cfg);
  const auto orientation_files = files_by_usage(dir, "orientations_", ".csv");
  const auto model_files = files_by_usage(dir, "model_", ".json");
  const std::vector<double> taus = parse_taus(cfg.taus_spec);

  StageResult result;
  for (const auto& [usage_str, model_path] : model_files) {
    if (cfg.subset && !cfg.subset->contains(orient::UsageType::from_string(usage_str))) {
      continue;
    }
    const auto orientation = orientation_files.find(usage_str);
    if (orientation == orientation_files.end()) {
      result.skipped.push_back(
          json{{"usage", usage_str}, {"reason", "no orientation file for model"}});
      continue;
    }
    try {
      const auto [usage, fit] = orient::read_fit_json(model_path);
      const std::vector<orient::UnitVec3> vectors =
          orient::read_orientations_csv(orientation->second);
      orient::QQOptions options;
      options.simulate_reference = cfg.paper_compat;
      options.seed = orient::RandomStream(cfg.seed).derive(usage.code()).seed();
      const orient::QQSeries series = orient::qq_series(vectors, fit.params, taus, options);
      const std::string filename = "qq_" + usage_str + ".csv";
      orient::write_qq_csv(fs::path(cfg.out) / filename, series);
      result.outputs.push_back(filename);
      ++result.produced;
    } catch (const std::exception& e) {
      result.skipped.push_back(json{{"usage", usage_str}, {"reason", e.what()}});
    }
  }
  return result;
}

StageResult run_grid(const Config& cfg) {
  const fs::path dir = input_dir_or_out(cfg);
  const auto model_files = files_by_usage(dir, "model_", ".json");

  StageResult result;
  for (const auto& [usage_str, model_path] : model_files) {
    if (cfg.subset && !cfg.subset->contains(orient::UsageType::from_string(usage_str))) {
      continue;
    }
    try {
      const auto [usage, fit] = orient::read_fit_json(model_path);
      const orient::DensityGrid grid =
          orient::density_grid(fit.params, cfg.grid_phi, cfg.grid_theta);
      const std::string filename = "grid_" + usage_str + ".csv";
      orient::write_grid_csv(fs::path(cfg.out) / filename, grid);
      result.outputs.push_back(filename);
      ++result.produced;
    } catch (const std::exception& e) {
      result.skipped.push_back(json{{"usage", usage_str}, {"reason", e.what()}});
    }
  }

  const fs::path mixture_path = dir / "mixture.json";
  if (fs::exists(mixture_path)) {
    orient::MixtureModel model = orient::read_mixture_json(mixture_path);
    if (cfg.subset) {
      std::vector<orient::UsageFit> fits;
      for (const orient::MixtureComponent& c : model.components()) {
        fits.push_back({c.usage, c.params, c.n_samples});
      }
      model = orient::build_mixture(fits, cfg.subset);  // renormalized subset
    }
    const orient::DensityGrid grid = orient::density_grid(model, cfg.grid_phi, cfg.grid_theta);
    orient::write_grid_csv(fs::path(cfg.out) / "grid_mixture.csv", grid);
    result.outputs.push_back("grid_mixture.csv");
    ++result.produced;
  }
  return result;
}

int cmd_qq(const Config& cfg) {
  ensure_out_dir(cfg);
  StageResult result = run_qq(cfg);
  write_manifest(cfg, "qq", result.outputs, result.skipped);
  if (result.produced == 0) {
    std::cerr << "error: no Q-Q series produced\n";
    return kExitEmpty;
  }
  return kExitOk;
}

int cmd_grid(const Config& cfg) {
  ensure_out_dir(cfg);
  StageResult result = run_grid(cfg);
  write_manifest(cfg, "grid", result.outputs, result.skipped);
  if (result.produced == 0) {
    std::cerr << "error: no density grids produced\n";
    return kExitEmpty;
  }
  return kExitOk;
}

int cmd_report(const Config& cfg) {
  ensure_out_dir(cfg);
  const fs::path dir = input_dir_or_out(cfg);
  const auto model_files = files_by_usage(dir, "model_", ".json");
  if (model_files.empty()) {
    std::cerr << "error: no fitted models in " << dir << "\n";
    return kExitEmpty;
  }

  StageResult qq = run_qq(cfg);
  StageResult grid = run_grid(cfg);
  std::vector<std::string> outputs = qq.outputs;
  outputs.insert(outputs.end(), grid.outputs.begin(), grid.outputs.end());
  json skipped = json::array();
  for (const auto& s : qq.skipped) skipped.push_back(s);
  for (const auto& s : grid.skipped) skipped.push_back(s);

  std::vector<std::pair<orient::UsageType, orient::FitReport>> fits;
  std::vector<orient::UsageType> usages;
  for (const auto& [usage_str, model_path] : model_files) {
    if (cfg.subset && !cfg.subset->contains(orient::UsageType::from_string(usage_str))) {
      continue;
    }
    try {
      fits.push_back(orient::read_fit_json(model_path));
      usages.push_back(fits.back().first);
    } catch (const std::exception& e) {
      skipped.push_back(json{{"usage", usage_str}, {"reason", e.what()}});
    }
  }
  if (!fits.empty()) {
    orient::write_summary_csv(fs::path(cfg.out) / "summary.csv", orient::phi_theta_summary(fits));
    outputs.push_back("summary.csv");
    orient::write_conditions_csv(fs::path(cfg.out) / "test_conditions.csv", usages);
    outputs.push_back("test_conditions.csv");
  }
  write_manifest(cfg, "report", outputs, skipped);
  if (fits.empty() || (qq.produced == 0 && grid.produced == 0)) {
    std::cerr << "error: no report artifacts produced\n";
    return kExitEmpty;
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Directional statistics of phone orientation from accelerometer logs"};
  app.require_subcommand(1);

  Config cfg;
  std::string config_path;
  std::string taus_flag;
  std::string grid_flag;
  std::string subset_flag;

  app.add_option("--config", config_path, "JSON config file; flags override its values");

  const auto add_common = [&](CLI::App* sub) {
    sub->add_option("--input", cfg.inputs, "input file(s) or directory");
    sub->add_option("--out", cfg.out, "output directory");
    sub->add_option("--seed", cfg.seed, "RNG seed (reproducibility contract)");
    sub->add_option("--subset", subset_flag, "usage-type subset, e.g. 0000,1000");
    sub->add_option("--taus", taus_flag, "tau grid start:step:stop");
    sub->add_option("--grid", grid_flag, "density grid PHIxTHETA");
    sub->add_flag("--paper-compat", cfg.paper_compat,
                  "two-step concentration solve and simulated Q-Q reference");
  };

  CLI::App* ingest = app.add_subcommand("ingest", "parse, filter and normalize logs");
  CLI::App* fit = app.add_subcommand("fit", "fit per-usage models and the mixture");
  CLI::App* sample = app.add_subcommand("sample", "draw labeled orientations from the mixture");
  CLI::App* qq = app.add_subcommand("qq", "Q-Q goodness-of-fit series");
  CLI::App* grid = app.add_subcommand("grid", "density grids with Mollweide coordinates");
  CLI::App* report = app.add_subcommand("report", "Q-Q, grids, summary and condition mapping");
  for (CLI::App* sub : {ingest, fit, sample, qq, grid, report}) {
    add_common(sub);
  }
  sample->add_option("--n", cfg.n, "number of draws");

  CLI11_PARSE(app, argc, argv);

  try {
    if (!config_path.empty()) {
      // flag values win over the config file
      Config file_cfg;
      apply_config_file(config_path, file_cfg);
      if (cfg.inputs.empty()) cfg.inputs = file_cfg.inputs;
      if (cfg.out.empty()) cfg.out = file_cfg.out;
      const CLI::App* sub = app.get_subcommands().front();
      if (sub->count("--seed") == 0) cfg.seed = file_cfg.seed;
      if (sub->count("--paper-compat") == 0) cfg.paper_compat = file_cfg.paper_compat;
      const CLI::Option* n_option = sub->get_option_no_throw("--n");
      if ((n_option == nullptr || n_option->count() == 0) && cfg.n == 0) cfg.n = file_cfg.n;
      if (taus_flag.empty()) cfg.taus_spec = file_cfg.taus_spec;
      if (grid_flag.empty()) {
        cfg.grid_phi = file_cfg.grid_phi;
        cfg.grid_theta = file_cfg.grid_theta;
      }
      if (subset_flag.empty()) cfg.subset = file_cfg.subset;
    }
    if (!taus_flag.empty()) cfg.taus_spec = taus_flag;
    if (!grid_flag.empty()) {
      const auto [p, t] = parse_grid(grid_flag);
      cfg.grid_phi = p;
      cfg.grid_theta = t;
    }
    if (!subset_flag.empty()) cfg.subset = parse_subset(subset_flag);
    parse_taus(cfg.taus_spec);  // validate early

    if (app.got_subcommand("ingest")) return cmd_ingest(cfg);
    if (app.got_subcommand("fit")) return cmd_fit(cfg);
    if (app.got_subcommand("sample")) return cmd_sample(cfg);
    if (app.got_subcommand("qq")) return cmd_qq(cfg);
    if (app.got_subcommand("grid")) return cmd_grid(cfg);
    if (app.got_subcommand("report")) return cmd_report(cfg);
  } catch (const orient::DataError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitEmpty;
  } catch (const orient::FormatError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const fs::filesystem_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }
  return kExitOk;
}
