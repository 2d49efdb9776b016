// Copyright 2026 ESDD Toolkit Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)
//
// Command-line front-end: dataset generation, copy-synthesis augmentation,
// training, scoring, EER computation and score-level ensembling.
// Exit codes: 0 success, 1 usage/config error, 2 data error.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "esdd/augment.hpp"
#include "esdd/config.hpp"
#include "esdd/error.hpp"
#include "esdd/eval.hpp"
#include "esdd/manifest.hpp"
#include "esdd/model.hpp"
#include "esdd/synth.hpp"
#include "esdd/train.hpp"

namespace {

using namespace esdd;

std::vector<std::string> split_commas(const std::string& s) {
  std::vector<std::string> out;
  size_t start = 0;
  while (true) {
    size_t comma = s.find(',', start);
    if (comma == std::string::npos) {
      out.push_back(s.substr(start));
      return out;
    }
    out.push_back(s.substr(start, comma - start));
    start = comma + 1;
  }
}

std::vector<ManifestRow> load_resolved_manifest(const std::string& path) {
  auto rows = read_manifest(path);
  return resolve_manifest_paths(
      rows, std::filesystem::path(path).parent_path().string());
}

int run_gen_data(const std::string& out_dir, int n, uint64_t seed,
                 const std::string& config_path, int gl_iterations) {
  ExperimentConfig cfg =
      config_path.empty() ? desk_preset() : load_config(config_path);
  cfg.validate();
  auto rows =
      generate_synthetic_dataset(n, cfg.frontend, gl_iterations, seed, out_dir);
  int bona = 0;
  for (const auto& r : rows)
    if (r.label == TrialLabel::kBonafide) ++bona;
  std::cout << "wrote " << rows.size() << " utterances (" << bona
            << " bonafide) to " << out_dir << "\n";
  return 0;
}

int run_augment(const std::string& manifest_path, const std::string& out_dir,
                const std::string& config_path, double ratio, uint64_t seed) {
  ExperimentConfig cfg =
      config_path.empty() ? desk_preset() : load_config(config_path);
  cfg.validate();
  auto rows = load_resolved_manifest(manifest_path);
  GriffinLimConfig gl;
  gl.iterations = cfg.augmentation.gl_iterations;
  GriffinLimResynthesizer resynth(gl);
  std::vector<const Resynthesizer*> rs{&resynth};
  RngStream rng = RngStream(seed).derive("augment");
  auto augmented =
      augment_manifest(rows, rs, ratio >= 0.0 ? ratio : cfg.augmentation.ratio,
                       rng, out_dir, cfg.frontend.mel);
  std::string out_manifest =
      (std::filesystem::path(out_dir) / "manifest.tsv").string();
  write_manifest(out_manifest, augmented);
  std::cout << "wrote " << augmented.size() - rows.size()
            << " augmented rows; manifest: " << out_manifest << "\n";
  return 0;
}

int run_train(const std::string& config_path, const std::string& manifest_path,
              const std::string& dev_path, const std::string& out_dir) {
  ExperimentConfig cfg = load_config(config_path);
  cfg.validate();
  auto rows = load_resolved_manifest(manifest_path);
  std::optional<std::vector<ManifestRow>> dev;
  if (!dev_path.empty()) dev = load_resolved_manifest(dev_path);

  Model model(cfg);
  TrainResult res =
      train_model(model, rows, dev ? &*dev : nullptr, out_dir);
  const EpochMetrics& last = res.epochs.back();
  std::cout << "trained " << res.epochs.size() << " epochs (" << res.steps
            << " steps), final loss " << last.train_loss << ", acc "
            << last.train_acc << "\n"
            << "checkpoint: " << res.final_checkpoint << "\n";
  return 0;
}

int run_score(const std::string& config_path, const std::string& ckpt_path,
              const std::string& manifest_path, const std::string& out_path) {
  ExperimentConfig cfg = load_config(config_path);
  cfg.validate();
  auto rows = load_resolved_manifest(manifest_path);
  Model model(cfg);
  model.load(ckpt_path);
  if (rows.empty())
    std::cerr << "warning: empty manifest, writing an empty score file\n";
  auto scores = score_manifest(model, rows);
  write_score_file(out_path, scores);
  std::cout << "wrote " << scores.size() << " scores to " << out_path << "\n";
  return 0;
}

int run_eer(const std::string& scores_path, const std::string& protocol_path,
            const std::string& out_path) {
  auto scores = read_score_file(scores_path);
  auto protocol = read_protocol_file(protocol_path);
  EerResult r = compute_eer(join_protocol(scores, protocol));
  std::string report = format_eer_report(r.eer);
  std::cout << report << "\n";
  if (!out_path.empty()) {
    std::ofstream f(out_path, std::ios::trunc);
    if (!f) throw DataError("cannot write report: " + out_path);
    f << report << "\n";
  }
  return 0;
}

int run_ensemble(const std::string& scores_arg, const std::string& weights_arg,
                 const std::string& out_path, bool normalize) {
  std::vector<std::string> paths = split_commas(scores_arg);
  std::vector<std::string> wstrs = split_commas(weights_arg);
  if (paths.size() != wstrs.size())
    throw ConfigError("ensemble: got " + std::to_string(paths.size()) +
                      " score files but " + std::to_string(wstrs.size()) +
                      " weights");
  std::vector<double> weights;
  double wsum = 0.0;
  for (const auto& w : wstrs) {
    try {
      size_t pos = 0;
      weights.push_back(std::stod(w, &pos));
      if (pos != w.size()) throw std::invalid_argument(w);
    } catch (const std::exception&) {
      throw ConfigError("ensemble: bad weight '" + w + "'");
    }
    wsum += weights.back();
  }
  if (std::abs(wsum - 1.0) > 1e-9)
    std::cerr << "warning: ensemble weights sum to " << wsum
              << " (EER is scale-invariant, proceeding)\n";
  std::vector<std::vector<TrialScore>> systems;
  for (const auto& p : paths) systems.push_back(read_score_file(p));
  auto combined = ensemble_scores(systems, weights, normalize);
  write_score_file(out_path, combined);
  std::cout << "wrote " << combined.size() << " ensembled scores to "
            << out_path << "\n";
  return 0;
}

int run_inspect_config(const std::string& config_path) {
  ExperimentConfig cfg = load_config(config_path);
  cfg.validate();
  GridMeta g = cfg.grid();
  std::cout << serialize_config(cfg);
  std::cout << "# derived: frames = " << cfg.frontend.frames()
            << ", grid = " << g.h << "x" << g.w
            << ", tokens = " << g.tokens() << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"environmental-sound deepfake detection toolkit"};
  app.require_subcommand(1);

  std::string out_dir, config_path, manifest_path, dev_path, ckpt_path;
  std::string scores_arg, weights_arg, protocol_path, out_path;
  int n = 16;
  int gl_iterations = 6;
  uint64_t seed = 42;
  double ratio = -1.0;
  bool normalize = false;

  auto* gen = app.add_subcommand("gen-data", "generate a synthetic dataset");
  gen->add_option("--out", out_dir, "output directory")->required();
  gen->add_option("--n", n, "number of bona fide utterances");
  gen->add_option("--seed", seed, "generation seed");
  gen->add_option("--config", config_path, "experiment config file");
  gen->add_option("--gl-iterations", gl_iterations,
                  "Griffin-Lim iterations for the spoof half");

  auto* aug = app.add_subcommand("augment", "copy-synthesis augmentation");
  aug->add_option("--manifest", manifest_path, "input manifest")->required();
  aug->add_option("--out", out_dir, "output directory")->required();
  aug->add_option("--config", config_path, "experiment config file");
  aug->add_option("--ratio", ratio, "fraction of bona fide rows to augment");
  aug->add_option("--seed", seed, "sampling seed");

  auto* train = app.add_subcommand("train", "train a detector");
  train->add_option("--config", config_path, "experiment config file")
      ->required();
  train->add_option("--manifest", manifest_path, "training manifest")
      ->required();
  train->add_option("--dev", dev_path, "optional dev manifest");
  train->add_option("--out", out_dir, "output directory")->required();

  auto* score = app.add_subcommand("score", "score a manifest");
  score->add_option("--config", config_path, "experiment config file")
      ->required();
  score->add_option("--checkpoint", ckpt_path, "model checkpoint")->required();
  score->add_option("--manifest", manifest_path, "manifest to score")
      ->required();
  score->add_option("--out", out_path, "output score file")->required();

  auto* eer = app.add_subcommand("eer", "compute the equal error rate");
  eer->add_option("--scores", scores_arg, "score file")->required();
  eer->add_option("--protocol", protocol_path, "protocol file")->required();
  eer->add_option("--out", out_path, "optional report file");

  auto* ens = app.add_subcommand("ensemble", "weighted score-level ensemble");
  ens->add_option("--scores", scores_arg, "comma-separated score files")
      ->required();
  ens->add_option("--weights", weights_arg, "comma-separated weights")
      ->required();
  ens->add_option("--out", out_path, "output score file")->required();
  ens->add_flag("--normalize", normalize, "min-max normalize each system");

  auto* inspect =
      app.add_subcommand("inspect-config", "validate and print a config");
  inspect->add_option("--config", config_path, "experiment config file")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (gen->parsed())
      return run_gen_data(out_dir, n, seed, config_path, gl_iterations);
    if (aug->parsed())
      return run_augment(manifest_path, out_dir, config_path, ratio, seed);
    if (train->parsed())
      return run_train(config_path, manifest_path, dev_path, out_dir);
    if (score->parsed())
      return run_score(config_path, ckpt_path, manifest_path, out_path);
    if (eer->parsed()) return run_eer(scores_arg, protocol_path, out_path);
    if (ens->parsed())
      return run_ensemble(scores_arg, weights_arg, out_path, normalize);
    if (inspect->parsed()) return run_inspect_config(config_path);
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const DataError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 1;
}
