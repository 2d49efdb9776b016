// Copyright 2026 ESDD Toolkit Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "esdd/train.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "esdd/audio.hpp"
#include "esdd/augment.hpp"
#include "esdd/error.hpp"
#include "esdd/eval.hpp"
#include "esdd/loss.hpp"
#include "esdd/optim.hpp"

namespace esdd {

namespace {

double now_s() {
  using clock = std::chrono::steady_clock;
  return std::chrono::duration<double>(clock::now().time_since_epoch()).count();
}

struct Sample {
  MelSpec mel;
  int label;  // kClassFake / kClassReal
};

std::vector<Sample> preload(const std::vector<ManifestRow>& rows,
                            const FrontendConfig& fe) {
  std::vector<Sample> out;
  out.reserve(rows.size());
  for (const auto& row : rows) {
    Waveform w;
    try {
      w = load_waveform(row.path);
    } catch (const DataError& e) {
      throw DataError("loading '" + row.utt_id + "': " + e.what());
    }
    Sample s;
    s.mel = mel_spectrogram(fix_duration(w, fe.duration_s), fe.mel);
    s.label =
        row.label == TrialLabel::kBonafide ? kClassReal : kClassFake;
    out.push_back(std::move(s));
  }
  return out;
}

}  // namespace

TrainResult train_model(Model& model, const std::vector<ManifestRow>& rows,
                        const std::vector<ManifestRow>* dev_rows,
                        const std::string& out_dir) {
  const ExperimentConfig& cfg = model.config();
  const TrainConfig& tc = cfg.training;

  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (!std::filesystem::is_directory(out_dir))
    throw DataError("cannot create training output directory: " + out_dir);

  RngStream rng = RngStream(cfg.seed).derive("train");

  std::vector<ManifestRow> train_rows = rows;
  if (tc.augment) {
    GriffinLimConfig gl;
    gl.iterations = cfg.augmentation.gl_iterations;
    GriffinLimResynthesizer resynth(gl);
    std::vector<const Resynthesizer*> rs{&resynth};
    RngStream aug_rng = rng.derive("augment");
    train_rows = augment_manifest(
        train_rows, rs, cfg.augmentation.ratio, aug_rng,
        (std::filesystem::path(out_dir) / "aug").string(), cfg.frontend.mel);
  }

  bool has_fake = false, has_real = false;
  for (const auto& r : train_rows) {
    (r.label == TrialLabel::kBonafide ? has_real : has_fake) = true;
  }
  if (!has_fake || !has_real)
    throw DataError("training manifest must contain both classes");

  std::vector<Sample> samples = preload(train_rows, cfg.frontend);
  int n = static_cast<int>(samples.size());

  std::ofstream metrics(
      (std::filesystem::path(out_dir) / "metrics.tsv").string(),
      std::ios::trunc);
  if (!metrics) throw DataError("cannot write metrics.tsv in " + out_dir);
  std::ofstream dev_log;
  if (dev_rows) {
    dev_log.open((std::filesystem::path(out_dir) / "dev_eer.tsv").string(),
                 std::ios::trunc);
  }

  auto optimizer = make_optimizer(tc.optimizer, tc.lr);
  std::vector<int> order(n);
  for (int i = 0; i < n; ++i) order[i] = i;

  TrainResult result;
  double t0 = now_s();
  bool stop = false;
  for (int epoch = 1; epoch <= tc.epochs && !stop; ++epoch) {
    // Seeded Fisher-Yates shuffle.
    for (int i = n - 1; i > 0; --i) {
      int j = rng.uniform_int(0, i);
      std::swap(order[i], order[j]);
    }

    double loss_sum = 0.0;
    int correct = 0, seen = 0;
    for (int start = 0; start < n && !stop; start += tc.batch_size) {
      int bs = std::min(tc.batch_size, n - start);
      model.params().zero_grad();
      for (int b = 0; b < bs; ++b) {
        const Sample& s = samples[order[start + b]];
        MelSpec mel = s.mel;
        if (cfg.frontend.specaug)
          mel = spec_augment(mel, cfg.frontend.specaug_cfg, rng);

        ag::Graph g;
        Model::ForwardResult fwd = model.forward(g, mel);
        ag::Var loss = weighted_cross_entropy(g, fwd.logits, s.label,
                                              tc.class_weights);
        double lv = g.value(loss)(0, 0);
        if (!std::isfinite(lv))
          throw DataError("non-finite loss at epoch " + std::to_string(epoch) +
                          " step " + std::to_string(result.steps + 1) +
                          "; aborting");
        loss_sum += lv;
        const auto& lg = g.value(fwd.logits);
        int pred = lg(0, 1) > lg(0, 0) ? kClassReal : kClassFake;
        if (pred == s.label) ++correct;
        ++seen;
        g.backward(g.scale(loss, 1.0 / bs));
      }
      optimizer->step(model.params());
      ++result.steps;
      if (tc.max_steps > 0 && result.steps >= tc.max_steps) stop = true;
    }

    EpochMetrics em;
    em.epoch = epoch;
    em.train_loss = seen > 0 ? loss_sum / seen : 0.0;
    em.train_acc = seen > 0 ? static_cast<double>(correct) / seen : 0.0;
    em.wallclock_s = now_s() - t0;
    result.epochs.push_back(em);
    char line[160];
    std::snprintf(line, sizeof(line), "%d\t%.6f\t%.6f\t%.3f\n", em.epoch,
                  em.train_loss, em.train_acc, em.wallclock_s);
    metrics << line;
    metrics.flush();

    if (dev_rows) {
      EerResult dev = compute_eer(score_manifest(model, *dev_rows));
      char dline[64];
      std::snprintf(dline, sizeof(dline), "%d\t%.6f\n", epoch, dev.eer);
      dev_log << dline;
      dev_log.flush();
    }

    if (epoch % tc.checkpoint_every == 0) {
      char name[64];
      std::snprintf(name, sizeof(name), "ckpt_epoch%03d.bin", epoch);
      model.save((std::filesystem::path(out_dir) / name).string());
    }
    if (tc.target_loss > 0.0 && em.train_loss < tc.target_loss &&
        em.train_acc >= 1.0)
      stop = true;
  }

  result.final_checkpoint =
      (std::filesystem::path(out_dir) / "final.bin").string();
  model.save(result.final_checkpoint);
  return result;
}

}  // namespace esdd
