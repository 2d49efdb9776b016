// Copyright 2026 ESDD Toolkit Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "esdd/synth.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>

#include "esdd/error.hpp"
#include "esdd/eval.hpp"
#include "esdd/rng.hpp"
#include "esdd/vocoder.hpp"

namespace esdd {

namespace {

Waveform synth_bonafide(int n_samples, int sample_rate, RngStream& rng) {
  Waveform w;
  w.sample_rate = sample_rate;
  w.samples.assign(n_samples, 0.0);

  int tones = rng.uniform_int(2, 4);
  for (int t = 0; t < tones; ++t) {
    double freq = rng.uniform(80.0, 3800.0);
    double amp = rng.uniform(0.08, 0.30);
    double phase = rng.uniform(0.0, 2.0 * M_PI);
    double omega = 2.0 * M_PI * freq / sample_rate;
    for (int i = 0; i < n_samples; ++i)
      w.samples[i] += amp * std::sin(omega * i + phase);
  }

  // Band-limited noise: moving-averaged white noise.
  int width = rng.uniform_int(2, 9);
  double noise_amp = rng.uniform(0.01, 0.04);
  std::vector<double> white(n_samples);
  for (int i = 0; i < n_samples; ++i) white[i] = rng.normal();
  for (int i = 0; i < n_samples; ++i) {
    double acc = 0.0;
    for (int k = 0; k < width; ++k) acc += white[(i + k) % n_samples];
    w.samples[i] += noise_amp * acc / width;
  }

  double peak = 0.0;
  for (double x : w.samples) peak = std::max(peak, std::abs(x));
  if (peak > 1e-9) {
    double gain = 0.7 / peak;
    for (double& x : w.samples) x *= gain;
  }
  return w;
}

}  // namespace

std::vector<ManifestRow> generate_synthetic_dataset(int n_bonafide,
                                                    const FrontendConfig& cfg,
                                                    int gl_iterations,
                                                    uint64_t seed,
                                                    const std::string& out_dir) {
  if (n_bonafide < 2)
    throw ConfigError("generate_synthetic_dataset: need n >= 2");
  cfg.mel.validate();
  if (gl_iterations < 1)
    throw ConfigError("generate_synthetic_dataset: gl_iterations must be >= 1");

  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (!std::filesystem::is_directory(out_dir))
    throw DataError("cannot create dataset directory: " + out_dir);

  RngStream root(seed);
  GriffinLimConfig gl;
  gl.iterations = gl_iterations;
  GriffinLimResynthesizer resynth(gl);

  int n_samples = cfg.target_samples();
  std::vector<ManifestRow> bona_rows, spoof_rows;
  for (int i = 0; i < n_bonafide; ++i) {
    char id[32];
    std::snprintf(id, sizeof(id), "synth_%04d", i);
    RngStream rng = root.derive(id);
    Waveform bona = synth_bonafide(n_samples, cfg.mel.sample_rate, rng);
    std::string bona_rel = std::string(id) + ".wav";
    save_waveform((std::filesystem::path(out_dir) / bona_rel).string(), bona);
    bona_rows.push_back(
        ManifestRow{id, bona_rel, TrialLabel::kBonafide, "-"});

    Waveform fake =
        fix_duration(copy_synthesis(bona, resynth, cfg.mel), cfg.duration_s);
    std::string fake_id = std::string(id) + "_gl";
    std::string fake_rel = fake_id + ".wav";
    save_waveform((std::filesystem::path(out_dir) / fake_rel).string(), fake);
    spoof_rows.push_back(
        ManifestRow{fake_id, fake_rel, TrialLabel::kSpoof, "gl"});
  }

  std::vector<ManifestRow> rows = bona_rows;
  rows.insert(rows.end(), spoof_rows.begin(), spoof_rows.end());
  write_manifest((std::filesystem::path(out_dir) / "manifest.tsv").string(),
                 rows);

  std::vector<TrialScore> protocol;
  for (const auto& r : rows)
    protocol.push_back(TrialScore{r.utt_id, r.label, 0.0});
  write_protocol_file(
      (std::filesystem::path(out_dir) / "protocol.tsv").string(), protocol);
  return rows;
}

}  // namespace esdd
