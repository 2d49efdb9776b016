// Copyright 2026 ESDD Toolkit Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "esdd/augment.hpp"

#include <cmath>
#include <filesystem>

#include "esdd/error.hpp"

namespace esdd {

std::vector<ManifestRow> augment_manifest(
    const std::vector<ManifestRow>& rows,
    const std::vector<const Resynthesizer*>& resynths, double ratio,
    RngStream& rng, const std::string& out_dir, const MelConfig& mel_cfg) {
  if (resynths.empty()) throw ConfigError("augment: no resynthesizers given");
  if (ratio < 0.0 || ratio > 1.0)
    throw ConfigError("augment: ratio must be in [0, 1]");

  std::vector<size_t> bona_idx;
  for (size_t i = 0; i < rows.size(); ++i)
    if (rows[i].label == TrialLabel::kBonafide) bona_idx.push_back(i);

  size_t n_aug = static_cast<size_t>(std::llround(ratio * bona_idx.size()));
  std::vector<ManifestRow> out = rows;
  if (n_aug == 0) return out;

  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (!std::filesystem::is_directory(out_dir))
    throw DataError("augment: cannot create output directory: " + out_dir);

  // Seeded partial Fisher-Yates; the first n_aug entries are the sample.
  for (size_t i = 0; i + 1 < bona_idx.size() && i < n_aug; ++i) {
    size_t j = i + rng.uniform_int(0, static_cast<int>(bona_idx.size() - 1 - i));
    std::swap(bona_idx[i], bona_idx[j]);
  }

  for (size_t i = 0; i < n_aug; ++i) {
    const ManifestRow& src = rows[bona_idx[i]];
    const Resynthesizer* r = resynths[i % resynths.size()];
    ManifestRow aug;
    aug.utt_id = src.utt_id + "_" + r->name();
    aug.label = TrialLabel::kSpoof;
    aug.attack_tag = r->name();
    aug.path =
        (std::filesystem::path(out_dir) / (aug.utt_id + ".wav")).string();
    try {
      Waveform fake = copy_synthesis(load_waveform(src.path), *r, mel_cfg);
      save_waveform(aug.path, fake);
    } catch (const DataError& e) {
      throw DataError("augmenting '" + src.utt_id + "': " + e.what());
    }
    out.push_back(std::move(aug));
  }
  return out;
}

}  // namespace esdd
