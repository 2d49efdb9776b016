// Copyright 2026 ESDD Toolkit Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#ifndef ESDD_AUGMENT_HPP
#define ESDD_AUGMENT_HPP

#include <string>
#include <vector>

#include "esdd/manifest.hpp"
#include "esdd/mel.hpp"
#include "esdd/rng.hpp"
#include "esdd/vocoder.hpp"

namespace esdd {

// Copy-synthesizes a seeded `ratio` fraction of the bona fide rows through
// the given resynthesizers (round-robin in sampling order) and appends the
// results as spoof rows tagged with the resynthesizer name. Original rows
// are returned untouched; synthesized audio is written into out_dir and the
// appended paths point there. Row paths must already be resolved.
std::vector<ManifestRow> augment_manifest(
    const std::vector<ManifestRow>& rows,
    const std::vector<const Resynthesizer*>& resynths, double ratio,
    RngStream& rng, const std::string& out_dir, const MelConfig& mel_cfg);

}  // namespace esdd

#endif  // ESDD_AUGMENT_HPP
