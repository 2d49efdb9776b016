// Copyright 2026 ESDD Toolkit Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#ifndef ESDD_SYNTH_HPP
#define ESDD_SYNTH_HPP

#include <string>
#include <vector>

#include "esdd/config.hpp"
#include "esdd/manifest.hpp"

namespace esdd {

// Writes n_bonafide synthetic environmental-sound proxies (seeded mixtures
// of 2-4 sinusoids plus band-limited noise) and one Griffin-Lim
// copy-synthesis spoof per bona fide utterance (attack tag "gl"), together
// with manifest.tsv and protocol.tsv, into out_dir. Returned rows carry
// paths relative to out_dir. Fully deterministic in (seed, cfg).
std::vector<ManifestRow> generate_synthetic_dataset(int n_bonafide,
                                                    const FrontendConfig& cfg,
                                                    int gl_iterations,
                                                    uint64_t seed,
                                                    const std::string& out_dir);

}  // namespace esdd

#endif  // ESDD_SYNTH_HPP
