// Copyright 2026 ESDD Toolkit Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#ifndef ESDD_EVAL_HPP
#define ESDD_EVAL_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "esdd/config.hpp"
#include "esdd/manifest.hpp"
#include "esdd/model.hpp"

namespace esdd {

// One scored trial. Higher score = more bona fide.
struct TrialScore {
  std::string utt_id;
  std::optional<TrialLabel> label;
  double score = 0.0;
};

struct EerResult {
  double eer = 0.0;       // in [0, 1]
  double threshold = 0.0; // attains the minimum |FAR - FRR|
};

// Equal error rate with the documented convention:
//   - a trial is accepted (called bona fide) iff score >= threshold;
//   - operating points are the sorted unique scores plus an accept-nothing
//     sentinel, giving FAR (spoof accepted) and FRR (bona fide rejected)
//     step functions;
//   - EER is the exact crossing if some point has FAR == FRR, otherwise the
//     linear interpolation between the two points where FAR - FRR changes
//     sign.
// Requires at least one trial of each class and finite scores.
EerResult compute_eer(const std::vector<TrialScore>& trials);

// score(utt) = sum_j weights[j] * systems[j](utt). All systems must cover
// the identical utt_id set (missing ids are reported in the error). Labels
// are passed through from the first system. With minmax_normalize each
// system is first mapped to [0, 1] (constant systems map to 0).
std::vector<TrialScore> ensemble_scores(
    const std::vector<std::vector<TrialScore>>& systems,
    const std::vector<double>& weights, bool minmax_normalize = false);

// Deterministic inference over a manifest: fix_duration -> mel -> model
// score, no SpecAug, one TrialScore per row (manifest order).
std::vector<TrialScore> score_manifest(const Model& model,
                                       const std::vector<ManifestRow>& rows);

// ---- file formats ----------------------------------------------------------
// Score file:    `utt_id<TAB>score` ('.' decimal separator, LF endings).
// Protocol file: `utt_id<TAB>{bonafide|spoof}`.
// EER report:    single line `EER<TAB><percentage, 4 decimals>`.
void write_score_file(const std::string& path,
                      const std::vector<TrialScore>& trials);
std::vector<TrialScore> read_score_file(const std::string& path);
void write_protocol_file(const std::string& path,
                         const std::vector<TrialScore>& trials);
std::map<std::string, TrialLabel> read_protocol_file(const std::string& path);

// Attaches protocol labels to scores; errors on ids missing from either side.
std::vector<TrialScore> join_protocol(
    const std::vector<TrialScore>& scores,
    const std::map<std::string, TrialLabel>& protocol);

std::string format_eer_report(double eer);

}  // namespace esdd

#endif  // ESDD_EVAL_HPP
