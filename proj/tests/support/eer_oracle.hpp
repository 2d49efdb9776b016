// Copyright 2026 ESDD Toolkit Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)
//
// Brute-force EER oracle, written independently of esdd::compute_eer but
// following the same documented convention: accept iff score >= threshold,
// operating points from exhaustive midpoint thresholds, exact crossing if
// FAR == FRR at a point, otherwise linear interpolation across the sign
// change of FAR - FRR. Used only by tests.

#ifndef ESDD_TESTS_EER_ORACLE_HPP
#define ESDD_TESTS_EER_ORACLE_HPP

#include <algorithm>
#include <cmath>
#include <vector>

namespace esdd_test {

// labels: true = bonafide, false = spoof.
inline double eer_oracle(const std::vector<double>& scores,
                         const std::vector<bool>& labels) {
  // Candidate thresholds: one below every score, the midpoints between
  // consecutive distinct scores, and one above every score. Evaluating the
  // accept-iff->= rule at these thresholds enumerates every operating point.
  std::vector<double> uniq = scores;
  std::sort(uniq.begin(), uniq.end());
  uniq.erase(std::unique(uniq.begin(), uniq.end()), uniq.end());

  std::vector<double> cands;
  cands.push_back(uniq.front() - 1.0);
  for (size_t i = 0; i + 1 < uniq.size(); ++i)
    cands.push_back(0.5 * (uniq[i] + uniq[i + 1]));
  cands.push_back(uniq.back() + 1.0);

  size_t n_bona = 0, n_spoof = 0;
  for (bool b : labels) (b ? n_bona : n_spoof)++;

  std::vector<double> fars, frrs;
  for (double t : cands) {
    size_t spoof_accepted = 0, bona_rejected = 0;
    for (size_t i = 0; i < scores.size(); ++i) {
      bool accept = scores[i] >= t;
      if (!labels[i] && accept) ++spoof_accepted;
      if (labels[i] && !accept) ++bona_rejected;
    }
    fars.push_back(static_cast<double>(spoof_accepted) / n_spoof);
    frrs.push_back(static_cast<double>(bona_rejected) / n_bona);
  }

  for (size_t i = 0; i < fars.size(); ++i) {
    double d = fars[i] - frrs[i];
    if (d == 0.0) return fars[i];
    if (d < 0.0) {
      double dp = fars[i - 1] - frrs[i - 1];
      double lambda = dp / (dp - d);
      return fars[i - 1] + lambda * (fars[i] - fars[i - 1]);
    }
  }
  return 1.0;  // not reachable: accepting nothing gives FAR - FRR = -1
}

}  // namespace esdd_test

#endif  // ESDD_TESTS_EER_ORACLE_HPP
