// Copyright 2026 ESDD Toolkit Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "esdd/eval.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "esdd/audio.hpp"
#include "esdd/error.hpp"

namespace esdd {

EerResult compute_eer(const std::vector<TrialScore>& trials) {
  std::vector<double> bona, spoof, all;
  for (const auto& t : trials) {
    if (!t.label)
      throw DataError("compute_eer: trial '" + t.utt_id + "' has no label");
    if (!std::isfinite(t.score))
      throw DataError("compute_eer: non-finite score for '" + t.utt_id + "'");
    (t.label == TrialLabel::kBonafide ? bona : spoof).push_back(t.score);
    all.push_back(t.score);
  }
  if (bona.empty() || spoof.empty())
    throw DataError("compute_eer: need at least one bonafide and one spoof "
                    "trial");

  std::sort(bona.begin(), bona.end());
  std::sort(spoof.begin(), spoof.end());
  std::sort(all.begin(), all.end());
  all.erase(std::unique(all.begin(), all.end()), all.end());

  double nb = static_cast<double>(bona.size());
  double ns = static_cast<double>(spoof.size());

  // Operating points at every unique score (accept iff score >= t), plus an
  // accept-nothing sentinel at the end.
  int m = static_cast<int>(all.size());
  std::vector<double> far(m + 1), frr(m + 1);
  for (int i = 0; i < m; ++i) {
    double t = all[i];
    auto spoof_ge = spoof.end() - std::lower_bound(spoof.begin(), spoof.end(), t);
    auto bona_lt = std::lower_bound(bona.begin(), bona.end(), t) - bona.begin();
    far[i] = static_cast<double>(spoof_ge) / ns;
    frr[i] = static_cast<double>(bona_lt) / nb;
  }
  far[m] = 0.0;
  frr[m] = 1.0;

  // Threshold attaining the minimum |FAR - FRR| among the real thresholds.
  int best = 0;
  for (int i = 1; i < m; ++i) {
    if (std::abs(far[i] - frr[i]) < std::abs(far[best] - frr[best])) best = i;
  }

  EerResult res;
  res.threshold = all[best];

  // Exact crossing if it exists, else interpolate where FAR-FRR flips sign.
  for (int i = 0; i <= m; ++i) {
    double d = far[i] - frr[i];
    if (d == 0.0) {
      res.eer = far[i];
      return res;
    }
    if (d < 0.0) {
      double dp = far[i - 1] - frr[i - 1];  // i >= 1: d starts at +1
      double lambda = dp / (dp - d);
      res.eer = far[i - 1] + lambda * (far[i] - far[i - 1]);
      return res;
    }
  }
  // Unreachable: the sentinel has FAR - FRR = -1.
  throw std::logic_error("compute_eer: no crossing found");
}

std::vector<TrialScore> ensemble_scores(
    const std::vector<std::vector<TrialScore>>& systems,
    const std::vector<double>& weights, bool minmax_normalize) {
  if (systems.empty()) throw DataError("ensemble: no systems given");
  if (systems.size() != weights.size())
    throw ConfigError("ensemble: " + std::to_string(systems.size()) +
                      " systems but " + std::to_string(weights.size()) +
                      " weights");

  std::vector<std::map<std::string, double>> maps(systems.size());
  for (size_t j = 0; j < systems.size(); ++j) {
    double lo = 0.0, hi = 0.0;
    if (minmax_normalize && !systems[j].empty()) {
      lo = hi = systems[j][0].score;
      for (const auto& t : systems[j]) {
        lo = std::min(lo, t.score);
        hi = std::max(hi, t.score);
      }
    }
    for (const auto& t : systems[j]) {
      double s = t.score;
      if (minmax_normalize) s = hi > lo ? (s - lo) / (hi - lo) : 0.0;
      if (!maps[j].emplace(t.utt_id, s).second)
        throw DataError("ensemble: duplicate utt_id '" + t.utt_id +
                        "' in system " + std::to_string(j + 1));
    }
  }

  // All systems must cover the identical utterance set.
  for (size_t j = 1; j < maps.size(); ++j) {
    std::vector<std::string> missing;
    for (const auto& [id, _] : maps[0])
      if (!maps[j].count(id)) missing.push_back(id);
    for (const auto& [id, _] : maps[j])
      if (!maps[0].count(id)) missing.push_back(id);
    if (!missing.empty()) {
      std::string list;
      for (size_t i = 0; i < missing.size() && i < 8; ++i)
        list += (i ? ", " : "") + missing[i];
      if (missing.size() > 8) list += ", ...";
      throw DataError("ensemble: systems 1 and " + std::to_string(j + 1) +
                      " disagree on utterances: " + list);
    }
  }

  std::vector<TrialScore> out;
  out.reserve(systems[0].size());
  for (const auto& t : systems[0]) {
    TrialScore e;
    e.utt_id = t.utt_id;
    e.label = t.label;
    e.score = 0.0;
    for (size_t j = 0; j < maps.size(); ++j)
      e.score += weights[j] * maps[j].at(t.utt_id);
    out.push_back(std::move(e));
  }
  return out;
}

std::vector<TrialScore> score_manifest(const Model& model,
                                       const std::vector<ManifestRow>& rows) {
  const FrontendConfig& fe = model.config().frontend;
  std::vector<TrialScore> out;
  out.reserve(rows.size());
  for (const auto& row : rows) {
    Waveform w;
    try {
      w = load_waveform(row.path);
    } catch (const DataError& e) {
      throw DataError("scoring '" + row.utt_id + "': " + e.what());
    }
    MelSpec mel =
        mel_spectrogram(fix_duration(w, fe.duration_s), fe.mel);
    TrialScore t;
    t.utt_id = row.utt_id;
    t.label = row.label;
    t.score = model.score(mel);
    out.push_back(std::move(t));
  }
  return out;
}

namespace {

std::string format_score(double s) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", s);
  return buf;
}

}  // namespace

void write_score_file(const std::string& path,
                      const std::vector<TrialScore>& trials) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw DataError("cannot write score file: " + path);
  for (const auto& t : trials)
    f << t.utt_id << '\t' << format_score(t.score) << '\n';
  if (!f) throw DataError("short write to score file: " + path);
}

std::vector<TrialScore> read_score_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw DataError("cannot open score file: " + path);
  std::vector<TrialScore> out;
  std::string line;
  int lineno = 0;
  while (std::getline(f, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    size_t tab = line.find('\t');
    if (tab == std::string::npos)
      throw DataError(path + " line " + std::to_string(lineno) +
                      ": expected `utt_id<TAB>score`");
    TrialScore t;
    t.utt_id = line.substr(0, tab);
    std::string v = line.substr(tab + 1);
    try {
      size_t pos = 0;
      t.score = std::stod(v, &pos);
      if (pos != v.size()) throw std::invalid_argument(v);
    } catch (const std::exception&) {
      throw DataError(path + " line " + std::to_string(lineno) +
                      ": bad score '" + v + "'");
    }
    out.push_back(std::move(t));
  }
  return out;
}

void write_protocol_file(const std::string& path,
                         const std::vector<TrialScore>& trials) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw DataError("cannot write protocol file: " + path);
  for (const auto& t : trials) {
    if (!t.label)
      throw DataError("write_protocol_file: '" + t.utt_id + "' has no label");
    f << t.utt_id << '\t' << to_string(*t.label) << '\n';
  }
  if (!f) throw DataError("short write to protocol file: " + path);
}

std::map<std::string, TrialLabel> read_protocol_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw DataError("cannot open protocol file: " + path);
  std::map<std::string, TrialLabel> out;
  std::string line;
  int lineno = 0;
  while (std::getline(f, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    size_t tab = line.find('\t');
    if (tab == std::string::npos)
      throw DataError(path + " line " + std::to_string(lineno) +
                      ": expected `utt_id<TAB>label`");
    std::string id = line.substr(0, tab);
    TrialLabel label = label_from_string(line.substr(tab + 1));
    if (!out.emplace(id, label).second)
      throw DataError(path + ": duplicate utt_id '" + id + "'");
  }
  return out;
}

std::vector<TrialScore> join_protocol(
    const std::vector<TrialScore>& scores,
    const std::map<std::string, TrialLabel>& protocol) {
  std::set<std::string> scored;
  std::vector<TrialScore> out;
  out.reserve(scores.size());
  for (const auto& s : scores) {
    auto it = protocol.find(s.utt_id);
    if (it == protocol.end())
      throw DataError("utt_id '" + s.utt_id + "' is scored but missing from "
                      "the protocol");
    TrialScore t = s;
    t.label = it->second;
    out.push_back(std::move(t));
    scored.insert(s.utt_id);
  }
  for (const auto& [id, _] : protocol) {
    if (!scored.count(id))
      throw DataError("utt_id '" + id + "' is in the protocol but has no "
                      "score");
  }
  return out;
}

std::string format_eer_report(double eer) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "EER\t%.4f", eer * 100.0);
  return buf;
}

}  // namespace esdd
