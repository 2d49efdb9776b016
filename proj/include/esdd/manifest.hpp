// Copyright 2026 ESDD Toolkit Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#ifndef ESDD_MANIFEST_HPP
#define ESDD_MANIFEST_HPP

#include <string>
#include <vector>

namespace esdd {

enum class TrialLabel { kBonafide, kSpoof };

TrialLabel label_from_string(const std::string& s);  // throws DataError
std::string to_string(TrialLabel l);

// One dataset row: `utt_id<TAB>path<TAB>label<TAB>attack_tag`, attack_tag is
// "-" for bona fide. Paths are stored verbatim; use resolve_manifest_paths
// to make relative paths absolute against the manifest location. Audio
// existence is validated lazily, when a file is actually opened.
struct ManifestRow {
  std::string utt_id;
  std::string path;
  TrialLabel label = TrialLabel::kBonafide;
  std::string attack_tag = "-";

  bool operator==(const ManifestRow&) const = default;
};

std::vector<ManifestRow> read_manifest(const std::string& path);
std::vector<ManifestRow> parse_manifest(const std::string& text);
void write_manifest(const std::string& path,
                    const std::vector<ManifestRow>& rows);
std::string serialize_manifest(const std::vector<ManifestRow>& rows);

// Rewrites relative row paths as base_dir/path.
std::vector<ManifestRow> resolve_manifest_paths(
    const std::vector<ManifestRow>& rows, const std::string& base_dir);

}  // namespace esdd

#endif  // ESDD_MANIFEST_HPP
