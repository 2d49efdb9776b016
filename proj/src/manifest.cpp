// Copyright 2026 ESDD Toolkit Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "esdd/manifest.hpp"

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "esdd/error.hpp"

namespace esdd {

TrialLabel label_from_string(const std::string& s) {
  if (s == "bonafide") return TrialLabel::kBonafide;
  if (s == "spoof") return TrialLabel::kSpoof;
  throw DataError("label must be 'bonafide' or 'spoof', got '" + s + "'");
}

std::string to_string(TrialLabel l) {
  return l == TrialLabel::kBonafide ? "bonafide" : "spoof";
}

std::vector<ManifestRow> parse_manifest(const std::string& text) {
  std::vector<ManifestRow> rows;
  std::set<std::string> seen;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::vector<std::string> fields;
    size_t start = 0;
    while (true) {
      size_t tab = line.find('\t', start);
      if (tab == std::string::npos) {
        fields.push_back(line.substr(start));
        break;
      }
      fields.push_back(line.substr(start, tab - start));
      start = tab + 1;
    }
    if (fields.size() != 4)
      throw DataError("manifest line " + std::to_string(lineno) +
                      ": expected 4 tab-separated fields, got " +
                      std::to_string(fields.size()));
    ManifestRow row;
    row.utt_id = fields[0];
    row.path = fields[1];
    row.label = label_from_string(fields[2]);
    row.attack_tag = fields[3];
    if (row.utt_id.empty())
      throw DataError("manifest line " + std::to_string(lineno) +
                      ": empty utt_id");
    if (!seen.insert(row.utt_id).second)
      throw DataError("duplicate utt_id in manifest: " + row.utt_id);
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<ManifestRow> read_manifest(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw DataError("cannot open manifest: " + path);
  std::string text((std::istreambuf_iterator<char>(f)),
                   std::istreambuf_iterator<char>());
  try {
    return parse_manifest(text);
  } catch (const DataError& e) {
    throw DataError(path + ": " + e.what());
  }
}

std::string serialize_manifest(const std::vector<ManifestRow>& rows) {
  std::string out;
  for (const auto& r : rows) {
    out += r.utt_id;
    out += '\t';
    out += r.path;
    out += '\t';
    out += to_string(r.label);
    out += '\t';
    out += r.attack_tag;
    out += '\n';
  }
  return out;
}

void write_manifest(const std::string& path,
                    const std::vector<ManifestRow>& rows) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw DataError("cannot write manifest: " + path);
  std::string text = serialize_manifest(rows);
  f.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!f) throw DataError("short write to manifest: " + path);
}

std::vector<ManifestRow> resolve_manifest_paths(
    const std::vector<ManifestRow>& rows, const std::string& base_dir) {
  std::vector<ManifestRow> out = rows;
  for (auto& r : out) {
    std::filesystem::path p(r.path);
    if (p.is_relative()) r.path = (std::filesystem::path(base_dir) / p).string();
  }
  return out;
}

}  // namespace esdd
