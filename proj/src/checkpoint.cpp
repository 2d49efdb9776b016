// Copyright 2026 ESDD Toolkit Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "esdd/checkpoint.hpp"

#include <cstdint>
#include <cstring>
#include <fstream>
#include <set>

#include "esdd/error.hpp"

namespace esdd {

namespace {

template <typename T>
void put_le(std::string& s, T v) {
  for (size_t i = 0; i < sizeof(T); ++i)
    s.push_back(static_cast<char>((static_cast<uint64_t>(v) >> (8 * i)) & 0xff));
}

template <typename T>
T get_le(const uint8_t*& p, const uint8_t* end, const std::string& path) {
  if (p + sizeof(T) > end) throw DataError("truncated checkpoint: " + path);
  uint64_t v = 0;
  for (size_t i = 0; i < sizeof(T); ++i)
    v |= static_cast<uint64_t>(p[i]) << (8 * i);
  p += sizeof(T);
  return static_cast<T>(v);
}

}  // namespace

void save_checkpoint(const std::string& path, const ag::ParamStore& store) {
  auto params = store.all();
  std::string header;
  std::string data;
  header += "CKP1";
  put_le<uint32_t>(header, static_cast<uint32_t>(params.size()));
  for (const ag::Parameter* p : params) {
    put_le<uint16_t>(header, static_cast<uint16_t>(p->name.size()));
    header += p->name;
    put_le<uint32_t>(header, static_cast<uint32_t>(p->value.rows()));
    put_le<uint32_t>(header, static_cast<uint32_t>(p->value.cols()));
    put_le<uint64_t>(header, static_cast<uint64_t>(data.size()));
    for (int r = 0; r < p->value.rows(); ++r) {
      for (int c = 0; c < p->value.cols(); ++c) {
        float f = static_cast<float>(p->value(r, c));
        char b[4];
        std::memcpy(b, &f, 4);
        data.append(b, 4);
      }
    }
  }
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw DataError("cannot write checkpoint: " + path);
  f.write(header.data(), static_cast<std::streamsize>(header.size()));
  f.write(data.data(), static_cast<std::streamsize>(data.size()));
  if (!f) throw DataError("short write to checkpoint: " + path);
}

void load_checkpoint(const std::string& path, ag::ParamStore& store) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw DataError("cannot open checkpoint: " + path);
  std::string bytes((std::istreambuf_iterator<char>(f)),
                    std::istreambuf_iterator<char>());
  const uint8_t* p = reinterpret_cast<const uint8_t*>(bytes.data());
  const uint8_t* end = p + bytes.size();
  if (bytes.size() < 8 || std::memcmp(p, "CKP1", 4) != 0)
    throw DataError("bad checkpoint magic in: " + path);
  p += 4;
  uint32_t n = get_le<uint32_t>(p, end, path);

  struct Entry {
    std::string name;
    uint32_t rows, cols;
    uint64_t offset;
  };
  std::vector<Entry> entries(n);
  for (uint32_t i = 0; i < n; ++i) {
    uint16_t len = get_le<uint16_t>(p, end, path);
    if (p + len > end) throw DataError("truncated checkpoint: " + path);
    entries[i].name.assign(reinterpret_cast<const char*>(p), len);
    p += len;
    entries[i].rows = get_le<uint32_t>(p, end, path);
    entries[i].cols = get_le<uint32_t>(p, end, path);
    entries[i].offset = get_le<uint64_t>(p, end, path);
  }
  const uint8_t* data = p;

  std::set<std::string> loaded;
  for (const Entry& e : entries) {
    if (!store.has(e.name))
      throw DataError("checkpoint array '" + e.name +
                      "' has no matching parameter (" + path + ")");
    ag::Parameter& prm = store.at(e.name);
    if (prm.value.rows() != static_cast<long>(e.rows) ||
        prm.value.cols() != static_cast<long>(e.cols))
      throw DataError("checkpoint array '" + e.name + "' has shape " +
                      std::to_string(e.rows) + "x" + std::to_string(e.cols) +
                      ", expected " + std::to_string(prm.value.rows()) + "x" +
                      std::to_string(prm.value.cols()) + " (" + path + ")");
    const uint8_t* src = data + e.offset;
    if (src + static_cast<uint64_t>(e.rows) * e.cols * 4 > end)
      throw DataError("truncated checkpoint data: " + path);
    for (uint32_t r = 0; r < e.rows; ++r) {
      for (uint32_t c = 0; c < e.cols; ++c) {
        float v;
        std::memcpy(&v, src + (static_cast<uint64_t>(r) * e.cols + c) * 4, 4);
        prm.value(r, c) = v;
      }
    }
    loaded.insert(e.name);
  }
  for (const ag::Parameter* prm : store.all()) {
    if (!loaded.count(prm->name))
      throw DataError("checkpoint is missing parameter '" + prm->name + "' (" +
                      path + ")");
  }
}

}  // namespace esdd
