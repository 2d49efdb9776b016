// Copyright 2026 ESDD Toolkit Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#ifndef ESDD_CHECKPOINT_HPP
#define ESDD_CHECKPOINT_HPP

#include <string>

#include "esdd/autograd.hpp"

namespace esdd {

// Checkpoint layout (all integers little-endian):
//   bytes 0-3   magic "CKP1"
//   u32         number of arrays
//   per array:  u16 name length, name bytes,
//               u32 rows, u32 cols,
//               u64 byte offset into the data section
//   data:       float32 arrays, row-major
// Arrays appear in parameter registration order.
void save_checkpoint(const std::string& path, const ag::ParamStore& store);

// Loads into an existing store; every stored array must match a registered
// parameter by name and shape (throws DataError otherwise).
void load_checkpoint(const std::string& path, ag::ParamStore& store);

}  // namespace esdd

#endif  // ESDD_CHECKPOINT_HPP
