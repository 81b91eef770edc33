//
// Project Coolant - Copyright 2026 Coolant Contributors.
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <cstdint>
#include <string>

#include "coolant/nn/tape.hpp"

namespace coolant::nn {

/// Versioned little-endian weight container, magic "CFW1":
///   magic[4] | u32 tensor count | per tensor: u32 name length, name bytes,
///   u64 rows, u64 cols, rows*cols f64 (column-major) |
/// Hyperparameters travel in a JSON sidecar at path + ".json".
/// Round trips are bit-exact.
void save_weights(const std::string& path, const ParamStore& params,
                  const std::string& hyper_json);

/// Loads into an empty or matching store: tensors are created when missing
/// and overwritten when present (shape mismatch is an error).
void load_weights(const std::string& path, ParamStore& params);

/// The sidecar contents ("" when absent).
std::string load_weights_sidecar(const std::string& path);

/// FNV-1a over the container bytes; the embedding table's provenance key.
std::uint64_t weights_file_hash(const std::string& path);

/// Same idea for an in-memory store: names, shapes and values hashed in
/// creation order. Equal stores hash equal regardless of file round trips.
std::uint64_t params_hash(const ParamStore& params);

}  // namespace coolant::nn
