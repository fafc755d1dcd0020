//
// Copyright 2026 The fedpgn Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

// Checkpoint layout (all integers and floats little-endian):
//   bytes 0..3   magic "FPGN"
//   bytes 4..5   format version, u16 (currently 1)
//   bytes 6..13  dimension d, u64
//   then d IEEE-754 binary64 values

#ifndef FEDPGN_NUMERICS_CHECKPOINT_H_
#define FEDPGN_NUMERICS_CHECKPOINT_H_

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "fedpgn/numerics/param_vector.h"

namespace fedpgn {

inline constexpr std::uint16_t kCheckpointVersion = 1;

std::vector<std::uint8_t> EncodeCheckpoint(const ParamVector& params);
// Throws FormatError on bad magic, unsupported version, or size mismatch.
ParamVector DecodeCheckpoint(std::span<const std::uint8_t> bytes);

void WriteCheckpoint(const std::filesystem::path& path,
                     const ParamVector& params);
ParamVector ReadCheckpoint(const std::filesystem::path& path);

}  // namespace fedpgn

#endif  // FEDPGN_NUMERICS_CHECKPOINT_H_
