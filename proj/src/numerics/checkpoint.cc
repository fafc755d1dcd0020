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

#include "fedpgn/numerics/checkpoint.h"

#include <bit>
#include <cstring>
#include <fstream>
#include <iterator>
#include <string>

#include "fedpgn/errors.h"

namespace fedpgn {
namespace {

constexpr char kMagic[4] = {'F', 'P', 'G', 'N'};
constexpr std::size_t kHeaderSize = 4 + 2 + 8;

template <typename T>
void PutLittleEndian(T value, std::vector<std::uint8_t>& out) {
  for (std::size_t i = 0; i < sizeof(T); ++i) {
    out.push_back(static_cast<std::uint8_t>((value >> (8 * i)) & 0xFF));
  }
}

template <typename T>
T GetLittleEndian(std::span<const std::uint8_t> bytes, std::size_t offset) {
  T value = 0;
  for (std::size_t i = 0; i < sizeof(T); ++i) {
    value |= static_cast<T>(bytes[offset + i]) << (8 * i);
  }
  return value;
}

}  // namespace

std::vector<std::uint8_t> EncodeCheckpoint(const ParamVector& params) {
  std::vector<std::uint8_t> out;
  out.reserve(kHeaderSize + 8 * params.size());
  out.insert(out.end(), std::begin(kMagic), std::end(kMagic));
  PutLittleEndian<std::uint16_t>(kCheckpointVersion, out);
  PutLittleEndian<std::uint64_t>(params.size(), out);
  for (double v : params) {
    PutLittleEndian<std::uint64_t>(std::bit_cast<std::uint64_t>(v), out);
  }
  return out;
}

ParamVector DecodeCheckpoint(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < kHeaderSize ||
      std::memcmp(bytes.data(), kMagic, sizeof(kMagic)) != 0) {
    throw FormatError("checkpoint: bad magic bytes");
  }
  const auto version = GetLittleEndian<std::uint16_t>(bytes, 4);
  if (version != kCheckpointVersion) {
    throw FormatError("checkpoint: unsupported version " +
                      std::to_string(version));
  }
  const auto dim = GetLittleEndian<std::uint64_t>(bytes, 6);
  if ((bytes.size() - kHeaderSize) / 8 != dim ||
      (bytes.size() - kHeaderSize) % 8 != 0) {
    throw FormatError("checkpoint: payload size does not match dimension");
  }
  ParamVector params(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    params[i] = std::bit_cast<double>(
        GetLittleEndian<std::uint64_t>(bytes, kHeaderSize + 8 * i));
  }
  return params;
}

void WriteCheckpoint(const std::filesystem::path& path,
                     const ParamVector& params) {
  const auto bytes = EncodeCheckpoint(params);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw FormatError("cannot open " + path.string() + " for writing");
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  if (!out) throw FormatError("failed writing " + path.string());
}

ParamVector ReadCheckpoint(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open checkpoint " + path.string());
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
  return DecodeCheckpoint(bytes);
}

}  // namespace fedpgn
