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

#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>

#include <gtest/gtest.h>

#include "fedpgn/errors.h"

namespace fedpgn {
namespace {

TEST(CheckpointTest, RoundTripIsBitExact) {
  const ParamVector p{0.1, -0.0, 1e-310, std::numeric_limits<double>::max(),
                      -3.5, std::numeric_limits<double>::infinity()};
  const ParamVector back = DecodeCheckpoint(EncodeCheckpoint(p));
  EXPECT_TRUE(BitwiseEqual(p.span(), back.span()));
}

TEST(CheckpointTest, LayoutHeader) {
  const auto bytes = EncodeCheckpoint(ParamVector{1.0, 2.0});
  ASSERT_EQ(bytes.size(), 4u + 2u + 8u + 16u);
  EXPECT_EQ(std::string(bytes.begin(), bytes.begin() + 4), "FPGN");
  EXPECT_EQ(bytes[4], 1);  // version, little-endian
  EXPECT_EQ(bytes[5], 0);
  EXPECT_EQ(bytes[6], 2);  // dimension
}

TEST(CheckpointTest, EmptyVector) {
  EXPECT_EQ(DecodeCheckpoint(EncodeCheckpoint(ParamVector{})).size(), 0u);
}

TEST(CheckpointTest, BadMagicIsRejected) {
  auto bytes = EncodeCheckpoint(ParamVector{1.0});
  bytes[0] = 'X';
  EXPECT_THROW(DecodeCheckpoint(bytes), FormatError);
}

TEST(CheckpointTest, BadVersionIsRejected) {
  auto bytes = EncodeCheckpoint(ParamVector{1.0});
  bytes[4] = 9;
  EXPECT_THROW(DecodeCheckpoint(bytes), FormatError);
}

TEST(CheckpointTest, SizeMismatchIsRejected) {
  auto bytes = EncodeCheckpoint(ParamVector{1.0, 2.0});
  bytes.pop_back();
  EXPECT_THROW(DecodeCheckpoint(bytes), FormatError);
  bytes.resize(3);
  EXPECT_THROW(DecodeCheckpoint(bytes), FormatError);
}

TEST(CheckpointTest, FileRoundTrip) {
  const auto path =
      std::filesystem::path(::testing::TempDir()) / "checkpoint_test.fpgn";
  const ParamVector p{1.5, -2.25, 3.0};
  WriteCheckpoint(path, p);
  EXPECT_TRUE(BitwiseEqual(ReadCheckpoint(path).span(), p.span()));
  std::filesystem::remove(path);
  EXPECT_THROW(ReadCheckpoint(path), FormatError);
}

}  // namespace
}  // namespace fedpgn
