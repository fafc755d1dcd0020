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

#include "fedpgn/data/synthetic.h"

#include <boost/crc.hpp>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iterator>
#include <numbers>
#include <sstream>
#include <string>
#include <string_view>

#include "fedpgn/errors.h"
#include "fedpgn/numerics/rng.h"

namespace fedpgn {
namespace {

std::string_view Trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

std::vector<std::string_view> SplitFields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    fields.push_back(Trim(line.substr(start, comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return fields;
}

template <typename T>
bool ParseNumber(std::string_view field, T& out) {
  if (field.empty()) return false;
  if (field.front() == '+') field.remove_prefix(1);
  const auto [ptr, ec] =
      std::from_chars(field.data(), field.data() + field.size(), out);
  return ec == std::errc() && ptr == field.data() + field.size();
}

}  // namespace

std::vector<std::vector<double>> ClusterCenters(std::size_t num_classes,
                                                std::size_t input_dim) {
  std::vector<std::vector<double>> centers(num_classes,
                                           std::vector<double>(input_dim, 0.0));
  for (std::size_t c = 0; c < num_classes; ++c) {
    if (input_dim >= num_classes) {
      centers[c][c] = 1.0;
      continue;
    }
    const double angle = 2.0 * std::numbers::pi * static_cast<double>(c) /
                         static_cast<double>(num_classes);
    double norm_sq = 0.0;
    for (std::size_t j = 0; j < input_dim; ++j) {
      centers[c][j] = std::cos(angle + std::numbers::pi * static_cast<double>(j) /
                                           static_cast<double>(input_dim));
      norm_sq += centers[c][j] * centers[c][j];
    }
    const double norm = std::sqrt(norm_sq);
    for (double& v : centers[c]) v /= norm;
  }
  return centers;
}

Dataset SynthClusters(const ClusterSpec& spec, std::uint64_t seed) {
  if (spec.num_classes < 2) throw ConfigError("synthetic: num_classes must be >= 2");
  if (spec.input_dim < 1) throw ConfigError("synthetic: input_dim must be >= 1");
  if (spec.per_class < 1) throw ConfigError("synthetic: per_class must be >= 1");
  if (!(spec.spread >= 0.0) || !std::isfinite(spec.spread)) {
    throw ConfigError("synthetic: spread must be finite and >= 0");
  }
  const auto centers = ClusterCenters(spec.num_classes, spec.input_dim);
  const std::size_t n = spec.num_classes * spec.per_class;
  std::vector<double> features(n * spec.input_dim);
  std::vector<std::int32_t> labels(n);
  Rng rng(seed, StreamId{0, 0, StreamPurpose::kTrainData});
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t c = i % spec.num_classes;
    labels[i] = static_cast<std::int32_t>(c);
    for (std::size_t j = 0; j < spec.input_dim; ++j) {
      features[i * spec.input_dim + j] =
          centers[c][j] + spec.spread * rng.StandardNormal();
    }
  }
  return Dataset(spec.input_dim, spec.num_classes, std::move(features),
                 std::move(labels),
                 SyntheticProvenance{seed, spec.per_class, spec.spread});
}

Dataset IngestCsv(const std::filesystem::path& path, const CsvSchema& schema) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open dataset file " + path.string());
  const std::string content((std::istreambuf_iterator<char>(in)),
                            std::istreambuf_iterator<char>());
  boost::crc_32_type crc;
  crc.process_bytes(content.data(), content.size());

  if (schema.num_classes < 2) throw ConfigError("csv: num_classes must be >= 2");
  std::size_t num_features = schema.num_features;
  std::vector<double> features;
  std::vector<std::int32_t> labels;
  std::istringstream lines(content);
  std::string line;
  std::size_t line_no = 0;
  bool header_pending = schema.has_header;
  while (std::getline(lines, line)) {
    ++line_no;
    if (Trim(line).empty()) continue;
    if (header_pending) {
      header_pending = false;
      continue;
    }
    const auto fields = SplitFields(line);
    if (num_features == 0) {
      if (fields.size() < 2) {
        throw ParseError("line " + std::to_string(line_no) +
                             ": expected a label and at least one feature",
                         line_no);
      }
      num_features = fields.size() - 1;
    }
    if (fields.size() != num_features + 1) {
      throw ParseError("line " + std::to_string(line_no) + ": expected " +
                           std::to_string(num_features + 1) + " fields, got " +
                           std::to_string(fields.size()),
                       line_no);
    }
    long long label = 0;
    if (!ParseNumber(fields[0], label)) {
      throw ParseError("line " + std::to_string(line_no) +
                           ": label is not an integer: '" +
                           std::string(fields[0]) + "'",
                       line_no);
    }
    if (label < 0 || static_cast<unsigned long long>(label) >= schema.num_classes) {
      throw SchemaError("line " + std::to_string(line_no) + ": label " +
                            std::to_string(label) + " outside [0, " +
                            std::to_string(schema.num_classes) + ")",
                        line_no);
    }
    labels.push_back(static_cast<std::int32_t>(label));
    for (std::size_t j = 1; j < fields.size(); ++j) {
      double v = 0.0;
      if (!ParseNumber(fields[j], v) || !std::isfinite(v)) {
        throw ParseError("line " + std::to_string(line_no) + ": field " +
                             std::to_string(j + 1) + " is not a finite number",
                         line_no);
      }
      features.push_back(v);
    }
  }
  if (labels.empty()) throw ParseError("csv: no data rows in " + path.string(), 0);
  return Dataset(num_features, schema.num_classes, std::move(features),
                 std::move(labels),
                 CsvProvenance{path.string(), crc.checksum()});
}

}  // namespace fedpgn
