// Copyright 2026 The ScribeForge Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "scribeforge/prob_matrix.hpp"

#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iterator>
#include <string>

#include "scribeforge/error.hpp"

namespace scribeforge::ctc {
namespace {

constexpr char kMagic[4] = {'C', 'T', 'C', 'P'};
constexpr std::size_t kHeaderSize = 4 + 2 + 4 + 4 + 4;

template <class T>
void put_le(std::vector<std::uint8_t>& out, T value) {
  using U = std::conditional_t<sizeof(T) == 2, std::uint16_t, std::uint32_t>;
  const U bits = std::bit_cast<U>(value);
  for (std::size_t i = 0; i < sizeof(U); ++i) {
    out.push_back(static_cast<std::uint8_t>(bits >> (8 * i)));
  }
}

template <class T>
T get_le(std::span<const std::uint8_t> bytes, std::size_t offset) {
  using U = std::conditional_t<sizeof(T) == 2, std::uint16_t, std::uint32_t>;
  U bits = 0;
  for (std::size_t i = 0; i < sizeof(U); ++i) {
    bits |= static_cast<U>(static_cast<U>(bytes[offset + i]) << (8 * i));
  }
  return std::bit_cast<T>(bits);
}

}  // namespace

ProbMatrix::ProbMatrix(int timesteps, int classes, int source_width,
                       std::vector<float> values)
    : timesteps_(timesteps),
      classes_(classes),
      source_width_(source_width),
      values_(std::move(values)) {
  if (timesteps < 1) throw DomainError("probability matrix has no timesteps");
  if (classes < 2) throw DomainError("probability matrix needs >= 2 classes");
  if (source_width < 1) throw DomainError("source width must be >= 1");
  if (values_.size() != static_cast<std::size_t>(timesteps) * classes) {
    throw DomainError("probability matrix holds " +
                      std::to_string(values_.size()) + " values, expected " +
                      std::to_string(static_cast<std::size_t>(timesteps) *
                                     classes));
  }
  for (int t = 0; t < timesteps; ++t) {
    double sum = 0.0;
    for (float p : row(t)) {
      if (!std::isfinite(p) || p < 0.0f) {
        throw DomainError("row " + std::to_string(t) +
                          " has a negative or non-finite probability");
      }
      sum += p;
    }
    if (std::abs(sum - 1.0) > kRowSumTolerance) {
      throw DomainError("row " + std::to_string(t) + " sums to " +
                        std::to_string(sum));
    }
  }
}

std::vector<std::uint8_t> serialize(const ProbMatrix& probs) {
  std::vector<std::uint8_t> out;
  out.reserve(kHeaderSize + probs.values().size() * 4);
  out.insert(out.end(), std::begin(kMagic), std::end(kMagic));
  put_le(out, kProbFileVersion);
  put_le(out, static_cast<std::uint32_t>(probs.timesteps()));
  put_le(out, static_cast<std::uint32_t>(probs.classes()));
  put_le(out, static_cast<std::uint32_t>(probs.source_width()));
  for (float v : probs.values()) put_le(out, v);
  return out;
}

ProbMatrix parse_prob_matrix(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < kHeaderSize ||
      std::memcmp(bytes.data(), kMagic, sizeof(kMagic)) != 0) {
    throw FormatError("not a CTCP probability matrix");
  }
  const auto version = get_le<std::uint16_t>(bytes, 4);
  if (version != kProbFileVersion) {
    throw FormatError("unsupported CTCP version " + std::to_string(version));
  }
  const auto n = get_le<std::uint32_t>(bytes, 6);
  const auto c = get_le<std::uint32_t>(bytes, 10);
  const auto w = get_le<std::uint32_t>(bytes, 14);
  const std::uint64_t count = static_cast<std::uint64_t>(n) * c;
  if (n > (1u << 30) || c > (1u << 20) ||
      bytes.size() != kHeaderSize + count * 4) {
    throw FormatError("CTCP payload size does not match header (" +
                      std::to_string(n) + "x" + std::to_string(c) + ")");
  }
  std::vector<float> values(count);
  for (std::uint64_t i = 0; i < count; ++i) {
    values[i] = get_le<float>(bytes, kHeaderSize + i * 4);
  }
  try {
    return ProbMatrix(static_cast<int>(n), static_cast<int>(c),
                      static_cast<int>(w), std::move(values));
  } catch (const DomainError& e) {
    throw FormatError(std::string("invalid CTCP matrix: ") + e.what());
  }
}

ProbMatrix read_prob_matrix(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
  try {
    return parse_prob_matrix(bytes);
  } catch (const FormatError& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
}

void write_prob_matrix(const std::filesystem::path& path,
                       const ProbMatrix& probs) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  const auto bytes = serialize(probs);
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  if (!out) throw IoError("write failed: " + path.string());
}

}  // namespace scribeforge::ctc
