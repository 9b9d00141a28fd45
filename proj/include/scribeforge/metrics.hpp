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

#pragma once

#include <algorithm>
#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace scribeforge::metrics {

// Levenshtein distance with unit costs, two-row DP.
template <class T>
std::size_t edit_distance(std::span<const T> a, std::span<const T> b) {
  std::vector<std::size_t> prev(b.size() + 1), cur(b.size() + 1);
  for (std::size_t j = 0; j <= b.size(); ++j) prev[j] = j;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    cur[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      const std::size_t sub = prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
      cur[j] = std::min({sub, prev[j] + 1, cur[j - 1] + 1});
    }
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

struct CompareOptions {
  // Off by default: case errors count as errors.
  bool ignore_case = false;
};

// Character-level distance over Unicode code points.
std::size_t char_distance(std::string_view a, std::string_view b,
                          const CompareOptions& options = {});
std::size_t word_distance(std::string_view a, std::string_view b,
                          const CompareOptions& options = {});

// Splits on runs of whitespace; punctuation stays attached.
std::vector<std::string> split_words(std::string_view text);

// Ratios, not percentages. Empty truth throws DomainError.
double cer(std::string_view pred, std::string_view truth,
           const CompareOptions& options = {});
double wer(std::string_view pred, std::string_view truth,
           const CompareOptions& options = {});

struct Prediction {
  std::string pred;
  std::string truth;
};

// Exact-match percentage; an empty list throws DomainError.
double string_acc(std::span<const Prediction> pairs,
                  const CompareOptions& options = {});

// log2(t / t_min): training time in arbitrary units relative to the
// fastest per-image time.
inline constexpr double kMinTrainTimeMs = 33.6;
double t_arb(double t_ms, double t_min_ms = kMinTrainTimeMs);

// Corpus-level report in percent. CER and WER are total edits over total
// reference characters / words.
struct EvalReport {
  double cer = 0.0;
  double wer = 0.0;
  double acc = 0.0;
  std::size_t n = 0;
  std::size_t char_errors = 0;
  std::size_t ref_chars = 0;
  std::size_t word_errors = 0;
  std::size_t ref_words = 0;
};

EvalReport evaluate(std::span<const Prediction> pairs,
                    const CompareOptions& options = {});
std::string to_json(const EvalReport& report);

}  // namespace scribeforge::metrics
