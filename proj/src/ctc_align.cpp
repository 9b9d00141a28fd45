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

#include "scribeforge/ctc_align.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "scribeforge/error.hpp"

namespace scribeforge::ctc {
namespace {

constexpr double kUnreachable = -std::numeric_limits<double>::infinity();

// Scores closer than this are treated as tied, so the tie-break rule
// decides instead of summation-order rounding.
double tie_tolerance(double value) {
  return 1e-12 * std::max(1.0, std::abs(value));
}

bool can_skip(const std::vector<int>& ext, int s, int blank) {
  return s >= 2 && ext[s] != blank && ext[s] != ext[s - 2];
}

// Index of the preferred candidate among those within tolerance of the best.
// Candidates are listed in preference order.
int pick(std::initializer_list<std::pair<int, double>> candidates) {
  double best = kUnreachable;
  for (const auto& [state, value] : candidates) best = std::max(best, value);
  for (const auto& [state, value] : candidates) {
    if (best == kUnreachable || value >= best - tie_tolerance(best)) {
      return state;
    }
  }
  return candidates.begin()->first;
}

}  // namespace

double floored_log(double p) { return p > 0.0 ? std::log(p) : kLogZero; }

int min_timesteps(std::u32string_view transcript) {
  int n = static_cast<int>(transcript.size());
  for (std::size_t i = 1; i < transcript.size(); ++i) {
    if (transcript[i] == transcript[i - 1]) ++n;
  }
  return n;
}

Alignment forced_align(const ProbMatrix& probs, std::u32string_view transcript,
                       const Alphabet& alphabet) {
  const std::vector<int> labels = alphabet.encode(transcript);
  if (probs.classes() != alphabet.num_classes()) {
    throw DomainError("matrix has " + std::to_string(probs.classes()) +
                      " classes but the alphabet defines " +
                      std::to_string(alphabet.num_classes()));
  }
  const int N = probs.timesteps();
  const int U = static_cast<int>(labels.size());
  const int S = 2 * U + 1;
  const int blank = alphabet.blank_index();
  if (N < min_timesteps(transcript)) {
    throw AlignmentInfeasible(
        "transcript needs at least " +
        std::to_string(min_timesteps(transcript)) + " timesteps, matrix has " +
        std::to_string(N));
  }

  std::vector<int> ext(S, blank);
  for (int u = 0; u < U; ++u) ext[2 * u + 1] = labels[u];

  auto lp = [&](int t, int s) { return floored_log(probs.at(t, ext[s])); };
  std::vector<double> delta(static_cast<std::size_t>(N) * S, kUnreachable);
  auto at = [&](int t, int s) -> double& {
    return delta[static_cast<std::size_t>(t) * S + s];
  };

  at(0, 0) = lp(0, 0);
  if (S > 1) at(0, 1) = lp(0, 1);
  for (int t = 1; t < N; ++t) {
    for (int s = 0; s < S; ++s) {
      double best = at(t - 1, s);
      if (s >= 1) best = std::max(best, at(t - 1, s - 1));
      if (can_skip(ext, s, blank)) best = std::max(best, at(t - 1, s - 2));
      if (best != kUnreachable) at(t, s) = best + lp(t, s);
    }
  }

  Alignment out;
  out.transcript = std::u32string(transcript);
  out.path.assign(N, 0);
  int state = S - 1;
  if (S > 1) state = pick({{S - 1, at(N - 1, S - 1)}, {S - 2, at(N - 1, S - 2)}});
  if (at(N - 1, state) == kUnreachable) {
    throw AlignmentInfeasible("no legal CTC path emits the transcript");
  }
  out.path[N - 1] = state;
  for (int t = N - 1; t > 0; --t) {
    const int s = out.path[t];
    const double stay = at(t - 1, s);
    const double step = s >= 1 ? at(t - 1, s - 1) : kUnreachable;
    const double skip = can_skip(ext, s, blank) ? at(t - 1, s - 2) : kUnreachable;
    out.path[t - 1] = pick({{s, stay}, {s - 1, step}, {s - 2, skip}});
  }

  for (int t = 0; t < N; ++t) out.score += lp(t, out.path[t]);
  out.boundaries = boundaries_from_path(out, probs);
  return out;
}

std::vector<CharBoundary> boundaries_from_path(const Alignment& alignment,
                                               const ProbMatrix& probs) {
  const int N = probs.timesteps();
  const std::int64_t W = probs.source_width();
  const int U = static_cast<int>(alignment.transcript.size());
  if (static_cast<int>(alignment.path.size()) != N) {
    throw DomainError("alignment path length differs from timestep count");
  }

  std::vector<int> first(U, -1), last(U, -1);
  for (int t = 0; t < N; ++t) {
    const int s = alignment.path[t];
    if (s < 0 || s > 2 * U) throw DomainError("path state out of range");
    if (s % 2 == 1) {
      const int u = s / 2;
      if (first[u] < 0) first[u] = t;
      last[u] = t;
    }
  }

  std::vector<CharBoundary> out;
  out.reserve(U);
  int prev_end = 0;
  for (int u = 0; u < U; ++u) {
    if (first[u] < 0) throw DomainError("path skips a transcript character");
    const std::int64_t a = first[u];
    const std::int64_t b_next = last[u] + 1;
    const bool touches_next = u + 1 < U && first[u + 1] == b_next;
    int start = static_cast<int>(a * W / N);
    int end = static_cast<int>(touches_next ? b_next * W / N
                                            : (b_next * W + N - 1) / N);
    start = std::max(start, prev_end);
    end = std::max(end, start + 1);
    if (end > W) {
      throw DomainError("source width " + std::to_string(W) +
                        " too small to separate the transcript characters");
    }
    out.push_back({alignment.transcript[u], start, end, last[u] - first[u] + 1,
                   first[u], last[u]});
    prev_end = end;
  }
  return out;
}

}  // namespace scribeforge::ctc
