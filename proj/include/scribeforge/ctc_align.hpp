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

#include <string>
#include <string_view>
#include <vector>

#include "scribeforge/alphabet.hpp"
#include "scribeforge/prob_matrix.hpp"

namespace scribeforge::ctc {

// Log of a zero probability.
inline constexpr double kLogZero = -1e30;

double floored_log(double p);

// Half-open pixel span [start_px, end_px) of one transcript character.
struct CharBoundary {
  char32_t symbol = 0;
  int start_px = 0;
  int end_px = 0;
  // Timesteps assigned to the character.
  int k = 0;
  int first_step = 0;
  int last_step = 0;

  friend bool operator==(const CharBoundary&, const CharBoundary&) = default;
};

// Extended label sequence blank, c1, blank, c2, ..., cU, blank. Even states
// are blanks; state 2u + 1 is transcript character u.
struct Alignment {
  std::u32string transcript;
  std::vector<int> path;
  double score = 0.0;
  std::vector<CharBoundary> boundaries;
};

// Fewest timesteps that can emit `transcript`: one per character plus one
// blank between each pair of equal neighbours.
int min_timesteps(std::u32string_view transcript);

// Maximum log-probability CTC path that emits `transcript`. Ties (scores
// equal to within float noise) are broken during backtracking by preferring
// to stay in the current state, then a step of one, then a skip of two; the
// final state prefers the trailing blank.
//
// Throws VocabularyError for characters outside the alphabet and
// AlignmentInfeasible when the matrix has too few timesteps.
Alignment forced_align(const ProbMatrix& probs, std::u32string_view transcript,
                       const Alphabet& alphabet);

// Maps each character's timestep run [t_first, t_last] to pixels:
// start = floor(t_first * W / N), end = ceil((t_last + 1) * W / N). When two
// characters share an edge with no blank between, the edge rounds down so
// spans never overlap.
std::vector<CharBoundary> boundaries_from_path(const Alignment& alignment,
                                               const ProbMatrix& probs);

}  // namespace scribeforge::ctc
