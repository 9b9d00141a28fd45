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

#include <vector>

#include "scribeforge/prob_matrix.hpp"
#include "scribeforge/rng.hpp"

namespace scribeforge::testing {

// Exhaustive reference for CTC forced alignment on tiny instances. Every
// legal path over the extended sequence blank, l1, blank, ..., lU, blank is
// enumerated and scored by summing log-probabilities (zero -> -1e30) in time
// order. Among the paths whose score is within 1e-12 (relative) of the best,
// the one whose state sequence is largest when compared from the last
// timestep backwards wins.
struct OracleResult {
  bool feasible = false;
  std::vector<int> path;
  double score = 0.0;
  std::size_t paths_enumerated = 0;
};

OracleResult brute_force_align(const ctc::ProbMatrix& probs,
                               const std::vector<int>& labels, int blank);

struct OracleBoundary {
  int start = 0;
  int end = 0;
  int k = 0;
};

// Pixel spans straight from the cell mapping; requires W >= N.
std::vector<OracleBoundary> oracle_boundaries(const std::vector<int>& path,
                                              int num_labels, int timesteps,
                                              int width);

// Rows drawn from integer weights 1..4, normalised. Strictly positive, so no
// path is pinned to the log floor.
ctc::ProbMatrix random_grid_matrix(Rng& rng, int timesteps, int classes,
                                   int width);

}  // namespace scribeforge::testing
