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

#include <filesystem>
#include <string>
#include <vector>

#include "scribeforge/alphabet.hpp"
#include "scribeforge/ctc_align.hpp"

namespace scribeforge {

// One row of a dataset manifest: UTF-8 TSV
//   line_id <TAB> image_path <TAB> transcript [<TAB> split]
// The transcript runs to the next tab or the end of the line. Relative image
// paths are resolved against the manifest's directory on read.
struct ManifestEntry {
  std::string line_id;
  std::filesystem::path image_path;
  std::string transcript;
  std::string split;
};

std::vector<ManifestEntry> read_manifest(const std::filesystem::path& path);

// Writes image paths relative to the manifest directory where possible.
void write_manifest(const std::filesystem::path& path,
                    const std::vector<ManifestEntry>& entries);

// One JSON object per line:
//   {"line_id", "transcript", "boundaries": [{"char","start","end","k"}],
//    "score"}
struct LineAnnotation {
  std::string line_id;
  std::string transcript;
  std::vector<ctc::CharBoundary> boundaries;
  double score = 0.0;
};

std::string annotation_to_json(const LineAnnotation& annotation);
LineAnnotation annotation_from_json(std::string_view json);

std::vector<LineAnnotation> read_annotations(const std::filesystem::path& path);
void write_annotations(const std::filesystem::path& path,
                       const std::vector<LineAnnotation>& annotations);

namespace ctc {

struct AlignFailure {
  std::string line_id;
  std::string reason;
};

struct AlignReport {
  std::vector<LineAnnotation> records;
  std::vector<AlignFailure> failures;
};

// Aligns every manifest line against <probs_dir>/<line_id>.ctcp. A missing or
// corrupt matrix, or an unalignable transcript, becomes a failure entry and
// the batch continues. Records keep manifest order regardless of `jobs`.
AlignReport align_dataset(const std::vector<ManifestEntry>& manifest,
                          const std::filesystem::path& probs_dir,
                          const Alphabet& alphabet, int jobs = 1);

std::filesystem::path prob_matrix_path(const std::filesystem::path& probs_dir,
                                       const std::string& line_id);

}  // namespace ctc
}  // namespace scribeforge
