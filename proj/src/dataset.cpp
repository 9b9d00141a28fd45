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

#include "scribeforge/dataset.hpp"

#include <fstream>
#include <optional>
#include <sstream>

#include "json.hpp"
#include "scribeforge/error.hpp"
#include "scribeforge/parallel.hpp"
#include "scribeforge/prob_matrix.hpp"
#include "scribeforge/utf8.hpp"

namespace scribeforge {

namespace fs = std::filesystem;
using nlohmann::json;

std::vector<ManifestEntry> read_manifest(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open manifest " + path.string());
  const fs::path base = path.parent_path();
  std::vector<ManifestEntry> entries;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::size_t pos = 0;
    while (fields.size() < 3) {
      const auto tab = line.find('\t', pos);
      if (tab == std::string::npos) break;
      fields.push_back(line.substr(pos, tab - pos));
      pos = tab + 1;
    }
    fields.push_back(line.substr(pos));
    if (fields.size() < 3 || fields[0].empty()) {
      throw FormatError(path.string() + ":" + std::to_string(lineno) +
                        ": expected line_id<TAB>image_path<TAB>transcript");
    }
    ManifestEntry e;
    e.line_id = fields[0];
    e.image_path = fields[1];
    if (e.image_path.is_relative()) e.image_path = base / e.image_path;
    e.transcript = fields[2];
    if (fields.size() > 3) e.split = fields[3];
    entries.push_back(std::move(e));
  }
  return entries;
}

void write_manifest(const fs::path& path,
                    const std::vector<ManifestEntry>& entries) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write manifest " + path.string());
  const fs::path base = path.parent_path();
  for (const auto& e : entries) {
    fs::path image = e.image_path;
    if (!base.empty()) {
      const auto rel = image.lexically_relative(base);
      if (!rel.empty() && *rel.begin() != "..") image = rel;
    }
    out << e.line_id << '\t' << image.generic_string() << '\t' << e.transcript;
    if (!e.split.empty()) out << '\t' << e.split;
    out << '\n';
  }
  if (!out) throw IoError("write failed: " + path.string());
}

std::string annotation_to_json(const LineAnnotation& a) {
  json boundaries = json::array();
  for (const auto& b : a.boundaries) {
    boundaries.push_back({{"char", utf8::encode(b.symbol)},
                          {"start", b.start_px},
                          {"end", b.end_px},
                          {"k", b.k}});
  }
  json j;
  j["line_id"] = a.line_id;
  j["transcript"] = a.transcript;
  j["boundaries"] = std::move(boundaries);
  j["score"] = a.score;
  return j.dump();
}

LineAnnotation annotation_from_json(std::string_view text) {
  try {
    const auto j = json::parse(text);
    LineAnnotation a;
    a.line_id = j.at("line_id").get<std::string>();
    a.transcript = j.at("transcript").get<std::string>();
    a.score = j.value("score", 0.0);
    for (const auto& b : j.at("boundaries")) {
      const auto ch = utf8::decode(b.at("char").get<std::string>());
      if (ch.size() != 1) throw FormatError("boundary char must be one symbol");
      ctc::CharBoundary cb;
      cb.symbol = ch[0];
      cb.start_px = b.at("start").get<int>();
      cb.end_px = b.at("end").get<int>();
      cb.k = b.at("k").get<int>();
      a.boundaries.push_back(cb);
    }
    return a;
  } catch (const json::exception& e) {
    throw FormatError(std::string("annotation record: ") + e.what());
  }
}

std::vector<LineAnnotation> read_annotations(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open annotations " + path.string());
  std::vector<LineAnnotation> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    try {
      out.push_back(annotation_from_json(line));
    } catch (const FormatError& e) {
      throw FormatError(path.string() + ":" + std::to_string(lineno) + ": " +
                        e.what());
    }
  }
  return out;
}

void write_annotations(const fs::path& path,
                       const std::vector<LineAnnotation>& annotations) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write annotations " + path.string());
  for (const auto& a : annotations) out << annotation_to_json(a) << '\n';
  if (!out) throw IoError("write failed: " + path.string());
}

namespace ctc {

fs::path prob_matrix_path(const fs::path& probs_dir,
                          const std::string& line_id) {
  return probs_dir / (line_id + ".ctcp");
}

AlignReport align_dataset(const std::vector<ManifestEntry>& manifest,
                          const fs::path& probs_dir, const Alphabet& alphabet,
                          int jobs) {
  struct Outcome {
    std::optional<LineAnnotation> record;
    std::string error;
  };
  std::vector<Outcome> outcomes(manifest.size());
  parallel_for(manifest.size(), jobs, [&](std::size_t i) {
    const auto& entry = manifest[i];
    try {
      const auto probs =
          read_prob_matrix(prob_matrix_path(probs_dir, entry.line_id));
      const auto alignment =
          forced_align(probs, utf8::decode(entry.transcript), alphabet);
      outcomes[i].record = LineAnnotation{entry.line_id, entry.transcript,
                                          alignment.boundaries,
                                          alignment.score};
    } catch (const std::exception& e) {
      outcomes[i].error = e.what();
    }
  });

  AlignReport report;
  for (std::size_t i = 0; i < manifest.size(); ++i) {
    if (outcomes[i].record) {
      report.records.push_back(std::move(*outcomes[i].record));
    } else {
      report.failures.push_back({manifest[i].line_id, outcomes[i].error});
    }
  }
  return report;
}

}  // namespace ctc
}  // namespace scribeforge
