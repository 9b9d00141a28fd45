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

#include "scribeforge/segbank.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>
#include <unordered_map>

#include "json.hpp"
#include "scribeforge/error.hpp"
#include "scribeforge/parallel.hpp"
#include "scribeforge/png_io.hpp"
#include "scribeforge/utf8.hpp"

namespace scribeforge::segbank {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr const char* kBankFormat = "scribeforge-segment-bank";
constexpr int kBankVersion = 1;

void check_in_alphabet(const Alphabet& alphabet, std::u32string_view text) {
  for (char32_t c : text) {
    if (!alphabet.contains(c)) {
      throw VocabularyError(
          "character " + utf8::describe(c) + " is not in the bank alphabet", c);
    }
  }
}

// All crops of one annotated line, or the reason it was skipped.
struct LineCrops {
  std::vector<Segment> segments;
  std::optional<std::string> warning;
};

LineCrops crop_line(const LineAnnotation& a, const ImageLoader& load_image,
                    const Alphabet& alphabet, const BankOptions& options) {
  LineCrops out;
  const auto skip = [&](const std::string& why) {
    out.warning = "line " + a.line_id + " skipped: " + why;
    return out;
  };
  std::u32string text;
  try {
    text = utf8::decode(a.transcript);
    check_in_alphabet(alphabet, text);
  } catch (const std::exception& e) {
    return skip(e.what());
  }
  if (a.boundaries.size() != text.size()) {
    return skip("boundary count does not match transcript length");
  }
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (a.boundaries[i].symbol != text[i]) {
      return skip("boundary characters do not spell the transcript");
    }
  }
  if (text.empty()) return out;

  LineImage image;
  try {
    image = load_image(a.line_id);
  } catch (const std::exception& e) {
    return skip(e.what());
  }
  int prev_end = 0;
  for (const auto& b : a.boundaries) {
    if (b.start_px < prev_end || b.end_px <= b.start_px ||
        b.end_px > image.width()) {
      return skip("boundary [" + std::to_string(b.start_px) + ", " +
                  std::to_string(b.end_px) + ") outside image of width " +
                  std::to_string(image.width()) + " or out of order");
    }
    prev_end = b.end_px;
  }

  const std::size_t U = text.size();
  for (std::size_t i = 0; i < U; ++i) {
    for (std::size_t len = 1;
         len <= static_cast<std::size_t>(options.max_token_len) && i + len <= U;
         ++len) {
      const int x0 = a.boundaries[i].start_px;
      const int x1 = a.boundaries[i + len - 1].end_px;
      Segment seg;
      seg.token = utf8::encode(std::u32string_view(text).substr(i, len));
      seg.image =
          resize_to_height(crop_columns(image, x0, x1), options.norm_height);
      seg.source_line_id = a.line_id;
      seg.start_px = x0;
      seg.end_px = x1;
      out.segments.push_back(std::move(seg));
    }
  }
  return out;
}

json read_json_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
}

}  // namespace

SegmentBank::SegmentBank(Alphabet alphabet, int norm_height)
    : alphabet_(std::move(alphabet)), norm_height_(norm_height) {
  if (norm_height < 1) throw DomainError("norm_height must be >= 1");
}

void SegmentBank::add(Segment segment) {
  const auto text = utf8::decode(segment.token);
  if (text.empty()) throw DomainError("segment token is empty");
  check_in_alphabet(alphabet_, text);
  if (segment.image.height() != norm_height_) {
    throw DomainError("segment height " +
                      std::to_string(segment.image.height()) +
                      " differs from bank height " +
                      std::to_string(norm_height_));
  }
  longest_token_ = std::max(longest_token_, static_cast<int>(text.size()));
  auto it = entries_.find(segment.token);
  if (it == entries_.end()) {
    it = entries_.emplace(segment.token, std::vector<Segment>{}).first;
  }
  it->second.push_back(std::move(segment));
}

void SegmentBank::replace(std::string_view token, std::size_t index,
                          Segment segment) {
  auto it = entries_.find(token);
  if (it == entries_.end() || index >= it->second.size()) {
    throw DomainError("no segment to replace");
  }
  if (segment.token != token || segment.image.height() != norm_height_) {
    throw DomainError("replacement segment does not match the slot");
  }
  it->second[index] = std::move(segment);
}

bool SegmentBank::contains(std::string_view token) const {
  return entries_.find(token) != entries_.end();
}

std::span<const Segment> SegmentBank::segments(std::string_view token) const {
  auto it = entries_.find(token);
  if (it == entries_.end()) return {};
  return it->second;
}

std::size_t SegmentBank::segment_count() const {
  std::size_t n = 0;
  for (const auto& [token, segs] : entries_) n += segs.size();
  return n;
}

SegmentBank build_bank(const std::vector<LineAnnotation>& annotations,
                       const ImageLoader& load_image, const Alphabet& alphabet,
                       const BankOptions& options, BuildReport* report) {
  if (options.max_token_len < 1) {
    throw DomainError("max_token_len must be >= 1");
  }
  if (options.cap < 1) throw DomainError("segment cap must be >= 1");

  SegmentBank bank(alphabet, options.norm_height);
  BuildReport local;
  BuildReport& rep = report ? *report : local;
  Rng rng(options.seed);
  std::unordered_map<std::string, std::size_t> seen;

  // Lines are cropped in parallel chunks and merged in input order, so the
  // reservoir draws do not depend on the worker count.
  const std::size_t chunk =
      std::max<std::size_t>(16, 4 * static_cast<std::size_t>(
                                        std::max(options.jobs, 1)));
  for (std::size_t begin = 0; begin < annotations.size(); begin += chunk) {
    const std::size_t end = std::min(annotations.size(), begin + chunk);
    std::vector<LineCrops> crops(end - begin);
    parallel_for(end - begin, options.jobs, [&](std::size_t i) {
      crops[i] = crop_line(annotations[begin + i], load_image, alphabet,
                           options);
    });
    for (auto& line : crops) {
      if (line.warning) {
        ++rep.lines_skipped;
        rep.warnings.push_back(*line.warning);
        continue;
      }
      ++rep.lines_used;
      for (auto& seg : line.segments) {
        const std::size_t n = ++seen[seg.token];
        if (n <= static_cast<std::size_t>(options.cap)) {
          bank.add(std::move(seg));
        } else {
          const auto j = static_cast<std::size_t>(
              rng.uniform_int(0, static_cast<std::int64_t>(n) - 1));
          if (j < static_cast<std::size_t>(options.cap)) {
            const std::string token = seg.token;
            bank.replace(token, j, std::move(seg));
          }
        }
      }
    }
  }
  return bank;
}

SegmentBank build_bank(const fs::path& annotations_path, const fs::path& images,
                       const Alphabet& alphabet, const BankOptions& options,
                       BuildReport* report) {
  auto annotations = read_annotations(annotations_path);
  BuildReport local;
  BuildReport& rep = report ? *report : local;

  ImageLoader loader;
  if (fs::is_regular_file(images)) {
    std::unordered_map<std::string, ManifestEntry> by_id;
    for (auto& e : read_manifest(images)) by_id.emplace(e.line_id, e);
    std::vector<LineAnnotation> kept;
    for (auto& a : annotations) {
      auto it = by_id.find(a.line_id);
      if (it == by_id.end()) {
        ++rep.lines_skipped;
        rep.warnings.push_back("line " + a.line_id +
                               " skipped: not listed in the image manifest");
        continue;
      }
      const auto& split = it->second.split;
      if (!options.all_splits && !split.empty() && split != "train") continue;
      kept.push_back(std::move(a));
    }
    annotations = std::move(kept);
    loader = [by_id = std::move(by_id)](const std::string& id) {
      return read_png(by_id.at(id).image_path);
    };
  } else if (fs::is_directory(images)) {
    loader = [images](const std::string& id) {
      return read_png(images / (id + ".png"));
    };
  } else {
    throw IoError("image source " + images.string() +
                  " is neither a directory nor a manifest");
  }
  return build_bank(annotations, loader, alphabet, options, &rep);
}

void save_bank(const SegmentBank& bank, const fs::path& dir) {
  if (fs::exists(dir) && !fs::is_empty(dir)) {
    throw IoError("bank directory " + dir.string() + " is not empty");
  }
  fs::create_directories(dir / "segments");
  json tokens = json::array();
  std::size_t next = 0;
  for (const auto& [token, segs] : bank.entries()) {
    json list = json::array();
    for (const auto& seg : segs) {
      char name[32];
      std::snprintf(name, sizeof(name), "segments/%06zu.png", next++);
      write_png(dir / name, seg.image);
      list.push_back({{"file", name},
                      {"source_line_id", seg.source_line_id},
                      {"start", seg.start_px},
                      {"end", seg.end_px}});
    }
    tokens.push_back(
        {{"token", token}, {"count", segs.size()}, {"segments", list}});
  }
  json manifest;
  manifest["format"] = kBankFormat;
  manifest["version"] = kBankVersion;
  manifest["norm_height"] = bank.norm_height();
  manifest["alphabet"] = json::parse(bank.alphabet().to_json());
  manifest["tokens"] = std::move(tokens);
  std::ofstream out(dir / "manifest.json", std::ios::binary);
  if (!out) throw IoError("cannot write bank manifest in " + dir.string());
  out << manifest.dump(1) << '\n';
}

SegmentBank load_bank(const fs::path& dir) {
  const json manifest = read_json_file(dir / "manifest.json");
  try {
    if (manifest.value("format", "") != kBankFormat) {
      throw FormatError(dir.string() + " is not a segment bank");
    }
    SegmentBank bank(Alphabet::from_json(manifest.at("alphabet").dump()),
                     manifest.at("norm_height").get<int>());
    for (const auto& entry : manifest.at("tokens")) {
      const auto token = entry.at("token").get<std::string>();
      for (const auto& s : entry.at("segments")) {
        Segment seg;
        seg.token = token;
        seg.image = read_png(dir / s.at("file").get<std::string>());
        seg.source_line_id = s.value("source_line_id", "");
        seg.start_px = s.value("start", 0);
        seg.end_px = s.value("end", 0);
        bank.add(std::move(seg));
      }
    }
    return bank;
  } catch (const json::exception& e) {
    throw FormatError(dir.string() + "/manifest.json: " + e.what());
  }
}

Segment sample_segment(const SegmentBank& bank, std::string_view token,
                       Rng& rng) {
  if (auto segs = bank.segments(token); !segs.empty()) {
    const auto i = rng.uniform_int(0, static_cast<std::int64_t>(segs.size()) - 1);
    return segs[static_cast<std::size_t>(i)];
  }
  const auto text = utf8::decode(token);
  if (text.empty()) throw DomainError("cannot sample an empty token");
  check_in_alphabet(bank.alphabet(), text);

  std::vector<LineImage> parts;
  std::string sources;
  for (std::size_t i = 0; i < text.size();) {
    std::size_t take = 0;
    const std::size_t longest = std::min<std::size_t>(
        text.size() - i, static_cast<std::size_t>(bank.longest_token()));
    for (std::size_t len = longest; len >= 1; --len) {
      if (bank.contains(utf8::encode(std::u32string_view(text).substr(i, len)))) {
        take = len;
        break;
      }
    }
    if (take == 0) {
      throw VocabularyError(
          "no segment in the bank for character " + utf8::describe(text[i]),
          text[i]);
    }
    auto piece = sample_segment(
        bank, utf8::encode(std::u32string_view(text).substr(i, take)), rng);
    if (!sources.empty()) sources += '+';
    sources += piece.source_line_id;
    parts.push_back(std::move(piece.image));
    i += take;
  }
  Segment out;
  out.token = std::string(token);
  out.image = hconcat(parts);
  out.source_line_id = std::move(sources);
  out.start_px = 0;
  out.end_px = out.image.width();
  return out;
}

}  // namespace scribeforge::segbank
