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

#include "scribeforge/stackmix.hpp"

#include <cmath>
#include <cstdio>
#include <numeric>

#include "json.hpp"
#include "scribeforge/dataset.hpp"
#include "scribeforge/error.hpp"
#include "scribeforge/parallel.hpp"
#include "scribeforge/png_io.hpp"
#include "scribeforge/utf8.hpp"

namespace scribeforge::stackmix {

namespace fs = std::filesystem;

void TokenizerMixture::validate() const {
  if (max_lens.empty() || max_lens.size() != probs.size()) {
    throw DomainError("tokenizer mixture needs one probability per max_len");
  }
  for (int len : max_lens) {
    if (len < 1) throw DomainError("tokenizer max_len must be >= 1");
  }
  double sum = 0.0;
  for (double p : probs) {
    if (!(p >= 0.0)) throw DomainError("mixture probabilities must be >= 0");
    sum += p;
  }
  if (std::abs(sum - 1.0) > 1e-9) {
    throw DomainError("mixture probabilities sum to " + std::to_string(sum));
  }
}

int TokenizerMixture::sample(Rng& rng) const {
  const double u = rng.uniform();
  double acc = 0.0;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    acc += probs[i];
    if (u < acc) return max_lens[i];
  }
  return max_lens.back();
}

std::string TokenizerMixture::to_json() const {
  nlohmann::json j;
  j["max_lens"] = max_lens;
  j["probs"] = probs;
  return j.dump();
}

TokenizerMixture TokenizerMixture::from_json(std::string_view text) {
  TokenizerMixture mix;
  try {
    const auto j = nlohmann::json::parse(text);
    if (j.contains("max_lens")) mix.max_lens = j["max_lens"].get<std::vector<int>>();
    if (j.contains("probs")) mix.probs = j["probs"].get<std::vector<double>>();
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("tokenizer mixture JSON: ") + e.what());
  }
  mix.validate();
  return mix;
}

std::vector<std::string> mwe_tokenize(std::string_view text,
                                      const segbank::SegmentBank& bank,
                                      int max_len) {
  if (max_len < 1) throw DomainError("max_len must be >= 1");
  const auto chars = utf8::decode(text);
  const std::u32string_view view = chars;
  for (char32_t c : chars) {
    if (!bank.alphabet().contains(c)) {
      throw VocabularyError(
          "character " + utf8::describe(c) + " is not in the bank alphabet", c);
    }
  }
  std::vector<std::string> tokens;
  const auto longest = static_cast<std::size_t>(
      std::min(max_len, std::max(bank.longest_token(), 1)));
  for (std::size_t i = 0; i < chars.size();) {
    std::size_t take = 1;
    for (std::size_t len = std::min(longest, chars.size() - i); len > 1; --len) {
      if (bank.contains(utf8::encode(view.substr(i, len)))) {
        take = len;
        break;
      }
    }
    tokens.push_back(utf8::encode(view.substr(i, take)));
    i += take;
  }
  return tokens;
}

GeneratedLine stackmix_line(std::string_view text,
                            const segbank::SegmentBank& bank,
                            const TokenizerMixture& mix, Rng& rng) {
  if (text.empty()) throw DomainError("stackmix_line: empty text");
  GeneratedLine out;
  out.max_len = mix.sample(rng);
  std::vector<LineImage> parts;
  for (auto& token : mwe_tokenize(text, bank, out.max_len)) {
    auto seg = segbank::sample_segment(bank, token, rng);
    parts.push_back(normalize_background(seg.image));
    out.segment_widths.push_back(parts.back().width());
    out.provenance.push_back({std::move(token), std::move(seg.source_line_id)});
  }
  out.image = hconcat(parts);
  out.transcript = std::string(text);
  return out;
}

GenerateReport generate_corpus(const fs::path& corpus,
                               const segbank::SegmentBank& bank,
                               const TokenizerMixture& mix,
                               const fs::path& out_dir,
                               const GenerateOptions& options) {
  mix.validate();
  // Only characters the bank can actually draw are admitted.
  std::u32string drawable;
  for (char32_t c : bank.alphabet().symbols()) {
    if (bank.contains(utf8::encode(c))) drawable.push_back(c);
  }
  corpus::CorpusStats stats;
  const auto lines = corpus::load_usable_lines(corpus, Alphabet(drawable),
                                               options.filter, &stats);
  if (lines.empty()) {
    throw FormatError(corpus.string() +
                      ": no usable lines after filtering to the bank alphabet");
  }

  fs::create_directories(out_dir / "images");
  std::vector<ManifestEntry> entries(options.n_lines);
  parallel_for(options.n_lines, options.jobs, [&](std::size_t i) {
    Rng rng(derive_seed(options.seed, i));
    const auto pick = rng.uniform_int(0, static_cast<std::int64_t>(lines.size()) - 1);
    const auto line = stackmix_line(lines[static_cast<std::size_t>(pick)], bank,
                                    mix, rng);
    char id[64];
    std::snprintf(id, sizeof(id), "%s_%06zu", options.id_prefix.c_str(), i);
    const fs::path image = out_dir / "images" / (std::string(id) + ".png");
    write_png(image, line.image);
    entries[i] = {id, image, line.transcript, ""};
  });

  GenerateReport report;
  report.manifest = out_dir / "manifest.tsv";
  write_manifest(report.manifest, entries);
  report.written = entries.size();
  report.usable_lines = lines.size();
  report.skipped_lines = stats.total_lines - stats.usable_lines;
  return report;
}

}  // namespace scribeforge::stackmix
