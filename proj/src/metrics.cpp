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

#include "scribeforge/metrics.hpp"

#include <cmath>

#include "json.hpp"
#include "scribeforge/error.hpp"
#include "scribeforge/utf8.hpp"

namespace scribeforge::metrics {
namespace {

// Simple case folding for Latin, Latin-1, Greek and Cyrillic capitals.
char32_t fold(char32_t c) {
  if (c >= U'A' && c <= U'Z') return c + 32;
  if ((c >= 0xC0 && c <= 0xDE && c != 0xD7) ||
      (c >= 0x391 && c <= 0x3AB && c != 0x3A2) || (c >= 0x410 && c <= 0x42F)) {
    return c + 32;
  }
  if (c >= 0x400 && c <= 0x40F) return c + 80;
  return c;
}

std::u32string prepare(std::string_view text, const CompareOptions& options) {
  auto chars = utf8::decode(text);
  if (options.ignore_case) {
    for (auto& c : chars) c = fold(c);
  }
  return chars;
}

bool is_space(char32_t c) {
  return c == U' ' || c == U'\t' || c == U'\n' || c == U'\r' || c == U'\v' ||
         c == U'\f' || c == 0xA0 || c == 0x3000;
}

std::vector<std::u32string> words_of(const std::u32string& text) {
  std::vector<std::u32string> words;
  std::u32string cur;
  for (char32_t c : text) {
    if (is_space(c)) {
      if (!cur.empty()) words.push_back(std::move(cur));
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  if (!cur.empty()) words.push_back(std::move(cur));
  return words;
}

}  // namespace

std::size_t char_distance(std::string_view a, std::string_view b,
                          const CompareOptions& options) {
  const auto x = prepare(a, options);
  const auto y = prepare(b, options);
  return edit_distance<char32_t>(x, y);
}

std::size_t word_distance(std::string_view a, std::string_view b,
                          const CompareOptions& options) {
  const auto x = words_of(prepare(a, options));
  const auto y = words_of(prepare(b, options));
  return edit_distance<std::u32string>(x, y);
}

std::vector<std::string> split_words(std::string_view text) {
  std::vector<std::string> out;
  for (const auto& w : words_of(utf8::decode(text))) {
    out.push_back(utf8::encode(w));
  }
  return out;
}

double cer(std::string_view pred, std::string_view truth,
           const CompareOptions& options) {
  const auto n = utf8::decode(truth).size();
  if (n == 0) throw DomainError("cer: reference text is empty");
  return static_cast<double>(char_distance(pred, truth, options)) / n;
}

double wer(std::string_view pred, std::string_view truth,
           const CompareOptions& options) {
  const auto n = words_of(utf8::decode(truth)).size();
  if (n == 0) throw DomainError("wer: reference has no words");
  return static_cast<double>(word_distance(pred, truth, options)) / n;
}

double string_acc(std::span<const Prediction> pairs,
                  const CompareOptions& options) {
  if (pairs.empty()) throw DomainError("string_acc: no pairs");
  std::size_t hits = 0;
  for (const auto& p : pairs) {
    hits += prepare(p.pred, options) == prepare(p.truth, options);
  }
  return 100.0 * static_cast<double>(hits) / pairs.size();
}

double t_arb(double t_ms, double t_min_ms) {
  if (!(t_min_ms > 0.0)) throw DomainError("t_arb: t_min must be positive");
  if (!(t_ms >= t_min_ms)) throw DomainError("t_arb: t is below t_min");
  return std::log2(t_ms / t_min_ms);
}

EvalReport evaluate(std::span<const Prediction> pairs,
                    const CompareOptions& options) {
  if (pairs.empty()) throw DomainError("evaluate: no pairs");
  EvalReport r;
  r.n = pairs.size();
  for (const auto& p : pairs) {
    const auto pred = prepare(p.pred, options);
    const auto truth = prepare(p.truth, options);
    r.char_errors += edit_distance<char32_t>(pred, truth);
    r.ref_chars += truth.size();
    const auto pw = words_of(pred);
    const auto tw = words_of(truth);
    r.word_errors += edit_distance<std::u32string>(pw, tw);
    r.ref_words += tw.size();
  }
  if (r.ref_chars == 0) throw DomainError("evaluate: references are empty");
  r.cer = 100.0 * static_cast<double>(r.char_errors) / r.ref_chars;
  r.wer = r.ref_words == 0
              ? 0.0
              : 100.0 * static_cast<double>(r.word_errors) / r.ref_words;
  r.acc = string_acc(pairs, options);
  return r;
}

std::string to_json(const EvalReport& r) {
  nlohmann::json j;
  j["cer"] = r.cer;
  j["wer"] = r.wer;
  j["acc"] = r.acc;
  j["n"] = r.n;
  j["char_errors"] = r.char_errors;
  j["ref_chars"] = r.ref_chars;
  j["word_errors"] = r.word_errors;
  j["ref_words"] = r.ref_words;
  return j.dump();
}

}  // namespace scribeforge::metrics
