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
#include <functional>
#include <map>

#include "doctest.h"
#include "scribeforge/error.hpp"
#include "scribeforge/rng.hpp"

using namespace scribeforge;
using namespace scribeforge::metrics;

namespace {

// Memoised recursion on (i, j) suffixes; shares no code with the library.
template <class Seq>
std::size_t oracle_distance(const Seq& a, const Seq& b) {
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> memo;
  std::function<std::size_t(std::size_t, std::size_t)> d = [&](std::size_t i, std::size_t j) {
    if (i == a.size()) return b.size() - j;
    if (j == b.size()) return a.size() - i;
    if (auto it = memo.find({i, j}); it != memo.end()) return it->second;
    std::size_t best = a[i] == b[j] ? d(i + 1, j + 1) : 1 + d(i + 1, j + 1);
    best = std::min(best, 1 + d(i + 1, j));
    best = std::min(best, 1 + d(i, j + 1));
    memo[{i, j}] = best;
    return best;
  };
  return d(0, 0);
}

std::string random_string(Rng& rng, int max_len, std::string_view pool = "abc ") {
  std::string s;
  const auto n = rng.uniform_int(0, max_len);
  for (int i = 0; i < n; ++i) s += pool[rng.uniform_int(0, pool.size() - 1)];
  return s;
}

}  // namespace

TEST_CASE("cer fixtures") {
  CHECK(cer("abc", "abc") == 0.0);
  CHECK(cer("abd", "abc") == static_cast<double>(oracle_distance(std::string("abd"), std::string("abc"))) / 3);
  CHECK(cer("abd", "abc") == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  CHECK(cer("", "abc") == 1.0);
  CHECK(cer("ab\xC3\xA9", "abe") == doctest::Approx(1.0 / 3.0));
  CHECK_THROWS_AS(cer("abc", ""), DomainError);
}

TEST_CASE("wer fixtures") {
  CHECK(wer("the cat sat", "the cat sat") == 0.0);
  const std::vector<std::string> p{"a", "b"}, t{"a", "c"};
  CHECK(wer("a b", "a c") == static_cast<double>(oracle_distance(p, t)) / 2);
  CHECK(wer("a b", "a c") == 0.5);
  CHECK(wer("", "a b") == 1.0);
  CHECK(wer("a   b", "a b") == 0.0);
  CHECK(wer("a, b", "a b") == 0.5);
  CHECK_THROWS_AS(wer("a", "   "), DomainError);
  CHECK(split_words("  x  y,z\tw ") == std::vector<std::string>{"x", "y,z", "w"});
}

TEST_CASE("case handling") {
  CHECK(cer("ABC", "abc") == 1.0);
  CHECK(cer("ABC", "abc", {true}) == 0.0);
  CHECK(cer("\xD0\x96", "\xD0\xB6", {true}) == 0.0);
  CHECK(wer("Hello World", "hello world", {true}) == 0.0);
}

TEST_CASE("edit distance agrees with the recursive oracle") {
  Rng rng(42);
  for (int i = 0; i < 2000; ++i) {
    const auto a = random_string(rng, 10), b = random_string(rng, 10);
    CHECK(char_distance(a, b) == oracle_distance(a, b));
    const auto wa = split_words(a), wb = split_words(b);
    CHECK(word_distance(a, b) == oracle_distance(wa, wb));
  }
}

TEST_CASE("edit distance is a metric and cer is bounded") {
  Rng rng(43);
  for (int i = 0; i < 2000; ++i) {
    const auto a = random_string(rng, 15), b = random_string(rng, 15), c = random_string(rng, 15);
    CHECK(char_distance(a, a) == 0);
    CHECK(char_distance(a, b) == char_distance(b, a));
    CHECK(char_distance(a, c) <= char_distance(a, b) + char_distance(b, c));
    CHECK(word_distance(a, c) <= word_distance(a, b) + word_distance(b, c));
    if (!b.empty()) {
      const double bound = static_cast<double>(std::max(a.size(), b.size())) / b.size();
      CHECK(cer(a, b) <= bound);
      CHECK(cer(b, b) == 0.0);
    }
  }
}

TEST_CASE("string accuracy") {
  const std::vector<Prediction> all{{"a", "a"}, {"b", "b"}};
  const std::vector<Prediction> none{{"a", "b"}, {"b", "a"}};
  const std::vector<Prediction> half{{"a", "a"}, {"b", "a"}};
  CHECK(string_acc(all) == 100.0);
  CHECK(string_acc(none) == 0.0);
  CHECK(string_acc(half) == 50.0);
  CHECK_THROWS_AS(string_acc(std::vector<Prediction>{}), DomainError);
}

TEST_CASE("relative train time") {
  CHECK(t_arb(33.6) == 0.0);
  CHECK(t_arb(67.2, 33.6) == 1.0);
  CHECK(t_arb(134.4, 33.6) == 2.0);
  CHECK(kMinTrainTimeMs == 33.6);
  CHECK_THROWS_AS(t_arb(10.0), DomainError);
  CHECK_THROWS_AS(t_arb(10.0, 0.0), DomainError);
}

TEST_CASE("corpus-level evaluation") {
  const std::vector<Prediction> pairs{{"abd", "abc"}, {"a b", "a c"}, {"xyz", "xyz"}};
  const auto r = evaluate(pairs);
  CHECK(r.n == 3);
  CHECK(r.char_errors == 2);
  CHECK(r.ref_chars == 9);
  CHECK(r.cer == doctest::Approx(100.0 * 2 / 9));
  CHECK(r.word_errors == 2);
  CHECK(r.ref_words == 4);
  CHECK(r.wer == doctest::Approx(50.0));
  CHECK(r.acc == doctest::Approx(100.0 / 3));
  CHECK(to_json(r).find("\"n\":3") != std::string::npos);

  const std::vector<Prediction> same{{"x y", "x y"}};
  const auto s = evaluate(same);
  CHECK(s.cer == 0.0);
  CHECK(s.wer == 0.0);
  CHECK(s.acc == 100.0);
  CHECK_THROWS_AS(evaluate(std::vector<Prediction>{}), DomainError);
}
