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

// Acceptance suite: one PASS/FAIL line per criterion. Tolerances and time
// budgets are fixed here; the process exits non-zero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "ctc_oracle.hpp"
#include "scribeforge/blot.hpp"
#include "scribeforge/ctc_align.hpp"
#include "scribeforge/dataset.hpp"
#include "scribeforge/geometry.hpp"
#include "scribeforge/metrics.hpp"
#include "scribeforge/png_io.hpp"
#include "scribeforge/segbank.hpp"
#include "scribeforge/stackmix.hpp"
#include "scribeforge/utf8.hpp"
#include "stats.hpp"
#include "synth_font.hpp"
#include "temp_dir.hpp"

using namespace scribeforge;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

// Collects the first few failure descriptions of a criterion.
class Check {
 public:
  void expect(bool ok, const std::string& what) {
    if (ok) return;
    ++failures_;
    if (failures_ <= 3) notes_ += (notes_.empty() ? "" : "; ") + what;
  }
  bool ok() const { return failures_ == 0; }
  Outcome outcome(const std::string& summary) const {
    if (ok()) return {true, summary};
    return {false, summary + "; " + std::to_string(failures_) + " failures: " + notes_};
  }

 private:
  std::size_t failures_ = 0;
  std::string notes_;
};

struct Criterion {
  std::string name;
  double budget_s;
  std::function<Outcome()> run;
};

// --- geometry ----------------------------------------------------------------

Outcome partition_of_unity() {
  using geometry::bernstein;
  Rng rng(1);
  Check c;
  double worst = 0.0;
  for (int n = 0; n <= 10; ++n) {
    for (int i = 0; i < 1000; ++i) {
      const double s = rng.uniform();
      double sum = 0.0;
      for (int j = 0; j <= n; ++j) sum += bernstein(j, n, s);
      worst = std::max(worst, std::abs(sum - 1.0));
      c.expect(std::abs(sum - 1.0) <= 1e-9, "n=" + std::to_string(n));
    }
  }
  std::ostringstream os;
  os << "11000 evaluations, max |sum - 1| = " << worst;
  return c.outcome(os.str());
}

double cross(const geometry::Point2& o, const geometry::Point2& a, const geometry::Point2& b) {
  return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

double segment_distance(const geometry::Point2& p, const geometry::Point2& a,
                        const geometry::Point2& b) {
  const double dx = b.x - a.x, dy = b.y - a.y;
  const double len2 = dx * dx + dy * dy;
  const double t = len2 > 0 ? std::clamp(((p.x - a.x) * dx + (p.y - a.y) * dy) / len2, 0.0, 1.0) : 0.0;
  return std::hypot(p.x - (a.x + t * dx), p.y - (a.y + t * dy));
}

bool in_hull(std::vector<geometry::Point2> pts, const geometry::Point2& p, double tol) {
  std::sort(pts.begin(), pts.end(), [](const auto& a, const auto& b) {
    return a.x < b.x || (a.x == b.x && a.y < b.y);
  });
  std::vector<geometry::Point2> hull;
  if (pts.size() >= 3) {
    hull.resize(2 * pts.size());
    std::size_t k = 0;
    for (const auto& q : pts) {
      while (k >= 2 && cross(hull[k - 2], hull[k - 1], q) <= 0) --k;
      hull[k++] = q;
    }
    for (std::size_t i = pts.size() - 1, t = k + 1; i-- > 0;) {
      while (k >= t && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
      hull[k++] = pts[i];
    }
    hull.resize(k - 1);
  } else {
    hull = pts;
  }
  if (hull.size() >= 3) {
    bool inside = true;
    for (std::size_t i = 0; i < hull.size(); ++i) {
      if (cross(hull[i], hull[(i + 1) % hull.size()], p) < 0) inside = false;
    }
    if (inside) return true;
  }
  for (std::size_t i = 0; i < hull.size(); ++i) {
    if (segment_distance(p, hull[i], hull[(i + 1) % hull.size()]) <= tol) return true;
  }
  return false;
}

Outcome bezier_invariants() {
  using namespace geometry;
  Rng rng(2);
  Check c;
  for (int i = 0; i < 10000; ++i) {
    const int n = static_cast<int>(rng.uniform_int(1, 6));
    std::vector<Point2> pts;
    for (int j = 0; j <= n; ++j) pts.push_back({rng.uniform(-500, 500), rng.uniform(-500, 500)});
    const ControlPolygon poly(pts);
    c.expect(bezier_point(poly, 0.0) == pts.front(), "B(0) != v0");
    c.expect(bezier_point(poly, 1.0) == pts.back(), "B(1) != vn");
    for (int k = 0; k < 5; ++k) {
      const double s = rng.uniform();
      const auto p = bezier_point(poly, s);
      c.expect(in_hull(pts, p, 1e-9), "point outside control hull");
      const auto q = bezier_point(poly.reversed(), 1.0 - s);
      c.expect(std::abs(p.x - q.x) <= 1e-9 && std::abs(p.y - q.y) <= 1e-9, "reversal asymmetry");
    }
  }
  return c.outcome("10000 polygons of degree 1..6, 5 parameters each");
}

// --- CTC -------------------------------------------------------------------------

struct OracleStats {
  int instances = 0;
  double worst_score = 0.0;
  double worst_width = 0.0;
  Check paths;
  Check widths;
};

OracleStats& oracle_run() {
  static OracleStats stats = [] {
    OracleStats st;
    Rng rng(3);
    const std::u32string pool = U"xyz";
    while (st.instances < 12000) {
      const int alpha = static_cast<int>(rng.uniform_int(1, 3));
      const Alphabet a(pool.substr(0, alpha));
      std::u32string text;
      const auto len = rng.uniform_int(0, 3);
      for (int i = 0; i < len; ++i) text += a.symbols()[rng.uniform_int(0, alpha - 1)];
      const int lo = std::max(1, ctc::min_timesteps(text));
      const int N = static_cast<int>(rng.uniform_int(lo, 8));
      const int W = static_cast<int>(rng.uniform_int(N, 400));
      const auto m = testing::random_grid_matrix(rng, N, a.num_classes(), W);
      const auto labels = a.encode(text);
      const auto oracle = testing::brute_force_align(m, labels, a.blank_index());
      const auto al = ctc::forced_align(m, text, a);
      ++st.instances;
      const double diff = std::abs(al.score - oracle.score);
      st.worst_score = std::max(st.worst_score, diff);
      st.paths.expect(oracle.feasible, "oracle found no path");
      st.paths.expect(diff <= 1e-9, "score differs by " + std::to_string(diff));
      st.paths.expect(al.path == oracle.path, "path differs");
      const auto ob = testing::oracle_boundaries(oracle.path, static_cast<int>(labels.size()), N, W);
      bool same = ob.size() == al.boundaries.size();
      for (std::size_t u = 0; same && u < ob.size(); ++u) {
        same = ob[u].start == al.boundaries[u].start_px && ob[u].end == al.boundaries[u].end_px &&
               ob[u].k == al.boundaries[u].k;
      }
      st.paths.expect(same, "boundaries differ");
      for (const auto& b : al.boundaries) {
        const double dev = std::abs((b.end_px - b.start_px) - static_cast<double>(b.k) * W / N);
        st.worst_width = std::max(st.worst_width, dev);
        st.widths.expect(dev < 2.0, "width deviates by " + std::to_string(dev));
      }
    }
    return st;
  }();
  return stats;
}

Outcome ctc_oracle() {
  auto& st = oracle_run();
  std::ostringstream os;
  os << st.instances << " instances, max score diff " << st.worst_score;
  return st.paths.outcome(os.str());
}

Outcome boundary_formula() {
  auto& st = oracle_run();
  std::ostringstream os;
  os << st.instances << " instances, max |width - k*W/N| = " << st.worst_width << " px (< 2)";
  return st.widths.outcome(os.str());
}

// --- end to end ------------------------------------------------------------------

Outcome synthetic_end_to_end() {
  testing::TempDir dir("acceptance");
  Check c;
  const auto ds = testing::write_synth_dataset(dir / "data", 200, 2024);
  const auto manifest = read_manifest(ds.manifest);
  const auto report = ctc::align_dataset(manifest, ds.probs_dir, ds.alphabet, 4);
  c.expect(report.failures.empty(), std::to_string(report.failures.size()) + " lines failed to align");
  write_annotations(dir / "ann.jsonl", report.records);

  int total = 0, good = 0;
  for (std::size_t i = 0; i < report.records.size(); ++i) {
    const auto& rec = report.records[i];
    const auto& extents = ds.lines[i].extents;
    c.expect(rec.boundaries.size() == extents.size(), "boundary count mismatch");
    for (std::size_t u = 0; u < std::min(extents.size(), rec.boundaries.size()); ++u) {
      ++total;
      good += testing::within_extent(rec.boundaries[u].start_px, rec.boundaries[u].end_px,
                                     extents[u], 0.1);
    }
  }
  const double frac = total ? static_cast<double>(good) / total : 0.0;
  c.expect(frac >= 0.95, "only " + std::to_string(frac) + " of boundaries within 10%");

  segbank::BankOptions opts;
  opts.norm_height = 64;
  opts.jobs = 4;
  segbank::BuildReport build;
  const auto bank = segbank::build_bank(dir / "ann.jsonl", ds.manifest, ds.alphabet, opts, &build);
  c.expect(build.lines_skipped == 0, "bank skipped lines");
  segbank::save_bank(bank, dir / "bank");
  const auto loaded = segbank::load_bank(dir / "bank");

  std::vector<std::string> corpus;
  for (const auto& e : manifest) corpus.push_back(e.transcript);
  const stackmix::TokenizerMixture mix;
  int fidelity = 0, additive = 0;
  for (std::size_t i = 0; i < 200; ++i) {
    Rng rng(derive_seed(7, i));
    const auto& text = corpus[(i * 37) % corpus.size()];
    const auto line = stackmix::stackmix_line(text, loaded, mix, rng);
    std::string joined;
    for (const auto& p : line.provenance) joined += p.token;
    fidelity += line.transcript == text && joined == text;
    additive += line.image.width() ==
                    std::accumulate(line.segment_widths.begin(), line.segment_widths.end(), 0) &&
                line.image.height() == opts.norm_height;
  }
  c.expect(fidelity == 200, std::to_string(200 - fidelity) + " transcripts differ");
  c.expect(additive == 200, std::to_string(200 - additive) + " widths not additive");

  std::string text;
  for (const auto& t : corpus) text += t + "\n";
  {
    std::FILE* f = std::fopen((dir / "corpus.txt").c_str(), "wb");
    std::fwrite(text.data(), 1, text.size(), f);
    std::fclose(f);
  }
  stackmix::GenerateOptions gen;
  gen.n_lines = 200;
  gen.seed = 11;
  gen.jobs = 4;
  const auto g = stackmix::generate_corpus(dir / "corpus.txt", loaded, mix, dir / "gen", gen);
  const std::set<std::string> allowed(corpus.begin(), corpus.end());
  const auto out = read_manifest(g.manifest);
  c.expect(out.size() == 200, "generated " + std::to_string(out.size()) + " lines");
  for (const auto& e : out) {
    c.expect(allowed.contains(e.transcript), "generated transcript not in corpus");
    c.expect(read_png(e.image_path).height() == opts.norm_height, "generated height");
  }

  std::ostringstream os;
  os << "200 lines aligned, " << good << "/" << total << " boundaries within 10% ("
     << 100.0 * frac << "%), " << bank.token_count() << " bank tokens, 200+200 generated lines";
  return c.outcome(os.str());
}

// --- blot ------------------------------------------------------------------------

Outcome blot_determinism_locality() {
  Check c;
  blot::BlotParams p;
  p.proba = 1.0;
  blot::BlotParams off = p;
  off.proba = 0.0;
  Rng gen(4);
  std::size_t changed = 0;
  for (int i = 0; i < 1000; ++i) {
    const int w = static_cast<int>(gen.uniform_int(8, 600));
    const int h = static_cast<int>(gen.uniform_int(32, 160));
    LineImage img(w, h);
    for (auto& px : img.pixels()) px = static_cast<std::uint8_t>(gen.uniform_int(0, 255));

    Rng a(derive_seed(99, i)), b(derive_seed(99, i));
    const auto r1 = blot::apply_blot_traced(img, p, a);
    const auto r2 = blot::apply_blot_traced(img, p, b);
    c.expect(r1.image == r2.image, "same seed, different bytes");

    for (int y = 0; y < h; ++y) {
      for (int x = 0; x < w; ++x) {
        const auto before = img.at(x, y), after = r1.image.at(x, y);
        c.expect(after <= before, "pixel got lighter");
        if (after == before) continue;
        ++changed;
        bool boxed = false;
        for (const auto& r : r1.trace.regions) {
          boxed |= x >= r.x0 && x < r.x1 && y >= r.y0 && y < r.y1;
        }
        c.expect(boxed, "pixel changed outside every blot box");
      }
    }
    Rng z(derive_seed(99, i));
    c.expect(blot::apply_blot(img, off, z) == img, "proba=0 changed the image");
  }
  return c.outcome("1000 images, " + std::to_string(changed) + " darkened pixels checked");
}

// --- stackmix mixture ------------------------------------------------------------

Outcome mixture_frequencies() {
  segbank::SegmentBank bank(Alphabet(U"ab"), 4);
  for (const char* k : {"a", "b", "ab", "ba", "aba"}) {
    bank.add({k, LineImage(static_cast<int>(std::strlen(k)) * 3, 4, 200), "src", 0, 3});
  }
  const stackmix::TokenizerMixture mix;
  std::vector<std::size_t> counts(mix.max_lens.size(), 0);
  for (int i = 0; i < 60000; ++i) {
    Rng rng(derive_seed(60000, i));
    const auto line = stackmix::stackmix_line("abab", bank, mix, rng);
    const auto it = std::find(mix.max_lens.begin(), mix.max_lens.end(), line.max_len);
    ++counts[it - mix.max_lens.begin()];
  }
  const auto test = testing::chi_square(counts, mix.probs);
  std::ostringstream os;
  os << "60000 lines, counts [";
  for (std::size_t i = 0; i < counts.size(); ++i) os << (i ? "," : "") << counts[i];
  os << "], chi2 = " << test.statistic << ", p = " << test.p_value;
  Check c;
  c.expect(test.p_value > 0.01, "p <= 0.01");
  return c.outcome(os.str());
}

// --- metrics ---------------------------------------------------------------------

template <class Seq>
std::size_t dp_distance(const Seq& a, const Seq& b) {
  std::vector<std::vector<std::size_t>> d(a.size() + 1, std::vector<std::size_t>(b.size() + 1));
  for (std::size_t i = 0; i <= a.size(); ++i) d[i][0] = i;
  for (std::size_t j = 0; j <= b.size(); ++j) d[0][j] = j;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    for (std::size_t j = 1; j <= b.size(); ++j) {
      d[i][j] = std::min({d[i - 1][j] + 1, d[i][j - 1] + 1,
                          d[i - 1][j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1)});
    }
  }
  return d[a.size()][b.size()];
}

Outcome metrics_fixtures() {
  Check c;
  const double cer_expected =
      static_cast<double>(dp_distance(std::string("abd"), std::string("abc"))) / 3.0;
  const double wer_expected =
      static_cast<double>(dp_distance(std::vector<std::string>{"a", "b"},
                                      std::vector<std::string>{"a", "c"})) / 2.0;
  const double got_cer = metrics::cer("abd", "abc");
  const double got_wer = metrics::wer("a b", "a c");
  const double got_t = metrics::t_arb(67.2, 33.6);
  c.expect(std::abs(cer_expected - 1.0 / 3.0) <= 1e-15, "oracle cer");
  c.expect(std::abs(got_cer - cer_expected) <= 1e-15, "cer");
  c.expect(wer_expected == 0.5 && got_wer == wer_expected, "wer");
  c.expect(got_t == 1.0, "t_arb");
  std::ostringstream os;
  os.precision(17);
  os << "cer = " << got_cer << ", wer = " << got_wer << ", t_arb = " << got_t;
  return c.outcome(os.str());
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {"bernstein-partition-of-unity", 1.0, partition_of_unity},
      {"bezier-invariants", 5.0, bezier_invariants},
      {"ctc-oracle-equivalence", 60.0, ctc_oracle},
      {"boundary-width-formula", 60.0, boundary_formula},
      {"synthetic-end-to-end", 120.0, synthetic_end_to_end},
      {"blot-determinism-locality", 30.0, blot_determinism_locality},
      {"tokenizer-mixture-frequencies", 60.0, mixture_frequencies},
      {"metrics-fixtures", 1.0, metrics_fixtures},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (secs > c.budget_s) {
      o.pass = false;
      o.detail += "; exceeded " + std::to_string(c.budget_s) + " s budget";
    }
    failed += !o.pass;
    std::printf("%s  %-30s %8.3f s  %s\n", o.pass ? "PASS" : "FAIL", c.name.c_str(), secs,
                o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%zu criteria, %d failed\n", criteria.size(), failed);
  return failed == 0 ? 0 : 1;
}
