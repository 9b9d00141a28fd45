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

#include "scribeforge/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "scribeforge/alphabet.hpp"
#include "scribeforge/blot.hpp"
#include "scribeforge/corpus.hpp"
#include "scribeforge/dataset.hpp"
#include "scribeforge/error.hpp"
#include "scribeforge/metrics.hpp"
#include "scribeforge/parallel.hpp"
#include "scribeforge/png_io.hpp"
#include "scribeforge/segbank.hpp"
#include "scribeforge/stackmix.hpp"
#include "scribeforge/utf8.hpp"

namespace scribeforge::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kExitItemFailures = 1;
constexpr int kExitFatal = 2;

struct Common {
  std::optional<std::uint64_t> seed;
  int jobs = 1;
  bool keep_going = false;
};

std::uint64_t resolve_seed(const Common& common, std::ostream& err) {
  if (common.seed) return *common.seed;
  if (const char* env = std::getenv("SCRIBEFORGE_SEED"); env && *env) {
    try {
      std::size_t used = 0;
      const auto seed = std::stoull(env, &used);
      if (used == std::char_traits<char>::length(env)) return seed;
    } catch (const std::exception&) {
    }
    throw DomainError(std::string("SCRIBEFORGE_SEED is not an integer: ") + env);
  }
  std::random_device rd;
  const std::uint64_t seed =
      (static_cast<std::uint64_t>(rd()) << 32) ^ static_cast<std::uint64_t>(rd());
  err << "seed: " << seed << '\n';
  return seed;
}

std::string read_text_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::vector<std::string> read_lines(const fs::path& path) {
  const std::string text = read_text_file(path);
  std::vector<std::string> lines;
  std::size_t start = 0;
  while (start < text.size()) {
    auto nl = text.find('\n', start);
    if (nl == std::string::npos) nl = text.size();
    std::string line = text.substr(start, nl - start);
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(std::move(line));
    start = nl + 1;
  }
  return lines;
}

// A JSON alphabet file, or a bank directory whose manifest carries one.
Alphabet alphabet_from_arg(const fs::path& path) {
  if (fs::is_directory(path)) {
    const auto manifest = json::parse(read_text_file(path / "manifest.json"));
    return Alphabet::from_json(manifest.at("alphabet").dump());
  }
  return load_alphabet(path);
}

int finish(std::ostream& out, json summary, std::size_t failures,
           const Common& common) {
  out << summary.dump() << '\n';
  return failures > 0 && !common.keep_going ? kExitItemFailures : 0;
}

// --- blot ----------------------------------------------------------------

struct BlotArgs {
  fs::path in_dir;
  fs::path out_dir;
  fs::path config;
  std::optional<int> min_h, max_h, min_w, max_w, incline, count_min, count_max,
      thickness, bands;
  std::optional<double> intensity, transparency, proba, duplicate_proba;
};

int cmd_blot(const BlotArgs& a, const Common& common, std::ostream& out,
             std::ostream& err) {
  blot::BlotParams params;
  if (!a.config.empty()) {
    params = blot::BlotParams::from_json(read_text_file(a.config));
  }
  auto apply = [](auto& field, const auto& flag) {
    if (flag) field = *flag;
  };
  apply(params.min_h, a.min_h);
  apply(params.max_h, a.max_h);
  apply(params.min_w, a.min_w);
  apply(params.max_w, a.max_w);
  apply(params.incline, a.incline);
  apply(params.count_min, a.count_min);
  apply(params.count_max, a.count_max);
  apply(params.thickness, a.thickness);
  apply(params.bands, a.bands);
  apply(params.intensity, a.intensity);
  apply(params.transparency, a.transparency);
  apply(params.proba, a.proba);
  apply(params.duplicate_proba, a.duplicate_proba);
  params.validate();

  if (!fs::is_directory(a.in_dir)) {
    throw IoError("input directory " + a.in_dir.string() + " does not exist");
  }
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(a.in_dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".png") {
      files.push_back(entry.path());
    }
  }
  std::sort(files.begin(), files.end());
  const std::uint64_t seed = resolve_seed(common, err);
  fs::create_directories(a.out_dir);

  struct Outcome {
    bool applied = false;
    std::string error;
  };
  std::vector<Outcome> outcomes(files.size());
  parallel_for(files.size(), common.jobs, [&](std::size_t i) {
    try {
      const auto image = read_png(files[i]);
      Rng rng(derive_seed(seed, i));
      const auto result = blot::apply_blot_traced(image, params, rng);
      write_png(a.out_dir / files[i].filename(), result.image);
      outcomes[i].applied = result.trace.status == blot::BlotStatus::kApplied;
    } catch (const std::exception& e) {
      outcomes[i].error = e.what();
    }
  });

  json failures = json::array();
  std::size_t applied = 0;
  for (std::size_t i = 0; i < files.size(); ++i) {
    if (!outcomes[i].error.empty()) {
      err << "error: " << files[i].string() << ": " << outcomes[i].error << '\n';
      failures.push_back(
          {{"file", files[i].string()}, {"error", outcomes[i].error}});
    } else {
      applied += outcomes[i].applied;
    }
  }
  json summary{{"command", "blot"},
               {"seed", seed},
               {"files", files.size()},
               {"blotted", applied},
               {"failed", failures.size()},
               {"failures", failures},
               {"params", json::parse(params.to_json())}};
  return finish(out, std::move(summary), failures.size(), common);
}

// --- align ---------------------------------------------------------------

struct AlignArgs {
  fs::path manifest;
  fs::path probs;
  fs::path alphabet;
  fs::path out;
  fs::path failures;
};

int cmd_align(const AlignArgs& a, const Common& common, std::ostream& out,
              std::ostream& err) {
  const auto alphabet = alphabet_from_arg(a.alphabet);
  const auto manifest = read_manifest(a.manifest);
  const auto report =
      ctc::align_dataset(manifest, a.probs, alphabet, common.jobs);
  write_annotations(a.out, report.records);

  json failures = json::array();
  for (const auto& f : report.failures) {
    err << "error: line " << f.line_id << ": " << f.reason << '\n';
    failures.push_back({{"line_id", f.line_id}, {"reason", f.reason}});
  }
  if (!a.failures.empty()) {
    std::ofstream log(a.failures, std::ios::binary);
    if (!log) throw IoError("cannot write " + a.failures.string());
    for (const auto& f : failures) log << f.dump() << '\n';
  }
  json summary{{"command", "align"},
               {"lines", manifest.size()},
               {"aligned", report.records.size()},
               {"failed", report.failures.size()},
               {"failures", failures},
               {"annotations", a.out.string()}};
  return finish(out, std::move(summary), report.failures.size(), common);
}

// --- bank build ----------------------------------------------------------

struct BankArgs {
  fs::path annotations;
  fs::path images;
  fs::path alphabet;
  fs::path out;
  segbank::BankOptions options;
};

int cmd_bank_build(BankArgs a, const Common& common, std::ostream& out,
                   std::ostream& err) {
  Alphabet alphabet;
  if (!a.alphabet.empty()) {
    alphabet = alphabet_from_arg(a.alphabet);
  } else {
    std::set<char32_t> seen;
    for (const auto& ann : read_annotations(a.annotations)) {
      for (char32_t c : utf8::decode(ann.transcript)) seen.insert(c);
    }
    alphabet = Alphabet(std::u32string(seen.begin(), seen.end()));
  }
  a.options.seed = resolve_seed(common, err);
  a.options.jobs = common.jobs;
  segbank::BuildReport report;
  const auto bank =
      segbank::build_bank(a.annotations, a.images, alphabet, a.options, &report);
  segbank::save_bank(bank, a.out);
  for (const auto& w : report.warnings) err << "warning: " << w << '\n';
  json summary{{"command", "bank build"},
               {"seed", a.options.seed},
               {"lines_used", report.lines_used},
               {"lines_skipped", report.lines_skipped},
               {"tokens", bank.token_count()},
               {"segments", bank.segment_count()},
               {"norm_height", bank.norm_height()},
               {"bank", a.out.string()}};
  return finish(out, std::move(summary), report.lines_skipped, common);
}

// --- stackmix ------------------------------------------------------------

struct StackmixArgs {
  fs::path bank;
  fs::path corpus;
  fs::path out;
  fs::path config;
  std::size_t n = 0;
  std::string on_oov = "skip-line";
  int max_line_len = 120;
  std::string prefix = "stackmix";
  int page_lines = 0;
};

void write_pages(const fs::path& out_dir, const fs::path& manifest,
                 int lines_per_page) {
  const auto entries = read_manifest(manifest);
  fs::create_directories(out_dir / "pages");
  for (std::size_t first = 0, page = 0; first < entries.size();
       first += lines_per_page, ++page) {
    std::vector<LineImage> lines;
    int width = 1, height = 0;
    for (std::size_t i = first;
         i < std::min(entries.size(), first + lines_per_page); ++i) {
      lines.push_back(read_png(entries[i].image_path));
      width = std::max(width, lines.back().width());
      height += lines.back().height();
    }
    LineImage sheet(width, height);
    int y0 = 0;
    for (const auto& l : lines) {
      for (int y = 0; y < l.height(); ++y) {
        for (int x = 0; x < l.width(); ++x) sheet.at(x, y0 + y) = l.at(x, y);
      }
      y0 += l.height();
    }
    char name[32];
    std::snprintf(name, sizeof(name), "page_%04zu.png", page);
    write_png(out_dir / "pages" / name, sheet);
  }
}

int cmd_stackmix(const StackmixArgs& a, const Common& common,
                 std::ostream& out, std::ostream& err) {
  stackmix::TokenizerMixture mix;
  if (!a.config.empty()) {
    mix = stackmix::TokenizerMixture::from_json(read_text_file(a.config));
  }
  const auto bank = segbank::load_bank(a.bank);
  stackmix::GenerateOptions options;
  options.n_lines = a.n;
  options.seed = resolve_seed(common, err);
  options.filter = {corpus::parse_filter_mode(a.on_oov), a.max_line_len};
  options.jobs = common.jobs;
  options.id_prefix = a.prefix;
  const auto report =
      stackmix::generate_corpus(a.corpus, bank, mix, a.out, options);
  if (a.page_lines > 0) write_pages(a.out, report.manifest, a.page_lines);
  json summary{{"command", "stackmix"},
               {"seed", options.seed},
               {"written", report.written},
               {"usable_corpus_lines", report.usable_lines},
               {"skipped_corpus_lines", report.skipped_lines},
               {"manifest", report.manifest.string()}};
  return finish(out, std::move(summary), 0, common);
}

// --- filter --------------------------------------------------------------

struct FilterArgs {
  fs::path in;
  fs::path out;
  fs::path alphabet;
  std::string mode = "skip-line";
  int max_line_len = 120;
};

int cmd_filter(const FilterArgs& a, const Common& common, std::ostream& out) {
  const auto alphabet = alphabet_from_arg(a.alphabet);
  const auto stats = corpus::filter_corpus(
      a.in, a.out, alphabet,
      {corpus::parse_filter_mode(a.mode), a.max_line_len});
  json summary = json::parse(corpus::stats_to_json(stats));
  summary["command"] = "filter";
  summary["mode"] = a.mode;
  return finish(out, std::move(summary), 0, common);
}

// --- eval ----------------------------------------------------------------

struct EvalArgs {
  fs::path pred;
  fs::path truth;
  bool ignore_case = false;
};

int cmd_eval(const EvalArgs& a, const Common& common, std::ostream& out) {
  const auto pred = read_lines(a.pred);
  const auto truth = read_lines(a.truth);
  if (pred.size() != truth.size()) {
    throw FormatError("prediction file has " + std::to_string(pred.size()) +
                      " lines but reference file has " +
                      std::to_string(truth.size()));
  }
  std::vector<metrics::Prediction> pairs;
  for (std::size_t i = 0; i < pred.size(); ++i) {
    pairs.push_back({pred[i], truth[i]});
  }
  const auto report = metrics::evaluate(pairs, {a.ignore_case});
  return finish(out, json::parse(metrics::to_json(report)), 0, common);
}

void add_common(CLI::App* app, Common& common) {
  app->add_option("--seed", common.seed, "Random seed (default: $SCRIBEFORGE_SEED or entropy)");
  app->add_option("-j,--jobs", common.jobs, "Worker threads")
      ->check(CLI::PositiveNumber);
  app->add_flag("--keep-going", common.keep_going,
                "Exit 0 even when some items fail");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"scribeforge: handwriting data augmentation toolkit"};
  app.require_subcommand(1);
  Common common;

  BlotArgs blot_args;
  auto* blot = app.add_subcommand("blot", "Draw strikethrough blots over line images");
  blot->add_option("--in", blot_args.in_dir, "Directory of input PNGs")->required();
  blot->add_option("--out", blot_args.out_dir, "Output directory")->required();
  blot->add_option("--config", blot_args.config, "JSON blot parameters");
  blot->add_option("--min-h", blot_args.min_h);
  blot->add_option("--max-h", blot_args.max_h);
  blot->add_option("--min-w", blot_args.min_w);
  blot->add_option("--max-w", blot_args.max_w);
  blot->add_option("--incline", blot_args.incline);
  blot->add_option("--intensity", blot_args.intensity);
  blot->add_option("--transparency", blot_args.transparency);
  blot->add_option("--count-min", blot_args.count_min);
  blot->add_option("--count-max", blot_args.count_max);
  blot->add_option("--proba", blot_args.proba);
  blot->add_option("--thickness", blot_args.thickness);
  blot->add_option("--bands", blot_args.bands);
  blot->add_option("--duplicate-proba", blot_args.duplicate_proba);
  add_common(blot, common);

  AlignArgs align_args;
  auto* align = app.add_subcommand("align", "Extract character boundaries by CTC forced alignment");
  align->add_option("--manifest", align_args.manifest, "Dataset manifest TSV")->required();
  align->add_option("--probs", align_args.probs, "Directory of <line_id>.ctcp matrices")->required();
  align->add_option("--alphabet", align_args.alphabet, "Alphabet JSON or bank directory")->required();
  align->add_option("--out", align_args.out, "Annotations JSONL to write")->required();
  align->add_option("--failures", align_args.failures, "Optional JSONL log of failed lines");
  add_common(align, common);

  BankArgs bank_args;
  auto* bank = app.add_subcommand("bank", "Segment bank operations");
  bank->require_subcommand(1);
  auto* build = bank->add_subcommand("build", "Build a segment bank from annotations");
  build->add_option("--annotations", bank_args.annotations)->required();
  build->add_option("--images", bank_args.images, "Image directory or manifest TSV")->required();
  build->add_option("--alphabet", bank_args.alphabet, "Alphabet JSON (default: characters of the annotations)");
  build->add_option("--out", bank_args.out, "Bank directory to create")->required();
  build->add_option("--max-token-len", bank_args.options.max_token_len)->check(CLI::PositiveNumber);
  build->add_option("--norm-height", bank_args.options.norm_height)->check(CLI::PositiveNumber);
  build->add_option("--cap", bank_args.options.cap, "Segments kept per token")->check(CLI::PositiveNumber);
  build->add_flag("--all-splits", bank_args.options.all_splits, "Include validation and test lines");
  add_common(build, common);

  StackmixArgs sm_args;
  auto* sm = app.add_subcommand("stackmix", "Generate synthetic lines from corpus text");
  sm->add_option("--bank", sm_args.bank)->required();
  sm->add_option("--corpus", sm_args.corpus)->required();
  sm->add_option("--out", sm_args.out)->required();
  sm->add_option("--n", sm_args.n, "Number of lines to generate")->required();
  sm->add_option("--config", sm_args.config, "JSON tokenizer mixture");
  sm->add_option("--on-oov", sm_args.on_oov, "skip-line or drop-chars");
  sm->add_option("--max-line-len", sm_args.max_line_len);
  sm->add_option("--prefix", sm_args.prefix, "Line id prefix");
  sm->add_option("--page-lines", sm_args.page_lines, "Also stack this many lines per page image");
  add_common(sm, common);

  FilterArgs filter_args;
  auto* filter = app.add_subcommand("filter", "Filter a text corpus to an alphabet");
  filter->add_option("--in", filter_args.in)->required();
  filter->add_option("--out", filter_args.out)->required();
  filter->add_option("--alphabet", filter_args.alphabet)->required();
  filter->add_option("--mode", filter_args.mode, "skip-line or drop-chars");
  filter->add_option("--max-line-len", filter_args.max_line_len);
  add_common(filter, common);

  EvalArgs eval_args;
  auto* eval = app.add_subcommand("eval", "CER / WER / accuracy of predictions");
  eval->add_option("--pred", eval_args.pred)->required();
  eval->add_option("--truth", eval_args.truth)->required();
  eval->add_flag("--ignore-case", eval_args.ignore_case);
  add_common(eval, common);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  try {
    if (*blot) return cmd_blot(blot_args, common, out, err);
    if (*align) return cmd_align(align_args, common, out, err);
    if (*build) return cmd_bank_build(bank_args, common, out, err);
    if (*sm) return cmd_stackmix(sm_args, common, out, err);
    if (*filter) return cmd_filter(filter_args, common, out);
    if (*eval) return cmd_eval(eval_args, common, out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFatal;
  }
  return kExitFatal;
}

}  // namespace scribeforge::cli
