/**
 * Copyright 2026 The fastaug Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

// bench run      time the per-operation task menu over a corpus
// bench generate write a seeded PNM corpus to disk
//
// Exit codes: 0 success, 1 runtime failure (I/O, bad corpus), 2 usage error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "fastaug/bench.hpp"

namespace {

constexpr int kUsageError = 2;

struct RunArgs {
  std::vector<std::string> tasks;
  std::string corpus_dir;
  std::size_t generate = 1000;
  int width = 512;
  int height = 512;
  int warmup = 1;
  int repeats = 3;
  std::uint64_t seed = 0;
  int threads = 1;
  std::string format = "text";
  std::string out;
  fastaug::bench::TaskSettings settings;
};

struct GenerateArgs {
  std::string dir;
  std::size_t count = 10;
  int width = 512;
  int height = 512;
  std::uint64_t seed = 0;
};

int do_run(const RunArgs& a, bool corpus_given) {
  using namespace fastaug::bench;
  ReportFormat fmt;
  if (a.format == "text")
    fmt = ReportFormat::text;
  else if (a.format == "csv")
    fmt = ReportFormat::csv;
  else if (a.format == "json" || a.format == "json-like")
    fmt = ReportFormat::json;
  else {
    std::cerr << "bench: unknown --format \"" << a.format << "\" (text, csv, json-like)\n";
    return kUsageError;
  }

  std::vector<BenchTask> tasks;
  try {
    tasks = select_tasks(a.tasks, a.settings);
  } catch (const BenchError& e) {
    std::cerr << "bench: " << e.what() << "\n";
    return kUsageError;
  }

  std::vector<fastaug::ImageBuffer> corpus;
  try {
    corpus = corpus_given ? load_corpus(a.corpus_dir) : generate_images(a.generate, a.width, a.height, a.seed);
  } catch (const fastaug::Error& e) {
    std::cerr << "bench: " << e.what() << "\n";
    return 1;
  }

  BenchOptions opt;
  opt.warmup = a.warmup;
  opt.repeats = a.repeats;
  opt.seed = a.seed;
  opt.threads = a.threads;
  BenchReport report;
  try {
    report = run(tasks, corpus, opt);
  } catch (const fastaug::Error& e) {
    std::cerr << "bench: " << e.what() << "\n";
    return 1;
  }

  const std::string text = emit_report(report, fmt);
  if (a.out.empty()) {
    std::cout << text;
  } else {
    std::ofstream f(a.out, std::ios::binary | std::ios::trunc);
    if (!(f << text)) {
      std::cerr << "bench: cannot write " << a.out << "\n";
      return 1;
    }
  }
  return 0;
}

int do_generate(const GenerateArgs& a) {
  try {
    const auto paths = fastaug::bench::generate_corpus(a.dir, a.count, a.width, a.height, a.seed);
    std::cout << "wrote " << paths.size() << " images to " << a.dir << "\n";
  } catch (const fastaug::Error& e) {
    std::cerr << "bench: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Per-operation image augmentation benchmark", "bench"};
  app.require_subcommand(1);

  RunArgs run;
  auto* run_cmd = app.add_subcommand("run", "Time transform tasks over an image corpus");
  run_cmd->add_option("--tasks", run.tasks, "Comma-separated task names (default: all)")->delimiter(',');
  auto* corpus_opt = run_cmd->add_option("--corpus", run.corpus_dir, "Directory of P5/P6 images");
  auto* gen_opt = run_cmd->add_option("--generate", run.generate, "Generate N random images in memory")
                      ->check(CLI::PositiveNumber)
                      ->capture_default_str();
  corpus_opt->excludes(gen_opt);
  run_cmd->add_option("--width", run.width, "Generated image width")->check(CLI::PositiveNumber)->capture_default_str();
  run_cmd->add_option("--height", run.height, "Generated image height")->check(CLI::PositiveNumber)->capture_default_str();
  run_cmd->add_option("--warmup", run.warmup, "Untimed passes per task")->check(CLI::NonNegativeNumber)->capture_default_str();
  run_cmd->add_option("--repeats", run.repeats, "Timed passes per task")->check(CLI::PositiveNumber)->capture_default_str();
  run_cmd->add_option("--seed", run.seed, "Seed for corpus generation and random tasks")->capture_default_str();
  run_cmd->add_option("--threads", run.threads, "Worker threads per pass")->check(CLI::PositiveNumber)->capture_default_str();
  run_cmd->add_option("--format", run.format, "text | csv | json-like")->capture_default_str();
  run_cmd->add_option("--out", run.out, "Write the report to FILE instead of stdout");

  auto& s = run.settings;
  run_cmd->add_option("--crop-size", s.crop_size, "RandomCrop64 window side")->check(CLI::PositiveNumber)->capture_default_str();
  run_cmd->add_option("--pad-size", s.pad_size, "PadToSize512 target side")->check(CLI::PositiveNumber)->capture_default_str();
  run_cmd->add_option("--rotate-theta", s.rotate_theta, "Rotate angle, degrees")->capture_default_str();
  run_cmd->add_option("--ssr-dx", s.ssr_dx, "ShiftScaleRotate shift, fraction of width")->capture_default_str();
  run_cmd->add_option("--ssr-dy", s.ssr_dy, "ShiftScaleRotate shift, fraction of height")->capture_default_str();
  run_cmd->add_option("--ssr-scale", s.ssr_scale, "ShiftScaleRotate scale")->check(CLI::PositiveNumber)->capture_default_str();
  run_cmd->add_option("--ssr-theta", s.ssr_theta, "ShiftScaleRotate angle, degrees")->capture_default_str();
  run_cmd->add_option("--brightness", s.brightness_beta, "Brightness factor")->check(CLI::NonNegativeNumber)->capture_default_str();
  run_cmd->add_option("--gamma", s.gamma_g, "Gamma exponent")->check(CLI::PositiveNumber)->capture_default_str();
  run_cmd->add_option("--shift-r", s.shift_r, "ShiftRGB red delta")->capture_default_str();
  run_cmd->add_option("--shift-g", s.shift_g, "ShiftRGB green delta")->capture_default_str();
  run_cmd->add_option("--shift-b", s.shift_b, "ShiftRGB blue delta")->capture_default_str();
  run_cmd->add_option("--shift-h", s.shift_h, "ShiftHSV hue delta, degrees")->capture_default_str();
  run_cmd->add_option("--shift-s", s.shift_s, "ShiftHSV saturation delta")->capture_default_str();
  run_cmd->add_option("--shift-v", s.shift_v, "ShiftHSV value delta")->capture_default_str();

  GenerateArgs gen;
  auto* gen_cmd = app.add_subcommand("generate", "Write a seeded random PNM corpus");
  gen_cmd->add_option("--dir", gen.dir, "Output directory")->required();
  gen_cmd->add_option("-n,--count", gen.count, "Number of images")->check(CLI::PositiveNumber)->capture_default_str();
  gen_cmd->add_option("--width", gen.width, "Image width")->check(CLI::PositiveNumber)->capture_default_str();
  gen_cmd->add_option("--height", gen.height, "Image height")->check(CLI::PositiveNumber)->capture_default_str();
  gen_cmd->add_option("--seed", gen.seed, "Corpus seed")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsageError;
  }

  if (run_cmd->parsed()) return do_run(run, corpus_opt->count() > 0);
  return do_generate(gen);
}
