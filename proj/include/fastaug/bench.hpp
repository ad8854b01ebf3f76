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

/*!
 * \file bench.hpp
 * \brief Per-operation timing harness over an in-memory image corpus.
 *
 * For every task: `warmup` untimed passes, then `repeats` timed passes over
 * the whole corpus. The reported time is the median pass. Each pass starts
 * from the same seed so every pass does identical work.
 */
#pragma once

#include <algorithm>
#include <array>
#include <charconv>
#include <chrono>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "fastaug/core.hpp"
#include "fastaug/geom.hpp"
#include "fastaug/imgio.hpp"
#include "fastaug/photo.hpp"

namespace fastaug::bench {

class BenchError : public Error {
 public:
  using Error::Error;
};

/// Fixed parameters for the timed operations.
struct TaskSettings {
  int crop_size = 64;
  int pad_size = 512;
  double rotate_theta = 45.0;
  double ssr_dx = 0.06;
  double ssr_dy = 0.06;
  double ssr_scale = 1.1;
  double ssr_theta = 15.0;
  double brightness_beta = 1.5;
  double gamma_g = 1.2;
  double shift_r = 20.0, shift_g = 20.0, shift_b = 20.0;
  double shift_h = 20.0, shift_s = 0.1, shift_v = 0.1;
};

/// One timed operation. `run` returns a value derived from its output so the
/// work cannot be optimized away.
struct BenchTask {
  std::string name;
  std::function<std::uint64_t(const ImageBuffer&, RngStream&)> run;
};

inline constexpr std::array<std::string_view, 11> kTaskNames{
    "RandomCrop64", "PadToSize512", "HorizontalFlip", "VerticalFlip", "Rotate",   "ShiftScaleRotate",
    "Brightness",   "ShiftHSV",     "ShiftRGB",       "Gamma",        "Grayscale"};

namespace detail {

inline std::uint64_t touch(const ImageBuffer& img) noexcept {
  auto d = img.data();
  return d.empty() ? 0 : static_cast<std::uint64_t>(d[0]) + d[d.size() / 2] + d[d.size() - 1] + d.size();
}

}  // namespace detail

inline std::vector<BenchTask> standard_tasks(const TaskSettings& s = {}) {
  using detail::touch;
  std::vector<BenchTask> tasks;
  tasks.push_back({"RandomCrop64", [s](const ImageBuffer& im, RngStream& rng) {
                     return touch(random_crop(im, s.crop_size, s.crop_size, rng));
                   }});
  tasks.push_back({"PadToSize512", [s](const ImageBuffer& im, RngStream&) {
                     return touch(pad_to_size(im, std::max(s.pad_size, im.width()), std::max(s.pad_size, im.height())));
                   }});
  tasks.push_back({"HorizontalFlip", [](const ImageBuffer& im, RngStream&) { return touch(hflip(im)); }});
  tasks.push_back({"VerticalFlip", [](const ImageBuffer& im, RngStream&) { return touch(vflip(im)); }});
  tasks.push_back({"Rotate", [s](const ImageBuffer& im, RngStream&) {
                     return touch(rotate(im, s.rotate_theta, Interpolation::bilinear, BorderPolicy{}));
                   }});
  tasks.push_back({"ShiftScaleRotate", [s](const ImageBuffer& im, RngStream&) {
                     return touch(shift_scale_rotate(im, s.ssr_dx, s.ssr_dy, s.ssr_scale, s.ssr_theta,
                                                     Interpolation::bilinear, BorderPolicy{}));
                   }});
  tasks.push_back({"Brightness", [s](const ImageBuffer& im, RngStream&) { return touch(brightness(im, s.brightness_beta)); }});
  tasks.push_back({"ShiftHSV", [s](const ImageBuffer& im, RngStream&) {
                     return touch(shift_hsv(im, s.shift_h, s.shift_s, s.shift_v));
                   }});
  tasks.push_back({"ShiftRGB", [s](const ImageBuffer& im, RngStream&) {
                     return touch(shift_rgb(im, s.shift_r, s.shift_g, s.shift_b));
                   }});
  tasks.push_back({"Gamma", [s](const ImageBuffer& im, RngStream&) { return touch(gamma(im, s.gamma_g)); }});
  tasks.push_back({"Grayscale", [](const ImageBuffer& im, RngStream&) { return touch(grayscale(im)); }});
  return tasks;
}

/// Picks tasks by name, in the requested order. Empty selection = all.
inline std::vector<BenchTask> select_tasks(const std::vector<std::string>& names, const TaskSettings& s = {}) {
  auto all = standard_tasks(s);
  if (names.empty()) return all;
  std::vector<BenchTask> out;
  for (const auto& n : names) {
    auto it = std::find_if(all.begin(), all.end(), [&](const BenchTask& t) { return t.name == n; });
    if (it == all.end()) {
      std::string valid;
      for (auto v : kTaskNames) valid += (valid.empty() ? "" : ", ") + std::string(v);
      throw BenchError("unknown task \"" + n + "\"; valid tasks: " + valid);
    }
    out.push_back(*it);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Corpus

/// Deterministic noise images; image i depends only on (seed, i).
inline ImageBuffer generate_image(int width, int height, std::uint64_t seed, std::size_t index) {
  RngStream derive(seed ^ (0xD1B54A32D192ED03ULL * (index + 1)));
  RngStream rng(derive.next_u64());
  ImageBuffer img(height, width, 3);
  auto d = img.data();
  std::size_t i = 0;
  while (i < d.size()) {
    std::uint64_t bits = rng.next_u64();
    for (int k = 0; k < 8 && i < d.size(); ++k, bits >>= 8) d[i++] = static_cast<std::uint8_t>(bits);
  }
  return img;
}

inline std::vector<ImageBuffer> generate_images(std::size_t n, int width, int height, std::uint64_t seed) {
  if (n < 1) throw BenchError("corpus size must be >= 1");
  if (width < 1 || height < 1) throw BenchError("corpus image size must be at least 1x1");
  std::vector<ImageBuffer> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(generate_image(width, height, seed, i));
  return out;
}

inline std::filesystem::path corpus_file_name(std::size_t index) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "img_%06zu.ppm", index);
  return buf;
}

/// Writes n P6 files into `dir` (created if needed) and returns their paths.
inline std::vector<std::filesystem::path> generate_corpus(const std::filesystem::path& dir, std::size_t n, int width,
                                                          int height, std::uint64_t seed) {
  if (n < 1) throw BenchError("corpus size must be >= 1");
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw BenchError(dir.string() + ": " + ec.message());
  std::vector<std::filesystem::path> paths;
  for (std::size_t i = 0; i < n; ++i) {
    const auto path = dir / corpus_file_name(i);
    try {
      imgio::save_pnm(path, generate_image(width, height, seed, i));
    } catch (const imgio::PnmError& e) {
      throw BenchError(path.string() + ": " + e.what());
    }
    paths.push_back(path);
  }
  return paths;
}

/// Loads every .ppm/.pgm/.pnm file in `dir`, sorted by file name.
inline std::vector<ImageBuffer> load_corpus(const std::filesystem::path& dir) {
  std::error_code ec;
  if (!std::filesystem::is_directory(dir, ec)) throw BenchError(dir.string() + ": not a directory");
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    const auto ext = entry.path().extension().string();
    if (entry.is_regular_file() && (ext == ".ppm" || ext == ".pgm" || ext == ".pnm")) files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  if (files.empty()) throw BenchError(dir.string() + ": no PNM images found");
  std::vector<ImageBuffer> out;
  out.reserve(files.size());
  for (const auto& f : files) {
    try {
      out.push_back(imgio::load_image(f));
    } catch (const Error& e) {
      throw BenchError(f.string() + ": " + e.what());
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Timing

struct CorpusInfo {
  std::size_t count = 0;
  int width = 0;   // of the first image
  int height = 0;
  int channels = 0;
  bool uniform = true;  // all images share the first image's shape
};

inline CorpusInfo describe(std::span<const ImageBuffer> corpus) {
  CorpusInfo info;
  info.count = corpus.size();
  if (corpus.empty()) return info;
  info.width = corpus[0].width();
  info.height = corpus[0].height();
  info.channels = corpus[0].channels();
  for (const auto& im : corpus)
    if (im.width() != info.width || im.height() != info.height || im.channels() != info.channels) info.uniform = false;
  return info;
}

struct TaskResult {
  std::string task;
  double seconds = 0.0;  // median pass
  double images_per_second = 0.0;
  std::vector<double> pass_seconds;
  std::size_t images_per_pass = 0;
};

struct BenchReport {
  CorpusInfo corpus;
  int warmup = 0;
  int repeats = 0;
  std::vector<TaskResult> tasks;
};

struct BenchOptions {
  int warmup = 1;
  int repeats = 3;
  std::uint64_t seed = 0;
  int threads = 1;  // > 1 splits each pass across threads; not used for published numbers
  /// Monotonic seconds. Defaults to std::chrono::steady_clock.
  std::function<double()> clock;
  /// Called after every image in every pass (warm-up included).
  std::function<void(std::string_view task, std::size_t image_index)> per_image_hook;
};

inline double median(std::vector<double> v) {
  if (v.empty()) return 0.0;
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return (n % 2) ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

namespace detail {

inline std::uint64_t run_pass(const BenchTask& task, std::span<const ImageBuffer> corpus, const BenchOptions& opt) {
  const auto run_range = [&](std::size_t begin, std::size_t end, std::uint64_t seed) {
    RngStream rng(seed);
    std::uint64_t sink = 0;
    for (std::size_t i = begin; i < end; ++i) {
      sink += task.run(corpus[i], rng);
      if (opt.per_image_hook) opt.per_image_hook(task.name, i);
    }
    return sink;
  };
  const int threads = std::max(1, opt.threads);
  if (threads == 1 || corpus.size() < 2) return run_range(0, corpus.size(), opt.seed);

  std::vector<std::uint64_t> sinks(static_cast<std::size_t>(threads), 0);
  {
    std::vector<std::jthread> pool;
    const std::size_t chunk = (corpus.size() + threads - 1) / threads;
    for (int t = 0; t < threads; ++t) {
      const std::size_t b = std::min(corpus.size(), t * chunk);
      const std::size_t e = std::min(corpus.size(), b + chunk);
      pool.emplace_back([&, t, b, e] { sinks[t] = run_range(b, e, opt.seed + static_cast<std::uint64_t>(t)); });
    }
  }
  std::uint64_t sink = 0;
  for (auto s : sinks) sink += s;
  return sink;
}

}  // namespace detail

inline BenchReport run(const std::vector<BenchTask>& tasks, std::span<const ImageBuffer> corpus,
                       const BenchOptions& opt = {}) {
  if (corpus.empty()) throw BenchError("corpus is empty");
  if (opt.repeats < 1) throw BenchError("repeats must be >= 1");
  if (opt.warmup < 0) throw BenchError("warmup must be >= 0");

  std::function<double()> clock = opt.clock;
  if (!clock)
    clock = [] {
      return std::chrono::duration<double>(std::chrono::steady_clock::now().time_since_epoch()).count();
    };

  BenchReport report;
  report.corpus = describe(corpus);
  report.warmup = opt.warmup;
  report.repeats = opt.repeats;
  volatile std::uint64_t sink = 0;
  for (const auto& task : tasks) {
    for (int i = 0; i < opt.warmup; ++i) sink = sink + detail::run_pass(task, corpus, opt);
    TaskResult r;
    r.task = task.name;
    r.images_per_pass = corpus.size();
    for (int i = 0; i < opt.repeats; ++i) {
      const double t0 = clock();
      sink = sink + detail::run_pass(task, corpus, opt);
      const double t1 = clock();
      r.pass_seconds.push_back(t1 - t0);
    }
    r.seconds = median(r.pass_seconds);
    r.images_per_second = r.seconds > 0.0 ? static_cast<double>(corpus.size()) / r.seconds : 0.0;
    report.tasks.push_back(std::move(r));
  }
  return report;
}

// ---------------------------------------------------------------------------
// Reports

enum class ReportFormat { text, csv, json };

/// Shortest decimal that round-trips; shared by every format so they agree.
inline std::string format_number(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

inline std::string emit_report(const BenchReport& r, ReportFormat format) {
  std::string out;
  switch (format) {
    case ReportFormat::csv:
      out = "task,seconds,images_per_second\n";
      for (const auto& t : r.tasks)
        out += t.task + "," + format_number(t.seconds) + "," + format_number(t.images_per_second) + "\n";
      break;
    case ReportFormat::text: {
      char line[160];
      std::snprintf(line, sizeof line, "# corpus: %zu images %dx%dx%d%s, warmup %d, repeats %d (median seconds per pass)\n",
                    r.corpus.count, r.corpus.width, r.corpus.height, r.corpus.channels,
                    r.corpus.uniform ? "" : " (mixed sizes)", r.warmup, r.repeats);
      out += line;
      std::snprintf(line, sizeof line, "%-18s %-24s %s\n", "task", "seconds", "images_per_second");
      out += line;
      for (const auto& t : r.tasks) {
        std::snprintf(line, sizeof line, "%-18s %-24s %s\n", t.task.c_str(), format_number(t.seconds).c_str(),
                      format_number(t.images_per_second).c_str());
        out += line;
      }
      break;
    }
    case ReportFormat::json: {
      out = "{\"corpus\": {\"count\": " + std::to_string(r.corpus.count) + ", \"width\": " + std::to_string(r.corpus.width) +
            ", \"height\": " + std::to_string(r.corpus.height) + ", \"channels\": " + std::to_string(r.corpus.channels) +
            ", \"uniform\": " + (r.corpus.uniform ? "true" : "false") + "}, \"warmup\": " + std::to_string(r.warmup) +
            ", \"repeats\": " + std::to_string(r.repeats) + ", \"tasks\": [";
      for (std::size_t i = 0; i < r.tasks.size(); ++i) {
        const auto& t = r.tasks[i];
        out += (i ? ", " : "") + std::string("{\"task\": \"") + t.task + "\", \"seconds\": " + format_number(t.seconds) +
               ", \"images_per_second\": " + format_number(t.images_per_second) + "}";
      }
      out += "]}\n";
      break;
    }
  }
  return out;
}

}  // namespace fastaug::bench
