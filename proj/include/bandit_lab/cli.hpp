// Copyright 2026 The bandit_lab Authors. All rights reserved.
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

// Command-line front end: run, summarize, list-strategies.
//
// Exit codes: 0 success, 2 configuration / input / usage errors,
// 3 runtime failures.

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "bandit_lab/harness.hpp"
#include "bandit_lab/report.hpp"
#include "bandit_lab/strategies.hpp"

namespace bandit_lab::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitRuntime = 3;

struct RunOptions {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> reps;
  std::optional<std::string> out_dir;
  unsigned threads = 0;
};

struct RunResult {
  std::filesystem::path csv;
  std::filesystem::path summary_csv;
  std::filesystem::path summary_txt;
};

inline int cmd_run(const RunOptions& opts, std::ostream& out, std::ostream& err,
                   RunResult* written = nullptr) {
  ExperimentConfig cfg;
  try {
    cfg = load_config_file(opts.config_path);
    if (opts.seed) cfg.base_seed = *opts.seed;
    if (opts.reps) {
      if (*opts.reps < 1) throw ConfigError("replications", "--reps must be at least 1");
      cfg.replications = *opts.reps;
    }
    if (opts.out_dir) cfg.output_dir = *opts.out_dir;
  } catch (const std::exception& e) {
    err << "error: " << opts.config_path << ": " << e.what() << '\n';
    return kExitConfig;
  }

  try {
    const auto records = run_experiment(cfg, opts.threads);
    const auto summary = summarize(records);
    const std::filesystem::path dir(cfg.output_dir);
    std::filesystem::create_directories(dir);

    RunResult paths{dir / (cfg.name + ".csv"), dir / (cfg.name + ".summary.csv"),
                    dir / (cfg.name + ".summary.txt")};
    write_csv_file(records, cfg.K, paths.csv);
    {
      std::ofstream s(paths.summary_csv, std::ios::binary | std::ios::trunc);
      if (!s) throw IoError("cannot open " + paths.summary_csv.string() + " for writing");
      write_summary_csv(summary, s);
    }
    const std::string table = render_summary(summary);
    {
      std::ofstream s(paths.summary_txt, std::ios::binary | std::ios::trunc);
      if (!s) throw IoError("cannot open " + paths.summary_txt.string() + " for writing");
      s << table;
    }
    out << table;
    err << "wrote " << paths.csv.string() << '\n';
    if (written) *written = paths;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
  return kExitOk;
}

inline int cmd_summarize(const std::string& input, std::ostream& out, std::ostream& err) {
  try {
    const CsvData data = read_csv_file(input);
    out << render_summary(summarize(data.records));
  } catch (const std::exception& e) {
    err << "error: " << input << ": " << e.what() << '\n';
    return kExitConfig;
  }
  return kExitOk;
}

inline int cmd_list_strategies(std::ostream& out) {
  out << "epsilon-greedy  epsilon=" << kDefaultEpsilon << " window_r=full\n"
      << "                greedy arm w.p. 1-epsilon per store, else a uniform other arm\n"
      << "ag1             epsilon=" << kDefaultEpsilon << " window_r=" << kDefaultWindow << '\n'
      << "                floor(N(1-epsilon)) stores on the windowed greedy arm, rest round-robin\n"
      << "ucb1            window_r=full\n"
      << "                per-store argmax of mu_hat + sqrt(2 ln t / n(k)), n(k) in store assignments\n"
      << "thompson        window_r=full\n"
      << "                per-store argmax of Beta(1+successes, 1+failures) draws\n"
      << "\n"
      << "restart wrapper: add \"restart_period\": <epochs> to an epsilon-greedy or thompson entry\n"
      << "                 (listed as epsilon-greedy* / thompson*); history is cleared at every\n"
      << "                 multiple of the period and that epoch plays all arms equally.\n"
      << "                 Conventional period: " << kDefaultWindow << '\n';
  return kExitOk;
}

// argv-style entry point; args excludes the program name.
inline int main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Batched delayed-feedback bandit simulator", "bandit_lab"};
  app.require_subcommand(1);

  RunOptions run_opts;
  std::uint64_t seed = 0;
  std::size_t reps = 0;
  std::string out_dir;
  auto* run = app.add_subcommand("run", "Run an experiment config and write CSV + summaries");
  run->add_option("--config", run_opts.config_path, "Experiment JSON config")->required();
  auto* seed_opt = run->add_option("--seed", seed, "Override base_seed");
  auto* reps_opt = run->add_option("--reps", reps, "Override replications");
  auto* out_opt = run->add_option("--out", out_dir, "Output directory (default: config output_dir)")
                      ->envname("BANDIT_LAB_OUT");
  run->add_option("--threads", run_opts.threads, "Worker threads (0 = hardware concurrency)");

  std::string input;
  auto* summ = app.add_subcommand("summarize", "Re-derive the summary table from a run CSV");
  summ->add_option("--input", input, "CSV written by `run`")->required();

  auto* list = app.add_subcommand("list-strategies", "List strategy kinds and their defaults");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfig;
  }

  if (run->parsed()) {
    if (seed_opt->count()) run_opts.seed = seed;
    if (reps_opt->count()) run_opts.reps = reps;
    if (out_opt->count() || !out_dir.empty()) run_opts.out_dir = out_dir;
    return cmd_run(run_opts, out, err);
  }
  if (summ->parsed()) return cmd_summarize(input, out, err);
  if (list->parsed()) return cmd_list_strategies(out);
  return kExitConfig;
}

}  // namespace bandit_lab::cli
