/*
 * Copyright (c) 2026 the mmwavesim authors
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#include <CLI11.hpp>
#include <cstdio>
#include <exception>
#include <string>
#include <vector>

#include "mmwavesim/scenario/config.hpp"
#include "mmwavesim/scenario/stack.hpp"

int main(int argc, char** argv) {
  CLI::App app{
      "mmwavesim: deterministic discrete-event simulator of end-to-end "
      "mmWave cellular links"};

  std::string scenario_path;
  std::string preset;
  std::string out_dir = "out";
  std::vector<std::string> overrides;
  std::string scheduler;
  int num_ue = 0;
  long long seed = -1;
  double duration_s = -1.0;
  bool list_presets = false;

  app.add_option("--scenario", scenario_path,
                 "Scenario configuration file (.ini)");
  app.add_option("--preset", preset, "Bundled experiment preset name");
  app.add_flag("--list-presets", list_presets, "List bundled presets");
  app.add_option("--seed", seed, "Override the run seed");
  app.add_option("--duration-s", duration_s, "Override the duration");
  app.add_option("--out-dir", out_dir, "Output directory for trace CSVs");
  app.add_option("--scheduler", scheduler, "Override the policy (rr|pf|edf|mr)");
  app.add_option("--num-ue", num_ue, "Keep only the first N users");
  app.add_option("--override", overrides,
                 "Override a config key, e.g. mac.tti=fixed:24")
      ->take_all();

  CLI11_PARSE(app, argc, argv);

  try {
    if (list_presets) {
      for (const auto& name : mmwavesim::scenario::preset_names()) {
        std::printf("%s\n", name.c_str());
      }
      return 0;
    }
    if (scenario_path.empty() == preset.empty()) {
      std::fprintf(stderr, "exactly one of --scenario or --preset is required\n");
      return 2;
    }
    if (seed >= 0) overrides.push_back("seed=" + std::to_string(seed));
    if (duration_s > 0) {
      overrides.push_back("duration_s=" + std::to_string(duration_s));
    }
    if (!scheduler.empty()) overrides.push_back("mac.scheduler=" + scheduler);

    const std::string source = scenario_path.empty() ? preset : scenario_path;
    auto cfg = mmwavesim::scenario::prepare_scenario(source, overrides, num_ue,
                                                     out_dir);
    auto report = mmwavesim::scenario::run_scenario(cfg, out_dir);
    std::printf("%s\n", report.summary_line().c_str());
    return 0;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}
