/*
 * Copyright (c) 2026 the mmwavesim authors
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#ifndef MMWAVESIM_SCENARIO_CONFIG_HPP
#define MMWAVESIM_SCENARIO_CONFIG_HPP

#include <optional>
#include <string>
#include <vector>

#include "mmwavesim/beamforming/array.hpp"
#include "mmwavesim/channel/blockage.hpp"
#include "mmwavesim/channel/scenario.hpp"
#include "mmwavesim/dc/bearer.hpp"
#include "mmwavesim/dc/coordinator.hpp"
#include "mmwavesim/mac/scheduler.hpp"
#include "mmwavesim/phy/frame.hpp"
#include "mmwavesim/rlc/am.hpp"
#include "mmwavesim/traffic/source.hpp"

namespace mmwavesim::scenario {

enum class ChannelSource { Statistical, Trace };
enum class BeamMethod { Covariance, BeamSearch };

struct CellConfig {
  std::uint32_t id = 0;
  Vec3 position_m;
};

struct UeConfig {
  std::uint32_t id = 0;
  Vec3 position_m;
  Vec3 velocity_mps;
  double doppler_speed_mps = 0.0;  // fading Doppler without motion
  traffic::TrafficSpec dl_traffic;
  bool has_dl_traffic = true;
  std::optional<traffic::TrafficSpec> ul_traffic;
  std::optional<bool> force_los;  // pin the LOS condition for this link
  std::optional<std::uint32_t> serving_cell;
};

struct TraceToggles {
  bool flow = true;
  bool rlc = true;
  bool phy = true;
  bool sched = true;
  bool sinr = true;
  bool pdcp = true;
  bool cell_id = true;
};

struct ScenarioConfig {
  std::uint64_t seed = 1;
  double duration_s = 1.0;
  std::string out_dir = "out";

  channel::Scenario radio;
  channel::LosSource los_mode = channel::LosSource::Statistical;
  ChannelSource channel_source = ChannelSource::Statistical;
  std::string trace_path;
  bool shadowing = true;
  bool spatial_consistency = false;
  bool blockage = false;
  double blocker_speed_mps = 3.0;
  int blockage_regions = 4;
  double channel_update_period_s = 0.1;  // t_PER and block-fading cadence

  phy::FrameConfig frame;
  double enb_tx_power_dbm = 30.0;
  double ue_tx_power_dbm = 23.0;
  double noise_figure_db = 5.0;
  double forced_residual_loss = 0.0;  // fault-injection knob for AM studies

  beamforming::ArrayConfig enb_array{8, 8, 0.5, 0.0};
  beamforming::ArrayConfig ue_array{4, 4, 0.5, 0.0};
  BeamMethod beam_method = BeamMethod::Covariance;
  double beam_update_period_s = 0.1;
  int tx_beams = 16;
  int rx_beams = 8;
  int power_method_iterations = 50;
  int covariance_window = 1;  // channel snapshots averaged into Q

  mac::ScheduleParams sched;
  rlc::AmConfig rlc;

  dc::DcMode dc_mode = dc::DcMode::None;
  dc::Coordinator::Config coordinator;
  dc::DcBearer::Config bearer;

  double core_delay_s = 0.020;  // one-way fixed core-network latency
  double sinr_trace_period_s = 0.010;
  TraceToggles traces;

  std::vector<CellConfig> cells;
  std::vector<UeConfig> ues;
  std::vector<Box> obstacles;

  void validate() const;
};

// Parses and validates; configuration errors carry line numbers.
ScenarioConfig load_scenario(const std::string& path);
ScenarioConfig parse_scenario_text(const std::string& text,
                                   const std::string& source_name);
ScenarioConfig scenario_from_doc(const KeyValueDoc& doc);

// Applies one "section.key=value" (or root "key=value") override. A bare
// section prefix ("ue.traffic=...") applies to every numbered section.
void apply_override(KeyValueDoc& doc, const std::string& assignment);

// Bundled experiment presets, keyed by name.
std::vector<std::string> preset_names();
std::string preset_text(const std::string& name);
std::string preset_trace_content(const std::string& filename);

// Loads a preset (or a scenario file when `name` ends in .ini), applies the
// overrides, keeps the first `num_ue` user sections when positive, and
// materializes any bundled channel traces under `out_dir`.
ScenarioConfig prepare_scenario(const std::string& name_or_path,
                                const std::vector<std::string>& overrides,
                                int num_ue, const std::string& out_dir);

}  // namespace mmwavesim::scenario

#endif
