/*
 * Copyright (c) 2026 the mmwavesim authors
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#ifndef MMWAVESIM_SCENARIO_STACK_HPP
#define MMWAVESIM_SCENARIO_STACK_HPP

#include <map>
#include <memory>
#include <optional>
#include <tuple>

#include "mmwavesim/channel/trace_channel.hpp"
#include "mmwavesim/core/trace.hpp"
#include "mmwavesim/phy/sinr.hpp"
#include "mmwavesim/scenario/config.hpp"
#include "mmwavesim/scenario/metrics.hpp"
#include "mmwavesim/traffic/aimd.hpp"

namespace mmwavesim::scenario {

// One end-to-end simulation instance: topology, per-link channel state,
// cells with PHY/MAC, per-UE RLC/PDCP, optional LTE-anchored dual
// connectivity, traffic sources and trace sinks. Single-threaded; all state
// is owned by the engine thread.
class Simulation {
 public:
  Simulation(const ScenarioConfig& cfg, std::string out_dir);
  ~Simulation();

  MetricsReport run();

  // Introspection used by integration tests.
  Simulator& simulator() { return sim_; }
  const traffic::PacketRegistry& packets() const { return packets_; }
  std::uint64_t harq_exhausted() const;
  std::uint32_t serving_cell_of(std::uint32_t ue) const;

 private:
  struct Link;
  struct Cell;
  struct Ue;
  struct TbPayload;
  struct ActiveTx;
  struct CcFlow;

  // setup
  void build_topology();
  void init_link(Link& link, TimeNs now);
  void attach(Ue& ue, Cell& cell);
  void detach(Ue& ue, Cell& cell);
  void setup_traffic();
  void setup_dc(Ue& ue);

  // periodic machinery
  void on_subframe();
  void update_channels();
  void update_beams();
  void coordinator_report();

  // PHY pipeline
  void phy_execute(Cell& cell, std::int64_t sf);
  void slot_start(Cell& cell, const phy::SlotAlloc& slot, std::int64_t sf);
  void slot_end(Cell& cell, phy::SlotAlloc slot, std::int64_t sf,
                std::uint64_t epoch);
  phy::SinrReport measure_sinr(Link& link, phy::Direction dir,
                               const phy::SlotAlloc* slot, std::int64_t sf);

  // MAC
  void mac_schedule(Cell& cell, std::int64_t target_sf);
  void apply_harq_feedback(Cell& cell, std::uint32_t ue, phy::Direction dir,
                           int process_id, bool ack);

  // RLC/PDCP glue
  void pdcp_enqueue_dl(std::uint32_t ue, std::uint64_t payload_id);
  void rlc_enqueue_dl(std::uint32_t cell_id, std::uint32_t ue_id,
                      std::uint64_t payload_id, std::uint32_t bytes,
                      TimeNs sdu_time);
  void deliver_ip_dl(std::uint32_t ue, std::uint64_t payload_id,
                     const char* leg);
  void deliver_ip_ul(std::uint32_t ue, std::uint64_t payload_id);
  void rlc_timer_step(TimeNs now);

  // helpers
  Link& link(std::uint32_t cell_id, std::uint32_t ue_id);
  Cell& cell(std::uint32_t id);
  Ue& ue(std::uint32_t id);
  Vec3 ue_position(const Ue& u, TimeNs t) const;
  double link_pathloss_db(Link& l) const;
  void aimd_pump(CcFlow& flow);
  void log_rlc(TimeNs t, std::uint32_t ue, const char* event,
               std::uint64_t bytes, double sojourn_ms);

  ScenarioConfig cfg_;
  Simulator sim_;
  RngManager rng_;
  TraceManager traces_;
  traffic::PacketRegistry packets_;
  channel::ScenarioParams params_;
  phy::MiTable mi_;
  phy::BlerCalibration calibration_;
  phy::ErrorModel error_model_;
  std::optional<channel::ChannelTrace> channel_trace_;
  std::optional<dc::Coordinator> coordinator_;
  beamforming::Codebook enb_codebook_;
  beamforming::Codebook ue_codebook_;

  std::map<std::uint32_t, std::unique_ptr<Cell>> cells_;
  std::map<std::uint32_t, std::unique_ptr<Ue>> ues_;
  std::map<std::pair<std::uint32_t, std::uint32_t>, std::unique_ptr<Link>> links_;
  std::map<std::tuple<std::uint32_t, std::uint32_t, int, int>, TbPayload> tb_store_;
  std::vector<ActiveTx> active_tx_;
  std::vector<std::unique_ptr<traffic::ArrivalSource>> sources_;
  std::vector<std::unique_ptr<CcFlow>> cc_flows_;

  std::map<std::uint32_t, std::uint64_t> allocated_bytes_;  // per ue
  std::map<std::uint32_t, std::uint32_t> flow_to_ue_;
  TimeNs duration_ = 0;
  TimeNs last_sinr_trace_ = -1;
  std::uint64_t rng_link_counter_ = 0;
};

// Loads, runs and reports in one call (the CLI entry path).
MetricsReport run_scenario(const ScenarioConfig& cfg, const std::string& out_dir);

}  // namespace mmwavesim::scenario

#endif
