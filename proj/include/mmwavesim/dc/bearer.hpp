/*
 * Copyright (c) 2026 the mmwavesim authors
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#ifndef MMWAVESIM_DC_BEARER_HPP
#define MMWAVESIM_DC_BEARER_HPP

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <vector>

#include "mmwavesim/core/simulator.hpp"
#include "mmwavesim/dc/coordinator.hpp"
#include "mmwavesim/rlc/am.hpp"

namespace mmwavesim::dc {

enum class DcMode { None, FastSwitching, HardHandover };

DcMode dc_mode_from_string(const std::string& s);

// PDCP sequencing at the anchor.
class PdcpTx {
 public:
  std::uint64_t assign_sn() { return next_sn_++; }
  std::uint64_t next_sn() const { return next_sn_; }

 private:
  std::uint64_t next_sn_ = 0;
};

// PDCP receiver: duplicate-free, reordering-corrected in-order delivery.
// Reordering is only armed for dual-connectivity bearers, where data rides
// two legs; single-leg bearers pass through (their RLC already orders).
class PdcpRx {
 public:
  struct Config {
    bool reorder = false;
    TimeNs flush_timeout = ms_to_ns(20);
  };

  explicit PdcpRx(Config cfg) : cfg_(cfg) {}

  // Returns payload ids ready for IP delivery, in order.
  std::vector<std::uint64_t> on_pdu(std::uint64_t sn, std::uint64_t payload_id,
                                    TimeNs now);
  // Flush check: skips SNs that never arrived once the timeout passes.
  std::vector<std::uint64_t> on_timer(TimeNs now);

  std::uint64_t duplicates_discarded() const { return duplicates_; }

 private:
  Config cfg_;
  std::uint64_t next_sn_ = 0;
  std::map<std::uint64_t, std::uint64_t> buffered_;  // sn -> payload
  TimeNs oldest_buffered_at_ = 0;
  std::uint64_t duplicates_ = 0;
};

// The LTE anchor leg abstracted as a reliable fixed-rate pipe with a fixed
// one-way delay; FIFO serialization preserves order.
class LteLeg {
 public:
  struct Config {
    double rate_bps = 75e6;
    TimeNs one_way_delay = ms_to_ns(5);
  };

  explicit LteLeg(Config cfg) : cfg_(cfg) {}

  // Returns the delivery instant of a PDU handed to the pipe at `now`.
  TimeNs delivery_time(std::uint32_t bytes, TimeNs now);

 private:
  Config cfg_;
  TimeNs busy_until_ = 0;
};

// LTE-anchored bearer carrying one UE's flow over either the LTE leg or the
// serving mmWave cell, with lossless RLC buffer forwarding on switches and
// secondary handovers. In fast-switching mode both legs stay attached;
// exactly one carries new PDUs at any instant.
class DcBearer {
 public:
  struct Config {
    DcMode mode = DcMode::FastSwitching;
    LteLeg::Config lte;
    TimeNs x2_delay = ms_to_ns(1);
    double x2_rate_bps = 1e9;
    TimeNs mme_one_way_delay = ms_to_ns(10);
    TimeNs hh_detection_delay = ms_to_ns(200);
  };

  struct PdcpPdu {
    std::uint64_t sn = 0;
    std::uint64_t payload_id = 0;
    std::uint32_t bytes = 0;
    TimeNs sdu_time = 0;
  };

  // The stack supplies the mmWave-side operations.
  struct Hooks {
    // Enqueue a PDU into the given mmWave cell's RLC.
    std::function<void(std::uint32_t cell, const PdcpPdu&)> mmwave_enqueue;
    // Drain a cell's RLC for lossless forwarding.
    std::function<std::vector<rlc::Sdu>(std::uint32_t cell)> mmwave_drain;
    // Deliver a PDU at the UE via the LTE leg (already past the leg delay).
    std::function<void(const PdcpPdu&)> lte_deliver;
    // Map a forwarded RLC SDU back to its PDCP PDU descriptor.
    std::function<PdcpPdu(const rlc::Sdu&)> describe;
    // Serving-cell change notification (trace hook).
    std::function<void(std::uint32_t cell, Leg leg)> on_serving_change;
  };

  DcBearer(Simulator& sim, const Config& cfg, std::uint32_t ue,
           std::uint32_t initial_cell, Hooks hooks);

  Leg active_leg() const { return active_leg_; }
  std::uint32_t serving_cell() const { return serving_cell_; }
  bool switching() const { return switch_in_progress_; }
  const Config& config() const { return cfg_; }

  // Routes one PDCP PDU to the active leg (the remote leg is reached over
  // the X2 link, which adds its delay).
  void route_pdu(const PdcpPdu& pdu);

  // Applies a coordinator command (already delivered over X2). Hard-handover
  // bearers model the detection delay plus the MME round trip before data
  // resumes on the target leg.
  void apply_command(const Command& cmd);

 private:
  void deliver_after_x2(const PdcpPdu& pdu);
  void complete_switch_to_lte();
  void complete_switch_to_mmwave(std::uint32_t target_cell);
  void complete_secondary_handover(std::uint32_t target_cell);
  void forward_to_lte(const std::vector<rlc::Sdu>& sdus);

  Simulator& sim_;
  Config cfg_;
  std::uint32_t ue_;
  Hooks hooks_;
  Leg active_leg_ = Leg::MmWave;
  std::uint32_t serving_cell_ = 0;
  bool switch_in_progress_ = false;
  LteLeg lte_leg_{cfg_.lte};
};

}  // namespace mmwavesim::dc

#endif
