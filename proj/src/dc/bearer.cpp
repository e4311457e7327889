/*
 * Copyright (c) 2026 the mmwavesim authors
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#include "mmwavesim/dc/bearer.hpp"

#include <stdexcept>

namespace mmwavesim::dc {

DcMode dc_mode_from_string(const std::string& s) {
  if (s == "none") return DcMode::None;
  if (s == "fast_switching") return DcMode::FastSwitching;
  if (s == "hard_handover") return DcMode::HardHandover;
  throw std::runtime_error("unknown dc mode '" + s +
                           "' (expected none, fast_switching, hard_handover)");
}

std::vector<std::uint64_t> PdcpRx::on_pdu(std::uint64_t sn,
                                          std::uint64_t payload_id,
                                          TimeNs now) {
  std::vector<std::uint64_t> out;
  if (sn < next_sn_ || buffered_.count(sn)) {
    ++duplicates_;
    return out;
  }
  if (!cfg_.reorder) {
    // Pass-through: the single leg's RLC already delivers in order; SNs
    // missing below (AQM drops) are simply skipped.
    next_sn_ = sn + 1;
    out.push_back(payload_id);
    return out;
  }
  if (buffered_.empty()) oldest_buffered_at_ = now;
  buffered_[sn] = payload_id;
  while (!buffered_.empty() && buffered_.begin()->first == next_sn_) {
    out.push_back(buffered_.begin()->second);
    buffered_.erase(buffered_.begin());
    ++next_sn_;
    oldest_buffered_at_ = now;
  }
  return out;
}

std::vector<std::uint64_t> PdcpRx::on_timer(TimeNs now) {
  std::vector<std::uint64_t> out;
  if (!cfg_.reorder || buffered_.empty()) return out;
  if (now - oldest_buffered_at_ < cfg_.flush_timeout) return out;
  // Give up on the gap: advance to the first buffered SN.
  next_sn_ = buffered_.begin()->first;
  while (!buffered_.empty() && buffered_.begin()->first == next_sn_) {
    out.push_back(buffered_.begin()->second);
    buffered_.erase(buffered_.begin());
    ++next_sn_;
  }
  oldest_buffered_at_ = now;
  return out;
}

TimeNs LteLeg::delivery_time(std::uint32_t bytes, TimeNs now) {
  const TimeNs serialization =
      static_cast<TimeNs>(bytes * 8.0 / cfg_.rate_bps * 1e9);
  busy_until_ = std::max(busy_until_, now) + serialization;
  return busy_until_ + cfg_.one_way_delay;
}

DcBearer::DcBearer(Simulator& sim, const Config& cfg, std::uint32_t ue,
                   std::uint32_t initial_cell, Hooks hooks)
    : sim_(sim), cfg_(cfg), ue_(ue), hooks_(std::move(hooks)) {
  serving_cell_ = initial_cell;
  active_leg_ = Leg::MmWave;
}

void DcBearer::route_pdu(const PdcpPdu& pdu) {
  if (active_leg_ == Leg::MmWave || switch_in_progress_) {
    // During a hard-handover interruption data keeps flowing toward the
    // (dead) mmWave leg and is forwarded when the switch completes.
    sim_.schedule_in(cfg_.x2_delay, [this, pdu] { deliver_after_x2(pdu); });
    return;
  }
  const TimeNs at = lte_leg_.delivery_time(pdu.bytes, sim_.now());
  sim_.schedule(at, [this, pdu] { hooks_.lte_deliver(pdu); });
}

void DcBearer::deliver_after_x2(const PdcpPdu& pdu) {
  // The leg is re-checked on X2 arrival so PDUs in transit during a switch
  // follow the bearer instead of stranding in a drained cell.
  if (active_leg_ == Leg::MmWave || switch_in_progress_) {
    hooks_.mmwave_enqueue(serving_cell_, pdu);
    return;
  }
  const TimeNs at = lte_leg_.delivery_time(pdu.bytes, sim_.now());
  sim_.schedule(at, [this, pdu] { hooks_.lte_deliver(pdu); });
}

void DcBearer::forward_to_lte(const std::vector<rlc::Sdu>& sdus) {
  for (const auto& sdu : sdus) {
    const PdcpPdu pdu = hooks_.describe(sdu);
    const TimeNs at =
        lte_leg_.delivery_time(pdu.bytes, sim_.now() + cfg_.x2_delay);
    sim_.schedule(at, [this, pdu] { hooks_.lte_deliver(pdu); });
  }
}

void DcBearer::complete_switch_to_lte() {
  forward_to_lte(hooks_.mmwave_drain(serving_cell_));
  active_leg_ = Leg::Lte;
  switch_in_progress_ = false;
  if (hooks_.on_serving_change) hooks_.on_serving_change(0, Leg::Lte);
}

void DcBearer::complete_switch_to_mmwave(std::uint32_t target_cell) {
  // In-flight LTE PDUs complete on their own leg; nothing needs forwarding
  // out of the reliable pipe.
  serving_cell_ = target_cell;
  active_leg_ = Leg::MmWave;
  switch_in_progress_ = false;
  if (hooks_.on_serving_change) {
    hooks_.on_serving_change(target_cell, Leg::MmWave);
  }
}

void DcBearer::complete_secondary_handover(std::uint32_t target_cell) {
  const auto pending = hooks_.mmwave_drain(serving_cell_);
  serving_cell_ = target_cell;
  switch_in_progress_ = false;
  for (const auto& sdu : pending) {
    const PdcpPdu pdu = hooks_.describe(sdu);
    sim_.schedule_in(cfg_.x2_delay, [this, target_cell, pdu] {
      hooks_.mmwave_enqueue(target_cell, pdu);
    });
  }
  if (hooks_.on_serving_change) {
    hooks_.on_serving_change(target_cell, Leg::MmWave);
  }
}

void DcBearer::apply_command(const Command& cmd) {
  if (switch_in_progress_) return;
  switch (cmd.kind) {
    case CommandKind::None:
      return;
    case CommandKind::SwitchToLte: {
      if (active_leg_ == Leg::Lte) return;
      switch_in_progress_ = true;
      if (cfg_.mode == DcMode::HardHandover) {
        // The standalone UE must first sense the link failure, then the
        // handover passes through the MME.
        const TimeNs delay =
            cfg_.hh_detection_delay + 2 * cfg_.mme_one_way_delay;
        sim_.schedule_in(delay, [this] { complete_switch_to_lte(); });
      } else {
        complete_switch_to_lte();
      }
      return;
    }
    case CommandKind::SwitchToMmWave: {
      if (active_leg_ == Leg::MmWave) return;
      if (cfg_.mode == DcMode::HardHandover) {
        switch_in_progress_ = true;
        const TimeNs delay = 2 * cfg_.mme_one_way_delay;
        const std::uint32_t target = cmd.target_cell;
        sim_.schedule_in(delay,
                         [this, target] { complete_switch_to_mmwave(target); });
      } else {
        complete_switch_to_mmwave(cmd.target_cell);
      }
      return;
    }
    case CommandKind::SecondaryHandover: {
      if (cmd.target_cell == serving_cell_) return;
      complete_secondary_handover(cmd.target_cell);
      return;
    }
  }
}

}  // namespace mmwavesim::dc
