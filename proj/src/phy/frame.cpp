/*
 * Copyright (c) 2026 the mmwavesim authors
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#include "mmwavesim/phy/frame.hpp"

#include <cmath>
#include <stdexcept>

namespace mmwavesim::phy {

void FrameConfig::validate() const {
  if (subframes_per_frame < 1 || symbols_per_subframe < 3 ||
      num_subbands < 1 || subcarriers_per_subband < 1) {
    throw std::runtime_error("FrameConfig: counts must be positive");
  }
  const TimeNs nominal = symbol_length_ns * symbols_per_subframe;
  if (nominal > subframe_length_ns ||
      subframe_length_ns - nominal >= symbol_length_ns) {
    throw std::runtime_error(
        "FrameConfig: subframe length must equal symbols*symbol_length plus a "
        "sub-symbol remainder");
  }
  if (ref_subcarriers_per_symbol < 0 ||
      ref_subcarriers_per_symbol >= total_subcarriers()) {
    throw std::runtime_error(
        "FrameConfig: reference subcarriers must leave room for data");
  }
  if (dl_ctrl_symbols != 1 || ul_ctrl_symbols != 1) {
    throw std::runtime_error(
        "FrameConfig: exactly one DL and one UL control symbol are supported");
  }
  if (mac_phy_latency_subframes < 1 || phy_mac_latency_subframes < 0) {
    throw std::runtime_error("FrameConfig: invalid pipeline latencies");
  }
  if (num_harq_processes < 1 || max_harq_attempts < 1) {
    throw std::runtime_error("FrameConfig: invalid HARQ parameters");
  }
}

FrameConfig FrameConfig::with_subbands(int subbands) {
  FrameConfig cfg;
  cfg.num_subbands = subbands;
  cfg.ref_subcarriers_per_symbol = static_cast<int>(
      std::lround(0.25 * subbands * cfg.subcarriers_per_subband));
  cfg.validate();
  return cfg;
}

void SubframeAllocation::validate(const FrameConfig& cfg) const {
  std::vector<bool> used(cfg.symbols_per_subframe, false);
  int prev_end = -1;
  for (const auto& slot : slots) {
    if (slot.first_symbol < 0 || slot.end_symbol() > cfg.symbols_per_subframe) {
      throw std::runtime_error("SubframeAllocation: slot outside the subframe");
    }
    if (slot.first_symbol < prev_end) {
      throw std::runtime_error(
          "SubframeAllocation: slots must be ordered and disjoint");
    }
    prev_end = slot.end_symbol();
    for (int s = slot.first_symbol; s < slot.end_symbol(); ++s) {
      if (used[s]) {
        throw std::runtime_error("SubframeAllocation: overlapping slots");
      }
      used[s] = true;
    }
  }
  // Control symbols are pinned to the subframe edges.
  for (const auto& slot : slots) {
    if (slot.kind != SlotKind::Ctrl) continue;
    if (slot.direction == Direction::Downlink &&
        (slot.first_symbol != 0 || slot.num_symbols != cfg.dl_ctrl_symbols)) {
      throw std::runtime_error("SubframeAllocation: DL-CTRL must sit at symbol 0");
    }
    if (slot.direction == Direction::Uplink &&
        slot.end_symbol() != cfg.symbols_per_subframe) {
      throw std::runtime_error(
          "SubframeAllocation: UL-CTRL must occupy the last symbol");
    }
  }
}

AllocationBuilder::AllocationBuilder(const FrameConfig& cfg)
    : cfg_(cfg), next_symbol_(cfg.dl_ctrl_symbols) {}

int AllocationBuilder::remaining_symbols() const {
  return cfg_.symbols_per_subframe - cfg_.ul_ctrl_symbols - next_symbol_;
}

int AllocationBuilder::cost_of(Direction dir, int num_symbols) const {
  const bool needs_guard =
      last_direction_ == Direction::Uplink && dir == Direction::Downlink;
  return num_symbols + (needs_guard ? cfg_.guard_symbols : 0);
}

bool AllocationBuilder::try_add(const SlotAlloc& request) {
  if (request.num_symbols < 1) return false;
  const bool needs_guard = last_direction_ == Direction::Uplink &&
                           request.direction == Direction::Downlink;
  const int cost = request.num_symbols + (needs_guard ? cfg_.guard_symbols : 0);
  if (cost > remaining_symbols()) return false;
  SlotAlloc slot = request;
  slot.kind = SlotKind::Data;
  slot.first_symbol = next_symbol_ + (needs_guard ? cfg_.guard_symbols : 0);
  next_symbol_ = slot.end_symbol();
  last_direction_ = request.direction;
  data_slots_.push_back(slot);
  return true;
}

SubframeAllocation AllocationBuilder::build(std::int64_t subframe_index) const {
  SubframeAllocation alloc;
  alloc.subframe_index = subframe_index;
  SlotAlloc dl_ctrl;
  dl_ctrl.first_symbol = 0;
  dl_ctrl.num_symbols = cfg_.dl_ctrl_symbols;
  dl_ctrl.direction = Direction::Downlink;
  dl_ctrl.kind = SlotKind::Ctrl;
  alloc.slots.push_back(dl_ctrl);
  alloc.slots.insert(alloc.slots.end(), data_slots_.begin(), data_slots_.end());
  SlotAlloc ul_ctrl;
  ul_ctrl.first_symbol = cfg_.symbols_per_subframe - cfg_.ul_ctrl_symbols;
  ul_ctrl.num_symbols = cfg_.ul_ctrl_symbols;
  ul_ctrl.direction = Direction::Uplink;
  ul_ctrl.kind = SlotKind::Ctrl;
  alloc.slots.push_back(ul_ctrl);
  alloc.validate(cfg_);
  return alloc;
}

}  // namespace mmwavesim::phy
