/*
 * Copyright (c) 2026 the mmwavesim authors
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#ifndef MMWAVESIM_PHY_FRAME_HPP
#define MMWAVESIM_PHY_FRAME_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "mmwavesim/core/time.hpp"

namespace mmwavesim::phy {

// TDD frame numerology. Defaults: 10 subframes of 100 us per frame, 24
// symbols of 4.16 us, 72 subbands of 13.89 MHz with 48 subcarriers each,
// 864 reference subcarriers per symbol (25% of the total), one DL and one
// UL control symbol, a one-symbol UL-to-DL guard and 2-subframe latencies
// on both MAC->PHY and PHY->MAC paths.
//
// 24 x 4160 ns = 99 840 ns does not divide the 100 000 ns subframe exactly;
// the final symbol absorbs the 160 ns remainder so periodic scheduling
// stays drift-free in integer nanoseconds.
struct FrameConfig {
  int subframes_per_frame = 10;
  TimeNs subframe_length_ns = 100'000;
  int symbols_per_subframe = 24;
  TimeNs symbol_length_ns = 4'160;
  int num_subbands = 72;
  double subband_width_hz = 13.89e6;
  int subcarriers_per_subband = 48;
  int ref_subcarriers_per_symbol = 864;
  int dl_ctrl_symbols = 1;
  int ul_ctrl_symbols = 1;
  int guard_symbols = 1;  // charged on every UL-to-DL switch
  int mac_phy_latency_subframes = 2;
  int phy_mac_latency_subframes = 2;
  int num_harq_processes = 20;
  int max_harq_attempts = 3;

  void validate() const;

  int data_symbols_per_subframe() const {
    return symbols_per_subframe - dl_ctrl_symbols - ul_ctrl_symbols;
  }
  int total_subcarriers() const { return num_subbands * subcarriers_per_subband; }
  int data_subcarriers() const {
    return total_subcarriers() - ref_subcarriers_per_symbol;
  }
  double bandwidth_hz() const { return num_subbands * subband_width_hz; }

  TimeNs frame_length_ns() const {
    return subframe_length_ns * subframes_per_frame;
  }
  // Start of the subframe with the given absolute index.
  TimeNs subframe_start(std::int64_t subframe_index) const {
    return subframe_index * subframe_length_ns;
  }
  std::int64_t subframe_index_at(TimeNs t) const {
    return t / subframe_length_ns;
  }
  // Symbol start offset within a subframe; the last symbol ends at the
  // subframe boundary.
  TimeNs symbol_offset(int symbol) const { return symbol * symbol_length_ns; }
  TimeNs symbol_end_offset(int symbol) const {
    return symbol + 1 == symbols_per_subframe ? subframe_length_ns
                                              : (symbol + 1) * symbol_length_ns;
  }
  // Center frequency offset of a subband relative to the carrier.
  double subband_offset_hz(int subband) const {
    return (subband - (num_subbands - 1) * 0.5) * subband_width_hz;
  }

  // Derives a config for a scaled bandwidth, keeping the 25% reference
  // subcarrier overhead ratio.
  static FrameConfig with_subbands(int num_subbands);
};

enum class Direction { Downlink, Uplink };
enum class SlotKind { Ctrl, Data };

struct HarqInfo {
  int process_id = -1;
  int attempt = 1;  // 1-based
  bool is_retx = false;
};

struct SlotAlloc {
  int first_symbol = 0;
  int num_symbols = 1;
  Direction direction = Direction::Downlink;
  SlotKind kind = SlotKind::Data;
  std::uint32_t ue = 0;
  int mcs = 0;
  std::uint32_t tb_bytes = 0;
  HarqInfo harq;

  int end_symbol() const { return first_symbol + num_symbols; }
};

// The scheduler's variable-TTI map of one subframe. Control slots are
// pinned: DL-CTRL at symbol 0, UL-CTRL at the last symbol.
struct SubframeAllocation {
  std::int64_t subframe_index = 0;
  std::vector<SlotAlloc> slots;

  void validate(const FrameConfig& cfg) const;
};

// Assigns symbol indices to an ordered sequence of data-slot requests,
// inserting a guard symbol before every UL-to-DL transition and pinning the
// two control symbols. Throws if the requests exceed the symbol budget.
class AllocationBuilder {
 public:
  explicit AllocationBuilder(const FrameConfig& cfg);

  // Remaining data symbols available (guards are charged to this budget).
  int remaining_symbols() const;
  // Symbols that a request for `n` data symbols would consume right now
  // (n plus a guard if it would follow an uplink slot with a downlink one).
  int cost_of(Direction dir, int num_symbols) const;
  bool try_add(const SlotAlloc& request);

  SubframeAllocation build(std::int64_t subframe_index) const;

 private:
  const FrameConfig& cfg_;
  std::vector<SlotAlloc> data_slots_;
  int next_symbol_;
  Direction last_direction_ = Direction::Downlink;
};

}  // namespace mmwavesim::phy

#endif
