/*
 * Copyright (c) 2026 the mmwavesim authors
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#ifndef MMWAVESIM_MAC_AMC_HPP
#define MMWAVESIM_MAC_AMC_HPP

#include <cstdint>
#include <string>

#include "mmwavesim/phy/frame.hpp"

namespace mmwavesim::mac {

enum class Modulation { Qpsk, Qam16, Qam64 };

int modulation_order(Modulation m);
std::string to_string(Modulation m);

struct McsEntry {
  int index = 0;
  Modulation modulation = Modulation::Qpsk;
  int rate_x1024 = 0;
  int min_cqi = 0;

  double code_rate() const { return rate_x1024 / 1024.0; }
  double spectral_efficiency() const {
    return modulation_order(modulation) * code_rate();
  }
};

constexpr int kNumMcs = 29;
constexpr int kMaxCqi = kNumMcs - 1;

// 29-level QPSK/16QAM/64QAM ladder with strictly increasing spectral
// efficiency. CQI indices align one-to-one with MCS indices.
const McsEntry& mcs_entry(int mcs);

// Transport block capacity: data subcarriers times symbols times bits per
// subcarrier, floored to whole bytes. Reference subcarriers are excluded
// from data capacity.
std::uint32_t tb_size_bytes(int mcs, int n_symbols, const phy::FrameConfig& cfg);

// Smallest symbol count whose TB size covers `bytes` (inverse of the above);
// clamped to `max_symbols`.
int n_symbols_for(std::uint32_t bytes, int mcs, const phy::FrameConfig& cfg,
                  int max_symbols);

// Highest MCS usable at the given CQI.
int cqi_to_mcs(int cqi);

}  // namespace mmwavesim::mac

#endif
