/*
 * Copyright (c) 2026 the mmwavesim authors
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#include "mmwavesim/mac/amc.hpp"

#include <array>
#include <stdexcept>

namespace mmwavesim::mac {

int modulation_order(Modulation m) {
  switch (m) {
    case Modulation::Qpsk: return 2;
    case Modulation::Qam16: return 4;
    case Modulation::Qam64: return 6;
  }
  return 2;
}

std::string to_string(Modulation m) {
  switch (m) {
    case Modulation::Qpsk: return "qpsk";
    case Modulation::Qam16: return "qam16";
    case Modulation::Qam64: return "qam64";
  }
  return "?";
}

namespace {

constexpr std::array<std::pair<Modulation, int>, kNumMcs> kLadder = {{
    {Modulation::Qpsk, 120},  {Modulation::Qpsk, 157},
    {Modulation::Qpsk, 193},  {Modulation::Qpsk, 251},
    {Modulation::Qpsk, 308},  {Modulation::Qpsk, 379},
    {Modulation::Qpsk, 449},  {Modulation::Qpsk, 526},
    {Modulation::Qpsk, 602},  {Modulation::Qpsk, 679},
    {Modulation::Qam16, 340}, {Modulation::Qam16, 378},
    {Modulation::Qam16, 434}, {Modulation::Qam16, 490},
    {Modulation::Qam16, 553}, {Modulation::Qam16, 616},
    {Modulation::Qam16, 658}, {Modulation::Qam64, 440},
    {Modulation::Qam64, 466}, {Modulation::Qam64, 517},
    {Modulation::Qam64, 567}, {Modulation::Qam64, 616},
    {Modulation::Qam64, 666}, {Modulation::Qam64, 719},
    {Modulation::Qam64, 772}, {Modulation::Qam64, 822},
    {Modulation::Qam64, 873}, {Modulation::Qam64, 910},
    {Modulation::Qam64, 948},
}};

const std::array<McsEntry, kNumMcs>& table() {
  static const std::array<McsEntry, kNumMcs> t = [] {
    std::array<McsEntry, kNumMcs> out{};
    for (int i = 0; i < kNumMcs; ++i) {
      out[i].index = i;
      out[i].modulation = kLadder[i].first;
      out[i].rate_x1024 = kLadder[i].second;
      out[i].min_cqi = i;
    }
    return out;
  }();
  return t;
}

}  // namespace

const McsEntry& mcs_entry(int mcs) {
  if (mcs < 0 || mcs >= kNumMcs) {
    throw std::invalid_argument("mcs_entry: invalid MCS index " +
                                std::to_string(mcs));
  }
  return table()[mcs];
}

std::uint32_t tb_size_bytes(int mcs, int n_symbols,
                            const phy::FrameConfig& cfg) {
  if (n_symbols < 1) {
    throw std::invalid_argument("tb_size_bytes: need at least one symbol");
  }
  const McsEntry& e = mcs_entry(mcs);
  const std::int64_t bits_x1024 =
      static_cast<std::int64_t>(n_symbols) * cfg.data_subcarriers() *
      modulation_order(e.modulation) * e.rate_x1024;
  return static_cast<std::uint32_t>(bits_x1024 / 1024 / 8);
}

int n_symbols_for(std::uint32_t bytes, int mcs, const phy::FrameConfig& cfg,
                  int max_symbols) {
  for (int n = 1; n <= max_symbols; ++n) {
    if (tb_size_bytes(mcs, n, cfg) >= bytes) return n;
  }
  return max_symbols;
}

int cqi_to_mcs(int cqi) {
  if (cqi < 0) return 0;
  int best = 0;
  for (int m = 0; m < kNumMcs; ++m) {
    if (mcs_entry(m).min_cqi <= cqi) best = m;
  }
  return best;
}

}  // namespace mmwavesim::mac
