/*
 * Copyright (c) 2026 the mmwavesim authors
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#include "mmwavesim/dc/coordinator.hpp"

namespace mmwavesim::dc {

void Coordinator::ingest_measurement(const MeasurementReport& report,
                                     TimeNs now) {
  table_[{report.ue, report.cell}] = Entry{report.sinr_db, now};
}

std::optional<std::pair<std::uint32_t, double>> Coordinator::best_cell(
    std::uint32_t ue, TimeNs now) const {
  std::optional<std::pair<std::uint32_t, double>> best;
  for (const auto& [key, entry] : table_) {
    if (key.first != ue || !fresh(entry, now)) continue;
    if (!best || entry.sinr_db > best->second) {
      best = {key.second, entry.sinr_db};
    }
  }
  return best;
}

Command Coordinator::decide(std::uint32_t ue, Leg active_leg,
                            std::uint32_t serving_cell, TimeNs now) const {
  const auto best = best_cell(ue, now);
  if (!best) {
    // No fresh mmWave information at all: fall back to LTE.
    return active_leg == Leg::MmWave ? Command{CommandKind::SwitchToLte, 0}
                                     : Command{CommandKind::None, 0};
  }
  const auto& [best_id, best_sinr] = *best;
  if (active_leg == Leg::MmWave) {
    if (best_sinr < cfg_.outage_threshold_db) {
      return {CommandKind::SwitchToLte, 0};
    }
    // Secondary handover when a neighbor clears the serving cell by the
    // hysteresis margin.
    if (best_id != serving_cell) {
      auto serving = table_.find({ue, serving_cell});
      const double serving_sinr =
          serving != table_.end() && fresh(serving->second, now)
              ? serving->second.sinr_db
              : -1e9;
      if (best_sinr >= serving_sinr + cfg_.hysteresis_db) {
        return {CommandKind::SecondaryHandover, best_id};
      }
    }
    return {CommandKind::None, 0};
  }
  // Anchored on LTE: return to mmWave once the best cell clears the outage
  // threshold plus hysteresis.
  if (best_sinr >= cfg_.outage_threshold_db + cfg_.hysteresis_db) {
    return {CommandKind::SwitchToMmWave, best_id};
  }
  return {CommandKind::None, 0};
}

}  // namespace mmwavesim::dc
