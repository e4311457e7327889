/*
 * Copyright (c) 2026 the mmwavesim authors
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#ifndef MMWAVESIM_DC_COORDINATOR_HPP
#define MMWAVESIM_DC_COORDINATOR_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "mmwavesim/core/time.hpp"

namespace mmwavesim::dc {

enum class Leg { Lte, MmWave };

struct MeasurementReport {
  std::uint32_t ue = 0;
  std::uint32_t cell = 0;
  double sinr_db = 0.0;
  TimeNs generated_at = 0;  // before the X2 delay
};

enum class CommandKind { None, SwitchToLte, SwitchToMmWave, SecondaryHandover };

struct Command {
  CommandKind kind = CommandKind::None;
  std::uint32_t target_cell = 0;
};

// SINR table maintained at the LTE anchor from uplink measurement reports
// delivered over X2. Decisions are deterministic functions of the (delayed)
// table contents.
class Coordinator {
 public:
  struct Config {
    double outage_threshold_db = -5.0;
    double hysteresis_db = 3.0;
    TimeNs report_period = us_to_ns(1600);
  };

  explicit Coordinator(Config cfg) : cfg_(cfg) {}

  void ingest_measurement(const MeasurementReport& report, TimeNs now);

  // Best mmWave cell for a UE among entries no older than three report
  // periods; nullopt when every entry is stale.
  std::optional<std::pair<std::uint32_t, double>> best_cell(
      std::uint32_t ue, TimeNs now) const;

  // Switch and handover logic against the current serving state.
  Command decide(std::uint32_t ue, Leg active_leg, std::uint32_t serving_cell,
                 TimeNs now) const;

  const Config& config() const { return cfg_; }

 private:
  struct Entry {
    double sinr_db = 0.0;
    TimeNs received_at = 0;
  };
  bool fresh(const Entry& e, TimeNs now) const {
    return now - e.received_at <= 3 * cfg_.report_period;
  }

  Config cfg_;
  std::map<std::pair<std::uint32_t, std::uint32_t>, Entry> table_;
};

}  // namespace mmwavesim::dc

#endif
