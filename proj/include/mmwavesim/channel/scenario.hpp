/*
 * Copyright (c) 2026 the mmwavesim authors
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#ifndef MMWAVESIM_CHANNEL_SCENARIO_HPP
#define MMWAVESIM_CHANNEL_SCENARIO_HPP

#include <string>

#include "mmwavesim/core/keyvalue.hpp"

namespace mmwavesim::channel {

enum class ScenarioKind { RMa, UMa, UMi, InHOffice, InHMall };

ScenarioKind scenario_kind_from_string(const std::string& s);
std::string to_string(ScenarioKind kind);

// Deployment scenario. The statistical model covers the 6-100 GHz band with
// bandwidths up to 10% of the carrier.
struct Scenario {
  ScenarioKind kind = ScenarioKind::UMa;
  double carrier_hz = 28e9;
  double bandwidth_hz = 1e9;
  double enb_height_m = 10.0;
  double ue_height_m = 1.5;
  bool ue_indoor = false;
  double o2i_depth_m = 5.0;
  // When true, NLOS pathloss uses the optional (free-space-slope) equations
  // instead of the mandatory forms.
  bool optional_nlos_pathloss = false;

  void validate() const;
  double carrier_ghz() const { return carrier_hz * 1e-9; }
  double wavelength_m() const;
};

enum class LosCondition { Los, Nlos, O2I };
enum class LosSource { Statistical, Geometric };

struct LosState {
  LosCondition condition = LosCondition::Los;
  LosSource source = LosSource::Statistical;
};

// Per-(scenario, condition) constants loaded from the bundled parameter
// table. Frequency-dependent entries are evaluated at lookup time.
class ScenarioParams {
 public:
  // Loads the bundled default table.
  ScenarioParams();
  // Loads a replacement table from a file with the same key schema.
  explicit ScenarioParams(const std::string& path);

  const KeyValueSection& section(ScenarioKind kind) const;
  const KeyValueSection& blockage() const;
  const KeyValueSection& o2i() const;

  // Evaluates a (base, slope) fading-table entry at the carrier frequency.
  // Keys suffixed _lgfc use log10(fc); otherwise log10(1 + fc).
  double fading_value(ScenarioKind kind, const std::string& key,
                      double fc_ghz) const;

  double shadow_sigma_db(ScenarioKind kind, bool los) const;
  double shadow_dcor_m(ScenarioKind kind, bool los) const;

 private:
  void init(const KeyValueDoc& doc);
  KeyValueDoc doc_;
};

}  // namespace mmwavesim::channel

#endif
