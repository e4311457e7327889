/*
 * Copyright (c) 2026 the mmwavesim authors
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#include "mmwavesim/channel/scenario.hpp"

#include <cmath>
#include <stdexcept>

#include "mmwavesim/core/units.hpp"
#include "mmwavesim_embedded_data.hpp"

namespace mmwavesim::channel {

ScenarioKind scenario_kind_from_string(const std::string& s) {
  if (s == "RMa") return ScenarioKind::RMa;
  if (s == "UMa") return ScenarioKind::UMa;
  if (s == "UMi") return ScenarioKind::UMi;
  if (s == "InH-Office") return ScenarioKind::InHOffice;
  if (s == "InH-Mall") return ScenarioKind::InHMall;
  throw std::runtime_error("unknown scenario kind '" + s +
                           "' (expected RMa, UMa, UMi, InH-Office, InH-Mall)");
}

std::string to_string(ScenarioKind kind) {
  switch (kind) {
    case ScenarioKind::RMa: return "RMa";
    case ScenarioKind::UMa: return "UMa";
    case ScenarioKind::UMi: return "UMi";
    case ScenarioKind::InHOffice: return "InH-Office";
    case ScenarioKind::InHMall: return "InH-Mall";
  }
  return "?";
}

void Scenario::validate() const {
  if (carrier_hz < 6e9 || carrier_hz > 100e9) {
    throw std::runtime_error("carrier frequency " +
                             std::to_string(carrier_hz * 1e-9) +
                             " GHz outside the supported 6-100 GHz band");
  }
  if (bandwidth_hz <= 0.0 || bandwidth_hz > 0.1 * carrier_hz) {
    throw std::runtime_error(
        "bandwidth must be positive and at most 10% of the carrier frequency");
  }
}

double Scenario::wavelength_m() const { return kSpeedOfLight / carrier_hz; }

ScenarioParams::ScenarioParams() {
  init(parse_keyvalue_text(embedded::kChannelParams, "channel_params.ini"));
}

ScenarioParams::ScenarioParams(const std::string& path) {
  init(parse_keyvalue_file(path));
}

void ScenarioParams::init(const KeyValueDoc& doc) {
  doc_ = doc;
  for (auto kind : {ScenarioKind::RMa, ScenarioKind::UMa, ScenarioKind::UMi,
                    ScenarioKind::InHOffice, ScenarioKind::InHMall}) {
    if (!doc_.find_section(to_string(kind))) {
      throw std::runtime_error("channel parameter table missing section [" +
                               to_string(kind) + "]");
    }
  }
  if (!doc_.find_section("blockage") || !doc_.find_section("o2i")) {
    throw std::runtime_error(
        "channel parameter table missing [blockage] or [o2i] section");
  }
}

const KeyValueSection& ScenarioParams::section(ScenarioKind kind) const {
  return *doc_.find_section(to_string(kind));
}

const KeyValueSection& ScenarioParams::blockage() const {
  return *doc_.find_section("blockage");
}

const KeyValueSection& ScenarioParams::o2i() const {
  return *doc_.find_section("o2i");
}

double ScenarioParams::fading_value(ScenarioKind kind, const std::string& key,
                                    double fc_ghz) const {
  const auto& sec = section(kind);
  const KeyValueEntry* entry = sec.find(key);
  bool lgfc = false;
  if (!entry) {
    entry = sec.find(key + "_lgfc");
    lgfc = true;
  }
  if (!entry) {
    throw std::runtime_error("channel parameter table: section [" + sec.name +
                             "] has no key '" + key + "'");
  }
  auto tokens = split_tokens(entry->value);
  const double base = std::stod(tokens.at(0));
  const double slope = tokens.size() > 1 ? std::stod(tokens.at(1)) : 0.0;
  const double f = lgfc ? std::log10(fc_ghz) : std::log10(1.0 + fc_ghz);
  return base + slope * f;
}

double ScenarioParams::shadow_sigma_db(ScenarioKind kind, bool los) const {
  return section(kind).require_double(los ? "sf_sigma_los_db"
                                          : "sf_sigma_nlos_db");
}

double ScenarioParams::shadow_dcor_m(ScenarioKind kind, bool los) const {
  return section(kind).require_double(los ? "sf_dcor_los_m" : "sf_dcor_nlos_m");
}

}  // namespace mmwavesim::channel
