/*
 * Copyright (c) 2026 the mmwavesim authors
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#include "mmwavesim/scenario/config.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

namespace mmwavesim::scenario {

namespace {

void check_known_keys(const KeyValueSection& sec,
                      const std::set<std::string>& allowed) {
  for (const auto& e : sec.entries) {
    if (!allowed.count(e.key)) {
      throw std::runtime_error("line " + std::to_string(e.line) +
                               ": unknown key '" + e.key + "' in section [" +
                               sec.name + "]");
    }
  }
}

Vec3 parse_vec3(const KeyValueSection& sec, const std::string& key,
                Vec3 fallback) {
  const auto* e = sec.find(key);
  if (!e) return fallback;
  auto tokens = split_tokens(e->value);
  if (tokens.size() != 3) {
    throw std::runtime_error("line " + std::to_string(e->line) + ": key '" +
                             key + "' needs three components");
  }
  return {std::stod(tokens[0]), std::stod(tokens[1]), std::stod(tokens[2])};
}

beamforming::ArrayConfig parse_array(const KeyValueSection& sec,
                                     const std::string& key,
                                     beamforming::ArrayConfig fallback) {
  const auto* e = sec.find(key);
  if (!e) return fallback;
  auto x = e->value.find('x');
  if (x == std::string::npos) {
    throw std::runtime_error("line " + std::to_string(e->line) + ": key '" +
                             key + "' expects ROWSxCOLS");
  }
  beamforming::ArrayConfig cfg = fallback;
  cfg.rows = std::stoi(e->value.substr(0, x));
  cfg.cols = std::stoi(e->value.substr(x + 1));
  if (cfg.rows < 1 || cfg.cols < 1) {
    throw std::runtime_error("line " + std::to_string(e->line) +
                             ": array dimensions must be positive");
  }
  return cfg;
}

void parse_channel_section(const KeyValueDoc& doc, ScenarioConfig& cfg) {
  const auto* sec = doc.find_section("channel");
  if (!sec) return;
  check_known_keys(
      *sec, {"scenario", "carrier_ghz", "source", "shadowing",
             "spatial_consistency", "blockage", "blocker_speed_mps",
             "blockage_regions", "update_period_ms", "los_mode", "enb_height_m",
             "ue_height_m", "ue_indoor", "optional_nlos_pathloss"});
  cfg.radio.kind = channel::scenario_kind_from_string(
      sec->get_string("scenario", to_string(cfg.radio.kind)));
  cfg.radio.carrier_hz = sec->get_double("carrier_ghz", 28.0) * 1e9;
  cfg.radio.enb_height_m = sec->get_double("enb_height_m", 10.0);
  cfg.radio.ue_height_m = sec->get_double("ue_height_m", 1.5);
  cfg.radio.ue_indoor = sec->get_bool("ue_indoor", false);
  cfg.radio.optional_nlos_pathloss =
      sec->get_bool("optional_nlos_pathloss", false);
  cfg.shadowing = sec->get_bool("shadowing", cfg.shadowing);
  cfg.spatial_consistency =
      sec->get_bool("spatial_consistency", cfg.spatial_consistency);
  cfg.blockage = sec->get_bool("blockage", cfg.blockage);
  cfg.blocker_speed_mps =
      sec->get_double("blocker_speed_mps", cfg.blocker_speed_mps);
  cfg.blockage_regions = static_cast<int>(
      sec->get_int("blockage_regions", cfg.blockage_regions));
  cfg.channel_update_period_s =
      sec->get_double("update_period_ms", cfg.channel_update_period_s * 1e3) /
      1e3;
  const std::string los = sec->get_string("los_mode", "statistical");
  if (los == "statistical") {
    cfg.los_mode = channel::LosSource::Statistical;
  } else if (los == "geometric") {
    cfg.los_mode = channel::LosSource::Geometric;
  } else {
    throw std::runtime_error("unknown los_mode '" + los + "'");
  }
  const std::string source = sec->get_string("source", "statistical");
  if (source == "statistical") {
    cfg.channel_source = ChannelSource::Statistical;
  } else if (source.rfind("trace:", 0) == 0) {
    cfg.channel_source = ChannelSource::Trace;
    cfg.trace_path = source.substr(6);
  } else {
    throw std::runtime_error(
        "channel source must be 'statistical' or 'trace:<path>'");
  }
}

void parse_frame_section(const KeyValueDoc& doc, ScenarioConfig& cfg) {
  const auto* sec = doc.find_section("frame");
  if (!sec) return;
  check_known_keys(*sec, {"num_subbands", "num_harq_processes"});
  const int subbands = static_cast<int>(
      sec->get_int("num_subbands", cfg.frame.num_subbands));
  cfg.frame = phy::FrameConfig::with_subbands(subbands);
  cfg.frame.num_harq_processes = static_cast<int>(
      sec->get_int("num_harq_processes", cfg.frame.num_harq_processes));
}

void parse_phy_section(const KeyValueDoc& doc, ScenarioConfig& cfg) {
  const auto* sec = doc.find_section("phy");
  if (!sec) return;
  check_known_keys(*sec, {"enb_tx_power_dbm", "ue_tx_power_dbm",
                          "noise_figure_db", "enb_array", "ue_array",
                          "beam_method", "beam_update_ms", "tx_beams",
                          "rx_beams", "forced_residual_loss"});
  cfg.enb_tx_power_dbm = sec->get_double("enb_tx_power_dbm", 30.0);
  cfg.ue_tx_power_dbm = sec->get_double("ue_tx_power_dbm", 23.0);
  cfg.noise_figure_db = sec->get_double("noise_figure_db", 5.0);
  cfg.enb_array = parse_array(*sec, "enb_array", cfg.enb_array);
  cfg.ue_array = parse_array(*sec, "ue_array", cfg.ue_array);
  cfg.forced_residual_loss = sec->get_double("forced_residual_loss", 0.0);
  const std::string method = sec->get_string("beam_method", "covariance");
  if (method == "covariance") {
    cfg.beam_method = BeamMethod::Covariance;
  } else if (method == "beam_search") {
    cfg.beam_method = BeamMethod::BeamSearch;
  } else {
    throw std::runtime_error("unknown beam_method '" + method + "'");
  }
  cfg.beam_update_period_s = sec->get_double("beam_update_ms", 100.0) / 1e3;
  cfg.tx_beams = static_cast<int>(sec->get_int("tx_beams", cfg.tx_beams));
  cfg.rx_beams = static_cast<int>(sec->get_int("rx_beams", cfg.rx_beams));
}

void parse_mac_section(const KeyValueDoc& doc, ScenarioConfig& cfg) {
  const auto* sec = doc.find_section("mac");
  if (!sec) return;
  check_known_keys(*sec, {"scheduler", "tti", "pf_time_constant_ms",
                          "deadline_ms"});
  cfg.sched.policy = mac::scheduler_policy_from_string(
      sec->get_string("scheduler", "rr"));
  const std::string tti = sec->get_string("tti", "variable");
  if (tti == "variable") {
    cfg.sched.tti = mac::TtiMode::variable();
  } else if (tti.rfind("fixed:", 0) == 0) {
    cfg.sched.tti = mac::TtiMode::fixed_tti(std::stoi(tti.substr(6)));
  } else {
    throw std::runtime_error("tti must be 'variable' or 'fixed:<symbols>'");
  }
  cfg.sched.pf_ewma_time_constant_s =
      sec->get_double("pf_time_constant_ms", 100.0) / 1e3;
  cfg.sched.deadline_budget_ns =
      ms_to_ns(sec->get_double("deadline_ms", 1.0));
}

void parse_rlc_section(const KeyValueDoc& doc, ScenarioConfig& cfg) {
  const auto* sec = doc.find_section("rlc");
  if (!sec) return;
  check_known_keys(*sec, {"aqm", "poll_retransmit_ms", "reordering_ms"});
  const std::string aqm = sec->get_string("aqm", "droptail:50000");
  if (aqm == "codel") {
    cfg.rlc.aqm.kind = rlc::AqmKind::Codel;
  } else if (aqm.rfind("droptail", 0) == 0) {
    cfg.rlc.aqm.kind = rlc::AqmKind::DropTail;
    auto colon = aqm.find(':');
    if (colon != std::string::npos) {
      cfg.rlc.aqm.droptail_limit_pkts = std::stoul(aqm.substr(colon + 1));
    }
  } else {
    throw std::runtime_error("aqm must be 'droptail[:limit]' or 'codel'");
  }
  cfg.rlc.poll_retransmit_timeout =
      ms_to_ns(sec->get_double("poll_retransmit_ms", 2.0));
  cfg.rlc.reordering_timeout = ms_to_ns(sec->get_double("reordering_ms", 1.0));
}

void parse_dc_section(const KeyValueDoc& doc, ScenarioConfig& cfg) {
  const auto* sec = doc.find_section("dc");
  if (!sec) return;
  check_known_keys(*sec,
                   {"mode", "outage_threshold_db", "hysteresis_db",
                    "report_period_ms", "x2_delay_ms", "lte_rate_mbps",
                    "lte_delay_ms", "mme_delay_ms", "hh_detection_ms",
                    "pdcp_flush_ms"});
  cfg.dc_mode = dc::dc_mode_from_string(sec->get_string("mode", "none"));
  cfg.coordinator.outage_threshold_db =
      sec->get_double("outage_threshold_db", -5.0);
  cfg.coordinator.hysteresis_db = sec->get_double("hysteresis_db", 3.0);
  cfg.coordinator.report_period =
      ms_to_ns(sec->get_double("report_period_ms", 1.6));
  cfg.bearer.mode = cfg.dc_mode;
  cfg.bearer.x2_delay = ms_to_ns(sec->get_double("x2_delay_ms", 1.0));
  cfg.bearer.lte.rate_bps = sec->get_double("lte_rate_mbps", 75.0) * 1e6;
  cfg.bearer.lte.one_way_delay = ms_to_ns(sec->get_double("lte_delay_ms", 5.0));
  cfg.bearer.mme_one_way_delay =
      ms_to_ns(sec->get_double("mme_delay_ms", 10.0));
  cfg.bearer.hh_detection_delay =
      ms_to_ns(sec->get_double("hh_detection_ms", 200.0));
}

void parse_traces_section(const KeyValueDoc& doc, ScenarioConfig& cfg) {
  const auto* sec = doc.find_section("traces");
  if (!sec) return;
  check_known_keys(*sec, {"flow", "rlc", "phy", "sched", "sinr", "pdcp",
                          "cell_id", "sinr_period_ms"});
  cfg.traces.flow = sec->get_bool("flow", true);
  cfg.traces.rlc = sec->get_bool("rlc", true);
  cfg.traces.phy = sec->get_bool("phy", true);
  cfg.traces.sched = sec->get_bool("sched", true);
  cfg.traces.sinr = sec->get_bool("sinr", true);
  cfg.traces.pdcp = sec->get_bool("pdcp", true);
  cfg.traces.cell_id = sec->get_bool("cell_id", true);
  cfg.sinr_trace_period_s = sec->get_double("sinr_period_ms", 10.0) / 1e3;
}

std::uint32_t parse_section_id(const KeyValueSection& sec) {
  auto space = sec.name.find(' ');
  if (space == std::string::npos) {
    throw std::runtime_error("line " + std::to_string(sec.line) +
                             ": section [" + sec.name + "] needs an id");
  }
  return static_cast<std::uint32_t>(std::stoul(sec.name.substr(space + 1)));
}

}  // namespace

void ScenarioConfig::validate() const {
  radio.validate();
  frame.validate();
  if (duration_s <= 0) throw std::runtime_error("duration_s must be positive");
  if (cells.empty()) throw std::runtime_error("at least one [enb] is required");
  if (ues.empty()) throw std::runtime_error("at least one [ue] is required");
  std::set<std::uint32_t> cell_ids, ue_ids;
  for (const auto& c : cells) {
    if (!cell_ids.insert(c.id).second) {
      throw std::runtime_error("duplicate enb id " + std::to_string(c.id));
    }
  }
  for (const auto& u : ues) {
    if (!ue_ids.insert(u.id).second) {
      throw std::runtime_error("duplicate ue id " + std::to_string(u.id));
    }
    if (u.serving_cell && !cell_ids.count(*u.serving_cell)) {
      throw std::runtime_error("ue " + std::to_string(u.id) +
                               " references unknown serving cell " +
                               std::to_string(*u.serving_cell));
    }
  }
  if (channel_source == ChannelSource::Trace) {
    if (spatial_consistency) {
      throw std::runtime_error(
          "trace-driven channel is incompatible with spatial_consistency");
    }
    if (blockage) {
      throw std::runtime_error(
          "trace-driven channel is incompatible with blockage");
    }
    // Shadowing is simply bypassed: trace powers are absolute path gains.
    if (trace_path.empty() || !std::filesystem::exists(trace_path)) {
      throw std::runtime_error("channel trace file not found: " + trace_path);
    }
  }
  if (dc_mode != dc::DcMode::None && channel_source == ChannelSource::Trace &&
      cells.size() != 1) {
    throw std::runtime_error(
        "trace-driven dual connectivity supports a single mmWave cell");
  }
}

ScenarioConfig parse_scenario_text(const std::string& text,
                                   const std::string& source_name) {
  return scenario_from_doc(parse_keyvalue_text(text, source_name));
}

ScenarioConfig scenario_from_doc(const KeyValueDoc& doc) {
  ScenarioConfig cfg;

  check_known_keys(doc.root(), {"seed", "duration_s", "core_delay_ms"});
  cfg.seed = static_cast<std::uint64_t>(doc.root().get_int("seed", 1));
  cfg.duration_s = doc.root().get_double("duration_s", 1.0);
  cfg.core_delay_s = doc.root().get_double("core_delay_ms", 20.0) / 1e3;

  parse_channel_section(doc, cfg);
  parse_frame_section(doc, cfg);
  parse_phy_section(doc, cfg);
  parse_mac_section(doc, cfg);
  parse_rlc_section(doc, cfg);
  parse_dc_section(doc, cfg);
  parse_traces_section(doc, cfg);

  for (const auto* sec : doc.find_all("enb")) {
    CellConfig cell;
    cell.id = parse_section_id(*sec);
    check_known_keys(*sec, {"position_m"});
    cell.position_m = parse_vec3(*sec, "position_m", {0, 0, 10});
    cfg.cells.push_back(cell);
  }
  for (const auto* sec : doc.find_all("ue")) {
    UeConfig ue;
    ue.id = parse_section_id(*sec);
    check_known_keys(*sec, {"position_m", "velocity_mps", "doppler_speed_mps",
                            "traffic", "ul_traffic", "los", "serving_cell"});
    ue.position_m = parse_vec3(*sec, "position_m", {50, 0, 1.5});
    ue.velocity_mps = parse_vec3(*sec, "velocity_mps", {0, 0, 0});
    ue.doppler_speed_mps = sec->get_double("doppler_speed_mps", 0.0);
    if (auto t = sec->get("traffic")) {
      if (*t == "none") {
        ue.has_dl_traffic = false;
      } else {
        ue.dl_traffic = traffic::parse_traffic_spec(*t);
      }
    }
    if (auto t = sec->get("ul_traffic")) {
      ue.ul_traffic = traffic::parse_traffic_spec(*t);
    }
    const std::string los = sec->get_string("los", "auto");
    if (los == "los") {
      ue.force_los = true;
    } else if (los == "nlos") {
      ue.force_los = false;
    } else if (los != "auto") {
      throw std::runtime_error("ue los must be auto, los or nlos");
    }
    if (sec->find("serving_cell")) {
      ue.serving_cell =
          static_cast<std::uint32_t>(sec->get_int("serving_cell", 0));
    }
    cfg.ues.push_back(ue);
  }
  for (const auto* sec : doc.find_all("obstacle")) {
    check_known_keys(*sec, {"min_m", "max_m"});
    Box box;
    box.min_corner = parse_vec3(*sec, "min_m", {0, 0, 0});
    box.max_corner = parse_vec3(*sec, "max_m", {0, 0, 0});
    cfg.obstacles.push_back(box);
  }

  // Sections other than the known singletons and repeated entities are
  // configuration mistakes.
  static const std::set<std::string> known{"",    "channel", "frame", "phy",
                                           "mac", "rlc",     "dc",    "traces"};
  for (const auto& sec : doc.sections) {
    if (known.count(sec.name)) continue;
    if (sec.name.rfind("enb", 0) == 0 || sec.name.rfind("ue", 0) == 0 ||
        sec.name.rfind("obstacle", 0) == 0) {
      continue;
    }
    throw std::runtime_error("line " + std::to_string(sec.line) +
                             ": unknown section [" + sec.name + "]");
  }

  cfg.radio.bandwidth_hz = cfg.frame.bandwidth_hz();
  cfg.validate();
  return cfg;
}

ScenarioConfig load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open scenario file: " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_scenario_text(buf.str(), path);
}

void apply_override(KeyValueDoc& doc, const std::string& assignment) {
  auto eq = assignment.find('=');
  if (eq == std::string::npos) {
    throw std::runtime_error("override '" + assignment +
                             "' is not key=value");
  }
  std::string path = assignment.substr(0, eq);
  const std::string value = assignment.substr(eq + 1);
  std::string section, key = path;
  auto dot = path.find('.');
  if (dot != std::string::npos) {
    section = path.substr(0, dot);
    key = path.substr(dot + 1);
  }
  bool any = false;
  for (auto& sec : doc.sections) {
    const bool match =
        sec.name == section ||
        (!section.empty() && sec.name.rfind(section + " ", 0) == 0);
    if (!match) continue;
    any = true;
    bool found = false;
    for (auto& e : sec.entries) {
      if (e.key == key) {
        e.value = value;
        found = true;
      }
    }
    if (!found) sec.entries.push_back(KeyValueEntry{key, value, 0});
    if (sec.name == section) break;  // exact section: single target
  }
  if (!any) {
    doc.sections.push_back(KeyValueSection{section, 0, {{key, value, 0}}});
  }
}

}  // namespace mmwavesim::scenario
