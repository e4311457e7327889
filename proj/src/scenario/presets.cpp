/*
 * Copyright (c) 2026 the mmwavesim authors
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#include <map>
#include <stdexcept>

#include "mmwavesim/scenario/config.hpp"

namespace mmwavesim::scenario {

namespace {

// Bundled desk-scale experiment definitions. Values referencing trace files
// use paths relative to the working directory; the CLI materializes the
// bundled traces next to the output directory before running.

constexpr char kSmoke[] = R"(
# Quick full-feature pass: statistical channel with shadowing, spatial
# consistency and blockage, three users under round-robin.
seed = 1
duration_s = 1.0

[channel]
scenario = UMa
carrier_ghz = 28
shadowing = on
spatial_consistency = on
blockage = on

[frame]
num_subbands = 14

[mac]
scheduler = rr

[enb 1]
position_m = 0 0 10

[ue 1]
position_m = 80 10 1.5
velocity_mps = 3 0 0
traffic = poisson rate_pps=2000 size_b=200

[ue 2]
position_m = 150 -40 1.5
traffic = cbr rate_pps=1000 size_b=400

[ue 3]
position_m = 220 60 1.5
doppler_speed_mps = 5
traffic = poisson rate_pps=1500 size_b=300
)";

constexpr char kMultiuser7010[] = R"(
# Multi-user scheduling at one fifth of the headline scale: 14 users at
# 2 Mbps each over a 200 MHz carrier, vehicular fading.
seed = 1
duration_s = 10.0

[channel]
scenario = UMa
carrier_ghz = 28
shadowing = on

[frame]
num_subbands = 14

[phy]
beam_method = covariance
beam_update_ms = 100

[mac]
scheduler = rr
deadline_ms = 1

[traces]
rlc = off
sinr_period_ms = 100

[enb 1]
position_m = 0 0 10

[ue 1]
position_m = 130.0 0.0 1.5
doppler_speed_mps = 25
traffic = poisson rate_pps=2500 size_b=100
[ue 2]
position_m = -124.3 115.9 1.5
doppler_speed_mps = 25
traffic = poisson rate_pps=2500 size_b=100
[ue 3]
position_m = 14.6 -209.5 1.5
doppler_speed_mps = 25
traffic = poisson rate_pps=2500 size_b=100
[ue 4]
position_m = 157.3 194.3 1.5
doppler_speed_mps = 25
traffic = poisson rate_pps=2500 size_b=100
[ue 5]
position_m = -534.7 -75.2 1.5
doppler_speed_mps = 25
traffic = poisson rate_pps=2500 size_b=100
[ue 6]
position_m = 454.6 -318.3 1.5
doppler_speed_mps = 25
traffic = poisson rate_pps=2500 size_b=100
[ue 7]
position_m = -118.5 557.5 1.5
doppler_speed_mps = 25
traffic = poisson rate_pps=2500 size_b=100
[ue 8]
position_m = -301.3 -501.4 1.5
doppler_speed_mps = 25
traffic = poisson rate_pps=2500 size_b=100
[ue 9]
position_m = 576.8 165.4 1.5
doppler_speed_mps = 25
traffic = poisson rate_pps=2500 size_b=100
[ue 10]
position_m = -548.0 279.2 1.5
doppler_speed_mps = 25
traffic = poisson rate_pps=2500 size_b=100
[ue 11]
position_m = 215.5 -592.0 1.5
doppler_speed_mps = 25
traffic = poisson rate_pps=2500 size_b=100
[ue 12]
position_m = 252.0 593.7 1.5
doppler_speed_mps = 25
traffic = poisson rate_pps=2500 size_b=100
[ue 13]
position_m = -607.5 -270.5 1.5
doppler_speed_mps = 25
traffic = poisson rate_pps=2500 size_b=100
[ue 14]
position_m = 652.4 -224.6 1.5
doppler_speed_mps = 25
traffic = poisson rate_pps=2500 size_b=100
)";

constexpr char kMultiuser7100[] = R"(
# The high-rate low-count companion point: 2 users at 20 Mbps each.
seed = 1
duration_s = 10.0

[channel]
scenario = UMa
carrier_ghz = 28
shadowing = on

[frame]
num_subbands = 14

[mac]
scheduler = rr

[traces]
rlc = off
sinr_period_ms = 100

[enb 1]
position_m = 0 0 10

[ue 1]
position_m = 120 20 1.5
doppler_speed_mps = 25
traffic = poisson rate_pps=2084 size_b=1200

[ue 2]
position_m = 240 -60 1.5
doppler_speed_mps = 25
traffic = poisson rate_pps=2084 size_b=1200
)";

constexpr char kTtiLatency[] = R"(
# Variable versus fixed TTI latency: ten users, small Poisson packets,
# deadline scheduling. Sweep arrival rate and tti via overrides.
seed = 1
duration_s = 5.0

[channel]
scenario = UMa
carrier_ghz = 28
shadowing = on

[frame]
num_subbands = 14

[mac]
scheduler = edf
tti = variable
deadline_ms = 1

[traces]
rlc = off
sinr_period_ms = 100

[enb 1]
position_m = 0 0 10

[ue 1]
position_m = 150.0 0.0 1.5
doppler_speed_mps = 25
traffic = poisson rate_pps=2500 size_b=100
[ue 2]
position_m = -124.3 115.9 1.5
doppler_speed_mps = 25
traffic = poisson rate_pps=2500 size_b=100
[ue 3]
position_m = 13.3 -189.5 1.5
doppler_speed_mps = 25
traffic = poisson rate_pps=2500 size_b=100
[ue 4]
position_m = 132.2 163.2 1.5
doppler_speed_mps = 25
traffic = poisson rate_pps=2500 size_b=100
[ue 5]
position_m = -227.8 -32.0 1.5
doppler_speed_mps = 25
traffic = poisson rate_pps=2500 size_b=100
[ue 6]
position_m = 204.8 -143.4 1.5
doppler_speed_mps = 25
traffic = poisson rate_pps=2500 size_b=100
[ue 7]
position_m = -56.1 264.1 1.5
doppler_speed_mps = 25
traffic = poisson rate_pps=2500 size_b=100
[ue 8]
position_m = -149.4 -248.6 1.5
doppler_speed_mps = 25
traffic = poisson rate_pps=2500 size_b=100
[ue 9]
position_m = 298.0 85.4 1.5
doppler_speed_mps = 25
traffic = poisson rate_pps=2500 size_b=100
[ue 10]
position_m = -294.0 149.8 1.5
doppler_speed_mps = 25
traffic = poisson rate_pps=2500 size_b=100
)";

constexpr char kCodelVsDroptail[] = R"(
# Saturating window-based source over a scripted blockage trace; queue
# management selected by override (rlc.aqm=codel or droptail:50000).
seed = 1
duration_s = 30.0
core_delay_ms = 5

[channel]
source = trace:scenarios/blockage_dip_trace.csv
shadowing = off

[frame]
num_subbands = 14

[mac]
scheduler = rr

[rlc]
aqm = droptail:50000

[traces]
rlc = off
phy = off
sched = off
sinr_period_ms = 100

[enb 1]
position_m = 0 0 10

[ue 1]
position_m = 100 0 1.5
traffic = aimd size_b=1400 ssthresh=4000
)";

constexpr char kFsVsHh[] = R"(
# LTE-anchored dual connectivity over a scripted 1 s mmWave outage;
# dc.mode selects fast_switching or hard_handover.
seed = 1
duration_s = 12.0

[channel]
source = trace:scenarios/outage_trace.csv
shadowing = off

[frame]
num_subbands = 14

[mac]
scheduler = rr

[dc]
mode = fast_switching
outage_threshold_db = -5
hysteresis_db = 3
report_period_ms = 10
x2_delay_ms = 0.25
lte_rate_mbps = 75
lte_delay_ms = 5
mme_delay_ms = 10
hh_detection_ms = 200

[traces]
rlc = off
sinr_period_ms = 20

[enb 1]
position_m = 0 0 10

[ue 1]
position_m = 100 0 1.5
traffic = cbr rate_pps=6250 size_b=1000
)";


constexpr char kOutageTrace[] = R"(t_s,n_paths
0.0,1,-126,1e-7,0,0,0,0
7.9996,1,-185,1e-7,0,0,0,0
9.0,1,-126,1e-7,0,0,0,0
)";

constexpr char kBlockageDipTrace[] = R"(t_s,n_paths
0.0,1,-135,1e-7,0,0,0,0
18.0,1,-160,1e-7,0,0,0,0
20.0,1,-135,1e-7,0,0,0,0
)";

const std::map<std::string, const char*>& trace_registry() {
  static const std::map<std::string, const char*> traces{
      {"outage_trace.csv", kOutageTrace},
      {"blockage_dip_trace.csv", kBlockageDipTrace},
  };
  return traces;
}

const std::map<std::string, const char*>& registry() {
  static const std::map<std::string, const char*> presets{
      {"smoke", kSmoke},
      {"multiuser-70-10", kMultiuser7010},
      {"multiuser-7-100", kMultiuser7100},
      {"tti-latency", kTtiLatency},
      {"codel-vs-droptail", kCodelVsDroptail},
      {"fs-vs-hh", kFsVsHh},
  };
  return presets;
}

}  // namespace

std::vector<std::string> preset_names() {
  std::vector<std::string> names;
  for (const auto& [name, _] : registry()) names.push_back(name);
  return names;
}

std::string preset_trace_content(const std::string& filename) {
  auto it = trace_registry().find(filename);
  if (it == trace_registry().end()) {
    throw std::runtime_error("no bundled trace named '" + filename + "'");
  }
  return it->second;
}

std::string preset_text(const std::string& name) {
  auto it = registry().find(name);
  if (it == registry().end()) {
    std::string known;
    for (const auto& n : preset_names()) known += " " + n;
    throw std::runtime_error("unknown preset '" + name + "'; available:" + known);
  }
  return it->second;
}

}  // namespace mmwavesim::scenario
