/*
 * Copyright (c) 2026 the mmwavesim authors
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#include "mmwavesim/scenario/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace mmwavesim::scenario {

MetricsReport compute_metrics(
    const traffic::PacketRegistry& packets,
    const std::map<std::uint32_t, std::uint32_t>& flow_to_ue,
    const std::vector<std::uint32_t>& all_ues,
    const std::map<std::uint32_t, std::uint64_t>& allocated_bytes,
    double duration_s, TimeNs deadline) {
  MetricsReport report;
  for (std::uint32_t ue : all_ues) {
    report.per_ue[ue].ue = ue;
  }

  std::map<std::uint32_t, std::uint64_t> ue_bytes;
  std::map<std::uint32_t, double> ue_latency_sum;
  std::vector<double> latencies;
  std::uint64_t late = 0;

  for (const auto& p : packets.all()) {
    ++report.generated;
    auto it = flow_to_ue.find(p.flow);
    const std::uint32_t ue =
        it != flow_to_ue.end() ? it->second : p.flow;
    auto& um = report.per_ue[ue];
    ++um.generated;
    switch (p.fate) {
      case traffic::PacketFate::Delivered: {
        ++report.delivered;
        ++um.delivered;
        ue_bytes[ue] += p.size_bytes;
        const double lat = ns_to_sec(p.latency());
        ue_latency_sum[ue] += lat;
        latencies.push_back(lat);
        if (p.latency() > deadline) ++late;
        break;
      }
      case traffic::PacketFate::AqmDropped:
        ++report.aqm_dropped;
        break;
      case traffic::PacketFate::HarqLost:
        ++report.harq_lost;
        break;
      case traffic::PacketFate::InFlight:
        ++report.in_flight_at_end;
        break;
    }
  }

  report.empty_trace_warning = report.generated == 0;

  std::vector<double> rates;
  double sum_alloc_bps = 0.0;
  for (auto& [ue, um] : report.per_ue) {
    um.rate_bps = ue_bytes[ue] * 8.0 / duration_s;
    auto alloc = allocated_bytes.find(ue);
    um.allocated_bps =
        alloc != allocated_bytes.end() ? alloc->second * 8.0 / duration_s : 0.0;
    um.mean_latency_s =
        um.delivered ? ue_latency_sum[ue] / um.delivered : 0.0;
    rates.push_back(um.rate_bps);
    report.cell_sum_rate_bps += um.rate_bps;
    sum_alloc_bps += um.allocated_bps;
    report.max_ue_rate_bps = std::max(report.max_ue_rate_bps, um.rate_bps);
  }

  const std::size_t n = rates.size();
  if (n > 0) {
    report.mean_ue_rate_bps = report.cell_sum_rate_bps / n;
    std::sort(rates.begin(), rates.end());
    const std::size_t worst =
        std::max<std::size_t>(1, static_cast<std::size_t>(0.05 * n));
    double worst_sum = 0.0;
    for (std::size_t i = 0; i < worst; ++i) worst_sum += rates[i];
    report.worst5_rate_bps = worst_sum / worst;
    double sum = 0.0, sq = 0.0;
    for (double r : rates) {
      sum += r;
      sq += r * r;
    }
    report.jain_fairness = sq > 0.0 ? sum * sum / (n * sq) : 0.0;
  }
  report.utilization =
      sum_alloc_bps > 0.0
          ? std::min(1.0, report.cell_sum_rate_bps / sum_alloc_bps)
          : 0.0;

  if (!latencies.empty()) {
    std::sort(latencies.begin(), latencies.end());
    double total = 0.0;
    for (double l : latencies) total += l;
    report.mean_latency_s = total / latencies.size();
    report.p50_latency_s = latencies[latencies.size() / 2];
    report.p95_latency_s =
        latencies[static_cast<std::size_t>(0.95 * (latencies.size() - 1))];
    report.max_latency_s = latencies.back();
  }
  if (report.generated > 0) {
    report.dmr = static_cast<double>(late + report.aqm_dropped +
                                     report.harq_lost +
                                     report.in_flight_at_end) /
                 report.generated;
  }
  return report;
}

std::string MetricsReport::summary_line() const {
  char buf[512];
  std::snprintf(
      buf, sizeof(buf),
      "METRICS cell_mbps=%.3f mean_ue_mbps=%.3f worst5_mbps=%.3f "
      "max_ue_mbps=%.3f mean_latency_ms=%.3f p95_latency_ms=%.3f jain=%.4f "
      "utilization=%.4f dmr=%.4f generated=%llu delivered=%llu "
      "aqm_dropped=%llu harq_lost=%llu",
      cell_sum_rate_bps / 1e6, mean_ue_rate_bps / 1e6, worst5_rate_bps / 1e6,
      max_ue_rate_bps / 1e6, mean_latency_s * 1e3, p95_latency_s * 1e3,
      jain_fairness, utilization, dmr,
      static_cast<unsigned long long>(generated),
      static_cast<unsigned long long>(delivered),
      static_cast<unsigned long long>(aqm_dropped),
      static_cast<unsigned long long>(harq_lost));
  return buf;
}

}  // namespace mmwavesim::scenario
