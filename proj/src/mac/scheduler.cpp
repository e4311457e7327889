/*
 * Copyright (c) 2026 the mmwavesim authors
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#include "mmwavesim/mac/scheduler.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace mmwavesim::mac {

SchedulerPolicy scheduler_policy_from_string(const std::string& s) {
  if (s == "rr") return SchedulerPolicy::RoundRobin;
  if (s == "pf") return SchedulerPolicy::ProportionalFair;
  if (s == "edf") return SchedulerPolicy::EarliestDeadlineFirst;
  if (s == "mr") return SchedulerPolicy::MaxRate;
  throw std::runtime_error("unknown scheduler policy '" + s +
                           "' (expected rr, pf, edf, mr)");
}

std::string to_string(SchedulerPolicy p) {
  switch (p) {
    case SchedulerPolicy::RoundRobin: return "rr";
    case SchedulerPolicy::ProportionalFair: return "pf";
    case SchedulerPolicy::EarliestDeadlineFirst: return "edf";
    case SchedulerPolicy::MaxRate: return "mr";
  }
  return "?";
}

namespace {

struct PlannedSlot {
  phy::SlotAlloc slot;
  UeSchedState* user = nullptr;
};

// Slot granularity in symbols: 1 in variable-TTI mode, otherwise the fixed
// quantum clamped to the per-subframe data budget (so sym_per_slot = 24
// yields a single full-subframe user).
int slot_unit(const TtiMode& tti, const phy::FrameConfig& cfg) {
  if (!tti.fixed) return 1;
  return std::min(tti.sym_per_slot, cfg.data_symbols_per_subframe());
}

int quantize_symbols(int need, int unit, int remaining) {
  if (need <= 0 || remaining < unit) return 0;
  const int slots = (need + unit - 1) / unit;
  const int max_fit = (remaining / unit) * unit;
  return std::min(slots * unit, max_fit);
}

// Pops as many pending retransmissions as fit the remaining budget.
void plan_retransmissions(std::vector<UeSchedState*>& users,
                          phy::Direction dir, int& budget,
                          std::vector<PlannedSlot>& out) {
  for (auto* u : users) {
    while (!u->harq_pending.empty()) {
      const RetxRequest& r = u->harq_pending.front();
      if (r.num_symbols > budget) break;  // deferred to a later subframe
      phy::SlotAlloc slot;
      slot.direction = dir;
      slot.kind = phy::SlotKind::Data;
      slot.ue = u->ue;
      slot.num_symbols = r.num_symbols;
      slot.mcs = r.mcs;
      slot.tb_bytes = r.tb_bytes;
      slot.harq = {r.process_id, r.attempt, true};
      budget -= r.num_symbols;
      out.push_back({slot, u});
      u->harq_pending.pop_front();
    }
  }
}

int symbols_needed(const UeSchedState& u, const phy::FrameConfig& cfg,
                   int cap) {
  if (u.buffer_bytes == 0) return 0;
  const std::uint32_t want = static_cast<std::uint32_t>(
      std::min<std::uint64_t>(u.buffer_bytes, 0xffffffffu));
  return n_symbols_for(want, cqi_to_mcs(u.cqi), cfg, cap);
}

// Creates the new-data slot for `u` with `symbols` symbols, reserving a HARQ
// process id from the user's free list. Returns false when no process is
// available (stop-and-wait limit reached).
bool plan_new_data(UeSchedState* u, phy::Direction dir, int symbols,
                   const phy::FrameConfig& cfg,
                   std::vector<PlannedSlot>& out) {
  if (symbols <= 0 || u->free_process_ids.empty()) return false;
  phy::SlotAlloc slot;
  slot.direction = dir;
  slot.kind = phy::SlotKind::Data;
  slot.ue = u->ue;
  slot.num_symbols = symbols;
  slot.mcs = cqi_to_mcs(u->cqi);
  slot.tb_bytes = tb_size_bytes(slot.mcs, symbols, cfg);
  slot.harq.process_id = u->free_process_ids.back();
  slot.harq.attempt = 1;
  slot.harq.is_retx = false;
  u->free_process_ids.pop_back();
  out.push_back({slot, u});
  return true;
}

void plan_round_robin(std::vector<UeSchedState*>& users, phy::Direction dir,
                      int& budget, const phy::FrameConfig& cfg,
                      const TtiMode& tti, std::size_t& rr_pointer,
                      std::vector<PlannedSlot>& out) {
  std::vector<UeSchedState*> active;
  for (auto* u : users) {
    if (u->buffer_bytes > 0 && !u->free_process_ids.empty()) active.push_back(u);
  }
  if (active.empty() || budget <= 0) return;
  // Rotate the starting user so leftover symbols even out over time.
  std::rotate(active.begin(), active.begin() + (rr_pointer % active.size()),
              active.end());
  ++rr_pointer;

  // Even split in slot units; users needing fewer return the surplus, which
  // is then granted unit by unit to the still-hungry users.
  const int unit = slot_unit(tti, cfg);
  const int budget_units = budget / unit;
  const int n = static_cast<int>(active.size());
  std::vector<int> grant(n, 0);
  std::vector<int> need(n, 0);
  for (int i = 0; i < n; ++i) {
    const int syms = symbols_needed(*active[i], cfg, budget);
    need[i] = (syms + unit - 1) / unit;
  }
  const int share = std::max(1, budget_units / n);
  int used = 0;
  for (int i = 0; i < n && used < budget_units; ++i) {
    grant[i] = std::min({need[i], share, budget_units - used});
    used += grant[i];
  }
  bool progress = true;
  while (used < budget_units && progress) {
    progress = false;
    for (int i = 0; i < n && used < budget_units; ++i) {
      if (grant[i] < need[i]) {
        ++grant[i];
        ++used;
        progress = true;
      }
    }
  }
  for (int i = 0; i < n; ++i) {
    if (grant[i] <= 0) continue;
    const int symbols = grant[i] * unit;
    if (plan_new_data(active[i], dir, symbols, cfg, out)) {
      budget -= symbols;
    }
  }
}

void plan_ranked(std::vector<UeSchedState*> ranked, phy::Direction dir,
                 int& budget, const phy::FrameConfig& cfg, const TtiMode& tti,
                 std::vector<PlannedSlot>& out) {
  const int unit = slot_unit(tti, cfg);
  for (auto* u : ranked) {
    if (budget <= 0) break;
    int need = symbols_needed(*u, cfg, budget);
    need = quantize_symbols(need, unit, budget);
    if (need <= 0) continue;
    if (plan_new_data(u, dir, need, cfg, out)) budget -= need;
  }
}

void plan_new_traffic(const ScheduleParams& params,
                      std::vector<UeSchedState*>& users, phy::Direction dir,
                      int& budget, const phy::FrameConfig& cfg,
                      std::size_t& rr_pointer, std::vector<PlannedSlot>& out) {
  std::vector<UeSchedState*> active;
  for (auto* u : users) {
    if (u->buffer_bytes > 0) active.push_back(u);
  }
  if (active.empty() || budget <= 0) return;

  switch (params.policy) {
    case SchedulerPolicy::RoundRobin:
      plan_round_robin(users, dir, budget, cfg, params.tti, rr_pointer, out);
      return;
    case SchedulerPolicy::ProportionalFair: {
      // Rank by achievable rate over the smoothed served rate.
      std::stable_sort(active.begin(), active.end(), [&](auto* a, auto* b) {
        auto metric = [&](const UeSchedState& u) {
          const double inst =
              tb_size_bytes(cqi_to_mcs(u.cqi), 1, cfg) * 8.0;
          return inst / std::max(u.pf_avg_rate_bps, 1.0);
        };
        const double ma = metric(*a), mb = metric(*b);
        if (ma != mb) return ma > mb;
        return a->ue < b->ue;
      });
      plan_ranked(active, dir, budget, cfg, params.tti, out);
      return;
    }
    case SchedulerPolicy::EarliestDeadlineFirst:
      std::stable_sort(active.begin(), active.end(), [](auto* a, auto* b) {
        if (a->hol_deadline != b->hol_deadline) {
          return a->hol_deadline < b->hol_deadline;
        }
        return a->ue < b->ue;
      });
      plan_ranked(active, dir, budget, cfg, params.tti, out);
      return;
    case SchedulerPolicy::MaxRate: {
      // Tiers by MCS, highest first; round-robin within each tier.
      std::map<int, std::vector<UeSchedState*>, std::greater<int>> tiers;
      for (auto* u : active) tiers[cqi_to_mcs(u->cqi)].push_back(u);
      std::vector<UeSchedState*> ranked;
      for (auto& [mcs, tier] : tiers) {
        if (tier.size() > 1) {
          std::rotate(tier.begin(), tier.begin() + (rr_pointer % tier.size()),
                      tier.end());
        }
        ranked.insert(ranked.end(), tier.begin(), tier.end());
      }
      ++rr_pointer;
      plan_ranked(ranked, dir, budget, cfg, params.tti, out);
      return;
    }
  }
}

}  // namespace

phy::SubframeAllocation schedule_subframe(
    const ScheduleParams& params, std::vector<UeSchedState*>& dl_users,
    std::vector<UeSchedState*>& ul_users, const phy::FrameConfig& cfg,
    std::int64_t target_subframe, std::size_t& rr_pointer) {
  int budget = cfg.data_symbols_per_subframe();

  // Retransmissions take the budget first, in both directions.
  std::vector<PlannedSlot> dl_slots, ul_slots;
  plan_retransmissions(dl_users, phy::Direction::Downlink, budget, dl_slots);
  plan_retransmissions(ul_users, phy::Direction::Uplink, budget, ul_slots);

  plan_new_traffic(params, dl_users, phy::Direction::Downlink, budget, cfg,
                   rr_pointer, dl_slots);
  plan_new_traffic(params, ul_users, phy::Direction::Uplink, budget, cfg,
                   rr_pointer, ul_slots);

  // PF averages decay every subframe and absorb what was just allocated.
  const double subframe_s = ns_to_sec(cfg.subframe_length_ns);
  const double alpha = subframe_s / params.pf_ewma_time_constant_s;
  auto settle = [&](std::vector<UeSchedState*>& users,
                    const std::vector<PlannedSlot>& slots) {
    for (auto* u : users) u->last_allocated_bytes = 0;
    for (const auto& p : slots) p.user->last_allocated_bytes += p.slot.tb_bytes;
    for (auto* u : users) {
      const double served_bps = u->last_allocated_bytes * 8.0 / subframe_s;
      u->pf_avg_rate_bps = (1.0 - alpha) * u->pf_avg_rate_bps +
                           alpha * served_bps;
    }
  };
  settle(dl_users, dl_slots);
  settle(ul_users, ul_slots);

  phy::AllocationBuilder builder(cfg);
  for (const auto& p : dl_slots) {
    if (!builder.try_add(p.slot)) {
      throw std::logic_error("scheduler exceeded the subframe symbol budget");
    }
  }
  for (const auto& p : ul_slots) {
    if (!builder.try_add(p.slot)) {
      throw std::logic_error("scheduler exceeded the subframe symbol budget");
    }
  }
  return builder.build(target_subframe);
}

std::optional<int> HarqTxPool::reserve() {
  for (int i = 0; i < static_cast<int>(processes_.size()); ++i) {
    if (!processes_[i].in_flight) return i;
  }
  return std::nullopt;
}

std::vector<int> HarqTxPool::free_ids() const {
  std::vector<int> out;
  for (int i = 0; i < static_cast<int>(processes_.size()); ++i) {
    if (!processes_[i].in_flight) out.push_back(i);
  }
  return out;
}

void HarqTxPool::mark_sent(int process_id, int num_symbols, int mcs,
                           std::uint32_t tb_bytes, int attempt) {
  auto& p = processes_.at(process_id);
  p.in_flight = true;
  p.num_symbols = num_symbols;
  p.mcs = mcs;
  p.tb_bytes = tb_bytes;
  p.attempt = attempt;
}

std::optional<RetxRequest> HarqTxPool::on_feedback(int process_id, bool ack) {
  auto& p = processes_.at(process_id);
  if (!p.in_flight) {
    throw std::runtime_error("HARQ feedback for idle process " +
                             std::to_string(process_id));
  }
  if (ack) {
    p.in_flight = false;
    return std::nullopt;
  }
  if (p.attempt >= max_attempts_) {
    p.in_flight = false;
    ++exhausted_;
    return std::nullopt;
  }
  RetxRequest r;
  r.process_id = process_id;
  r.attempt = p.attempt + 1;
  r.num_symbols = p.num_symbols;
  r.mcs = p.mcs;
  r.tb_bytes = p.tb_bytes;
  // The process stays occupied until its retransmission resolves.
  return r;
}

bool HarqTxPool::in_flight(int process_id) const {
  return processes_.at(process_id).in_flight;
}

}  // namespace mmwavesim::mac
