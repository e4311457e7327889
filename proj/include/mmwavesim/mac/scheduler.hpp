/*
 * Copyright (c) 2026 the mmwavesim authors
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#ifndef MMWAVESIM_MAC_SCHEDULER_HPP
#define MMWAVESIM_MAC_SCHEDULER_HPP

#include <cstdint>
#include <deque>
#include <limits>
#include <optional>
#include <vector>

#include "mmwavesim/mac/amc.hpp"
#include "mmwavesim/phy/frame.hpp"

namespace mmwavesim::mac {

enum class SchedulerPolicy { RoundRobin, ProportionalFair, EarliestDeadlineFirst, MaxRate };

SchedulerPolicy scheduler_policy_from_string(const std::string& s);
std::string to_string(SchedulerPolicy p);

struct TtiMode {
  bool fixed = false;
  int sym_per_slot = 0;  // quantum when fixed

  static TtiMode variable() { return {false, 0}; }
  static TtiMode fixed_tti(int sym_per_slot) { return {true, sym_per_slot}; }
};

// A pending non-adaptive retransmission: same symbol count and MCS as the
// original transmission.
struct RetxRequest {
  int process_id = -1;
  int attempt = 2;  // attempt number of the retransmission itself
  int num_symbols = 0;
  int mcs = 0;
  std::uint32_t tb_bytes = 0;
};

// Scheduler-side view of one user in one direction.
struct UeSchedState {
  std::uint32_t ue = 0;
  std::uint64_t buffer_bytes = 0;  // latest BSR
  int cqi = 0;
  double pf_avg_rate_bps = 0.0;
  TimeNs hol_deadline = std::numeric_limits<TimeNs>::max();
  std::deque<RetxRequest> harq_pending;
  std::vector<int> free_process_ids;  // available stop-and-wait processes

  // bookkeeping filled by the allocator
  std::uint64_t last_allocated_bytes = 0;

  bool has_traffic() const { return buffer_bytes > 0 || !harq_pending.empty(); }
};

// Builds one subframe's variable-TTI allocation: HARQ retransmissions first,
// then new data under the selected policy. DL data slots lead, UL data slots
// sit adjacent to the UL control symbol. Mutates each user's pending-retx
// queue, free-process list, PF average and last_allocated_bytes.
struct ScheduleParams {
  SchedulerPolicy policy = SchedulerPolicy::RoundRobin;
  TtiMode tti = TtiMode::variable();
  double pf_ewma_time_constant_s = 0.1;
  TimeNs deadline_budget_ns = ms_to_ns(1.0);
};

phy::SubframeAllocation schedule_subframe(
    const ScheduleParams& params, std::vector<UeSchedState*>& dl_users,
    std::vector<UeSchedState*>& ul_users, const phy::FrameConfig& cfg,
    std::int64_t target_subframe, std::size_t& rr_pointer);

// HARQ feedback bookkeeping. Returns the retransmission request to enqueue
// (nack below the attempt limit), or nothing. Throws on feedback for a
// process that is not in flight.
struct HarqTxProcess {
  int num_symbols = 0;
  int mcs = 0;
  std::uint32_t tb_bytes = 0;
  int attempt = 1;
  bool in_flight = false;
};

class HarqTxPool {
 public:
  HarqTxPool(int num_processes, int max_attempts)
      : max_attempts_(max_attempts), processes_(num_processes) {}

  std::optional<int> reserve();  // next free process id
  std::vector<int> free_ids() const;
  void mark_sent(int process_id, int num_symbols, int mcs,
                 std::uint32_t tb_bytes, int attempt);
  // Returns a process without feedback (nothing was transmitted on it).
  void release(int process_id) { processes_.at(process_id).in_flight = false; }
  // ack or nack; nack below the limit yields a RetxRequest.
  std::optional<RetxRequest> on_feedback(int process_id, bool ack);
  bool in_flight(int process_id) const;
  int num_processes() const { return static_cast<int>(processes_.size()); }
  int max_attempts() const { return max_attempts_; }
  std::uint64_t exhausted_count() const { return exhausted_; }

 private:
  int max_attempts_;
  std::vector<HarqTxProcess> processes_;
  std::uint64_t exhausted_ = 0;
};

}  // namespace mmwavesim::mac

#endif
