/*
 * Copyright (c) 2026 the mmwavesim authors
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#ifndef MMWAVESIM_TRAFFIC_PACKET_HPP
#define MMWAVESIM_TRAFFIC_PACKET_HPP

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "mmwavesim/core/time.hpp"

namespace mmwavesim::traffic {

enum class PacketFate : std::uint8_t {
  InFlight,    // generated, not yet resolved at simulation end
  Delivered,   // reached the IP layer at the receiver
  AqmDropped,  // dropped by queue management before transmission
  HarqLost,    // exhausted link-layer retransmissions
};

// Lifecycle record of one IP packet. All latency and loss metrics derive
// from these three timestamps.
struct Packet {
  std::uint32_t flow = 0;
  std::uint64_t seq = 0;
  std::uint32_t size_bytes = 0;
  TimeNs t_gen = 0;
  TimeNs t_pdcp_enq = -1;
  TimeNs t_ip_deliver = -1;
  std::uint64_t pdcp_sn = 0;  // bearer-scoped sequence, set at PDCP
  PacketFate fate = PacketFate::InFlight;

  bool delivered() const { return fate == PacketFate::Delivered; }
  TimeNs latency() const { return t_ip_deliver - t_pdcp_enq; }
};

// Owns every generated packet; the payload id handed to RLC/PDCP is the
// index into this registry.
class PacketRegistry {
 public:
  std::uint64_t create(std::uint32_t flow, std::uint64_t seq,
                       std::uint32_t size_bytes, TimeNs t_gen) {
    packets_.push_back(Packet{flow, seq, size_bytes, t_gen, -1, -1, 0,
                              PacketFate::InFlight});
    return packets_.size() - 1;
  }

  Packet& at(std::uint64_t id) { return packets_.at(id); }
  const Packet& at(std::uint64_t id) const { return packets_.at(id); }
  std::size_t size() const { return packets_.size(); }
  const std::vector<Packet>& all() const { return packets_; }

  void stamp_pdcp_enqueue(std::uint64_t id, TimeNs now) {
    Packet& p = at(id);
    if (p.t_pdcp_enq >= 0) {
      throw std::logic_error("packet PDCP-enqueued twice");
    }
    if (now < p.t_gen) {
      throw std::logic_error("PDCP enqueue precedes generation");
    }
    p.t_pdcp_enq = now;
  }

  void stamp_ip_deliver(std::uint64_t id, TimeNs now) {
    Packet& p = at(id);
    if (p.t_pdcp_enq < 0 || now < p.t_pdcp_enq) {
      throw std::logic_error("IP delivery precedes PDCP enqueue");
    }
    if (p.t_ip_deliver >= 0) {
      throw std::logic_error("packet IP-delivered twice");
    }
    p.t_ip_deliver = now;
    p.fate = PacketFate::Delivered;
  }

  void mark_lost(std::uint64_t id, PacketFate fate) {
    Packet& p = at(id);
    if (p.fate == PacketFate::InFlight) p.fate = fate;
  }

 private:
  std::vector<Packet> packets_;
};

}  // namespace mmwavesim::traffic

#endif
