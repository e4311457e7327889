/*
 * Copyright (c) 2026 the mmwavesim authors
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#include "mmwavesim/scenario/stack.hpp"

#include <algorithm>
#include <stdexcept>

#include "mmwavesim/beamforming/beams.hpp"
#include "mmwavesim/core/units.hpp"

namespace mmwavesim::scenario {

namespace {

constexpr std::uint32_t kUlFlowOffset = 100'000;

int dir_index(phy::Direction d) { return d == phy::Direction::Downlink ? 0 : 1; }

}  // namespace

// Per-(cell, ue) propagation and beam state.
struct Simulation::Link {
  std::uint32_t cell_id = 0;
  std::uint32_t ue_id = 0;
  channel::LosState los;
  channel::ShadowingState shadow;
  channel::ChannelState state;
  channel::BlockageState blockage;
  double pathloss_db = 0.0;  // geometry part, shadowing kept separately
  beamforming::BeamPair beams;  // tx = eNB side, rx = UE side
  bool beams_valid = false;
  RngStream fading_rng;
  RngStream shadow_rng;
  RngStream beam_rng;
  RngStream decode_rng;
  RngStream misc_rng;
  Vec3 last_update_pos;
  TimeNs last_update = 0;

  Link(RngStream f, RngStream s, RngStream b, RngStream d, RngStream m)
      : fading_rng(std::move(f)),
        shadow_rng(std::move(s)),
        beam_rng(std::move(b)),
        decode_rng(std::move(d)),
        misc_rng(std::move(m)) {}
};

struct Simulation::TbPayload {
  std::vector<rlc::RlcSegment> segments;
  std::uint64_t epoch = 0;
  bool doomed = false;  // forced residual loss injection
  std::uint32_t used_bytes = 0;
};

struct Simulation::ActiveTx {
  std::uint32_t cell_id = 0;
  std::uint32_t ue_id = 0;
  phy::Direction direction = phy::Direction::Downlink;
  std::int64_t subframe = 0;
  int first_symbol = 0;
  int end_symbol = 0;
};

struct Simulation::Cell {
  std::uint32_t id = 0;
  Vec3 position;
  std::map<std::uint32_t, mac::UeSchedState> dl_sched;
  std::map<std::uint32_t, mac::UeSchedState> ul_sched;
  std::map<std::uint32_t, std::unique_ptr<mac::HarqTxPool>> dl_harq;
  std::map<std::uint32_t, std::unique_ptr<mac::HarqTxPool>> ul_harq;
  std::map<std::uint32_t, std::unique_ptr<rlc::AmTransmitter>> dl_rlc_tx;
  std::map<std::uint32_t, std::unique_ptr<rlc::AmReceiver>> ul_rlc_rx;
  std::map<std::uint32_t, std::unique_ptr<phy::HarqSoftBuffer>> ul_soft;
  std::map<std::uint32_t, std::uint64_t> epoch;
  std::map<std::int64_t, phy::SubframeAllocation> pending_alloc;
  // Bytes granted but not yet drawn from RLC (the 2-subframe MAC->PHY
  // pipeline would otherwise double-grant the same buffer).
  std::map<std::uint32_t, std::uint64_t> dl_outstanding;
  std::map<std::uint32_t, std::uint64_t> ul_outstanding;
  std::size_t rr_pointer = 0;
};

struct Simulation::CcFlow {
  std::uint32_t ue_id = 0;
  std::uint32_t flow_id = 0;
  std::uint32_t packet_bytes = 1400;
  traffic::CongestionController cc;
  traffic::CumulativeAcker acker;
  std::map<std::uint64_t, std::uint64_t> seq_payload;  // latest payload per seq
};

struct Simulation::Ue {
  std::uint32_t id = 0;
  Vec3 position0;
  Vec3 velocity;
  double doppler_speed = 0.0;
  std::uint32_t serving_cell = 0;
  std::unique_ptr<rlc::AmReceiver> dl_rlc_rx;
  std::unique_ptr<rlc::AmTransmitter> ul_rlc_tx;
  std::unique_ptr<phy::HarqSoftBuffer> dl_soft;
  dc::PdcpTx pdcp_tx;
  std::unique_ptr<dc::PdcpRx> pdcp_rx;
  std::unique_ptr<dc::DcBearer> bearer;
  CcFlow* cc_flow = nullptr;
  bool full_buffer = false;
  std::uint32_t fb_packet_bytes = 1400;
  std::uint64_t fb_seq = 0;
  traffic::TrafficSpec dl_spec;
  bool has_dl_traffic = false;
};

Simulation::Simulation(const ScenarioConfig& cfg, std::string out_dir)
    : cfg_(cfg),
      rng_(cfg.seed),
      traces_(std::move(out_dir)),
      error_model_(mi_, calibration_) {
  cfg_.validate();
  duration_ = sec_to_ns(cfg_.duration_s);
  if (cfg_.channel_source == ChannelSource::Trace) {
    channel_trace_ = channel::load_channel_trace(cfg_.trace_path);
  }
  if (cfg_.dc_mode != dc::DcMode::None) {
    coordinator_.emplace(cfg_.coordinator);
  }
  enb_codebook_ = beamforming::make_azimuth_codebook(cfg_.enb_array, cfg_.tx_beams);
  ue_codebook_ = beamforming::make_azimuth_codebook(cfg_.ue_array, cfg_.rx_beams);
  build_topology();
  setup_traffic();
}

Simulation::~Simulation() = default;

Simulation::Link& Simulation::link(std::uint32_t cell_id, std::uint32_t ue_id) {
  return *links_.at({cell_id, ue_id});
}
Simulation::Cell& Simulation::cell(std::uint32_t id) { return *cells_.at(id); }
Simulation::Ue& Simulation::ue(std::uint32_t id) { return *ues_.at(id); }

Vec3 Simulation::ue_position(const Ue& u, TimeNs t) const {
  return u.position0 + u.velocity * ns_to_sec(t);
}

std::uint32_t Simulation::serving_cell_of(std::uint32_t ue_id) const {
  return ues_.at(ue_id)->serving_cell;
}

std::uint64_t Simulation::harq_exhausted() const {
  std::uint64_t total = 0;
  for (const auto& [id, c] : cells_) {
    for (const auto& [ue, pool] : c->dl_harq) total += pool->exhausted_count();
    for (const auto& [ue, pool] : c->ul_harq) total += pool->exhausted_count();
  }
  return total;
}

double Simulation::link_pathloss_db(Link& l) const {
  if (cfg_.channel_source == ChannelSource::Trace) return 0.0;
  return l.pathloss_db + l.shadow.value_db;
}

void Simulation::init_link(Link& l, TimeNs now) {
  Ue& u = ue(l.ue_id);
  Cell& c = cell(l.cell_id);
  const Vec3 upos = ue_position(u, now);

  if (cfg_.channel_source == ChannelSource::Trace) {
    l.state = channel::channel_from_trace(*channel_trace_, ns_to_sec(now),
                                          cfg_.enb_array, cfg_.ue_array,
                                          cfg_.radio.wavelength_m());
    l.last_update_pos = upos;
    l.last_update = now;
    return;
  }

  // LOS condition: forced, geometric, or one statistical draw per link.
  const UeConfig* ue_cfg = nullptr;
  for (const auto& uc : cfg_.ues) {
    if (uc.id == u.id) ue_cfg = &uc;
  }
  if (ue_cfg && ue_cfg->force_los.has_value()) {
    l.los.condition = *ue_cfg->force_los ? channel::LosCondition::Los
                                         : channel::LosCondition::Nlos;
    l.los.source = channel::LosSource::Statistical;
  } else {
    l.los = channel::determine_los(c.position, upos, cfg_.obstacles,
                                   cfg_.los_mode, params_, cfg_.radio,
                                   l.misc_rng);
  }

  const bool los = l.los.condition == channel::LosCondition::Los;
  l.pathloss_db = channel::pathloss_db(params_, cfg_.radio, l.los,
                                       distance_3d(c.position, upos),
                                       distance_2d(c.position, upos));
  if (cfg_.shadowing) {
    l.shadow = channel::init_shadowing(
        params_.shadow_sigma_db(cfg_.radio.kind, los),
        params_.shadow_dcor_m(cfg_.radio.kind, los), upos.x, upos.y,
        l.shadow_rng);
  }

  channel::LinkGeometry geom{c.position, upos, u.velocity};
  if (u.doppler_speed > 0.0 && u.velocity.norm() == 0.0) {
    // Fading Doppler without motion: position stays fixed while the fading
    // process evolves as if the UE moved at this speed.
    geom.rx_velocity_mps = {u.doppler_speed, 0.0, 0.0};
  }
  l.state = channel::generate_channel(geom, params_, cfg_.radio, l.los,
                                      cfg_.enb_array, cfg_.ue_array, now,
                                      l.fading_rng);
  if (cfg_.blockage) {
    l.blockage = channel::generate_blockage(
        params_, cfg_.radio, cfg_.blockage_regions, cfg_.blocker_speed_mps,
        channel::UeOrientation::Portrait, l.misc_rng);
    l.state = channel::apply_blockage(l.state, l.blockage,
                                      cfg_.radio.wavelength_m());
  }
  l.last_update_pos = upos;
  l.last_update = now;
}

void Simulation::attach(Ue& u, Cell& c) {
  const int procs = cfg_.frame.num_harq_processes;
  const int attempts = cfg_.frame.max_harq_attempts;
  c.dl_sched[u.id] = mac::UeSchedState{};
  c.dl_sched[u.id].ue = u.id;
  c.ul_sched[u.id] = mac::UeSchedState{};
  c.ul_sched[u.id].ue = u.id;
  c.dl_harq[u.id] = std::make_unique<mac::HarqTxPool>(procs, attempts);
  c.ul_harq[u.id] = std::make_unique<mac::HarqTxPool>(procs, attempts);
  c.dl_rlc_tx[u.id] = std::make_unique<rlc::AmTransmitter>(cfg_.rlc);
  c.ul_rlc_rx[u.id] = std::make_unique<rlc::AmReceiver>(cfg_.rlc);
  c.ul_soft[u.id] = std::make_unique<phy::HarqSoftBuffer>(procs, attempts);
  if (!c.epoch.count(u.id)) c.epoch[u.id] = 0;

  // AQM drop accounting happens at the transmitter.
  const std::uint32_t ue_id = u.id;
  c.dl_rlc_tx[u.id]->set_aqm_drop_callback([this, ue_id](const rlc::Sdu& sdu) {
    packets_.mark_lost(sdu.payload_id, traffic::PacketFate::AqmDropped);
    log_rlc(sim_.now(), ue_id, "drop_aqm", sdu.bytes,
            ns_to_ms(sim_.now() - sdu.enqueue_time));
  });

  u.serving_cell = c.id;
  u.dl_rlc_rx = std::make_unique<rlc::AmReceiver>(cfg_.rlc);
  u.dl_soft = std::make_unique<phy::HarqSoftBuffer>(procs, attempts);
  if (cfg_.traces.cell_id) {
    traces_.sink("cell_id_trace", {"t_s", "ue", "serving_cell"})
        .append({TraceValue(ns_to_sec(sim_.now()), 9), TraceValue(u.id),
                 TraceValue(c.id)});
  }
}

void Simulation::detach(Ue& u, Cell& c) {
  c.dl_outstanding.erase(u.id);
  c.ul_outstanding.erase(u.id);
  c.dl_sched.erase(u.id);
  c.ul_sched.erase(u.id);
  c.dl_harq.erase(u.id);
  c.ul_harq.erase(u.id);
  c.dl_rlc_tx.erase(u.id);
  c.ul_rlc_rx.erase(u.id);
  c.ul_soft.erase(u.id);
  ++c.epoch[u.id];
  // Any in-flight transport blocks for this association are stale now.
  for (auto it = tb_store_.begin(); it != tb_store_.end();) {
    if (std::get<0>(it->first) == c.id && std::get<1>(it->first) == u.id) {
      it = tb_store_.erase(it);
    } else {
      ++it;
    }
  }
}

void Simulation::build_topology() {
  for (const auto& cc : cfg_.cells) {
    auto c = std::make_unique<Cell>();
    c->id = cc.id;
    c->position = cc.position_m;
    cells_[cc.id] = std::move(c);
  }
  for (const auto& uc : cfg_.ues) {
    auto u = std::make_unique<Ue>();
    u->id = uc.id;
    u->position0 = uc.position_m;
    u->velocity = uc.velocity_mps;
    u->doppler_speed = uc.doppler_speed_mps;
    u->dl_spec = uc.dl_traffic;
    u->has_dl_traffic = uc.has_dl_traffic;
    u->pdcp_rx = std::make_unique<dc::PdcpRx>(dc::PdcpRx::Config{
        cfg_.dc_mode != dc::DcMode::None, ms_to_ns(20)});
    ues_[uc.id] = std::move(u);
  }

  // Propagation state for every (cell, ue) pair; interference and
  // coordination need the cross links too.
  for (auto& [cid, c] : cells_) {
    for (auto& [uid, u] : ues_) {
      const std::uint64_t tag = rng_link_counter_++;
      auto l = std::make_unique<Link>(
          rng_.stream("channel-fading", tag), rng_.stream("channel-shadow", tag),
          rng_.stream("beamforming", tag), rng_.stream("phy-decode", tag),
          rng_.stream("channel-misc", tag));
      l->cell_id = cid;
      l->ue_id = uid;
      init_link(*l, 0);
      links_[{cid, uid}] = std::move(l);
    }
  }

  // Initial association: configured cell or the strongest by pathloss.
  for (const auto& uc : cfg_.ues) {
    Ue& u = ue(uc.id);
    std::uint32_t best_cell = cfg_.cells.front().id;
    if (uc.serving_cell) {
      best_cell = *uc.serving_cell;
    } else {
      double best = 1e18;
      for (auto& [cid, c] : cells_) {
        Link& l = link(cid, uc.id);
        const double loss = link_pathloss_db(l);
        if (loss < best) {
          best = loss;
          best_cell = cid;
        }
      }
    }
    attach(u, cell(best_cell));
    if (cfg_.dc_mode != dc::DcMode::None) setup_dc(u);
  }
}

void Simulation::setup_dc(Ue& u) {
  dc::DcBearer::Hooks hooks;
  const std::uint32_t ue_id = u.id;
  hooks.mmwave_enqueue = [this, ue_id](std::uint32_t cell_id,
                                       const dc::DcBearer::PdcpPdu& pdu) {
    rlc_enqueue_dl(cell_id, ue_id, pdu.payload_id, pdu.bytes, pdu.sdu_time);
  };
  hooks.mmwave_drain = [this, ue_id](std::uint32_t cell_id) {
    Cell& c = cell(cell_id);
    Ue& u2 = ue(ue_id);
    auto it = c.dl_rlc_tx.find(ue_id);
    std::vector<rlc::Sdu> pending;
    if (it != c.dl_rlc_tx.end()) {
      pending = it->second->drain_for_forwarding(sim_.now());
    }
    // Fresh association epoch: in-flight TBs for the old pairing are stale.
    detach(u2, c);
    attach(u2, c);
    return pending;
  };
  hooks.lte_deliver = [this, ue_id](const dc::DcBearer::PdcpPdu& pdu) {
    deliver_ip_dl(ue_id, pdu.payload_id, "lte");
  };
  hooks.describe = [this](const rlc::Sdu& sdu) {
    const auto& p = packets_.at(sdu.payload_id);
    return dc::DcBearer::PdcpPdu{p.pdcp_sn, sdu.payload_id, sdu.bytes,
                                 sdu.enqueue_time};
  };
  hooks.on_serving_change = [this, ue_id](std::uint32_t cell_id, dc::Leg leg) {
    Ue& u2 = ue(ue_id);
    if (leg == dc::Leg::MmWave && cell_id != u2.serving_cell) {
      // Secondary handover: move the association.
      detach(u2, cell(u2.serving_cell));
      attach(u2, cell(cell_id));
    }
    if (cfg_.traces.cell_id) {
      traces_.sink("cell_id_trace", {"t_s", "ue", "serving_cell"})
          .append({TraceValue(ns_to_sec(sim_.now()), 9), TraceValue(u2.id),
                   TraceValue(leg == dc::Leg::Lte ? 0 : cell_id)});
    }
  };
  u.bearer = std::make_unique<dc::DcBearer>(sim_, cfg_.bearer, u.id,
                                            u.serving_cell, std::move(hooks));
}

void Simulation::setup_traffic() {
  for (const auto& uc : cfg_.ues) {
    Ue& u = ue(uc.id);
    flow_to_ue_[uc.id] = uc.id;
    if (uc.has_dl_traffic) {
      switch (uc.dl_traffic.kind) {
        case traffic::TrafficKind::Poisson:
        case traffic::TrafficKind::Cbr: {
          const std::uint32_t ue_id = uc.id;
          auto src = std::make_unique<traffic::ArrivalSource>(
              sim_, rng_.stream("traffic", uc.id), uc.dl_traffic,
              [this, ue_id](std::uint64_t seq, std::uint32_t bytes) {
                const auto id =
                    packets_.create(ue_id, seq, bytes, sim_.now());
                sim_.schedule_in(sec_to_ns(cfg_.core_delay_s),
                                 [this, ue_id, id] {
                                   pdcp_enqueue_dl(ue_id, id);
                                 });
              });
          src->start(0, duration_);
          sources_.push_back(std::move(src));
          break;
        }
        case traffic::TrafficKind::FullBuffer:
          u.full_buffer = true;
          u.fb_packet_bytes = uc.dl_traffic.packet_bytes;
          break;
        case traffic::TrafficKind::Aimd: {
          auto flow = std::make_unique<CcFlow>();
          flow->ue_id = uc.id;
          flow->flow_id = uc.id;
          flow->packet_bytes = uc.dl_traffic.packet_bytes;
          traffic::CongestionController::Config cc_cfg;
          cc_cfg.initial_ssthresh_pkts =
              uc.dl_traffic.cc_initial_ssthresh_pkts;
          flow->cc = traffic::CongestionController(cc_cfg);
          u.cc_flow = flow.get();
          cc_flows_.push_back(std::move(flow));
          break;
        }
      }
    }
    if (uc.ul_traffic) {
      u.ul_rlc_tx = std::make_unique<rlc::AmTransmitter>(cfg_.rlc);
      flow_to_ue_[kUlFlowOffset + uc.id] = uc.id;
      const std::uint32_t ue_id = uc.id;
      auto src = std::make_unique<traffic::ArrivalSource>(
          sim_, rng_.stream("traffic-ul", uc.id), *uc.ul_traffic,
          [this, ue_id](std::uint64_t seq, std::uint32_t bytes) {
            const auto id = packets_.create(kUlFlowOffset + ue_id, seq, bytes,
                                            sim_.now());
            packets_.stamp_pdcp_enqueue(id, sim_.now());
            Ue& u2 = ue(ue_id);
            packets_.at(id).pdcp_sn = u2.pdcp_tx.assign_sn();
            u2.ul_rlc_tx->enqueue_sdu(
                rlc::Sdu{id, bytes, sim_.now()}, sim_.now());
          });
      src->start(0, duration_);
      sources_.push_back(std::move(src));
    }
  }
}

void Simulation::pdcp_enqueue_dl(std::uint32_t ue_id, std::uint64_t payload_id) {
  Ue& u = ue(ue_id);
  packets_.stamp_pdcp_enqueue(payload_id, sim_.now());
  auto& p = packets_.at(payload_id);
  p.pdcp_sn = u.pdcp_tx.assign_sn();
  if (u.bearer) {
    u.bearer->route_pdu(
        {p.pdcp_sn, payload_id, p.size_bytes, sim_.now()});
    return;
  }
  rlc_enqueue_dl(u.serving_cell, ue_id, payload_id, p.size_bytes, sim_.now());
}

void Simulation::rlc_enqueue_dl(std::uint32_t cell_id, std::uint32_t ue_id,
                                std::uint64_t payload_id, std::uint32_t bytes,
                                TimeNs sdu_time) {
  Cell& c = cell(cell_id);
  auto it = c.dl_rlc_tx.find(ue_id);
  if (it == c.dl_rlc_tx.end()) {
    // The UE is not associated with this cell (race during a handover);
    // hand the PDU back through the bearer path if there is one.
    Ue& u = ue(ue_id);
    if (u.bearer) {
      const auto& p = packets_.at(payload_id);
      u.bearer->route_pdu({p.pdcp_sn, payload_id, bytes, sdu_time});
      return;
    }
    throw std::logic_error("DL PDU for unattached UE");
  }
  if (it->second->enqueue_sdu(rlc::Sdu{payload_id, bytes, sim_.now()},
                              sim_.now())) {
    log_rlc(sim_.now(), ue_id, "enq", bytes, 0.0);
  }
}

void Simulation::deliver_ip_dl(std::uint32_t ue_id, std::uint64_t payload_id,
                               const char* leg) {
  Ue& u = ue(ue_id);
  const auto& p = packets_.at(payload_id);
  auto ready = u.pdcp_rx->on_pdu(p.pdcp_sn, payload_id, sim_.now());
  for (auto id : ready) {
    auto& pkt = packets_.at(id);
    if (pkt.t_ip_deliver >= 0) continue;
    packets_.stamp_ip_deliver(id, sim_.now());
    if (cfg_.traces.pdcp) {
      traces_.sink("pdcp_trace", {"t_s", "ue", "bytes", "leg"})
          .append({TraceValue(ns_to_sec(sim_.now()), 9), TraceValue(ue_id),
                   TraceValue(pkt.size_bytes), TraceValue(leg)});
    }
    if (u.cc_flow) {
      auto res = u.cc_flow->acker.on_delivery(pkt.seq);
      if (res.first_delivery) {
        // The cumulative ACK rides back over the core path; duplicate
        // deliveries are not acknowledged.
        CcFlow* flow = u.cc_flow;
        const TimeNs sent = pkt.t_gen;
        sim_.schedule_in(sec_to_ns(cfg_.core_delay_s), [this, flow, res, sent] {
          auto retx = flow->cc.on_ack(res.cum_ack, sim_.now(), sent);
          if (retx) {
            const auto id2 = packets_.create(flow->flow_id, *retx,
                                             flow->packet_bytes, sim_.now());
            sim_.schedule_in(sec_to_ns(cfg_.core_delay_s), [this, flow, id2] {
              pdcp_enqueue_dl(flow->ue_id, id2);
            });
          }
          aimd_pump(*flow);
        });
      }
    }
  }
}

void Simulation::deliver_ip_ul(std::uint32_t ue_id, std::uint64_t payload_id) {
  (void)ue_id;
  // Uplink PDUs reach the packet gateway after the core path.
  sim_.schedule_in(sec_to_ns(cfg_.core_delay_s), [this, payload_id] {
    auto& pkt = packets_.at(payload_id);
    if (pkt.t_ip_deliver < 0) packets_.stamp_ip_deliver(payload_id, sim_.now());
  });
}

void Simulation::aimd_pump(CcFlow& flow) {
  while (flow.cc.can_send()) {
    const auto seq = flow.cc.take_send_slot();
    const auto id =
        packets_.create(flow.flow_id, seq, flow.packet_bytes, sim_.now());
    sim_.schedule_in(sec_to_ns(cfg_.core_delay_s),
                     [this, &flow, id] { pdcp_enqueue_dl(flow.ue_id, id); });
  }
}

void Simulation::log_rlc(TimeNs t, std::uint32_t ue_id, const char* event,
                         std::uint64_t bytes, double sojourn_ms) {
  if (!cfg_.traces.rlc) return;
  traces_.sink("rlc_trace", {"t_s", "ue", "bearer", "event", "bytes",
                             "sojourn_ms"})
      .append({TraceValue(ns_to_sec(t), 9), TraceValue(ue_id), TraceValue(0),
               TraceValue(event), TraceValue(static_cast<std::int64_t>(bytes)),
               TraceValue(sojourn_ms, 3)});
}

// ---------------------------------------------------------------------------
// periodic machinery

void Simulation::update_channels() {
  const TimeNs now = sim_.now();
  for (auto& [key, lptr] : links_) {
    Link& l = *lptr;
    Ue& u = ue(l.ue_id);
    Cell& c = cell(l.cell_id);
    const Vec3 upos = ue_position(u, now);

    if (cfg_.channel_source == ChannelSource::Trace) {
      l.state = channel::channel_from_trace(*channel_trace_, ns_to_sec(now),
                                            cfg_.enb_array, cfg_.ue_array,
                                            cfg_.radio.wavelength_m());
      l.beams_valid = false;
      l.last_update = now;
      continue;
    }

    const double moved = distance_2d(upos, l.last_update_pos);
    if (moved > 0.0) {
      if (l.los.source == channel::LosSource::Geometric) {
        channel::LosState fresh = channel::determine_los(
            c.position, upos, cfg_.obstacles, channel::LosSource::Geometric,
            params_, cfg_.radio, l.misc_rng);
        if (fresh.condition != l.los.condition) {
          l.los = fresh;
          init_link(l, now);  // condition changed: new parameter set
          continue;
        }
      }
      l.pathloss_db = channel::pathloss_db(params_, cfg_.radio, l.los,
                                           distance_3d(c.position, upos),
                                           distance_2d(c.position, upos));
      if (cfg_.shadowing) {
        l.shadow = channel::update_shadowing(l.shadow, upos.x, upos.y,
                                             l.shadow_rng);
      }
    }

    const double dt = ns_to_sec(now - l.last_update);
    // Blockage evolves first, then the coefficients are recomputed.
    if (cfg_.blockage) {
      channel::advance_blockage(l.blockage, dt);
    }
    if (cfg_.spatial_consistency) {
      channel::LinkGeometry geom{c.position, upos, u.velocity};
      if (u.doppler_speed > 0.0 && u.velocity.norm() == 0.0) {
        geom.rx_velocity_mps = {u.doppler_speed, 0.0, 0.0};
      }
      l.state = channel::advance_spatial_consistency(l.state, dt, geom);
    } else if (moved > 0.0 || u.doppler_speed > 0.0) {
      // Drop-based block fading: redraw the small-scale realization.
      channel::LinkGeometry geom{c.position, upos, u.velocity};
      if (u.doppler_speed > 0.0 && u.velocity.norm() == 0.0) {
        geom.rx_velocity_mps = {u.doppler_speed, 0.0, 0.0};
      }
      l.state = channel::generate_channel(geom, params_, cfg_.radio, l.los,
                                          cfg_.enb_array, cfg_.ue_array, now,
                                          l.fading_rng);
    }
    if (cfg_.blockage) {
      l.state = channel::apply_blockage(l.state, l.blockage,
                                        cfg_.radio.wavelength_m());
    }
    l.beams_valid = false;
    l.last_update_pos = upos;
    l.last_update = now;
  }
  update_beams();
}

void Simulation::update_beams() {
  const TimeNs now = sim_.now();
  for (auto& [key, lptr] : links_) {
    Link& l = *lptr;
    // Non-serving links only need beams when a coordinator compares cells.
    const bool serving = ue(l.ue_id).serving_cell == l.cell_id;
    if (!serving && !coordinator_) continue;
    const Eigen::MatrixXcd h = l.state.matrix_at(now);
    if (cfg_.beam_method == BeamMethod::Covariance) {
      l.beams = beamforming::covariance_beams({h}, cfg_.power_method_iterations,
                                              l.beam_rng);
    } else {
      auto pair = beamforming::beam_search(h, enb_codebook_, ue_codebook_);
      l.beams = pair;
    }
    l.beams_valid = true;
  }
}

phy::SinrReport Simulation::measure_sinr(Link& l, phy::Direction dir,
                                         const phy::SlotAlloc* slot,
                                         std::int64_t sf) {
  // All channel states are stored eNB->UE; the uplink reuses the same beam
  // pair and coupling under TDD gain reciprocity, with the UE transmit power.
  phy::DesiredSignal desired;
  desired.channel = &l.state;
  desired.pathloss_db = link_pathloss_db(l);
  desired.tx_weights = l.beams.tx;
  desired.rx_weights = l.beams.rx;
  desired.tx_power_dbm = dir == phy::Direction::Downlink
                             ? cfg_.enb_tx_power_dbm
                             : cfg_.ue_tx_power_dbm;

  std::vector<phy::Interferer> interferers;
  if (slot) {
    for (const auto& tx : active_tx_) {
      if (tx.cell_id == l.cell_id || tx.direction != dir) continue;
      if (tx.subframe != sf) continue;
      const bool overlaps = tx.first_symbol < slot->end_symbol() &&
                            slot->first_symbol < tx.end_symbol;
      if (!overlaps) continue;
      phy::Interferer intf;
      if (dir == phy::Direction::Downlink) {
        // Another cell transmitting toward its own UE, received here with
        // this link's UE-side beam.
        Link& cross = link(tx.cell_id, l.ue_id);
        Link& their = link(tx.cell_id, tx.ue_id);
        if (!their.beams_valid) continue;
        intf.channel_to_victim = &cross.state;
        intf.rx_weights = l.beams.rx;
        intf.tx_weights = their.beams.tx;
        intf.tx_power_dbm = cfg_.enb_tx_power_dbm;
        intf.pathloss_db = link_pathloss_db(cross);
      } else {
        // Another cell's UE transmitting uplink, received at this eNB with
        // its serving beam (reciprocal coupling over the cross channel).
        Link& cross = link(l.cell_id, tx.ue_id);
        Link& their = link(tx.cell_id, tx.ue_id);
        if (!their.beams_valid) continue;
        intf.channel_to_victim = &cross.state;
        intf.rx_weights = their.beams.rx;  // interfering UE's beam (UE side)
        intf.tx_weights = l.beams.tx;      // victim eNB's receive beam
        intf.tx_power_dbm = cfg_.ue_tx_power_dbm;
        intf.pathloss_db = link_pathloss_db(cross);
      }
      interferers.push_back(std::move(intf));
    }
  }
  return phy::compute_sinr(desired, interferers, cfg_.noise_figure_db,
                           cfg_.frame, sim_.now());
}

void Simulation::coordinator_report() {
  if (!coordinator_) return;
  const TimeNs now = sim_.now();
  struct Pending {
    dc::MeasurementReport report;
  };
  std::vector<Pending> reports;
  for (auto& [uid, u] : ues_) {
    for (auto& [cid, c] : cells_) {
      Link& l = link(cid, uid);
      if (!l.beams_valid) continue;
      auto r = measure_sinr(l, phy::Direction::Downlink, nullptr, 0);
      reports.push_back({{uid, cid, r.wideband_db(), now}});
    }
  }
  sim_.schedule_in(cfg_.bearer.x2_delay, [this, reports] {
    for (const auto& p : reports) {
      coordinator_->ingest_measurement(p.report, sim_.now());
    }
    for (auto& [uid, u] : ues_) {
      if (!u->bearer || u->bearer->switching()) continue;
      const dc::Leg leg = u->bearer->active_leg();
      auto cmd = coordinator_->decide(uid, leg, u->bearer->serving_cell(),
                                      sim_.now());
      if (cmd.kind == dc::CommandKind::None) continue;
      Ue* uptr = u.get();
      sim_.schedule_in(cfg_.bearer.x2_delay,
                       [uptr, cmd] { uptr->bearer->apply_command(cmd); });
    }
  });
  sim_.schedule_in(cfg_.coordinator.report_period,
                   [this] { coordinator_report(); });
}

// ---------------------------------------------------------------------------
// the per-subframe loop

void Simulation::on_subframe() {
  const TimeNs now = sim_.now();
  const std::int64_t sf = cfg_.frame.subframe_index_at(now);

  // Expire completed transmissions from earlier subframes.
  std::erase_if(active_tx_,
                [sf](const ActiveTx& t) { return t.subframe < sf; });

  rlc_timer_step(now);

  for (auto& [cid, c] : cells_) {
    phy_execute(*c, sf);
  }
  for (auto& [cid, c] : cells_) {
    mac_schedule(*c, sf + cfg_.frame.mac_phy_latency_subframes);
  }

  // Wideband measurement on the serving link; the CQI reaches the scheduler
  // after the control-pipeline latency.
  const bool trace_due =
      cfg_.traces.sinr &&
      (last_sinr_trace_ < 0 ||
       now - last_sinr_trace_ >= sec_to_ns(cfg_.sinr_trace_period_s));
  for (auto& [uid, u] : ues_) {
    Link& l = link(u->serving_cell, uid);
    if (!l.beams_valid) continue;
    auto report = measure_sinr(l, phy::Direction::Downlink, nullptr, sf);
    const int cqi = error_model_.generate_cqi(report, cfg_.frame);
    auto report_ul = measure_sinr(l, phy::Direction::Uplink, nullptr, sf);
    const int ul_cqi = error_model_.generate_cqi(report_ul, cfg_.frame);
    Cell* serving = &cell(u->serving_cell);
    const std::uint32_t ue_id = uid;
    const std::uint64_t epoch = serving->epoch[ue_id];
    sim_.schedule_in(
        cfg_.frame.phy_mac_latency_subframes * cfg_.frame.subframe_length_ns,
        [this, serving, ue_id, cqi, ul_cqi, epoch] {
          if (serving->epoch[ue_id] != epoch) return;
          auto it = serving->dl_sched.find(ue_id);
          if (it != serving->dl_sched.end()) it->second.cqi = cqi;
          auto ul = serving->ul_sched.find(ue_id);
          if (ul != serving->ul_sched.end()) ul->second.cqi = ul_cqi;
        });
    if (trace_due) {
      traces_.sink("sinr_trace", {"t_s", "ue", "cell", "wideband_db"})
          .append({TraceValue(ns_to_sec(now), 9), TraceValue(uid),
                   TraceValue(u->serving_cell),
                   TraceValue(report.wideband_db(), 3)});
    }
  }
  if (trace_due) last_sinr_trace_ = now;

  // Full-buffer sources keep several transport blocks' worth queued.
  for (auto& [uid, u] : ues_) {
    if (!u->full_buffer) continue;
    Cell& c = cell(u->serving_cell);
    auto it = c.dl_rlc_tx.find(uid);
    if (it == c.dl_rlc_tx.end()) continue;
    const std::uint64_t floor_bytes = 512 * 1024;
    while (it->second->buffer_status_bytes() < floor_bytes) {
      const auto id = packets_.create(uid, u->fb_seq++, u->fb_packet_bytes, now);
      pdcp_enqueue_dl(uid, id);
    }
  }

  // AIMD timers.
  for (auto& flow : cc_flows_) {
    auto retx = flow->cc.on_timer(now);
    if (retx) {
      const auto id = packets_.create(flow->flow_id, *retx, flow->packet_bytes,
                                      now);
      CcFlow* f = flow.get();
      sim_.schedule_in(sec_to_ns(cfg_.core_delay_s),
                       [this, f, id] { pdcp_enqueue_dl(f->ue_id, id); });
    }
    aimd_pump(*flow);
  }

  if (now + cfg_.frame.subframe_length_ns < duration_) {
    sim_.schedule_in(cfg_.frame.subframe_length_ns, [this] { on_subframe(); });
  }
}

void Simulation::rlc_timer_step(TimeNs now) {
  for (auto& [cid, c] : cells_) {
    for (auto& [uid, tx] : c->dl_rlc_tx) {
      tx->on_timer_check(now);
      Ue& u = ue(uid);
      if (u.serving_cell == cid && u.dl_rlc_rx &&
          u.dl_rlc_rx->status_due(now)) {
        tx->on_status(u.dl_rlc_rx->make_status(now), now);
      }
    }
    for (auto& [uid, rx] : c->ul_rlc_rx) {
      Ue& u = ue(uid);
      if (!u.ul_rlc_tx) continue;
      u.ul_rlc_tx->on_timer_check(now);
      if (rx->status_due(now)) {
        u.ul_rlc_tx->on_status(rx->make_status(now), now);
      }
    }
  }
  for (auto& [uid, u] : ues_) {
    auto flushed = u->pdcp_rx->on_timer(now);
    for (auto id : flushed) {
      auto& pkt = packets_.at(id);
      if (pkt.t_ip_deliver < 0) {
        packets_.stamp_ip_deliver(id, now);
      }
    }
  }
}

void Simulation::phy_execute(Cell& c, std::int64_t sf) {
  auto it = c.pending_alloc.find(sf);
  if (it == c.pending_alloc.end()) return;
  const phy::SubframeAllocation alloc = std::move(it->second);
  c.pending_alloc.erase(it);
  const TimeNs sf_start = cfg_.frame.subframe_start(sf);
  for (const auto& slot : alloc.slots) {
    if (slot.kind != phy::SlotKind::Data) continue;
    Cell* cp = &c;
    sim_.schedule(sf_start + cfg_.frame.symbol_offset(slot.first_symbol),
                  [this, cp, slot, sf] { slot_start(*cp, slot, sf); });
  }
}

void Simulation::slot_start(Cell& c, const phy::SlotAlloc& slot,
                            std::int64_t sf) {
  if (!c.dl_sched.count(slot.ue)) return;  // detached since scheduling
  const auto key = std::make_tuple(c.id, slot.ue, dir_index(slot.direction),
                                   slot.harq.process_id);
  const TimeNs now = sim_.now();
  const std::uint64_t epoch = c.epoch[slot.ue];

  if (!slot.harq.is_retx) {
    // The grant is being consumed now; release its buffer reservation.
    auto& outstanding = slot.direction == phy::Direction::Downlink
                            ? c.dl_outstanding[slot.ue]
                            : c.ul_outstanding[slot.ue];
    outstanding -= std::min<std::uint64_t>(outstanding, slot.tb_bytes);
    // Assemble the transport block from RLC.
    rlc::AmTransmitter* tx = nullptr;
    if (slot.direction == phy::Direction::Downlink) {
      tx = c.dl_rlc_tx.at(slot.ue).get();
    } else {
      tx = ue(slot.ue).ul_rlc_tx.get();
    }
    TbPayload payload;
    payload.epoch = epoch;
    if (tx) {
      payload.segments = tx->tx_opportunity(slot.tb_bytes, now);
    }
    for (const auto& seg : payload.segments) {
      payload.used_bytes += seg.payload_bytes;
      log_rlc(now, slot.ue, seg.retransmitted ? "retx" : "tx",
              seg.payload_bytes, 0.0);
    }
    if (payload.segments.empty()) {
      // Nothing left to send (the buffer drained since scheduling): release
      // the process without transmitting.
      auto& pool = slot.direction == phy::Direction::Downlink
                       ? *c.dl_harq.at(slot.ue)
                       : *c.ul_harq.at(slot.ue);
      pool.release(slot.harq.process_id);
      return;
    }
    if (cfg_.forced_residual_loss > 0.0) {
      Link& l = link(c.id, slot.ue);
      payload.doomed = l.decode_rng.uniform() < cfg_.forced_residual_loss;
    }
    tb_store_[key] = std::move(payload);
  } else if (!tb_store_.count(key)) {
    return;  // stale retransmission of a dropped association
  }

  active_tx_.push_back(ActiveTx{c.id, slot.ue, slot.direction, sf,
                                slot.first_symbol, slot.end_symbol()});
  const TimeNs slot_end_at = cfg_.frame.subframe_start(sf) +
                             cfg_.frame.symbol_end_offset(slot.end_symbol() - 1);
  Cell* cp = &c;
  sim_.schedule(slot_end_at,
                [this, cp, slot, sf, epoch] { slot_end(*cp, slot, sf, epoch); });
}

void Simulation::slot_end(Cell& c, phy::SlotAlloc slot, std::int64_t sf,
                          std::uint64_t epoch) {
  const auto key = std::make_tuple(c.id, slot.ue, dir_index(slot.direction),
                                   slot.harq.process_id);
  auto payload_it = tb_store_.find(key);
  if (payload_it == tb_store_.end() || payload_it->second.epoch != epoch) {
    return;  // association changed mid-flight
  }
  if (!ues_.count(slot.ue)) return;
  Ue& u = ue(slot.ue);
  Link& l = link(c.id, slot.ue);
  if (!l.beams_valid) return;

  auto report = measure_sinr(l, slot.direction, &slot, sf);
  phy::HarqSoftBuffer& soft = slot.direction == phy::Direction::Downlink
                                  ? *u.dl_soft
                                  : *c.ul_soft.at(slot.ue);
  auto result = phy::decode_tb(error_model_, slot.tb_bytes, slot.mcs,
                               slot.harq.attempt, report, soft,
                               slot.harq.process_id, l.decode_rng);
  bool success = result.outcome == phy::DecodeOutcome::Success;
  if (payload_it->second.doomed) {
    // Forced residual loss: this block never decodes, regardless of SINR.
    success = false;
    if (slot.harq.attempt >= soft.max_attempts()) {
      soft.clear(slot.harq.process_id);
    } else if (result.outcome == phy::DecodeOutcome::Success) {
      soft.store_attempt(slot.harq.process_id,
                         error_model_.effective_sinr(report, slot.mcs));
    }
  }

  if (cfg_.traces.phy) {
    traces_.sink("phy_tx_trace", {"t_s", "ue", "cell", "direction", "symbols",
                                  "mcs", "tb_bytes", "attempt", "outcome"})
        .append({TraceValue(ns_to_sec(sim_.now()), 9), TraceValue(slot.ue),
                 TraceValue(c.id),
                 TraceValue(slot.direction == phy::Direction::Downlink ? "dl"
                                                                       : "ul"),
                 TraceValue(slot.num_symbols), TraceValue(slot.mcs),
                 TraceValue(slot.tb_bytes), TraceValue(slot.harq.attempt),
                 TraceValue(success ? "ok" : "err")});
  }

  const TimeNs latency =
      cfg_.frame.phy_mac_latency_subframes * cfg_.frame.subframe_length_ns;
  Cell* cp = &c;
  const std::uint32_t ue_id = slot.ue;
  const phy::Direction dir = slot.direction;
  const int pid = slot.harq.process_id;

  // HARQ feedback to the scheduler.
  sim_.schedule_in(latency, [this, cp, ue_id, dir, pid, success, epoch] {
    if (!cp->epoch.count(ue_id) || cp->epoch[ue_id] != epoch) return;
    apply_harq_feedback(*cp, ue_id, dir, pid, success);
  });

  if (success) {
    // Decoded payload climbs the stack after the PHY->MAC latency.
    const std::vector<rlc::RlcSegment> segments = payload_it->second.segments;
    sim_.schedule_in(latency, [this, cp, ue_id, dir, segments, epoch] {
      if (!cp->epoch.count(ue_id) || cp->epoch[ue_id] != epoch) return;
      if (dir == phy::Direction::Downlink) {
        Ue& u2 = ue(ue_id);
        if (u2.serving_cell != cp->id || !u2.dl_rlc_rx) return;
        for (const auto& seg : segments) {
          auto delivered = u2.dl_rlc_rx->receive_segment(seg, sim_.now());
          for (const auto& sdu : delivered) {
            log_rlc(sim_.now(), ue_id, "deliver", sdu.bytes,
                    ns_to_ms(sim_.now() - sdu.sdu_enqueue_time));
            deliver_ip_dl(ue_id, sdu.payload_id, "mmwave");
          }
        }
      } else {
        auto rx = cp->ul_rlc_rx.find(ue_id);
        if (rx == cp->ul_rlc_rx.end()) return;
        for (const auto& seg : segments) {
          auto delivered = rx->second->receive_segment(seg, sim_.now());
          for (const auto& sdu : delivered) {
            deliver_ip_ul(ue_id, sdu.payload_id);
          }
        }
      }
    });
  }
}

void Simulation::apply_harq_feedback(Cell& c, std::uint32_t ue_id,
                                     phy::Direction dir, int process_id,
                                     bool ack) {
  auto& pool = dir == phy::Direction::Downlink ? *c.dl_harq.at(ue_id)
                                               : *c.ul_harq.at(ue_id);
  auto retx = pool.on_feedback(process_id, ack);
  auto& sched = dir == phy::Direction::Downlink ? c.dl_sched.at(ue_id)
                                                : c.ul_sched.at(ue_id);
  if (retx) {
    sched.harq_pending.push_back(*retx);
    return;
  }
  // Resolved (ack or exhausted): the stored payload is no longer needed.
  tb_store_.erase(std::make_tuple(c.id, ue_id, dir_index(dir), process_id));
}

void Simulation::mac_schedule(Cell& c, std::int64_t target_sf) {
  std::vector<mac::UeSchedState*> dl_users, ul_users;
  for (auto& [uid, state] : c.dl_sched) {
    const std::uint64_t queued = c.dl_rlc_tx.at(uid)->buffer_status_bytes();
    const std::uint64_t outstanding = c.dl_outstanding[uid];
    state.buffer_bytes = queued > outstanding ? queued - outstanding : 0;
    auto hol = c.dl_rlc_tx.at(uid)->head_of_line_enqueue_time();
    state.hol_deadline = hol ? *hol + cfg_.sched.deadline_budget_ns
                             : std::numeric_limits<TimeNs>::max();
    state.free_process_ids = c.dl_harq.at(uid)->free_ids();
    dl_users.push_back(&state);
  }
  for (auto& [uid, state] : c.ul_sched) {
    Ue& u = ue(uid);
    const std::uint64_t queued =
        u.ul_rlc_tx ? u.ul_rlc_tx->buffer_status_bytes() : 0;
    const std::uint64_t outstanding = c.ul_outstanding[uid];
    state.buffer_bytes = queued > outstanding ? queued - outstanding : 0;
    auto hol = u.ul_rlc_tx ? u.ul_rlc_tx->head_of_line_enqueue_time()
                           : std::nullopt;
    state.hol_deadline = hol ? *hol + cfg_.sched.deadline_budget_ns
                             : std::numeric_limits<TimeNs>::max();
    state.free_process_ids = c.ul_harq.at(uid)->free_ids();
    ul_users.push_back(&state);
  }

  auto alloc = mac::schedule_subframe(cfg_.sched, dl_users, ul_users,
                                      cfg_.frame, target_sf, c.rr_pointer);

  for (const auto& slot : alloc.slots) {
    if (slot.kind != phy::SlotKind::Data) continue;
    auto& pool = slot.direction == phy::Direction::Downlink
                     ? *c.dl_harq.at(slot.ue)
                     : *c.ul_harq.at(slot.ue);
    pool.mark_sent(slot.harq.process_id, slot.num_symbols, slot.mcs,
                   slot.tb_bytes, slot.harq.attempt);
    allocated_bytes_[slot.ue] += slot.tb_bytes;
    if (!slot.harq.is_retx) {
      auto& outstanding = slot.direction == phy::Direction::Downlink
                              ? c.dl_outstanding[slot.ue]
                              : c.ul_outstanding[slot.ue];
      outstanding += slot.tb_bytes;
    }
    if (cfg_.traces.sched) {
      traces_.sink("sched_trace", {"t_s", "cell", "ue", "policy", "symbols",
                                   "mcs", "tb_bytes", "is_retx"})
          .append({TraceValue(ns_to_sec(sim_.now()), 9), TraceValue(c.id),
                   TraceValue(slot.ue),
                   TraceValue(mac::to_string(cfg_.sched.policy)),
                   TraceValue(slot.num_symbols), TraceValue(slot.mcs),
                   TraceValue(slot.tb_bytes),
                   TraceValue(slot.harq.is_retx ? 1 : 0)});
    }
  }
  if (!alloc.slots.empty()) {
    c.pending_alloc[target_sf] = std::move(alloc);
  }
}

MetricsReport Simulation::run() {
  sim_.schedule(0, [this] { update_channels(); });
  // Channel and beam refresh cadence.
  const TimeNs period = sec_to_ns(cfg_.channel_update_period_s);
  for (TimeNs t = period; t < duration_; t += period) {
    sim_.schedule(t, [this] { update_channels(); });
  }
  // Trace-driven channels also refresh at every sample timestamp.
  if (channel_trace_) {
    for (const auto& sample : channel_trace_->samples) {
      const TimeNs t = sec_to_ns(sample.t_s);
      if (t > 0 && t < duration_) {
        sim_.schedule(t, [this] { update_channels(); });
      }
    }
  }
  sim_.schedule(0, [this] { on_subframe(); });
  if (coordinator_) {
    sim_.schedule(cfg_.coordinator.report_period,
                  [this] { coordinator_report(); });
  }
  for (auto& flow : cc_flows_) {
    CcFlow* f = flow.get();
    sim_.schedule(0, [this, f] { aimd_pump(*f); });
  }

  sim_.run_until(duration_);

  // Flow trace and final fates.
  if (cfg_.traces.flow) {
    auto& sink = traces_.sink("flow_trace", {"flow", "seq", "size", "t_gen",
                                             "t_pdcp", "t_deliver", "fate"});
    for (const auto& p : packets_.all()) {
      const char* fate = "in_flight";
      switch (p.fate) {
        case traffic::PacketFate::Delivered: fate = "delivered"; break;
        case traffic::PacketFate::AqmDropped: fate = "drop_aqm"; break;
        case traffic::PacketFate::HarqLost: fate = "harq_lost"; break;
        case traffic::PacketFate::InFlight: fate = "in_flight"; break;
      }
      sink.append({TraceValue(p.flow), TraceValue(p.seq),
                   TraceValue(p.size_bytes), TraceValue(ns_to_sec(p.t_gen), 9),
                   p.t_pdcp_enq < 0 ? TraceValue("NA")
                                    : TraceValue(ns_to_sec(p.t_pdcp_enq), 9),
                   p.t_ip_deliver < 0 ? TraceValue("NA")
                                      : TraceValue(ns_to_sec(p.t_ip_deliver), 9),
                   TraceValue(fate)});
    }
  }
  traces_.flush_all();

  std::vector<std::uint32_t> all_ues;
  for (const auto& [uid, u] : ues_) {
    if (u->has_dl_traffic || u->ul_rlc_tx) all_ues.push_back(uid);
  }
  return compute_metrics(packets_, flow_to_ue_, all_ues, allocated_bytes_,
                         cfg_.duration_s, cfg_.sched.deadline_budget_ns);
}

MetricsReport run_scenario(const ScenarioConfig& cfg,
                           const std::string& out_dir) {
  Simulation sim(cfg, out_dir);
  return sim.run();
}

}  // namespace mmwavesim::scenario
