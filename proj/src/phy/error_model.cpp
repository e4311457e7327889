/*
 * Copyright (c) 2026 the mmwavesim authors
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#include "mmwavesim/phy/error_model.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "mmwavesim/core/units.hpp"
#include "mmwavesim_embedded_data.hpp"

namespace mmwavesim::phy {

double SinrReport::wideband_linear() const {
  if (per_subband_linear.empty()) return 0.0;
  double sum = 0.0;
  for (double v : per_subband_linear) sum += v;
  return sum / static_cast<double>(per_subband_linear.size());
}

double SinrReport::wideband_db() const { return lin_to_db(wideband_linear()); }

SinrReport SinrReport::flat(double sinr_linear, int num_subbands, TimeNs t) {
  SinrReport r;
  r.per_subband_linear.assign(num_subbands, sinr_linear);
  r.t = t;
  return r;
}

MiTable::MiTable() {
  std::istringstream in(embedded::kMiTables);
  std::string line;
  std::getline(in, line);  // header
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string mod, snr, mib;
    std::getline(ss, mod, ',');
    std::getline(ss, snr, ',');
    std::getline(ss, mib, ',');
    Curve& c = curves_[mod];
    c.sinr_linear.push_back(db_to_lin(std::stod(snr)));
    c.mib.push_back(std::stod(mib));
  }
  // Keep only the usefully increasing prefix of each curve: near saturation
  // the per-step MI increments sink into roundoff and the mapping stops
  // being invertible, so compressed values clamp at that point.
  constexpr double kMinIncrement = 1e-7;
  for (auto& [name, c] : curves_) {
    std::size_t keep = 1;
    while (keep < c.mib.size() && c.mib[keep] > c.mib[keep - 1] + kMinIncrement) {
      ++keep;
    }
    c.mib.resize(keep);
    c.sinr_linear.resize(keep);
    if (c.sinr_linear.size() < 2) {
      throw std::runtime_error("MiTable: curve '" + name + "' too short");
    }
  }
}

double MiTable::invertible_max_sinr(mac::Modulation mod) const {
  return curve(mod).sinr_linear.back();
}

const MiTable::Curve& MiTable::curve(mac::Modulation mod) const {
  auto it = curves_.find(mac::to_string(mod));
  if (it == curves_.end()) {
    throw std::runtime_error("MiTable: no curve for modulation " +
                             mac::to_string(mod));
  }
  return it->second;
}

double MiTable::mi_per_coded_bit(mac::Modulation mod, double sinr_linear) const {
  const Curve& c = curve(mod);
  if (sinr_linear <= c.sinr_linear.front()) {
    // Low-SNR regime: MI is linear in SNR through the origin.
    return c.mib.front() * (sinr_linear / c.sinr_linear.front());
  }
  if (sinr_linear >= c.sinr_linear.back()) return c.mib.back();
  const auto it = std::upper_bound(c.sinr_linear.begin(), c.sinr_linear.end(),
                                   sinr_linear);
  const std::size_t hi = it - c.sinr_linear.begin();
  const std::size_t lo = hi - 1;
  const double frac = (sinr_linear - c.sinr_linear[lo]) /
                      (c.sinr_linear[hi] - c.sinr_linear[lo]);
  return c.mib[lo] + frac * (c.mib[hi] - c.mib[lo]);
}

double MiTable::invert(mac::Modulation mod, double mib) const {
  const Curve& c = curve(mod);
  if (mib <= c.mib.front()) {
    return c.sinr_linear.front() * (mib / c.mib.front());
  }
  if (mib >= c.mib.back()) return c.sinr_linear.back();
  // First index with mib[hi] >= target; the curve is nondecreasing.
  const auto it = std::lower_bound(c.mib.begin(), c.mib.end(), mib);
  std::size_t hi = it - c.mib.begin();
  std::size_t lo = hi - 1;
  if (c.mib[hi] == c.mib[lo]) return c.sinr_linear[lo];
  const double frac = (mib - c.mib[lo]) / (c.mib[hi] - c.mib[lo]);
  return c.sinr_linear[lo] + frac * (c.sinr_linear[hi] - c.sinr_linear[lo]);
}

double MiTable::max_mib(mac::Modulation mod) const { return curve(mod).mib.back(); }

BlerCalibration::BlerCalibration() {
  parse(embedded::kBlerCalibration, "bler_calibration.csv");
}

BlerCalibration::BlerCalibration(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open calibration file: " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  parse(buf.str(), path);
}

void BlerCalibration::parse(const std::string& text, const std::string& source) {
  std::istringstream in(text);
  std::string line;
  std::getline(in, line);  // header
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string mcs, mod, cb, b, c;
    std::getline(ss, mcs, ',');
    std::getline(ss, mod, ',');
    std::getline(ss, cb, ',');
    std::getline(ss, b, ',');
    std::getline(ss, c, ',');
    try {
      BlerParams p{std::stod(b), std::stod(c)};
      if (p.c <= 0.0) throw std::invalid_argument("c must be positive");
      table_[std::stoi(mcs)].emplace_back(std::stoi(cb), p);
    } catch (const std::exception& e) {
      throw std::runtime_error(source + ":" + std::to_string(lineno) +
                               ": bad calibration row: " + e.what());
    }
  }
  for (auto& [mcs, rows] : table_) {
    std::sort(rows.begin(), rows.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
  }
  if (table_.empty()) {
    throw std::runtime_error(source + ": calibration table is empty");
  }
}

const BlerParams& BlerCalibration::lookup(int cb_bits, int mcs) const {
  auto it = table_.find(mcs);
  if (it != table_.end()) {
    for (const auto& [max_bits, params] : it->second) {
      if (cb_bits <= max_bits) return params;
    }
  }
  throw std::runtime_error("BLER calibration has no entry for code block of " +
                           std::to_string(cb_bits) + " bits at MCS " +
                           std::to_string(mcs));
}

std::vector<std::pair<int, int>> BlerCalibration::keys() const {
  std::vector<std::pair<int, int>> out;
  for (const auto& [mcs, rows] : table_) {
    for (const auto& [cb, _] : rows) out.emplace_back(mcs, cb);
  }
  return out;
}

std::vector<int> segment_code_blocks(std::uint32_t tb_bytes) {
  constexpr int kMaxCbBits = 6144;
  const std::int64_t tb_bits = static_cast<std::int64_t>(tb_bytes) * 8;
  if (tb_bits <= 0) return {};
  const int num_cbs =
      static_cast<int>((tb_bits + kMaxCbBits - 1) / kMaxCbBits);
  const int base = static_cast<int>(tb_bits / num_cbs);
  const int extra = static_cast<int>(tb_bits % num_cbs);
  std::vector<int> cbs(num_cbs, base);
  for (int i = 0; i < extra; ++i) ++cbs[i];
  return cbs;
}

double ErrorModel::effective_sinr(const SinrReport& report, int mcs) const {
  const mac::Modulation mod = mac::mcs_entry(mcs).modulation;
  if (report.per_subband_linear.empty()) return 0.0;
  double acc = 0.0;
  for (double s : report.per_subband_linear) {
    acc += mi_.mi_per_coded_bit(mod, s);
  }
  return mi_.invert(mod, acc / report.per_subband_linear.size());
}

double ErrorModel::cbler(double gamma_linear, int cb_bits, int mcs) const {
  const BlerParams& p = cal_.lookup(cb_bits, mcs);
  return 0.5 * (1.0 - std::erf((gamma_linear - p.b) / (std::sqrt(2.0) * p.c)));
}

double ErrorModel::tbler(const std::vector<double>& cblers) {
  double survive = 1.0;
  for (double c : cblers) {
    if (c < 0.0 || c > 1.0) {
      throw std::invalid_argument("tbler: probabilities must lie in [0,1]");
    }
    survive *= (1.0 - c);
  }
  return 1.0 - survive;
}

double ErrorModel::tb_error_probability(double gamma_linear,
                                        std::uint32_t tb_bytes, int mcs) const {
  const auto cbs = segment_code_blocks(tb_bytes);
  std::vector<double> errs;
  errs.reserve(cbs.size());
  for (int bits : cbs) errs.push_back(cbler(gamma_linear, bits, mcs));
  return tbler(errs);
}

int ErrorModel::generate_cqi(const SinrReport& report,
                             const FrameConfig& cfg) const {
  for (int mcs = mac::kNumMcs - 1; mcs >= 0; --mcs) {
    const std::uint32_t ref_tb =
        mac::tb_size_bytes(mcs, cfg.data_symbols_per_subframe(), cfg);
    const double gamma = effective_sinr(report, mcs);
    if (tb_error_probability(gamma, ref_tb, mcs) <= bler_target_) {
      return mcs;  // CQI indices align with MCS indices
    }
  }
  return 0;
}

double ErrorModel::combined_effective_sinr(
    const std::vector<double>& attempt_gammas, int mcs) const {
  const mac::Modulation mod = mac::mcs_entry(mcs).modulation;
  if (attempt_gammas.size() == 1) return attempt_gammas.front();
  double mi_sum = 0.0;
  for (double g : attempt_gammas) mi_sum += mi_.mi_per_coded_bit(mod, g);
  return mi_.invert(mod, std::min(mi_sum, mi_.max_mib(mod)));
}

const std::vector<double>& HarqSoftBuffer::history(int process_id) const {
  static const std::vector<double> empty;
  check(process_id);
  auto it = per_process_.find(process_id);
  return it == per_process_.end() ? empty : it->second;
}

void HarqSoftBuffer::store_attempt(int process_id, double gamma_linear) {
  check(process_id);
  auto& h = per_process_[process_id];
  if (static_cast<int>(h.size()) >= max_attempts_) {
    throw std::logic_error("HarqSoftBuffer: attempt history overflow");
  }
  h.push_back(gamma_linear);
}

void HarqSoftBuffer::clear(int process_id) {
  check(process_id);
  per_process_.erase(process_id);
}

int HarqSoftBuffer::attempts(int process_id) const {
  check(process_id);
  auto it = per_process_.find(process_id);
  return it == per_process_.end() ? 0 : static_cast<int>(it->second.size());
}

void HarqSoftBuffer::check(int process_id) const {
  if (process_id < 0 || process_id >= num_processes_) {
    throw std::runtime_error("unknown HARQ process " +
                             std::to_string(process_id));
  }
}

DecodeResult decode_tb(const ErrorModel& model, std::uint32_t tb_bytes, int mcs,
                       int attempt, const SinrReport& report,
                       HarqSoftBuffer& soft, int process_id, RngStream& rng) {
  if (attempt < 1 || attempt > soft.max_attempts()) {
    throw std::runtime_error("decode_tb: attempt " + std::to_string(attempt) +
                             " outside 1.." +
                             std::to_string(soft.max_attempts()));
  }
  std::vector<double> gammas = soft.history(process_id);
  gammas.push_back(model.effective_sinr(report, mcs));

  DecodeResult res;
  res.effective_sinr_linear = model.combined_effective_sinr(gammas, mcs);
  res.tb_error_probability =
      model.tb_error_probability(res.effective_sinr_linear, tb_bytes, mcs);
  const bool success = rng.uniform() >= res.tb_error_probability;
  res.outcome = success ? DecodeOutcome::Success : DecodeOutcome::Failure;
  if (success || attempt >= soft.max_attempts()) {
    soft.clear(process_id);
    res.process_cleared = true;
  } else {
    soft.store_attempt(process_id, gammas.back());
  }
  return res;
}

}  // namespace mmwavesim::phy
