/*
 * Copyright (c) 2026 the mmwavesim authors
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#ifndef MMWAVESIM_PHY_ERROR_MODEL_HPP
#define MMWAVESIM_PHY_ERROR_MODEL_HPP

#include <map>
#include <string>
#include <vector>

#include "mmwavesim/core/rng.hpp"
#include "mmwavesim/core/time.hpp"
#include "mmwavesim/mac/amc.hpp"
#include "mmwavesim/phy/frame.hpp"

namespace mmwavesim::phy {

// Per-subband SINR snapshot. The wideband value is the mean of the linear
// per-subband values.
struct SinrReport {
  std::vector<double> per_subband_linear;
  TimeNs t = 0;

  double wideband_linear() const;
  double wideband_db() const;

  static SinrReport flat(double sinr_linear, int num_subbands, TimeNs t = 0);
};

// Tabulated per-coded-bit mutual information curves (one per modulation),
// piecewise linear in (linear SINR, MI). Inversion is the exact inverse of
// the interpolation, so compressing a flat report is a fixed point.
class MiTable {
 public:
  // Loads the bundled curves.
  MiTable();

  double mi_per_coded_bit(mac::Modulation mod, double sinr_linear) const;
  double invert(mac::Modulation mod, double mib) const;
  double max_mib(mac::Modulation mod) const;
  // Largest SINR the curve can map back to; beyond this the MI has
  // saturated and compression clamps.
  double invertible_max_sinr(mac::Modulation mod) const;

 private:
  struct Curve {
    std::vector<double> sinr_linear;
    std::vector<double> mib;
  };
  const Curve& curve(mac::Modulation mod) const;
  std::map<std::string, Curve> curves_;
};

// Code-block error curve parameters: CBLER(g) = 0.5*(1-erf((g-b)/(sqrt2*c))).
struct BlerParams {
  double b = 0.0;
  double c = 1.0;
};

// (MCS, code-block-size-class) -> (b, c) calibration table.
class BlerCalibration {
 public:
  // Loads the bundled table.
  BlerCalibration();
  // Loads a replacement calibration with the same schema.
  explicit BlerCalibration(const std::string& path);

  // Throws if no entry covers (cb_bits, mcs), naming both.
  const BlerParams& lookup(int cb_bits, int mcs) const;
  std::vector<std::pair<int, int>> keys() const;  // (mcs, cb_max_bits)

 private:
  void parse(const std::string& text, const std::string& source);
  // per MCS: ascending (cb_max_bits, params)
  std::map<int, std::vector<std::pair<int, BlerParams>>> table_;
};

// Code-block segmentation: equal-size blocks under the 6144-bit ceiling.
std::vector<int> segment_code_blocks(std::uint32_t tb_bytes);

// Link-to-system mapping and link adaptation.
class ErrorModel {
 public:
  ErrorModel(const MiTable& mi, const BlerCalibration& calibration)
      : mi_(mi), cal_(calibration) {}

  // Compresses per-subband SINRs through the modulation's MI curve (mean MI
  // per coded bit) and maps back to a single linear SINR.
  double effective_sinr(const SinrReport& report, int mcs) const;

  // Eq-form code block error rate; strictly decreasing in gamma.
  double cbler(double gamma_linear, int cb_bits, int mcs) const;

  // Transport block error rate from per-code-block error rates.
  static double tbler(const std::vector<double>& cblers);

  // TB error probability at a given effective SINR.
  double tb_error_probability(double gamma_linear, std::uint32_t tb_bytes,
                              int mcs) const;

  // Wideband CQI: highest MCS whose predicted TB error for a reference TB
  // spanning all data symbols stays within the 10% target.
  int generate_cqi(const SinrReport& report, const FrameConfig& cfg) const;

  // Combined effective SINR across HARQ attempts: per-attempt mutual
  // information accumulates, then maps back through the MI curve.
  double combined_effective_sinr(const std::vector<double>& attempt_gammas,
                                 int mcs) const;

  const MiTable& mi_table() const { return mi_; }
  const BlerCalibration& calibration() const { return cal_; }
  double bler_target() const { return bler_target_; }

 private:
  const MiTable& mi_;
  const BlerCalibration& cal_;
  double bler_target_ = 0.1;
};

// Receiver-side soft storage: per HARQ process, the effective SINR of each
// failed attempt. At most three attempts accumulate per process.
class HarqSoftBuffer {
 public:
  explicit HarqSoftBuffer(int num_processes, int max_attempts = 3)
      : num_processes_(num_processes), max_attempts_(max_attempts) {}

  const std::vector<double>& history(int process_id) const;
  void store_attempt(int process_id, double gamma_linear);
  void clear(int process_id);
  int attempts(int process_id) const;
  int max_attempts() const { return max_attempts_; }

 private:
  void check(int process_id) const;
  int num_processes_;
  int max_attempts_;
  std::map<int, std::vector<double>> per_process_;
};

enum class DecodeOutcome { Success, Failure };

struct DecodeResult {
  DecodeOutcome outcome = DecodeOutcome::Success;
  double effective_sinr_linear = 0.0;  // combined across attempts
  double tb_error_probability = 0.0;
  bool process_cleared = false;  // success or final attempt
};

// Probabilistic TB decode with MI accumulation across attempts. On failure
// the attempt enters the soft buffer; on success or the final attempt the
// process clears.
DecodeResult decode_tb(const ErrorModel& model, std::uint32_t tb_bytes, int mcs,
                       int attempt, const SinrReport& report,
                       HarqSoftBuffer& soft, int process_id, RngStream& rng);

}  // namespace mmwavesim::phy

#endif
