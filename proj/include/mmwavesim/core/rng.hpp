/*
 * Copyright (c) 2026 the mmwavesim authors
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#ifndef MMWAVESIM_CORE_RNG_HPP
#define MMWAVESIM_CORE_RNG_HPP

#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace mmwavesim {

// One named random stream. The (run_seed, component_tag, substream_index)
// triple fully determines the sample sequence, so adding draws in one
// component never perturbs another component's sequence.
//
// All variate transforms are implemented here rather than with
// std::*_distribution, whose output is not specified bit-exactly by the
// standard and differs between library implementations.
class RngStream {
 public:
  RngStream(std::uint64_t run_seed, const std::string& component_tag,
            std::uint64_t substream_index = 0);

  // Uniform on [0, 1) with 53 random bits.
  double uniform();
  // Uniform on [lo, hi).
  double uniform(double lo, double hi);
  // Uniform integer in [0, n).
  std::uint64_t uniform_int(std::uint64_t n);
  // Standard normal via Box-Muller (the spare variate is cached).
  double normal();
  double normal(double mean, double stddev) { return mean + stddev * normal(); }
  // Exponential with the given rate (events per unit). Rejects rate <= 0.
  double exponential(double rate);
  // In-place Fisher-Yates shuffle.
  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      std::swap(v[i - 1], v[static_cast<std::size_t>(uniform_int(i))]);
    }
  }

  std::uint64_t raw_bits() { return engine_(); }

 private:
  std::mt19937_64 engine_;
  bool has_spare_normal_ = false;
  double spare_normal_ = 0.0;
};

// Factory for named substreams of one simulation run.
class RngManager {
 public:
  explicit RngManager(std::uint64_t run_seed) : run_seed_(run_seed) {}

  std::uint64_t run_seed() const { return run_seed_; }
  RngStream stream(const std::string& component_tag,
                   std::uint64_t substream_index = 0) const {
    return RngStream(run_seed_, component_tag, substream_index);
  }

 private:
  std::uint64_t run_seed_;
};

}  // namespace mmwavesim

#endif
