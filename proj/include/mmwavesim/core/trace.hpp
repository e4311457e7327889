/*
 * Copyright (c) 2026 the mmwavesim authors
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#ifndef MMWAVESIM_CORE_TRACE_HPP
#define MMWAVESIM_CORE_TRACE_HPP

#include <cstdint>
#include <fstream>
#include <map>
#include <memory>
#include <string>
#include <variant>
#include <vector>

namespace mmwavesim {

// One CSV cell. Doubles print in fixed decimal notation so replays with the
// same seed produce byte-identical files.
struct TraceValue {
  std::variant<std::int64_t, double, std::string> v;
  int precision = 6;

  TraceValue(std::int64_t i) : v(i) {}
  TraceValue(int i) : v(static_cast<std::int64_t>(i)) {}
  TraceValue(unsigned i) : v(static_cast<std::int64_t>(i)) {}
  TraceValue(std::uint64_t i) : v(static_cast<std::int64_t>(i)) {}
  TraceValue(double d, int prec = 6) : v(d), precision(prec) {}
  TraceValue(std::string s) : v(std::move(s)) {}
  TraceValue(const char* s) : v(std::string(s)) {}

  std::string format() const;
};

// Append-only CSV sink. The header row is written on open; rows stream to
// disk so long runs keep a flat memory footprint.
class TraceSink {
 public:
  TraceSink(std::string name, std::string path, std::vector<std::string> columns);

  void append(const std::vector<TraceValue>& row);
  void flush();

  const std::string& name() const { return name_; }
  std::uint64_t rows() const { return rows_; }

 private:
  std::string name_;
  std::vector<std::string> columns_;
  std::ofstream out_;
  std::uint64_t rows_ = 0;
};

// Owns all sinks of a run, keyed by name, writing under one directory.
class TraceManager {
 public:
  explicit TraceManager(std::string out_dir);

  TraceSink& sink(const std::string& name, const std::vector<std::string>& columns);
  TraceSink* find(const std::string& name);
  void flush_all();
  const std::string& out_dir() const { return out_dir_; }

 private:
  std::string out_dir_;
  std::map<std::string, std::unique_ptr<TraceSink>> sinks_;
};

}  // namespace mmwavesim

#endif
