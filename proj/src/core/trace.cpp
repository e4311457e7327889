/*
 * Copyright (c) 2026 the mmwavesim authors
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#include "mmwavesim/core/trace.hpp"

#include <cstdio>
#include <filesystem>
#include <stdexcept>

namespace mmwavesim {

std::string TraceValue::format() const {
  if (std::holds_alternative<std::int64_t>(v)) {
    return std::to_string(std::get<std::int64_t>(v));
  }
  if (std::holds_alternative<double>(v)) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*f", precision, std::get<double>(v));
    return buf;
  }
  return std::get<std::string>(v);
}

TraceSink::TraceSink(std::string name, std::string path,
                     std::vector<std::string> columns)
    : name_(std::move(name)), columns_(std::move(columns)) {
  out_.open(path, std::ios::out | std::ios::trunc);
  if (!out_) {
    throw std::runtime_error("TraceSink: cannot open " + path);
  }
  for (std::size_t i = 0; i < columns_.size(); ++i) {
    if (i) out_ << ',';
    out_ << columns_[i];
  }
  out_ << '\n';
}

void TraceSink::append(const std::vector<TraceValue>& row) {
  if (row.size() != columns_.size()) {
    throw std::logic_error("TraceSink " + name_ + ": row width " +
                           std::to_string(row.size()) + " != " +
                           std::to_string(columns_.size()));
  }
  for (std::size_t i = 0; i < row.size(); ++i) {
    if (i) out_ << ',';
    out_ << row[i].format();
  }
  out_ << '\n';
  ++rows_;
}

void TraceSink::flush() { out_.flush(); }

TraceManager::TraceManager(std::string out_dir) : out_dir_(std::move(out_dir)) {
  std::filesystem::create_directories(out_dir_);
}

TraceSink& TraceManager::sink(const std::string& name,
                              const std::vector<std::string>& columns) {
  auto it = sinks_.find(name);
  if (it != sinks_.end()) return *it->second;
  auto path = (std::filesystem::path(out_dir_) / (name + ".csv")).string();
  auto [pos, _] = sinks_.emplace(
      name, std::make_unique<TraceSink>(name, path, columns));
  return *pos->second;
}

TraceSink* TraceManager::find(const std::string& name) {
  auto it = sinks_.find(name);
  return it == sinks_.end() ? nullptr : it->second.get();
}

void TraceManager::flush_all() {
  for (auto& [_, sink] : sinks_) sink->flush();
}

}  // namespace mmwavesim
