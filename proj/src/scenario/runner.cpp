/*
 * Copyright (c) 2026 the mmwavesim authors
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#include <filesystem>
#include <fstream>
#include <sstream>

#include "mmwavesim/scenario/config.hpp"
#include "mmwavesim/scenario/stack.hpp"

namespace mmwavesim::scenario {

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open scenario file: " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// Rewrites "trace:scenarios/<name>" references to files materialized from
// the bundled trace contents under out_dir.
void materialize_traces(KeyValueDoc& doc, const std::string& out_dir) {
  for (auto& sec : doc.sections) {
    if (sec.name != "channel") continue;
    for (auto& e : sec.entries) {
      if (e.key != "source" || e.value.rfind("trace:scenarios/", 0) != 0) {
        continue;
      }
      const std::string filename = e.value.substr(16);
      const auto path = std::filesystem::path(out_dir) / filename;
      std::filesystem::create_directories(out_dir);
      std::ofstream out(path);
      out << preset_trace_content(filename);
      out.close();
      e.value = "trace:" + path.string();
    }
  }
}

}  // namespace

ScenarioConfig prepare_scenario(const std::string& name_or_path,
                                const std::vector<std::string>& overrides,
                                int num_ue, const std::string& out_dir) {
  std::string text;
  std::string source;
  if (name_or_path.size() > 4 &&
      name_or_path.substr(name_or_path.size() - 4) == ".ini") {
    text = read_file(name_or_path);
    source = name_or_path;
  } else {
    text = preset_text(name_or_path);
    source = "preset:" + name_or_path;
  }
  KeyValueDoc doc = parse_keyvalue_text(text, source);
  for (const auto& ov : overrides) apply_override(doc, ov);
  if (num_ue > 0) {
    int kept = 0;
    std::vector<KeyValueSection> sections;
    for (auto& sec : doc.sections) {
      if (sec.name.rfind("ue ", 0) == 0) {
        if (++kept > num_ue) continue;
      }
      sections.push_back(std::move(sec));
    }
    if (kept < num_ue) {
      throw std::runtime_error("scenario defines only " + std::to_string(kept) +
                               " users; cannot raise to " +
                               std::to_string(num_ue));
    }
    doc.sections = std::move(sections);
  }
  materialize_traces(doc, out_dir);
  return scenario_from_doc(doc);
}

}  // namespace mmwavesim::scenario
