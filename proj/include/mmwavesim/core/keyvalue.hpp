/*
 * Copyright (c) 2026 the mmwavesim authors
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#ifndef MMWAVESIM_CORE_KEYVALUE_HPP
#define MMWAVESIM_CORE_KEYVALUE_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace mmwavesim {

// One `key = value` entry with its source line for error reporting.
struct KeyValueEntry {
  std::string key;
  std::string value;
  int line = 0;
};

// A `[name]` section (entries before any header land in section "").
// Section names may repeat ("[ue 1]", "[ue 2]"): each occurrence is kept.
struct KeyValueSection {
  std::string name;
  int line = 0;
  std::vector<KeyValueEntry> entries;

  const KeyValueEntry* find(const std::string& key) const;
  std::optional<std::string> get(const std::string& key) const;
  double get_double(const std::string& key, double fallback) const;
  double require_double(const std::string& key) const;
  long long get_int(const std::string& key, long long fallback) const;
  bool get_bool(const std::string& key, bool fallback) const;
  std::string get_string(const std::string& key, const std::string& fallback) const;
};

// Minimal INI-style document: `#` comments, `key = value`, `[section ...]`.
struct KeyValueDoc {
  std::vector<KeyValueSection> sections;
  std::string source_name;

  const KeyValueSection* find_section(const std::string& name) const;
  std::vector<const KeyValueSection*> find_all(const std::string& prefix) const;
  const KeyValueSection& root() const { return sections.front(); }
};

KeyValueDoc parse_keyvalue_text(const std::string& text, const std::string& source_name);
KeyValueDoc parse_keyvalue_file(const std::string& path);

// Splits "a b c" / "a,b,c" into trimmed tokens.
std::vector<std::string> split_tokens(const std::string& s);

}  // namespace mmwavesim

#endif
