/*
 * Copyright (c) 2026 the mmwavesim authors
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#include "mmwavesim/core/keyvalue.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace mmwavesim {

namespace {

std::string trim(const std::string& s) {
  auto begin = s.find_first_not_of(" \t\r\n");
  if (begin == std::string::npos) return "";
  auto end = s.find_last_not_of(" \t\r\n");
  return s.substr(begin, end - begin + 1);
}

}  // namespace

const KeyValueEntry* KeyValueSection::find(const std::string& key) const {
  for (const auto& e : entries) {
    if (e.key == key) return &e;
  }
  return nullptr;
}

std::optional<std::string> KeyValueSection::get(const std::string& key) const {
  const auto* e = find(key);
  if (!e) return std::nullopt;
  return e->value;
}

double KeyValueSection::get_double(const std::string& key, double fallback) const {
  const auto* e = find(key);
  if (!e) return fallback;
  try {
    std::size_t pos = 0;
    double d = std::stod(e->value, &pos);
    if (pos != e->value.size()) throw std::invalid_argument("trailing characters");
    return d;
  } catch (const std::exception&) {
    throw std::runtime_error("line " + std::to_string(e->line) + ": key '" + key +
                             "' has non-numeric value '" + e->value + "'");
  }
}

double KeyValueSection::require_double(const std::string& key) const {
  if (!find(key)) {
    throw std::runtime_error("section [" + name + "]: missing required key '" +
                             key + "'");
  }
  return get_double(key, 0.0);
}

long long KeyValueSection::get_int(const std::string& key, long long fallback) const {
  const auto* e = find(key);
  if (!e) return fallback;
  try {
    std::size_t pos = 0;
    long long v = std::stoll(e->value, &pos);
    if (pos != e->value.size()) throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception&) {
    throw std::runtime_error("line " + std::to_string(e->line) + ": key '" + key +
                             "' has non-integer value '" + e->value + "'");
  }
}

bool KeyValueSection::get_bool(const std::string& key, bool fallback) const {
  const auto* e = find(key);
  if (!e) return fallback;
  std::string v = e->value;
  std::transform(v.begin(), v.end(), v.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
  if (v == "false" || v == "0" || v == "no" || v == "off") return false;
  throw std::runtime_error("line " + std::to_string(e->line) + ": key '" + key +
                           "' has non-boolean value '" + e->value + "'");
}

std::string KeyValueSection::get_string(const std::string& key,
                                        const std::string& fallback) const {
  const auto* e = find(key);
  return e ? e->value : fallback;
}

const KeyValueSection* KeyValueDoc::find_section(const std::string& name) const {
  for (const auto& s : sections) {
    if (s.name == name) return &s;
  }
  return nullptr;
}

std::vector<const KeyValueSection*> KeyValueDoc::find_all(
    const std::string& prefix) const {
  std::vector<const KeyValueSection*> out;
  for (const auto& s : sections) {
    if (s.name == prefix ||
        (s.name.size() > prefix.size() && s.name.rfind(prefix + " ", 0) == 0)) {
      out.push_back(&s);
    }
  }
  return out;
}

KeyValueDoc parse_keyvalue_text(const std::string& text,
                                const std::string& source_name) {
  KeyValueDoc doc;
  doc.source_name = source_name;
  doc.sections.push_back(KeyValueSection{"", 0, {}});

  std::istringstream in(text);
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    auto hash = raw.find('#');
    if (hash != std::string::npos) raw.erase(hash);
    std::string s = trim(raw);
    if (s.empty()) continue;
    if (s.front() == '[') {
      if (s.back() != ']') {
        throw std::runtime_error(source_name + ":" + std::to_string(line) +
                                 ": unterminated section header");
      }
      doc.sections.push_back(
          KeyValueSection{trim(s.substr(1, s.size() - 2)), line, {}});
      continue;
    }
    auto eq = s.find('=');
    if (eq == std::string::npos) {
      throw std::runtime_error(source_name + ":" + std::to_string(line) +
                               ": expected 'key = value', got '" + s + "'");
    }
    KeyValueEntry e;
    e.key = trim(s.substr(0, eq));
    e.value = trim(s.substr(eq + 1));
    e.line = line;
    if (e.key.empty()) {
      throw std::runtime_error(source_name + ":" + std::to_string(line) +
                               ": empty key");
    }
    doc.sections.back().entries.push_back(std::move(e));
  }
  return doc;
}

KeyValueDoc parse_keyvalue_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open file: " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_keyvalue_text(buf.str(), path);
}

std::vector<std::string> split_tokens(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == ' ' || c == '\t' || c == ',') {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

}  // namespace mmwavesim
