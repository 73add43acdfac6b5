/*
 * Copyright 2026 The Mirage Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

// Flat key=value configuration files.
//
//   # comment
//   key = value
//
// Keys are unique within a file. Values are trimmed; everything after the
// first '=' belongs to the value.

#pragma once

#include <charconv>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <system_error>
#include <utility>
#include <vector>

#include "mirage/errors.hpp"
#include "mirage/ingest.hpp"
#include "mirage/metrics.hpp"

namespace mirage {

namespace detail {

inline std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

inline std::vector<std::string_view> split_list(std::string_view s) {
  std::vector<std::string_view> out;
  while (true) {
    const auto comma = s.find(',');
    out.push_back(trim(s.substr(0, comma)));
    if (comma == std::string_view::npos) break;
    s.remove_prefix(comma + 1);
  }
  return out;
}

}  // namespace detail

// Ordered key/value pairs with the line each key came from. Repeated keys are
// kept in order when `allow_repeats` is set (plot specs list many series).
struct KeyValueFile {
  struct Entry {
    std::string key;
    std::string value;
    std::size_t line = 0;
  };
  std::vector<Entry> entries;
};

inline KeyValueFile parse_key_values(std::string_view text, bool allow_repeats = false) {
  KeyValueFile file;
  std::map<std::string, std::size_t, std::less<>> seen;
  for_each_line(text, [&](std::string_view line, std::size_t number) {
    line = detail::trim(line);
    if (line.starts_with('#')) return;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ParseError(number, "expected key = value");
    const auto key = detail::trim(line.substr(0, eq));
    if (key.empty()) throw ParseError(number, "empty key");
    if (!allow_repeats) {
      auto [it, fresh] = seen.try_emplace(std::string(key), number);
      if (!fresh) {
        throw ParseError(number, "key '" + std::string(key) + "' already set on line " +
                                     std::to_string(it->second));
      }
    }
    file.entries.push_back(
        {std::string(key), std::string(detail::trim(line.substr(eq + 1))), number});
  });
  return file;
}

// Resolved settings for one preset run. Values are stored as text and
// converted on access, so a manifest reproduces exactly what was run.
class ExperimentConfig {
 public:
  ExperimentConfig() = default;
  explicit ExperimentConfig(std::string preset) : preset_(std::move(preset)) {}

  const std::string& preset() const noexcept { return preset_; }
  void set_preset(std::string p) { preset_ = std::move(p); }

  void set(const std::string& key, std::string value) { values_[key] = std::move(value); }
  bool has(std::string_view key) const { return values_.find(key) != values_.end(); }
  const std::map<std::string, std::string, std::less<>>& values() const noexcept {
    return values_;
  }

  const std::string& text(std::string_view key) const {
    const auto it = values_.find(key);
    if (it == values_.end()) throw UsageError("missing required setting '" + std::string(key) + "'");
    return it->second;
  }

  double real(std::string_view key) const { return to_real(key, text(key)); }

  std::size_t count(std::string_view key) const { return to_count(key, text(key)); }

  std::uint64_t seed(std::string_view key = "seed") const {
    const auto& v = text(key);
    std::uint64_t out = 0;
    const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (v.empty() || ec != std::errc{} || ptr != v.data() + v.size()) {
      throw bad_value(key, v, "an unsigned 64-bit integer");
    }
    return out;
  }

  std::vector<double> reals(std::string_view key) const {
    std::vector<double> out;
    for (auto item : detail::split_list(text(key))) out.push_back(to_real(key, item));
    return out;
  }

  std::vector<std::size_t> counts(std::string_view key) const {
    std::vector<std::size_t> out;
    for (auto item : detail::split_list(text(key))) out.push_back(to_count(key, item));
    return out;
  }

  std::vector<MetricId> metrics(std::string_view key) const {
    std::vector<MetricId> out;
    for (auto item : detail::split_list(text(key))) {
      const auto id = find_metric(item);
      if (!id) throw bad_value(key, item, "a known metric identifier");
      out.push_back(*id);
    }
    return out;
  }

 private:
  static UsageError bad_value(std::string_view key, std::string_view value,
                              std::string_view what) {
    return UsageError("setting '" + std::string(key) + "': '" + std::string(value) +
                      "' is not " + std::string(what));
  }
  static double to_real(std::string_view key, std::string_view v) {
    double out = 0.0;
    const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (v.empty() || ec != std::errc{} || ptr != v.data() + v.size() || !std::isfinite(out)) {
      throw bad_value(key, v, "a finite number");
    }
    return out;
  }
  static std::size_t to_count(std::string_view key, std::string_view v) {
    std::size_t out = 0;
    const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (v.empty() || ec != std::errc{} || ptr != v.data() + v.size()) {
      throw bad_value(key, v, "a non-negative integer");
    }
    return out;
  }

  std::string preset_;
  std::map<std::string, std::string, std::less<>> values_;
};

// Splits "key=value" as given on the command line.
inline std::pair<std::string, std::string> parse_assignment(std::string_view s) {
  const auto eq = s.find('=');
  if (eq == std::string_view::npos || detail::trim(s.substr(0, eq)).empty()) {
    throw UsageError("expected key=value, got '" + std::string(s) + "'");
  }
  return {std::string(detail::trim(s.substr(0, eq))),
          std::string(detail::trim(s.substr(eq + 1)))};
}

}  // namespace mirage
