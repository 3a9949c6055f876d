// SPDX-License-Identifier: Apache-2.0

#include "cli_io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <json.hpp>
#include <limits>

namespace exch::cli {

std::string json_number(double v) {
  if (!std::isfinite(v)) return "null";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string json_string(std::string_view s) { return nlohmann::json(std::string(s)).dump(); }

void JsonObject::key(std::string_view k) {
  if (!body_.empty()) body_ += ',';
  body_ += json_string(k);
  body_ += ':';
}

JsonObject& JsonObject::number(std::string_view k, double v) {
  key(k);
  body_ += json_number(v);
  return *this;
}

JsonObject& JsonObject::integer(std::string_view k, std::int64_t v) {
  key(k);
  body_ += std::to_string(v);
  return *this;
}

JsonObject& JsonObject::unsigned_integer(std::string_view k, std::uint64_t v) {
  key(k);
  body_ += std::to_string(v);
  return *this;
}

JsonObject& JsonObject::boolean(std::string_view k, bool v) {
  key(k);
  body_ += v ? "true" : "false";
  return *this;
}

JsonObject& JsonObject::string(std::string_view k, std::string_view v) {
  key(k);
  body_ += json_string(v);
  return *this;
}

JsonObject& JsonObject::numbers(std::string_view k, const std::vector<double>& v) {
  key(k);
  body_ += '[';
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) body_ += ',';
    body_ += json_number(v[i]);
  }
  body_ += ']';
  return *this;
}

JsonObject& JsonObject::integers(std::string_view k, const std::vector<std::uint32_t>& v) {
  key(k);
  body_ += '[';
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) body_ += ',';
    body_ += std::to_string(v[i]);
  }
  body_ += ']';
  return *this;
}

JsonObject& JsonObject::nested_integers(std::string_view k, const std::vector<std::vector<std::uint32_t>>& v) {
  key(k);
  body_ += '[';
  for (std::size_t j = 0; j < v.size(); ++j) {
    if (j) body_ += ',';
    body_ += '[';
    for (std::size_t i = 0; i < v[j].size(); ++i) {
      if (i) body_ += ',';
      body_ += std::to_string(v[j][i]);
    }
    body_ += ']';
  }
  body_ += ']';
  return *this;
}

std::string JsonObject::str() const { return "{" + body_ + "}"; }

std::string csv_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return json_number(v);
}

std::string csv_field(std::string_view s) {
  if (s.find_first_of(",\"\n") == std::string_view::npos) return std::string(s);
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

namespace {

std::vector<std::string_view> split(std::string_view text) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  for (;;) {
    const auto comma = text.find(',', start);
    parts.push_back(text.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
    if (comma == std::string_view::npos) return parts;
    start = comma + 1;
  }
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
  return s;
}

}  // namespace

std::vector<double> parse_reals(std::string_view flag, std::string_view text) {
  std::vector<double> out;
  for (auto part : split(text)) {
    part = trim(part);
    double v = 0.0;
    const auto [end, ec] = std::from_chars(part.data(), part.data() + part.size(), v);
    if (part.empty() || ec != std::errc() || end != part.data() + part.size()) {
      throw UsageError(std::string(flag) + ": '" + std::string(part) + "' is not a number");
    }
    out.push_back(v);
  }
  return out;
}

std::vector<std::uint64_t> parse_counts(std::string_view flag, std::string_view text) {
  std::vector<std::uint64_t> out;
  if (trim(text).empty()) return out;
  for (auto part : split(text)) {
    part = trim(part);
    std::uint64_t v = 0;
    const auto [end, ec] = std::from_chars(part.data(), part.data() + part.size(), v);
    if (part.empty() || ec != std::errc() || end != part.data() + part.size()) {
      throw UsageError(std::string(flag) + ": '" + std::string(part) + "' is not a nonnegative integer");
    }
    out.push_back(v);
  }
  return out;
}

std::vector<std::vector<std::uint32_t>> parse_partition(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw UsageError(std::string("--partition: invalid JSON (") + e.what() + ")");
  }
  if (!j.is_array()) throw UsageError("--partition: expected an array of arrays");
  std::vector<std::vector<std::uint32_t>> blocks;
  for (const auto& block : j) {
    if (!block.is_array()) throw UsageError("--partition: expected an array of arrays");
    auto& out = blocks.emplace_back();
    for (const auto& e : block) {
      if (!e.is_number_integer() || e.get<std::int64_t>() < 1 ||
          e.get<std::int64_t>() > std::numeric_limits<std::uint32_t>::max()) {
        throw UsageError("--partition: elements must be positive integers");
      }
      out.push_back(e.get<std::uint32_t>());
    }
  }
  return blocks;
}

}  // namespace exch::cli
