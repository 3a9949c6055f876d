// SPDX-License-Identifier: Apache-2.0

// Text formats used by exch-cli: JSON lines (numbers at 17 significant
// digits, so doubles round-trip exactly) and CSV with a header row.

#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace exch::cli {

// Thrown for malformed command-line values; the CLI maps it to exit status 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// %.17g, or null for non-finite values.
std::string json_number(double v);
std::string json_string(std::string_view s);

// Builds one JSON object, keys in insertion order.
class JsonObject {
 public:
  JsonObject& number(std::string_view key, double v);
  JsonObject& integer(std::string_view key, std::int64_t v);
  JsonObject& unsigned_integer(std::string_view key, std::uint64_t v);
  JsonObject& boolean(std::string_view key, bool v);
  JsonObject& string(std::string_view key, std::string_view v);
  JsonObject& numbers(std::string_view key, const std::vector<double>& v);
  JsonObject& integers(std::string_view key, const std::vector<std::uint32_t>& v);
  JsonObject& nested_integers(std::string_view key, const std::vector<std::vector<std::uint32_t>>& v);
  std::string str() const;

 private:
  void key(std::string_view k);
  std::string body_;
};

// CSV field formatting at the same precision as JSON.
std::string csv_number(double v);
std::string csv_field(std::string_view s);

std::vector<double> parse_reals(std::string_view flag, std::string_view text);
std::vector<std::uint64_t> parse_counts(std::string_view flag, std::string_view text);

// "[[1,3],[2]]" -> {{1,3},{2}}; elements must be positive integers.
std::vector<std::vector<std::uint32_t>> parse_partition(std::string_view text);

}  // namespace exch::cli
