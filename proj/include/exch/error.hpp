// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace exch {

enum class Errc {
  InvalidParameter = 1,
  Domain = 2,
  DimensionMismatch = 3,
  OutOfRange = 4,
  UnknownSuite = 5,
};

// Every failure raised by the library carries one of the codes above; the C
// API maps them one-to-one onto exch_status values.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) { throw Error(code, what); }

}  // namespace exch
