// Copyright 2026 The nsw-forge Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef NSW_ERRORS_H_
#define NSW_ERRORS_H_

#include <stdexcept>
#include <string>

namespace nsw {

// Failure categories. The numeric values of the CLI-facing kinds are the
// process exit codes of the nsw_forge tool.
enum class ErrorKind {
  kUsage = 1,       // bad arguments, I/O, malformed input
  kInvariant = 2,   // a stage guarantee did not hold
  kCapExceeded = 3, // an exhaustive routine would exceed its enumeration cap
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const { return kind_; }
  int exit_code() const { return static_cast<int>(kind_); }

 private:
  ErrorKind kind_;
};

// Input that violates the instance schema or a documented precondition.
class InputError : public Error {
 public:
  explicit InputError(const std::string& what)
      : Error(ErrorKind::kUsage, what) {}
};

class InvariantViolation : public Error {
 public:
  explicit InvariantViolation(const std::string& what)
      : Error(ErrorKind::kInvariant, what) {}
};

class CapExceeded : public Error {
 public:
  explicit CapExceeded(const std::string& what)
      : Error(ErrorKind::kCapExceeded, what) {}
};

#define NSW_CHECK(cond, msg)                                      \
  do {                                                            \
    if (!(cond)) throw ::nsw::InvariantViolation(std::string(msg)); \
  } while (0)

#define NSW_REQUIRE(cond, msg)                              \
  do {                                                      \
    if (!(cond)) throw ::nsw::InputError(std::string(msg)); \
  } while (0)

}  // namespace nsw

#endif  // NSW_ERRORS_H_
