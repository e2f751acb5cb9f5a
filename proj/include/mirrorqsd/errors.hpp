// Copyright 2026 The mirrorqsd Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace mirrorqsd {

/// Parameter outside its admissible range (p, theta, grid bounds).
class DomainError : public std::domain_error {
  public:
    using std::domain_error::domain_error;
};

/// A coin schedule contains a non-unitary matrix.
class ScheduleError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Requested schedule exists only algebraically (four-element MCD family).
class UnsupportedScheduleError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Walk statistics cannot be matched to the target POVM.
class CompilationMismatchError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Coin is not reachable with a single half-wave plate.
class NeedsQwpError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

class SingularStateError : public std::runtime_error {
  public:
    SingularStateError(const std::string &what, double eigenvalue)
        : std::runtime_error(what), eigenvalue_(eigenvalue) {}
    [[nodiscard]] double eigenvalue() const noexcept { return eigenvalue_; }

  private:
    double eigenvalue_;
};

/// Invalid scan or CLI configuration. The message names the offending field.
class ConfigError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

} // namespace mirrorqsd
