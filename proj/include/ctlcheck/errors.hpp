// Copyright 2026 The ctlcheck Authors
//
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

#pragma once

#include <stdexcept>
#include <string>

namespace ctlcheck {

/// Error taxonomy shared by the library, the C API and the CLI exit codes.
class Error : public std::runtime_error {
public:
  enum class Kind {
    Io,      ///< file system / stream failures
    Parse,   ///< malformed CSV, JSON or expression text
    Config,  ///< structurally valid input that violates a contract
    Input,   ///< runtime data that does not fit the configuration
    Eval     ///< failures raised while evaluating expressions/rewards
  };

  Error(Kind kind, std::string message)
      : std::runtime_error(std::move(message)), kind_(kind) {}

  Kind kind() const noexcept { return kind_; }

private:
  Kind kind_;
};

struct IoError : Error {
  explicit IoError(std::string m) : Error(Kind::Io, std::move(m)) {}
};
struct ParseError : Error {
  explicit ParseError(std::string m) : Error(Kind::Parse, std::move(m)) {}
};
struct ConfigError : Error {
  explicit ConfigError(std::string m) : Error(Kind::Config, std::move(m)) {}
};
struct InputError : Error {
  explicit InputError(std::string m) : Error(Kind::Input, std::move(m)) {}
};
struct EvalError : Error {
  explicit EvalError(std::string m) : Error(Kind::Eval, std::move(m)) {}
};

}  // namespace ctlcheck
