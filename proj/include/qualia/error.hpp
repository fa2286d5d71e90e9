// Copyright 2026 The Qualia Cluster Authors.
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

#ifndef QUALIA_ERROR_HPP_
#define QUALIA_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace qualia {

// Failure categories. The C API maps each onto a status code and the CLI
// maps kConfig/kArgument onto exit code 2.
enum class ErrorKind {
  kIo,
  kFormat,
  kConfig,
  kArgument,
  kEvaluation,
  kUndefinedDistribution,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string &message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

inline Error IoError(const std::string &message) {
  return Error(ErrorKind::kIo, message);
}
inline Error FormatError(const std::string &message) {
  return Error(ErrorKind::kFormat, message);
}
inline Error ConfigError(const std::string &message) {
  return Error(ErrorKind::kConfig, message);
}
inline Error ArgumentError(const std::string &message) {
  return Error(ErrorKind::kArgument, message);
}

}  // namespace qualia

#endif  // QUALIA_ERROR_HPP_
