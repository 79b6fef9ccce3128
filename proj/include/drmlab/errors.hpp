// Copyright 2026 The drmlab Authors.
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

#ifndef DRMLAB_ERRORS_HPP
#define DRMLAB_ERRORS_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace drmlab {

enum class ErrorCode {
  kParse,
  kValidation,
  kMissingState,
  kDuplicateId,
  kNotPermitted,
  kUndefinedRight,
  kEmptyCandidates,
  kCapExceeded,
  kBoundsTooLarge,
  kInvalidArgument,
};

std::string_view ToString(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

// Raised by the license parser. `path()` names the offending field, e.g.
// "permissions[2].asset" or "top.and[1].count"; empty for syntax errors.
class ParseError : public Error {
 public:
  ParseError(ErrorCode code, std::string path, const std::string& message)
      : Error(code, path.empty() ? message : path + ": " + message),
        path_(std::move(path)) {}

  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

}  // namespace drmlab

#endif  // DRMLAB_ERRORS_HPP
