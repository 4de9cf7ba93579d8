// Copyright 2023 The Authors.
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

#ifndef ADASUB_ERROR_H_
#define ADASUB_ERROR_H_

#include <stdexcept>
#include <string>
#include <string_view>

namespace adasub {

enum class ErrorKind {
  kInvalidArgument,   // index out of range, mismatched sizes, bad config
  kValidation,        // a domain invariant does not hold
  kZeroProbability,   // conditioning on an impossible observation
  kTooLarge,          // an exhaustive routine would exceed its cap
  kParse,             // malformed instance file
};

std::string_view ErrorKindName(ErrorKind kind);

// Every failure raised by the library. The message is human readable; the
// kind is what callers (and the CLI exit code) dispatch on.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace adasub

#endif  // ADASUB_ERROR_H_
