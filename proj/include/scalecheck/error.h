// Copyright 2026 The scalecheck Authors.
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

#ifndef SCALECHECK_ERROR_H_
#define SCALECHECK_ERROR_H_

#include <stdexcept>
#include <string>
#include <string_view>

namespace scalecheck {

enum class ErrorCode {
  kEmptyInput,
  kDegenerateFit,
  kNonpositiveValue,
  kNotApplicable,
  kInsufficientLength,
  kInsufficientSegments,
  kAllSigmaZero,
  kZeroVariance,
  kSeriesTooShort,
  kTooFewIntervals,
  kInvalidParam,
  kInsufficientData,
  kOovToken,
  kParseError,
  kEmptyTreebank,
  kUnproductiveGrammar,
  kIoError,
  kFormatError,
};

// Stable identifier used in reports, e.g. "DegenerateFit".
std::string_view error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace scalecheck

#endif  // SCALECHECK_ERROR_H_
