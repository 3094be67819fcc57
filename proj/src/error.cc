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

#include "scalecheck/error.h"

namespace scalecheck {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kEmptyInput: return "EmptyInput";
    case ErrorCode::kDegenerateFit: return "DegenerateFit";
    case ErrorCode::kNonpositiveValue: return "NonpositiveValue";
    case ErrorCode::kNotApplicable: return "NotApplicable";
    case ErrorCode::kInsufficientLength: return "InsufficientLength";
    case ErrorCode::kInsufficientSegments: return "InsufficientSegments";
    case ErrorCode::kAllSigmaZero: return "AllSigmaZero";
    case ErrorCode::kZeroVariance: return "ZeroVariance";
    case ErrorCode::kSeriesTooShort: return "SeriesTooShort";
    case ErrorCode::kTooFewIntervals: return "TooFewIntervals";
    case ErrorCode::kInvalidParam: return "InvalidParam";
    case ErrorCode::kInsufficientData: return "InsufficientData";
    case ErrorCode::kOovToken: return "OovToken";
    case ErrorCode::kParseError: return "ParseError";
    case ErrorCode::kEmptyTreebank: return "EmptyTreebank";
    case ErrorCode::kUnproductiveGrammar: return "UnproductiveGrammar";
    case ErrorCode::kIoError: return "IoError";
    case ErrorCode::kFormatError: return "FormatError";
  }
  return "Unknown";
}

}  // namespace scalecheck
