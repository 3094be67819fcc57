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

#ifndef SCALECHECK_SIMON_PY_H_
#define SCALECHECK_SIMON_PY_H_

#include <cstddef>

#include "scalecheck/corpus.h"
#include "scalecheck/rng.h"

namespace scalecheck {

// Simon process: a new type with probability a, otherwise a copy of a
// uniformly chosen earlier token.
struct SimonParams {
  double a = 0.1;
};

// Pitman-Yor process with discount a and strength b.
struct PyParams {
  double a = 0.8;
  double b = 1.0;
};

void validate(const SimonParams& p);
void validate(const PyParams& p);

// Both generators emit types "w0", "w1", ... in order of introduction and
// start from a single w0. Throw Error(kInvalidParam).
TokenSequence simon_generate(const SimonParams& params, std::size_t length,
                             SeededRng& rng);
TokenSequence py_generate(const PyParams& params, std::size_t length,
                          SeededRng& rng);

}  // namespace scalecheck

#endif  // SCALECHECK_SIMON_PY_H_
