// Copyright 2026 The tfqsim Authors
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

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace tfq {

using cplx = std::complex<double>;
using CVec = std::vector<cplx>;

// Two families: usage errors (bad inputs, unknown labels) and numerical
// regime errors (grid too coarse, tails clipped, degenerate states). The CLI
// maps them to exit codes 2 and 3.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class UsageError : public Error {
 public:
  using Error::Error;
};

class NumericalError : public Error {
 public:
  using Error::Error;
};

#define TFQ_DECLARE_ERROR(name, base)      \
  class name : public base {               \
   public:                                 \
    explicit name(const std::string& what) \
        : base(#name ": " + what) {}       \
  }

TFQ_DECLARE_ERROR(ConfigError, UsageError);
TFQ_DECLARE_ERROR(UnknownMode, UsageError);
TFQ_DECLARE_ERROR(MissingAssignment, UsageError);
TFQ_DECLARE_ERROR(GridMismatch, UsageError);
TFQ_DECLARE_ERROR(SectorMismatch, UsageError);

TFQ_DECLARE_ERROR(UnresolvablePeak, NumericalError);
TFQ_DECLARE_ERROR(OutOfBand, NumericalError);
TFQ_DECLARE_ERROR(DegenerateDistribution, NumericalError);
TFQ_DECLARE_ERROR(TruncationError, NumericalError);
TFQ_DECLARE_ERROR(DegenerateQubit, NumericalError);
TFQ_DECLARE_ERROR(ParallelStates, NumericalError);
TFQ_DECLARE_ERROR(ZeroProbabilityPattern, NumericalError);
TFQ_DECLARE_ERROR(RegimeViolation, NumericalError);

#undef TFQ_DECLARE_ERROR

}  // namespace tfq
