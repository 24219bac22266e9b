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

#include <cstddef>

#include "tfq/errors.hpp"

namespace tfq::detail {

// Unnormalized in-place DFT: sign = -1 computes sum_j x_j e^{-2 pi i jk/n},
// sign = +1 the conjugate kernel. Plans are cached per (n, sign).
void fft_inplace(cplx* data, std::size_t n, int sign);
inline void fft_inplace(CVec& data, int sign) {
  fft_inplace(data.data(), data.size(), sign);
}

}  // namespace tfq::detail
