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

#include "fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <utility>

namespace tfq::detail {
namespace {

std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

fftw_plan plan_for(std::size_t n, int sign) {
  static std::map<std::pair<std::size_t, int>, fftw_plan> cache;
  std::lock_guard<std::mutex> lock(planner_mutex());
  auto key = std::make_pair(n, sign);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  // FFTW_ESTIMATE keeps plans (and therefore rounding) identical run to run.
  auto* buf = fftw_alloc_complex(n);
  fftw_plan p = fftw_plan_dft_1d(static_cast<int>(n), buf, buf,
                                 sign < 0 ? FFTW_FORWARD : FFTW_BACKWARD,
                                 FFTW_ESTIMATE | FFTW_UNALIGNED);
  fftw_free(buf);
  cache.emplace(key, p);
  return p;
}

}  // namespace

void fft_inplace(cplx* data, std::size_t n, int sign) {
  if (n == 0) return;
  auto* p = reinterpret_cast<fftw_complex*>(data);
  fftw_execute_dft(plan_for(n, sign), p, p);
}

}  // namespace tfq::detail
