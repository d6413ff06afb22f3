//
// Copyright 2026 The dppm Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#ifndef DPPM_PARALLEL_H_
#define DPPM_PARALLEL_H_

namespace dppm {

// Selects between the OpenMP kernels and the serial reference loops. Both
// paths produce identical results; the serial one is kept for testing and
// benchmarking.
enum class Execution { kSerial, kParallel };

// Number of OpenMP threads the parallel kernels will use (1 when OpenMP is
// unavailable).
int max_threads();

}  // namespace dppm

#endif  // DPPM_PARALLEL_H_
