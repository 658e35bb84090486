// Copyright 2026 The phaseshadow Authors
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

#ifndef PHASESHADOW_PARALLEL_H
#define PHASESHADOW_PARALLEL_H

#include <cstddef>
#include <functional>

namespace phaseshadow {

/// PHASESHADOW_THREADS if set and positive, else the hardware concurrency (at least 1).
size_t worker_count();

/// Calls body(i) for every i in [0, count) on a pool of worker_count() threads.
/// Results must be written to per-index slots; the first exception is rethrown.
void parallel_for(size_t count, const std::function<void(size_t)> &body);

}  // namespace phaseshadow

#endif
