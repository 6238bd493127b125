// Copyright 2026 The qi-roclab Authors
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

#pragma once

#include <cstddef>
#include <functional>

namespace qi {

/// Worker count: `requested` if nonzero, else $QI_ROCLAB_THREADS, else the
/// hardware concurrency (at least 1).
unsigned resolve_threads(unsigned requested = 0);

/// Calls body(i) for every i in [0, count) on up to `threads` workers. Work
/// is handed out by index, so results written to slot i do not depend on
/// scheduling. Exceptions from any body are rethrown on the calling thread.
void parallel_for(std::size_t count, unsigned threads, const std::function<void(std::size_t)>& body);

}  // namespace qi
