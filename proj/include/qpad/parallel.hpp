// Copyright 2026 The qpad Authors
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

#include "qpad/qcore.hpp"

namespace qpad {

/// Upper bound on worker threads. Initialized from QPAD_THREADS when set,
/// otherwise hardware concurrency; always >= 1.
unsigned thread_budget();
void set_thread_budget(unsigned threads);

/// Uniform average of term(0) .. term(count - 1), summed over a fixed
/// balanced binary tree. The tree shape depends only on count, so results are
/// bit-identical for every thread budget.
qcore::ComplexMatrix average_terms(std::size_t count,
                                   const std::function<qcore::ComplexMatrix(std::size_t)> &term);

}  // namespace qpad
