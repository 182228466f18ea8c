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

#include "qpad/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <future>
#include <stdexcept>
#include <string>
#include <thread>

namespace qpad {

namespace {

unsigned initial_budget() {
    if (const char *env = std::getenv("QPAD_THREADS")) {
        try {
            const long v = std::stol(env);
            if (v >= 1) return static_cast<unsigned>(v);
        } catch (const std::exception &) {
        }
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

std::atomic<unsigned> &budget() {
    static std::atomic<unsigned> b{initial_budget()};
    return b;
}

qcore::ComplexMatrix tree_sum(std::size_t lo, std::size_t hi, unsigned threads,
                              const std::function<qcore::ComplexMatrix(std::size_t)> &term) {
    if (hi - lo == 1) return term(lo);
    const std::size_t mid = lo + (hi - lo) / 2;
    if (threads > 1) {
        auto left = std::async(std::launch::async, [&] { return tree_sum(lo, mid, threads / 2, term); });
        auto right = tree_sum(mid, hi, threads - threads / 2, term);
        auto sum = left.get();
        sum += right;
        return sum;
    }
    auto sum = tree_sum(lo, mid, 1, term);
    sum += tree_sum(mid, hi, 1, term);
    return sum;
}

}  // namespace

unsigned thread_budget() { return budget().load(); }

void set_thread_budget(unsigned threads) { budget().store(std::max(1u, threads)); }

qcore::ComplexMatrix average_terms(std::size_t count,
                                   const std::function<qcore::ComplexMatrix(std::size_t)> &term) {
    if (count == 0) throw std::invalid_argument("average_terms: no terms");
    auto sum = tree_sum(0, count, thread_budget(), term);
    sum *= 1.0 / static_cast<double>(count);
    return sum;
}

}  // namespace qpad
