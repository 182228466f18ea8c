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

#include <iosfwd>
#include <string>
#include <vector>

#include "qpad/schemes.hpp"

// Command-line front end. run_cli takes the arguments after the program name
// and writes to the given streams, so tests can drive it in-process.
//
// Exit codes: 0 success, 1 a verification FAILed, 2 usage or input error,
// 3 resource limit, 4 numerical failure.

namespace qpad::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFail = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitResource = 3;
inline constexpr int kExitNumerical = 4;

int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

/// Applies QPAD_THREADS, if set, to the thread budget.
void apply_thread_env();

struct KeyLengthSpec {
    std::vector<unsigned> ns;
    std::vector<double> epsilons;
    std::uint64_t seed = 1;
};

std::vector<schemes::KeyLengthRow> keylen_table(const KeyLengthSpec &spec);
void write_keylen_table(std::ostream &out, const KeyLengthSpec &spec, const std::vector<schemes::KeyLengthRow> &rows);
void write_keylen_csv(std::ostream &out, const KeyLengthSpec &spec, const std::vector<schemes::KeyLengthRow> &rows);
std::vector<schemes::KeyLengthRow> parse_keylen_csv(std::istream &in);

}  // namespace qpad::cli
