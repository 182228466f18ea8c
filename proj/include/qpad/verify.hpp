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

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "qpad/qcore.hpp"

// The verification report: every scheme's exact channel applied to a fixed
// adversarial suite plus seeded random states, with the purity bound, the
// trace-distance bound and the Fact-1 estimate checked on each row.

namespace qpad::verify {

struct VerifySpec {
    unsigned n = 2;
    double epsilon = 0.5;
    std::uint64_t seed = 1;
    unsigned random_states = 3;
};

struct StateCase {
    std::string label;
    qcore::DensityMatrix rho;
};

/// Seed for the i-th derived stream of a run.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

/// |0>, |2^n - 1>, the uniform superposition, (I +- P)/2^n for P in
/// {X0, Z0, X on all, Z on all, X0 Z1}, then `random_states` random pure states.
std::vector<StateCase> qubit_suite(unsigned n, std::uint64_t seed, unsigned random_states);
/// Dimension-d analogues: |0>, |d-1>, the uniform superposition,
/// (I +- (X + X^-1)/2)/d, (I +- (Z + Z^-1)/2)/d, then random pure states.
std::vector<StateCase> qudit_suite(std::uint64_t d, std::uint64_t seed, unsigned random_states);

inline constexpr double kPurityTol = 1e-10;
inline constexpr double kDistanceTol = 1e-8;

struct ReportRow {
    std::string scheme;
    std::string params;
    std::string state;
    double purity;
    double purity_bound;
    double fact1_eps;
    double distance;
    double bound;
    double margin;  // bound - distance
    bool pass;

    friend bool operator==(const ReportRow &, const ReportRow &) = default;
};

/// purity <= purity_bound, distance <= bound and distance <= fact1_eps, within
/// the tolerances above.
bool row_passes(double purity, double purity_bound, double fact1_eps, double distance, double bound);

struct Report {
    VerifySpec spec;
    std::vector<ReportRow> rows;

    bool all_pass() const;
    std::size_t failures() const;
};

/// Rows in fixed order: A-full, A-aghp, B (n <= 3 only), C-core, C.
/// Requires 1 <= n <= 5; throws ResourceLimit above.
Report run_verify(const VerifySpec &spec);

void write_report_table(std::ostream &out, const Report &report);
void write_report_csv(std::ostream &out, const Report &report);
/// Reads back what write_report_csv wrote; '#' lines are skipped.
std::vector<ReportRow> parse_report_csv(std::istream &in);

}  // namespace qpad::verify
