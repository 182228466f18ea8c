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

#include "qpad/verify.hpp"

#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <fmt/format.h>

#include "qpad/errors.hpp"
#include "qpad/formats.hpp"
#include "qpad/pauli.hpp"
#include "qpad/schemes.hpp"
#include "qpad/smallbias.hpp"

namespace qpad::verify {

using qcore::Complex;
using qcore::ComplexMatrix;
using qcore::DensityMatrix;

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
    // splitmix64 finalizer over the pair
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

namespace {

DensityMatrix uniform_superposition(std::size_t dim) {
    std::vector<Complex> amp(dim, Complex{1.0, 0.0});
    return DensityMatrix::pure(amp);
}

// (I + s H)/dim for a Hermitian H with spectrum in [-1, 1].
DensityMatrix shifted_identity(const ComplexMatrix &h, double s) {
    const auto dim = h.dim();
    auto m = ComplexMatrix::identity(dim) + h * Complex{s, 0.0};
    m *= Complex{1.0 / static_cast<double>(dim), 0.0};
    return DensityMatrix::from_matrix(std::move(m));
}

}  // namespace

std::vector<StateCase> qubit_suite(unsigned n, std::uint64_t seed, unsigned random_states) {
    if (n == 0 || n > 12) throw std::invalid_argument("qubit suite: n must be in [1, 12]");
    const std::size_t dim = std::size_t{1} << n;
    std::vector<StateCase> out;
    out.push_back({"basis_0", DensityMatrix::basis_state(dim, 0)});
    out.push_back({"basis_last", DensityMatrix::basis_state(dim, dim - 1)});
    out.push_back({"uniform", uniform_superposition(dim)});

    const auto all = gf2::low_mask(n);
    struct Word {
        const char *name;
        std::uint64_t u, v;
    };
    std::vector<Word> words{{"X0", 1, 0}, {"Z0", 0, 1}};
    if (n > 1) {
        words.push_back({"Xall", all, 0});
        words.push_back({"Zall", 0, all});
        words.push_back({"X0Z1", 1, 2});
    }
    for (const auto &w : words) {
        const auto p = pauli::pauli_dense(pauli::PauliOp(gf2::BitString(n, w.u), gf2::BitString(n, w.v)));
        out.push_back({fmt::format("(I+{})/2^n", w.name), shifted_identity(p, +1.0)});
        out.push_back({fmt::format("(I-{})/2^n", w.name), shifted_identity(p, -1.0)});
    }
    for (unsigned i = 0; i < random_states; ++i) {
        out.push_back({fmt::format("random_{}", i), qcore::random_pure_density(dim, derive_seed(seed, i))});
    }
    return out;
}

std::vector<StateCase> qudit_suite(std::uint64_t d, std::uint64_t seed, unsigned random_states) {
    if (!pauli::is_prime(d) || d == 2 || d > 4099) throw std::invalid_argument("qudit suite: d must be an odd prime <= 4099");
    std::vector<StateCase> out;
    out.push_back({"basis_0", DensityMatrix::basis_state(d, 0)});
    out.push_back({"basis_last", DensityMatrix::basis_state(d, d - 1)});
    out.push_back({"uniform", uniform_superposition(d)});
    const auto x = pauli::qudit_x_pow(d, 1);
    const auto z = pauli::qudit_z_pow(d, 1);
    const auto cx = (x + x.adjoint()) * Complex{0.5, 0.0};
    const auto cz = (z + z.adjoint()) * Complex{0.5, 0.0};
    out.push_back({"(I+ReX)/d", shifted_identity(cx, +1.0)});
    out.push_back({"(I-ReX)/d", shifted_identity(cx, -1.0)});
    out.push_back({"(I+ReZ)/d", shifted_identity(cz, +1.0)});
    out.push_back({"(I-ReZ)/d", shifted_identity(cz, -1.0)});
    for (unsigned i = 0; i < random_states; ++i) {
        out.push_back({fmt::format("random_{}", i), qcore::random_pure_density(d, derive_seed(seed, 1000 + i))});
    }
    return out;
}

bool row_passes(double purity, double purity_bound, double fact1_eps, double distance, double bound) {
    return purity <= purity_bound + kPurityTol && distance <= bound + kDistanceTol &&
           distance <= fact1_eps + kDistanceTol;
}

bool Report::all_pass() const { return failures() == 0; }

std::size_t Report::failures() const {
    std::size_t f = 0;
    for (const auto &r : rows) f += r.pass ? 0 : 1;
    return f;
}

namespace {

ReportRow make_row(std::string scheme, std::string params, std::string state, double purity, double purity_bound,
                   std::size_t dim, double distance, double bound) {
    const double f1 = qcore::fact_trace2_epsilon(purity, dim);
    return {std::move(scheme), std::move(params), std::move(state), purity, purity_bound, f1, distance, bound,
            bound - distance, row_passes(purity, purity_bound, f1, distance, bound)};
}

double off_diagonal_mass(const DensityMatrix &rho) {
    double s = 0.0;
    for (std::size_t i = 0; i < rho.dim(); ++i)
        for (std::size_t j = 0; j < rho.dim(); ++j)
            if (i != j) s += std::norm(rho(i, j));
    return s;
}

}  // namespace

Report run_verify(const VerifySpec &spec) {
    if (spec.n == 0) throw std::invalid_argument("verify: n must be >= 1");
    if (spec.n > 5) throw ResourceLimit(fmt::format("verify: n = {} exceeds the exact-channel limit; use --n 5 or less", spec.n));
    if (!(spec.epsilon > 0.0 && spec.epsilon <= 1.0)) throw std::invalid_argument("verify: epsilon must be in (0, 1]");
    if (spec.random_states > 1000) throw ResourceLimit("verify: more than 1000 random states; lower --trials");

    const unsigned n = spec.n;
    const double eps = spec.epsilon;
    const std::size_t dim = std::size_t{1} << n;
    const auto suite = qubit_suite(n, spec.seed, spec.random_states);
    const auto uniform = DensityMatrix::maximally_mixed(dim);
    Report report{spec, {}};

    // Scheme A with the full space: the perfect pad.
    {
        const auto cfg = schemes::make_scheme_a(n, smallbias::full_space_set(2 * n), eps);
        const auto params = fmt::format("n={};|B|={};delta={:.6g}", n, cfg.set.size(), cfg.certified_bias);
        for (const auto &c : suite) {
            const auto out = schemes::scheme_a_channel(cfg, c.rho);
            report.rows.push_back(make_row("A-full", params, c.label, qcore::purity(out),
                                           schemes::scheme_a_purity_bound(cfg, qcore::purity(c.rho)), dim,
                                           qcore::trace_distance(out, uniform), schemes::scheme_a_distance_bound(cfg)));
        }
    }
    // Scheme A with an AGHP set sized for the strict target.
    {
        const double target = eps * std::pow(2.0, -0.5 * n);
        const auto f = schemes::aghp_degree_for(2 * n, target);
        const auto cfg = schemes::make_scheme_a(n, smallbias::aghp_set(2 * n, f), eps);
        const auto params = fmt::format("n={};f={};|B|={};delta={:.6g}", n, f, cfg.set.size(), cfg.certified_bias);
        for (const auto &c : suite) {
            const auto out = schemes::scheme_a_channel(cfg, c.rho);
            report.rows.push_back(make_row("A-aghp", params, c.label, qcore::purity(out),
                                           schemes::scheme_a_purity_bound(cfg, qcore::purity(c.rho)), dim,
                                           qcore::trace_distance(out, uniform), schemes::scheme_a_distance_bound(cfg)));
        }
    }
    // Scheme B, full tag register.
    if (n <= 3) {
        const auto k = schemes::scheme_b_key_bits_for(n, eps);
        const auto cfg = schemes::make_scheme_b(n, k, eps);
        const double delta = smallbias::certify_family_bias(schemes::scheme_b_family(cfg)).max_bias;
        const std::uint64_t tags = (std::uint64_t{1} << (2 * n)) - 1;
        const auto params = fmt::format("n={};k={};|I|={};delta={:.6g}", n, k, tags, delta);
        for (const auto &c : suite) {
            const auto cq = schemes::scheme_b_channel(cfg, c.rho);
            const double p = qcore::cq_purity(cq);
            const double pb =
                (1.0 / static_cast<double>(tags)) * (1.0 / dim) * (1.0 + delta * delta * dim * qcore::purity(c.rho));
            report.rows.push_back(make_row("B", params, c.label, p, pb, cq.total_dim(),
                                           qcore::trace_distance_to_uniform(cq),
                                           schemes::scheme_b_distance_bound(cfg, delta)));
        }
    }
    const auto d = schemes::smallest_odd_prime_at_least(dim);
    const auto qsuite = qudit_suite(d, spec.seed, spec.random_states);
    const auto uniform_d = DensityMatrix::maximally_mixed(d);
    // Scheme C core channel; its purity bound gives distance <= sqrt(Tr rho^2).
    {
        const auto params = fmt::format("d={}", d);
        for (const auto &c : qsuite) {
            const auto out = schemes::scheme_c_core_channel(d, c.rho);
            const double pb = schemes::scheme_c_core_purity_bound(d, qcore::purity(c.rho));
            report.rows.push_back(make_row("C-core", params, c.label, qcore::purity(out), pb, d,
                                           qcore::trace_distance(out, uniform_d),
                                           qcore::fact_trace2_epsilon(pb, d)));
        }
    }
    // Scheme C composed with a certified phase set.
    {
        const auto m = schemes::bits_for_dimension(d);
        const auto f = schemes::aghp_degree_for(m, eps);
        const auto cfg = schemes::make_scheme_c(n, smallbias::aghp_set(m, f), eps);
        const double delta = cfg.certified_bias;
        const auto params = fmt::format("d={};m={};f={};|B|={};delta={:.6g}", d, m, f, cfg.set.size(), delta);
        for (const auto &c : qsuite) {
            const auto out = schemes::scheme_c_channel(cfg, c.rho);
            const double pb = (1.0 + delta * delta * off_diagonal_mass(c.rho)) / static_cast<double>(d);
            report.rows.push_back(make_row("C", params, c.label, qcore::purity(out), pb, d,
                                           qcore::trace_distance(out, uniform_d), delta));
        }
    }
    return report;
}

namespace {

std::string header_line(const Report &r) {
    return fmt::format("qpad verify seed={} prng=mt19937_64 n={} epsilon={} random_states={}", r.spec.seed, r.spec.n,
                       formats::format_real(r.spec.epsilon), r.spec.random_states);
}

constexpr const char *kSchemeCNote =
    "note: scheme C averages a = 0..d-1 with weight 1/d and the phase stage with weight 1/|B|";

constexpr const char *kColumns[] = {"scheme",   "params", "state", "purity", "purity_bound",
                                    "fact1_eps", "distance", "bound", "margin", "status"};

}  // namespace

void write_report_table(std::ostream &out, const Report &report) {
    out << "# " << header_line(report) << '\n';
    out << "# " << kSchemeCNote << '\n';
    out << fmt::format("{:<7} {:<36} {:<12} {:>12} {:>12} {:>12} {:>12} {:>12} {:>12} {}\n", kColumns[0], kColumns[1],
                       kColumns[2], kColumns[3], kColumns[4], kColumns[5], kColumns[6], kColumns[7], kColumns[8],
                       kColumns[9]);
    for (const auto &r : report.rows) {
        out << fmt::format("{:<7} {:<36} {:<12} {:>12.5e} {:>12.5e} {:>12.5e} {:>12.5e} {:>12.5e} {:>12.5e} {}\n",
                           r.scheme, r.params, r.state, r.purity, r.purity_bound, r.fact1_eps, r.distance, r.bound,
                           r.margin, r.pass ? "PASS" : "FAIL");
    }
    out << fmt::format("# rows={} failures={}\n", report.rows.size(), report.failures());
}

void write_report_csv(std::ostream &out, const Report &report) {
    out << "# " << header_line(report) << '\n';
    out << "# " << kSchemeCNote << '\n';
    for (std::size_t i = 0; i < std::size(kColumns); ++i) out << (i ? "," : "") << kColumns[i];
    out << '\n';
    const auto real = formats::format_real;
    for (const auto &r : report.rows) {
        out << r.scheme << ',' << r.params << ',' << r.state << ',' << real(r.purity) << ',' << real(r.purity_bound)
            << ',' << real(r.fact1_eps) << ',' << real(r.distance) << ',' << real(r.bound) << ',' << real(r.margin)
            << ',' << (r.pass ? "PASS" : "FAIL") << '\n';
    }
}

std::vector<ReportRow> parse_report_csv(std::istream &in) {
    std::vector<ReportRow> rows;
    std::string line;
    bool seen_columns = false;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::vector<std::string> cells;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) cells.push_back(cell);
        if (cells.size() != std::size(kColumns)) {
            throw std::invalid_argument(fmt::format("report csv: expected {} cells in '{}'", std::size(kColumns), line));
        }
        if (!seen_columns) {
            if (cells[0] != "scheme") throw std::invalid_argument("report csv: missing column header");
            seen_columns = true;
            continue;
        }
        auto num = [](const std::string &s) {
            std::size_t used = 0;
            const double v = std::stod(s, &used);
            if (used != s.size()) throw std::invalid_argument(fmt::format("report csv: bad number '{}'", s));
            return v;
        };
        if (cells[9] != "PASS" && cells[9] != "FAIL") throw std::invalid_argument("report csv: bad status");
        rows.push_back({cells[0], cells[1], cells[2], num(cells[3]), num(cells[4]), num(cells[5]), num(cells[6]),
                        num(cells[7]), num(cells[8]), cells[9] == "PASS"});
    }
    return rows;
}

}  // namespace qpad::verify
