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

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "oracles.hpp"
#include "qpad/errors.hpp"
#include "qpad/qcore.hpp"
#include "qpad/random.hpp"

using namespace qpad::qcore;

namespace {

ComplexMatrix diag(std::vector<double> v) {
    ComplexMatrix m(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) m(i, i) = v[i];
    return m;
}

ComplexMatrix random_hermitian(std::size_t d, qpad::Rng &rng) {
    ComplexMatrix m(d);
    for (std::size_t i = 0; i < d; ++i) {
        m(i, i) = rng.normal();
        for (std::size_t j = i + 1; j < d; ++j) {
            m(i, j) = Complex{rng.normal(), rng.normal()};
            m(j, i) = std::conj(m(i, j));
        }
    }
    return m;
}

}  // namespace

TEST_CASE("density matrix validation") {
    CHECK_THROWS_AS(DensityMatrix::from_matrix(diag({0.5, 0.4})), qpad::InvalidState);
    CHECK_THROWS_AS(DensityMatrix::from_matrix(diag({1.5, -0.5})), qpad::InvalidState);
    ComplexMatrix nh = diag({0.5, 0.5});
    nh(0, 1) = 0.1;
    CHECK_THROWS_AS(DensityMatrix::from_matrix(nh), qpad::InvalidState);
    CHECK_THROWS_AS(ComplexMatrix(2, {1.0, NAN, 0.0, 0.0}), std::invalid_argument);
    CHECK_THROWS_AS(DensityMatrix::basis_state(2, 2), std::invalid_argument);
    CHECK_NOTHROW(DensityMatrix::from_matrix(diag({1.0 + 5e-11, -5e-11})));
}

TEST_CASE("purity and Renyi entropy") {
    CHECK(purity(DensityMatrix::basis_state(4, 2)) == 1.0);
    CHECK(purity(DensityMatrix::maximally_mixed(8)) == doctest::Approx(1.0 / 8));
    CHECK(purity(DensityMatrix::from_matrix(diag({0.75, 0.25}))) == doctest::Approx(10.0 / 16));
    CHECK(renyi2(DensityMatrix::maximally_mixed(2)) == doctest::Approx(1.0));
    CHECK(renyi2(DensityMatrix::basis_state(2, 0)) == doctest::Approx(0.0));
    CHECK(renyi2(DensityMatrix::maximally_mixed(16)) == doctest::Approx(4.0));
}

TEST_CASE("cq purity") {
    const auto rho = random_mixed_density(3, 2, 9);
    CHECK(cq_purity(ClassicalQuantumState({{1.0, 0, rho}})) == doctest::Approx(purity(rho)));

    std::vector<Branch> pure;
    for (std::uint64_t i = 0; i < 5; ++i) pure.push_back({0.2, i, random_pure_density(4, i)});
    CHECK(cq_purity(ClassicalQuantumState(pure)) == doctest::Approx(0.2));

    const ClassicalQuantumState two({{0.5, 0, DensityMatrix::maximally_mixed(2)}, {0.5, 1, DensityMatrix::basis_state(2, 0)}});
    CHECK(cq_purity(two) == doctest::Approx(3.0 / 8));
    CHECK(oracle::trace_of_square(two.materialize()) == doctest::Approx(3.0 / 8));

    CHECK_THROWS_AS(ClassicalQuantumState({{0.5, 0, rho}, {0.4, 1, rho}}), qpad::InvalidState);
    CHECK_THROWS_AS(ClassicalQuantumState({{0.5, 0, rho}, {0.5, 0, rho}}), qpad::InvalidState);
    CHECK_THROWS_AS(ClassicalQuantumState({{0.5, 0, rho}, {0.5, 1, DensityMatrix::maximally_mixed(2)}}),
                    qpad::InvalidState);
}

TEST_CASE("cq purity equals the materialized matrix") {
    qpad::Rng rng(21);
    for (std::size_t branches = 1; branches <= 8; ++branches)
        for (std::size_t d = 1; d <= 8; ++d) {
            std::vector<double> w(branches);
            for (auto &x : w) x = 0.1 + rng.uniform();
            const double total = std::accumulate(w.begin(), w.end(), 0.0);
            std::vector<Branch> bs;
            for (std::size_t i = 0; i < branches; ++i)
                bs.push_back({w[i] / total, i, random_mixed_density(d, 1 + i % 3, rng.next_u64())});
            const ClassicalQuantumState s(bs);
            REQUIRE(cq_purity(s) == doctest::Approx(oracle::trace_of_square(s.materialize())).epsilon(1e-12));
        }
}

TEST_CASE("hermitian eigenvalues") {
    const auto e = hermitian_eigenvalues(diag({3.0, -1.0, 2.0}));
    CHECK(e == std::vector<double>{-1.0, 2.0, 3.0});
    ComplexMatrix x(2);
    x(0, 1) = x(1, 0) = 1.0;
    const auto ex = hermitian_eigenvalues(x);
    CHECK(ex[0] == doctest::Approx(-1.0));
    CHECK(ex[1] == doctest::Approx(1.0));
    ComplexMatrix bad(2);
    bad(0, 1) = 1.0;
    CHECK_THROWS_AS(hermitian_eigenvalues(bad), std::invalid_argument);

    qpad::Rng rng(4);
    for (int t = 0; t < 50; ++t) {
        const auto m = random_hermitian(3, rng);
        const auto ev = hermitian_eigenvalues(m);
        double s1 = 0, s2 = 0;
        for (auto v : ev) s1 += v, s2 += v * v;
        REQUIRE(std::abs(s1 - m.trace().real()) < 1e-9);
        REQUIRE(std::abs(s2 - oracle::trace_of_square(m)) < 1e-9);
        REQUIRE(std::is_sorted(ev.begin(), ev.end()));
    }
}

TEST_CASE("eigenvalues match characteristic polynomial roots for d <= 4") {
    qpad::Rng rng(8);
    for (std::size_t d = 1; d <= 4; ++d)
        for (int t = 0; t < 40; ++t) {
            const auto m = random_hermitian(d, rng);
            auto roots = oracle::poly_roots(oracle::char_poly(m));
            std::vector<double> re;
            for (auto r : roots) re.push_back(r.real());
            std::sort(re.begin(), re.end());
            const auto ev = hermitian_eigenvalues(m);
            for (std::size_t i = 0; i < d; ++i) REQUIRE(std::abs(ev[i] - re[i]) < 1e-7);
        }
}

TEST_CASE("eigensolver handles larger and degenerate inputs") {
    qpad::Rng rng(12);
    const auto m = random_hermitian(64, rng);
    const auto ev = hermitian_eigenvalues(m);
    double s2 = 0;
    for (auto v : ev) s2 += v * v;
    CHECK(s2 == doctest::Approx(oracle::trace_of_square(m)).epsilon(1e-10));
    const auto id = hermitian_eigenvalues(ComplexMatrix::identity(16));
    for (auto v : id) CHECK(v == 1.0);
}

TEST_CASE("trace distance") {
    const auto r = random_mixed_density(4, 2, 3);
    CHECK(trace_distance(r, r) == doctest::Approx(0.0));
    CHECK(trace_distance(DensityMatrix::basis_state(2, 0), DensityMatrix::basis_state(2, 1)) == doctest::Approx(2.0));
    CHECK(trace_distance(DensityMatrix::basis_state(2, 0), DensityMatrix::maximally_mixed(2)) == doctest::Approx(1.0));
    CHECK_THROWS_AS(trace_distance(r, DensityMatrix::maximally_mixed(2)), std::invalid_argument);

    for (std::uint64_t s = 0; s < 30; ++s) {
        const auto a = random_mixed_density(3, 2, 3 * s), b = random_pure_density(3, 3 * s + 1),
                   c = random_mixed_density(3, 3, 3 * s + 2);
        const double ab = trace_distance(a, b), bc = trace_distance(b, c), ac = trace_distance(a, c);
        REQUIRE(ac <= ab + bc + 1e-9);
        REQUIRE(ab == doctest::Approx(trace_distance(b, a)).epsilon(1e-12));
        REQUIRE(ab <= 2.0 + 1e-12);
        REQUIRE(std::abs(ab - oracle::trace_distance(a.matrix(), b.matrix())) < 1e-7);
    }
}

TEST_CASE("distinguishing advantage") {
    const auto r = random_pure_density(2, 1);
    CHECK(distinguish_advantage(r, r) == doctest::Approx(0.5));
    CHECK(distinguish_advantage(DensityMatrix::basis_state(2, 0), DensityMatrix::basis_state(2, 1)) ==
          doctest::Approx(1.0));
    CHECK(distinguish_advantage(DensityMatrix::basis_state(2, 0), DensityMatrix::maximally_mixed(2)) ==
          doctest::Approx(0.75));
}

TEST_CASE("Fact 1 estimate") {
    CHECK(fact_trace2_epsilon(1.0 / 4, 4) == 0.0);
    CHECK(fact_trace2_epsilon(1.0, 2) == doctest::Approx(1.0));
    CHECK(fact_trace2_epsilon(1.01 / 4, 4) == doctest::Approx(0.1));
    for (std::uint64_t s = 0; s < 100; ++s) {
        const std::size_t d = 2 + s % 7;
        const auto r = random_mixed_density(d, 1 + s % 4, s);
        REQUIRE(trace_distance(r, DensityMatrix::maximally_mixed(d)) <= fact_trace2_epsilon(purity(r), d) + 1e-8);
    }
}

TEST_CASE("random states") {
    for (std::uint64_t s = 0; s < 20; ++s) {
        const auto p = random_pure_density(8, s);
        CHECK(purity(p) == doctest::Approx(1.0).epsilon(1e-10));
        CHECK_NOTHROW(DensityMatrix::from_matrix(p.matrix()));
    }
    CHECK(random_pure_density(5, 77) == random_pure_density(5, 77));
    CHECK_FALSE(random_pure_density(5, 77) == random_pure_density(5, 78));
    // A uniform mix of many random states approaches I/d.
    const double p8 = purity(random_mixed_density(4, 8, 1));
    const double p400 = purity(random_mixed_density(4, 400, 1));
    CHECK(p400 < p8);
    CHECK(p400 < 0.26);
    CHECK_NOTHROW(DensityMatrix::from_matrix(random_mixed_density(6, 3, 2).matrix()));
}
