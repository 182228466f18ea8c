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

#include <cmath>

#include "oracles.hpp"
#include "qpad/errors.hpp"
#include "qpad/pauli.hpp"
#include "qpad/schemes.hpp"

using namespace qpad::schemes;
using qpad::Rng;
using qpad::qcore::Complex;
using qpad::qcore::ComplexMatrix;
using qpad::qcore::DensityMatrix;
using qpad::qcore::purity;
using qpad::qcore::random_mixed_density;
using qpad::qcore::random_pure_density;
using qpad::qcore::trace_distance;
namespace sb = qpad::smallbias;

namespace {

double off_diag_mass(const ComplexMatrix &m) {
    double s = 0;
    for (std::size_t i = 0; i < m.dim(); ++i)
        for (std::size_t j = 0; j < m.dim(); ++j)
            if (i != j) s += std::norm(m(i, j));
    return s;
}

DensityMatrix mix(double p, const DensityMatrix &a, const DensityMatrix &b) {
    return DensityMatrix::trusted(a.matrix() * Complex{p, 0.0} + b.matrix() * Complex{1.0 - p, 0.0});
}

}  // namespace

TEST_CASE("key point split") {
    CHECK(split_key_point(0b1101, 2) == std::pair<std::uint64_t, std::uint64_t>{0b01, 0b11});
    CHECK(split_key_point(0b100000, 3) == std::pair<std::uint64_t, std::uint64_t>{0, 0b100});
}

TEST_CASE("scheme A basics") {
    const sb::SmallBiasSet zero(4, {0}, 1.0, sb::Construction::ExplicitList);
    const auto cfg0 = make_scheme_a(2, zero, 0.5);
    CHECK_FALSE(cfg0.secure);
    const auto rho = random_pure_density(4, 1);
    CHECK(scheme_a_channel(cfg0, rho) == rho);
    CHECK(scheme_a_encrypt(cfg0, {0}, rho) == rho);

    const auto full = make_scheme_a(1, sb::full_space_set(2), 0.5);
    CHECK(full.secure);
    CHECK(full.certified_bias == 0.0);
    for (std::uint64_t s = 0; s < 10; ++s) {
        const auto out = scheme_a_channel(full, random_mixed_density(2, 1 + s % 2, s));
        CHECK(oracle::max_diff(out.matrix(), DensityMatrix::maximally_mixed(2).matrix()) < 1e-15);
    }
    CHECK_THROWS_AS(make_scheme_a(2, sb::full_space_set(3), 0.5), std::invalid_argument);
    CHECK_THROWS_AS(scheme_a_encrypt(full, {4}, DensityMatrix::maximally_mixed(2)), std::out_of_range);
    CHECK_THROWS_AS(scheme_a_encrypt(full, {0}, DensityMatrix::maximally_mixed(4)), std::invalid_argument);
}

TEST_CASE("scheme A security flags") {
    // n = 2: strict needs delta <= eps/2, the relaxed mode delta <= eps/sqrt(2).
    const auto set = sb::aghp_set(4, 3);  // certified bias <= 3/8
    const auto cfg = make_scheme_a(2, set, 0.6);
    const double delta = cfg.certified_bias;
    CHECK(cfg.secure == (delta <= 0.3));
    CHECK(cfg.secure_relaxed == (delta <= std::sqrt(2.0) * 0.3));
    CHECK(is_secure(cfg, BoundMode::Strict) == cfg.secure);
    CHECK(is_secure(cfg, BoundMode::Relaxed) == cfg.secure_relaxed);
}

TEST_CASE("scheme A channel equals the dense average and meets its bounds") {
    for (unsigned n = 1; n <= 3; ++n) {
        const auto cfg = make_scheme_a(n, sb::aghp_set(2 * n, n + 1), 0.5);
        const auto uniform = DensityMatrix::maximally_mixed(std::size_t{1} << n);
        for (std::uint64_t s = 0; s < 5; ++s) {
            const auto rho = random_pure_density(std::size_t{1} << n, s);
            const auto out = scheme_a_channel(cfg, rho);
            REQUIRE(oracle::max_diff(out.matrix(), oracle::scheme_a_channel(n, cfg.set, rho.matrix())) < 1e-12);
            REQUIRE(purity(out) <= scheme_a_purity_bound(cfg, purity(rho)) + 1e-10);
            REQUIRE(trace_distance(out, uniform) <= scheme_a_distance_bound(cfg) + 1e-8);
            REQUIRE(trace_distance(out, uniform) <=
                    qpad::qcore::fact_trace2_epsilon(purity(out), uniform.dim()) + 1e-8);
        }
    }
}

TEST_CASE("scheme A: (I + Z0)/4 keeps exactly the bias at (e1 || 0)") {
    const unsigned n = 2;
    const auto set = sb::aghp_set(4, 2);
    const auto cfg = make_scheme_a(n, set, 0.5);
    const auto z0 = qpad::pauli::pauli_dense(qpad::pauli::PauliOp({2, 0}, {2, 1}));
    const auto rho = DensityMatrix::from_matrix((ComplexMatrix::identity(4) + z0) * Complex{0.25, 0.0});
    const auto out = scheme_a_channel(cfg, rho);
    const auto spectrum = sb::bias_spectrum(set);
    // v = e1 sits in the low half of the bias argument.
    CHECK(std::abs(qpad::pauli::pauli_trace(out, 0, 1)) ==
          doctest::Approx(spectrum[1] * std::abs(qpad::pauli::pauli_trace(rho, 0, 1))).epsilon(1e-12));
}

TEST_CASE("aghp degree helper") {
    CHECK(aghp_degree_for(4, 0.25) == 4);  // 3/16 <= 1/4 < 3/8
    CHECK(aghp_degree_for(1, 0.1) == 1);
    CHECK(aghp_degree_for(16, 1e-9) == 13);
}

TEST_CASE("scheme B basics") {
    CHECK(scheme_b_key_bits_for(2, 0.5) == 4);
    CHECK(scheme_b_key_bits_for(3, 0.25) == 6);  // 3 + 4 = 7 clamped to 2n
    CHECK(scheme_b_key_bits_for(4, 0.5) == 6);
    CHECK(scheme_b_key_bits_for(5, 1.0) == 5);

    const auto cfg = make_scheme_b(2, 2, 0.5);
    CHECK(cfg.field.degree() == 4);
    CHECK(cfg.family_bias == doctest::Approx(0.5));
    CHECK_FALSE(cfg.secure);  // 1/2 > 1/2 * 1/2
    CHECK(make_scheme_b(2, 4, 0.5).secure);
    CHECK_THROWS_AS(make_scheme_b(2, 5, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(make_scheme_b(2, 0, 0.5), std::invalid_argument);

    const auto rho = random_pure_density(4, 5);
    Rng rng(3);
    for (std::uint64_t alpha = 1; alpha < 16; ++alpha)
        CHECK(scheme_b_encrypt_with_tag(cfg, {0}, rho, alpha).state == rho);  // kappa = 0
    for (int t = 0; t < 100; ++t) CHECK_FALSE(scheme_b_encrypt(cfg, {3}, rho, rng).tag.is_zero());
    CHECK_THROWS_AS(scheme_b_encrypt_with_tag(cfg, {4}, rho, 1), std::invalid_argument);
    CHECK_THROWS_AS(scheme_b_encrypt_with_tag(cfg, {1}, rho, 0), std::invalid_argument);
}

TEST_CASE("scheme B encryption conjugates by the field product") {
    const auto cfg = make_scheme_b(2, 3, 0.5);
    const auto rho = random_mixed_density(4, 2, 1);
    for (std::uint64_t kappa = 0; kappa < 8; ++kappa)
        for (std::uint64_t alpha = 1; alpha < 16; ++alpha) {
            const auto prod = oracle::poly_mul_mod(alpha, kappa, 4, cfg.field.modulus_low());
            const auto ref = oracle::conj_by(oracle::dense_pauli(2, prod & 3, prod >> 2), rho.matrix());
            const auto ct = scheme_b_encrypt_with_tag(cfg, {kappa}, rho, alpha);
            REQUIRE(oracle::max_diff(ct.state.matrix(), ref) < 1e-12);
        }
}

TEST_CASE("scheme B channel") {
    for (unsigned n = 1; n <= 2; ++n)
        for (unsigned k = 1; k <= 2 * n; ++k) {
            const auto cfg = make_scheme_b(n, k, 0.5);
            const auto rho = random_pure_density(std::size_t{1} << n, 10 * n + k);
            const auto cq = scheme_b_channel(cfg, rho);
            REQUIRE(cq.branches().size() == (std::size_t{1} << (2 * n)) - 1);
            double mean = 0;
            for (const auto &b : cq.branches()) mean += purity(b.state);
            mean /= static_cast<double>(cq.branches().size());
            const double p = qpad::qcore::cq_purity(cq);
            REQUIRE(std::abs(p - mean / cq.branches().size()) < 1e-12);
            REQUIRE(std::abs(p - oracle::trace_of_square(cq.materialize())) < 1e-12);
            if (k == 2 * n) {
                for (const auto &b : cq.branches())
                    REQUIRE(oracle::max_diff(b.state.matrix(),
                                             DensityMatrix::maximally_mixed(std::size_t{1} << n).matrix()) < 1e-12);
            }
        }
}

TEST_CASE("scheme B meets its leakage target") {
    for (unsigned n : {2u, 3u})
        for (double eps : {0.5, 0.25}) {
            const auto cfg = make_scheme_b(n, scheme_b_key_bits_for(n, eps), eps);
            for (std::uint64_t s = 0; s < 3; ++s) {
                const auto cq = scheme_b_channel(cfg, random_pure_density(std::size_t{1} << n, s));
                REQUIRE(qpad::qcore::trace_distance_to_uniform(cq) <= eps + 1e-8);
            }
        }
    // A short key at n = 3 leaks but stays within 2^{-k/2} 2^{n/2}.
    const auto weak = make_scheme_b(3, 3, 0.5);
    const auto cq = scheme_b_channel(weak, DensityMatrix::basis_state(8, 0));
    CHECK(qpad::qcore::trace_distance_to_uniform(cq) <= scheme_b_distance_bound(weak, weak.family_bias) + 1e-8);
}

TEST_CASE("scheme B sampled channel") {
    const auto cfg = make_scheme_b(4, 5, 0.5);
    const auto rho = random_pure_density(16, 2);
    const auto a = scheme_b_channel_sampled(cfg, rho, 20, 7);
    const auto b = scheme_b_channel_sampled(cfg, rho, 20, 7);
    REQUIRE(a.branches().size() == 20);
    for (std::size_t i = 0; i < 20; ++i) {
        CHECK(a.branches()[i].tag == b.branches()[i].tag);
        CHECK(a.branches()[i].tag != 0);
        CHECK(a.branches()[i].state == b.branches()[i].state);
    }
}

TEST_CASE("prime selection") {
    CHECK(smallest_odd_prime_at_least(2) == 3);
    CHECK(smallest_odd_prime_at_least(4) == 5);
    CHECK(smallest_odd_prime_at_least(8) == 11);
    CHECK(smallest_odd_prime_at_least(16) == 17);
    CHECK(smallest_odd_prime_at_least(32) == 37);
    CHECK(bits_for_dimension(3) == 2);
    CHECK(bits_for_dimension(5) == 3);
    CHECK(bits_for_dimension(17) == 5);
}

TEST_CASE("scheme C core channel") {
    for (std::uint64_t d : {3, 5}) {
        // diagonal inputs go to I/d
        ComplexMatrix dm(d);
        for (std::size_t i = 0; i < d; ++i) dm(i, i) = (i + 1.0) / (d * (d + 1) / 2.0);
        const auto out = scheme_c_core_channel(d, DensityMatrix::from_matrix(dm));
        CHECK(oracle::max_diff(out.matrix(), DensityMatrix::maximally_mixed(d).matrix()) < 1e-12);
        for (std::uint64_t s = 0; s < 10; ++s) {
            const auto rho = random_pure_density(d, s);
            const auto e = scheme_c_core_channel(d, rho);
            REQUIRE(oracle::max_diff(e.matrix(), oracle::qudit_core_channel(d, rho.matrix())) < 1e-12);
            REQUIRE(purity(e) <= scheme_c_core_purity_bound(d, purity(rho)) + 1e-10);
            REQUIRE(std::abs(purity(e) - (1.0 + off_diag_mass(rho.matrix())) / d) < 1e-10);
        }
    }
    std::vector<Complex> amp(3, Complex{1.0, 0.0});
    CHECK(purity(scheme_c_core_channel(3, DensityMatrix::pure(amp))) == doctest::Approx(5.0 / 9.0).epsilon(1e-14));
    CHECK_THROWS_AS(scheme_c_core_channel(4, DensityMatrix::maximally_mixed(4)), std::invalid_argument);
    CHECK_THROWS_AS(scheme_c_core_channel(5, DensityMatrix::maximally_mixed(3)), std::invalid_argument);
}

TEST_CASE("scheme C phase stage shrinks off-diagonals by the exact bias") {
    const auto set = sb::aghp_set(3, 2);
    const auto cfg = make_scheme_c(2, set, 0.5);
    REQUIRE(cfg.d == 5);
    REQUIRE(cfg.m == 3);
    const auto spectrum = sb::bias_spectrum(set);
    const auto rho = random_pure_density(5, 4);
    const auto out = scheme_c_phase_channel(cfg, rho);
    for (std::size_t x = 0; x < 5; ++x)
        for (std::size_t y = 0; y < 5; ++y) {
            REQUIRE(std::abs(std::abs(out(x, y)) - spectrum[x ^ y] * std::abs(rho(x, y))) < 1e-12);
            if (x != y) REQUIRE(std::abs(out(x, y)) <= cfg.certified_bias * std::abs(rho(x, y)) + 1e-10);
        }
}

TEST_CASE("scheme C with a full phase set outputs I/d") {
    const auto cfg = make_scheme_c(2, sb::full_space_set(3), 0.5);
    CHECK(cfg.secure);
    for (std::uint64_t s = 0; s < 5; ++s) {
        const auto out = scheme_c_channel(cfg, random_pure_density(5, s));
        CHECK(oracle::max_diff(out.matrix(), DensityMatrix::maximally_mixed(5).matrix()) < 1e-12);
    }
}

TEST_CASE("scheme C composed channel") {
    for (std::uint64_t d : {5, 11, 17}) {
        const auto m = bits_for_dimension(d);
        const auto cfg = make_scheme_c_for_dimension(d, sb::aghp_set(m, m), 0.5);
        const auto uniform = DensityMatrix::maximally_mixed(d);
        for (std::uint64_t s = 0; s < 5; ++s) {
            const auto rho = random_pure_density(d, s);
            const auto out = scheme_c_channel(cfg, rho);
            REQUIRE(trace_distance(out, uniform) <= cfg.certified_bias + 1e-6);
        }
    }
    CHECK(scheme_c_key_bits(make_scheme_c(2, sb::aghp_set(3, 2), 0.5)) == 3 + 4);
}

TEST_CASE("embedding") {
    const auto rho = random_mixed_density(4, 2, 3);
    const auto e = embed_qubits(rho, 5);
    CHECK(e.dim() == 5);
    CHECK(purity(e) == doctest::Approx(purity(rho)).epsilon(1e-15));
    CHECK(unembed(e, 2) == rho);
    CHECK_THROWS_AS(unembed(DensityMatrix::maximally_mixed(5), 2), qpad::InvalidState);
    CHECK_THROWS_AS(embed_qubits(rho, 3), std::invalid_argument);
}

TEST_CASE("decryption inverts encryption") {
    Rng rng(99);
    for (unsigned n = 1; n <= 4; ++n) {
        const auto dim = std::size_t{1} << n;
        const auto rho = random_mixed_density(dim, 2, n);
        const auto a = make_scheme_a(n, sb::aghp_set(2 * n, n + 1), 0.5);
        for (int t = 0; t < 20; ++t) {
            const SchemeAKey key{rng.below(a.set.size())};
            REQUIRE(scheme_a_decrypt(a, key, scheme_a_encrypt(a, key, rho)).matrix().max_abs_diff(rho.matrix()) <= 1e-14);
        }
        const auto b = make_scheme_b(n, n, 0.5);
        for (int t = 0; t < 20; ++t) {
            const SchemeBKey key{rng.below(std::uint64_t{1} << n)};
            REQUIRE(scheme_b_decrypt(b, key, scheme_b_encrypt(b, key, rho, rng)).matrix().max_abs_diff(rho.matrix()) <=
                    1e-14);
        }
        const auto c = make_scheme_c(n, sb::aghp_set(bits_for_dimension(smallest_odd_prime_at_least(dim)), 2), 0.5);
        for (int t = 0; t < 20; ++t) {
            const SchemeCKey key{rng.below(c.d), rng.below(c.set.size())};
            const auto ct = scheme_c_encrypt(c, key, embed_qubits(rho, c.d));
            REQUIRE(unembed(scheme_c_decrypt(c, key, ct), n).matrix().max_abs_diff(rho.matrix()) <= 1e-12);
        }
    }
    const auto c = make_scheme_c(2, sb::aghp_set(3, 2), 0.5);
    const auto r5 = random_pure_density(5, 1);
    CHECK(scheme_c_encrypt(c, {0, 0}, r5) == r5);  // point 0 of an AGHP set is 0
}

TEST_CASE("channels are linear and unital") {
    const auto a = make_scheme_a(2, sb::aghp_set(4, 2), 0.5);
    const auto b = make_scheme_b(2, 2, 0.5);
    const auto c = make_scheme_c(2, sb::aghp_set(3, 2), 0.5);
    const auto r1 = random_pure_density(4, 1), r2 = random_mixed_density(4, 2, 2);
    const auto q1 = random_pure_density(5, 3), q2 = random_mixed_density(5, 2, 4);
    const double p = 0.3;

    auto lin = [&](auto channel, const DensityMatrix &x, const DensityMatrix &y) {
        const auto lhs = channel(mix(p, x, y));
        const auto rhs = mix(p, channel(x), channel(y));
        return lhs.matrix().max_abs_diff(rhs.matrix());
    };
    CHECK(lin([&](const DensityMatrix &r) { return scheme_a_channel(a, r); }, r1, r2) < 1e-12);
    CHECK(lin([&](const DensityMatrix &r) { return scheme_c_channel(c, r); }, q1, q2) < 1e-12);
    CHECK(lin([&](const DensityMatrix &r) { return scheme_b_branch(b, r, 5); }, r1, r2) < 1e-12);

    CHECK(scheme_a_channel(a, DensityMatrix::maximally_mixed(4)).matrix().max_abs_diff(
              DensityMatrix::maximally_mixed(4).matrix()) < 1e-12);
    CHECK(scheme_c_channel(c, DensityMatrix::maximally_mixed(5)).matrix().max_abs_diff(
              DensityMatrix::maximally_mixed(5).matrix()) < 1e-12);
    const auto cq = scheme_b_channel(b, DensityMatrix::maximally_mixed(4));
    for (const auto &br : cq.branches())
        CHECK(br.state.matrix().max_abs_diff(DensityMatrix::maximally_mixed(4).matrix()) < 1e-12);
}

TEST_CASE("key lengths") {
    const auto r = key_length_row(128, std::pow(2.0, -10));
    CHECK(r.scheme_a == 128 + 14 + 20);
    CHECK(r.scheme_b == 128 + 20);
    CHECK(r.scheme_c_aghp == 162);
    CHECK(r.scheme_c_abnnr == 128 + 7 + 30);
    CHECK(r.scheme_c == 162);
    CHECK_FALSE(r.abnnr_smaller);
    CHECK(key_length_row(64, 1.0).scheme_b == 64);
    CHECK(key_length_row(64, 0.5).abnnr_smaller);
    CHECK_THROWS_AS(key_length_row(0, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(key_length_row(4, 0.0), std::invalid_argument);
}

TEST_CASE("work limits name the parameter to shrink") {
    try {
        make_scheme_b(13, 4, 0.5);
        FAIL("expected an exception");
    } catch (const std::exception &e) {
        CHECK(std::string(e.what()).find("n") != std::string::npos);
    }
    const auto cfg = make_scheme_b(6, 12, 0.5);
    CHECK_THROWS_AS(scheme_b_channel(cfg, DensityMatrix::maximally_mixed(64)), qpad::ResourceLimit);
}
