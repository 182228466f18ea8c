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

#include "qpad/schemes.hpp"

#include <bit>
#include <cmath>
#include <set>
#include <stdexcept>

#include <fmt/format.h>

#include "qpad/errors.hpp"
#include "qpad/parallel.hpp"
#include "qpad/pauli.hpp"

namespace qpad::schemes {

using qcore::ComplexMatrix;

namespace {

constexpr std::uint64_t kMaxChannelWork = std::uint64_t{1} << 32;

void require_epsilon(double eps) {
    if (!(eps > 0.0) || !std::isfinite(eps)) {
        throw std::invalid_argument(fmt::format("epsilon target {} must be positive", eps));
    }
}

void require_dim(const DensityMatrix &rho, std::size_t d, const char *op) {
    if (rho.dim() != d) {
        throw std::invalid_argument(fmt::format("{}: state dimension {} but the scheme expects {}", op, rho.dim(), d));
    }
}

void require_work(std::uint64_t terms, std::uint64_t per_term, const char *op, const char *shrink) {
    if (per_term != 0 && terms > kMaxChannelWork / per_term) {
        throw ResourceLimit(fmt::format("{}: {} terms of {} entries is beyond desk scale; reduce {}", op, terms,
                                        per_term, shrink));
    }
}

double log2_ceil_safe(double x) { return std::ceil(x - 1e-9); }

}  // namespace

char to_char(SchemeKind k) {
    switch (k) {
    case SchemeKind::A: return 'A';
    case SchemeKind::B: return 'B';
    case SchemeKind::C: return 'C';
    }
    return '?';
}

SchemeKind scheme_from_char(char c) {
    switch (c) {
    case 'A': case 'a': return SchemeKind::A;
    case 'B': case 'b': return SchemeKind::B;
    case 'C': case 'c': return SchemeKind::C;
    default: throw std::invalid_argument(fmt::format("unknown scheme '{}'", c));
    }
}

std::pair<std::uint64_t, std::uint64_t> split_key_point(std::uint64_t point, unsigned n) {
    const auto mask = gf2::low_mask(n);
    return {point & mask, (point >> n) & mask};
}

// ---------------------------------------------------------------- Scheme A

SchemeAConfig make_scheme_a(unsigned n, smallbias::SmallBiasSet set, double epsilon_target) {
    if (n < 1 || n > 12) throw std::invalid_argument(fmt::format("scheme A: n = {} outside [1, 12]", n));
    if (set.bits() != 2 * n) {
        throw std::invalid_argument(fmt::format("scheme A: key set has {} bits, need {}", set.bits(), 2 * n));
    }
    require_epsilon(epsilon_target);
    const double delta = smallbias::certify_bias(set).max_bias;
    const double scale = std::pow(2.0, -0.5 * n);
    return {n,     std::move(set), epsilon_target, delta, delta <= epsilon_target * scale,
            delta <= std::sqrt(2.0) * epsilon_target * scale};
}

bool is_secure(const SchemeAConfig &cfg, BoundMode mode) {
    return mode == BoundMode::Strict ? cfg.secure : cfg.secure_relaxed;
}

DensityMatrix scheme_a_encrypt(const SchemeAConfig &cfg, SchemeAKey key, const DensityMatrix &rho) {
    require_dim(rho, std::size_t{1} << cfg.n, "scheme_a_encrypt");
    if (key.index >= cfg.set.size()) {
        throw std::out_of_range(fmt::format("scheme A key index {} >= |B| = {}", key.index, cfg.set.size()));
    }
    const auto [a, b] = split_key_point(cfg.set.points()[key.index], cfg.n);
    return pauli::conjugate_pauli_words(rho, a, b);
}

DensityMatrix scheme_a_decrypt(const SchemeAConfig &cfg, SchemeAKey key, const DensityMatrix &ct) {
    // (X^a Z^b)^{-1} = Z^b X^a equals X^a Z^b up to a sign, so the conjugation is its own inverse.
    return scheme_a_encrypt(cfg, key, ct);
}

DensityMatrix scheme_a_channel(const SchemeAConfig &cfg, const DensityMatrix &rho) {
    const std::size_t d = std::size_t{1} << cfg.n;
    require_dim(rho, d, "scheme_a_channel");
    require_work(cfg.set.size(), d * d, "scheme_a_channel", "the key set size");
    const auto points = cfg.set.points();
    const unsigned n = cfg.n;
    return DensityMatrix::trusted(average_terms(points.size(), [&](std::size_t i) {
        const auto [a, b] = split_key_point(points[i], n);
        return pauli::conjugate_pauli_words(rho, a, b).matrix();
    }));
}

double scheme_a_purity_bound(const SchemeAConfig &cfg, double input_purity) {
    const double dim = std::pow(2.0, cfg.n);
    return (1.0 + cfg.certified_bias * cfg.certified_bias * dim * input_purity) / dim;
}

double scheme_a_distance_bound(const SchemeAConfig &cfg) { return cfg.certified_bias * std::pow(2.0, 0.5 * cfg.n); }

unsigned aghp_degree_for(unsigned n_out, double target_bias) {
    for (unsigned f = 1; f < 13; ++f) {
        if ((n_out - 1) / std::pow(2.0, f) <= target_bias) return f;
    }
    return 13;
}

// ---------------------------------------------------------------- Scheme B

SchemeBConfig make_scheme_b(unsigned n, unsigned k, double epsilon_target) {
    if (n < 1 || n > 12) throw std::invalid_argument(fmt::format("scheme B: n = {} outside [1, 12]", n));
    if (k < 1 || k > 2 * n) throw std::invalid_argument(fmt::format("scheme B: k = {} outside [1, {}]", k, 2 * n));
    require_epsilon(epsilon_target);
    const double delta = std::pow(2.0, -0.5 * k);
    return {n, gf2::find_irreducible(2 * n), k, epsilon_target, delta,
            delta <= epsilon_target * std::pow(2.0, -0.5 * n)};
}

unsigned scheme_b_key_bits_for(unsigned n, double epsilon) {
    require_epsilon(epsilon);
    const double extra = 2.0 * log2_ceil_safe(std::log2(1.0 / epsilon));
    return static_cast<unsigned>(std::min<double>(2.0 * n, n + std::max(0.0, extra)));
}

namespace {

void require_kappa(const SchemeBConfig &cfg, SchemeBKey key) {
    if (key.kappa >> cfg.k) {
        throw std::invalid_argument(
            fmt::format("scheme B key 0x{:x} is not in the span of the first {} monomials", key.kappa, cfg.k));
    }
}

DensityMatrix conjugate_by_field_product(const SchemeBConfig &cfg, const DensityMatrix &rho, std::uint64_t alpha,
                                         std::uint64_t kappa) {
    const auto [a, b] = split_key_point(cfg.field.mul(alpha, kappa), cfg.n);
    return pauli::conjugate_pauli_words(rho, a, b);
}

}  // namespace

SchemeBCiphertext scheme_b_encrypt_with_tag(const SchemeBConfig &cfg, SchemeBKey key, const DensityMatrix &rho,
                                            std::uint64_t tag) {
    require_dim(rho, std::size_t{1} << cfg.n, "scheme_b_encrypt");
    require_kappa(cfg, key);
    if (tag == 0 || (tag & ~cfg.field.mask())) {
        throw std::invalid_argument(fmt::format("scheme B tag 0x{:x} must be a nonzero field element", tag));
    }
    return {gf2::FieldElement(cfg.field, tag), conjugate_by_field_product(cfg, rho, tag, key.kappa)};
}

SchemeBCiphertext scheme_b_encrypt(const SchemeBConfig &cfg, SchemeBKey key, const DensityMatrix &rho, Rng &rng) {
    const std::uint64_t tag = 1 + rng.below(cfg.field.order() - 1);
    return scheme_b_encrypt_with_tag(cfg, key, rho, tag);
}

DensityMatrix scheme_b_decrypt(const SchemeBConfig &cfg, SchemeBKey key, const SchemeBCiphertext &ct) {
    require_dim(ct.state, std::size_t{1} << cfg.n, "scheme_b_decrypt");
    require_kappa(cfg, key);
    if (ct.tag.spec() != cfg.field || ct.tag.is_zero()) {
        throw std::invalid_argument("scheme B ciphertext tag is zero or from another field");
    }
    return conjugate_by_field_product(cfg, ct.state, ct.tag.value(), key.kappa);
}

DensityMatrix scheme_b_branch(const SchemeBConfig &cfg, const DensityMatrix &rho, std::uint64_t alpha) {
    const std::size_t d = std::size_t{1} << cfg.n;
    require_dim(rho, d, "scheme_b_branch");
    const std::uint64_t keys = std::uint64_t{1} << cfg.k;
    return DensityMatrix::trusted(average_terms(keys, [&](std::size_t kappa) {
        return conjugate_by_field_product(cfg, rho, alpha, kappa).matrix();
    }));
}

namespace {
ClassicalQuantumState channel_over_tags(const SchemeBConfig &cfg, const DensityMatrix &rho,
                                        const std::vector<std::uint64_t> &tags) {
    const std::size_t d = std::size_t{1} << cfg.n;
    require_work(tags.size() << cfg.k, d * d, "scheme_b_channel", "n or k, or sample tags");
    const double p = 1.0 / static_cast<double>(tags.size());
    std::vector<qcore::Branch> branches;
    branches.reserve(tags.size());
    for (auto alpha : tags) branches.push_back({p, alpha, scheme_b_branch(cfg, rho, alpha)});
    return ClassicalQuantumState(std::move(branches));
}
}  // namespace

ClassicalQuantumState scheme_b_channel(const SchemeBConfig &cfg, const DensityMatrix &rho) {
    const std::uint64_t q = cfg.field.order();
    require_work(q << cfg.k, std::uint64_t{1} << (2 * cfg.n), "scheme_b_channel", "n or k, or sample tags");
    std::vector<std::uint64_t> tags(q - 1);
    for (std::uint64_t a = 1; a < q; ++a) tags[a - 1] = a;
    return channel_over_tags(cfg, rho, tags);
}

ClassicalQuantumState scheme_b_channel_sampled(const SchemeBConfig &cfg, const DensityMatrix &rho,
                                               std::uint64_t tags, std::uint64_t seed) {
    const std::uint64_t nonzero = cfg.field.order() - 1;
    if (tags == 0 || tags > nonzero) {
        throw std::invalid_argument(fmt::format("scheme_b_channel_sampled: {} tags outside [1, {}]", tags, nonzero));
    }
    Rng rng(seed);
    std::set<std::uint64_t> chosen;
    while (chosen.size() < tags) chosen.insert(1 + rng.below(nonzero));
    return channel_over_tags(cfg, rho, {chosen.begin(), chosen.end()});
}

smallbias::SetFamily scheme_b_family(const SchemeBConfig &cfg) { return smallbias::linear_family(2 * cfg.n, cfg.k); }

double scheme_b_distance_bound(const SchemeBConfig &cfg, double family_bias) {
    return family_bias * std::pow(2.0, 0.5 * cfg.n);
}

// ---------------------------------------------------------------- Scheme C

std::uint64_t smallest_odd_prime_at_least(std::uint64_t x) {
    std::uint64_t c = std::max<std::uint64_t>(x, 3);
    if (c % 2 == 0) ++c;
    while (!pauli::is_prime(c)) c += 2;
    return c;
}

unsigned bits_for_dimension(std::uint64_t d) {
    if (d <= 1) return 0;
    return static_cast<unsigned>(std::bit_width(d - 1));
}

SchemeCConfig make_scheme_c_for_dimension(std::uint64_t d, smallbias::SmallBiasSet set, double epsilon_target) {
    if (d < 3 || d % 2 == 0 || !pauli::is_prime(d)) {
        throw std::invalid_argument(fmt::format("scheme C: dimension {} is not an odd prime", d));
    }
    if (d > 4099) throw ResourceLimit(fmt::format("scheme C: dimension {} is beyond desk scale", d));
    require_epsilon(epsilon_target);
    const unsigned m = bits_for_dimension(d);
    if (set.bits() != m) {
        throw std::invalid_argument(fmt::format("scheme C: phase set has {} bits, need {}", set.bits(), m));
    }
    const unsigned n = static_cast<unsigned>(std::bit_width(d) - 1);
    const double delta = smallbias::certify_bias(set).max_bias;
    return {n, d, m, std::move(set), epsilon_target, delta, delta <= epsilon_target};
}

SchemeCConfig make_scheme_c(unsigned n, smallbias::SmallBiasSet set, double epsilon_target) {
    if (n < 1 || n > 11) throw std::invalid_argument(fmt::format("scheme C: n = {} outside [1, 11]", n));
    auto cfg = make_scheme_c_for_dimension(smallest_odd_prime_at_least(std::uint64_t{1} << n), std::move(set),
                                           epsilon_target);
    cfg.n = n;
    return cfg;
}

DensityMatrix scheme_c_core_channel(std::uint64_t d, const DensityMatrix &rho) {
    if (d < 3 || d % 2 == 0 || !pauli::is_prime(d)) {
        throw std::invalid_argument(fmt::format("scheme_c_core_channel: {} is not an odd prime", d));
    }
    require_dim(rho, d, "scheme_c_core_channel");
    return DensityMatrix::trusted(average_terms(d, [&](std::size_t a) {
        return pauli::conjugate_qudit(rho, a, (a * a) % d, d).matrix();
    }));
}

DensityMatrix scheme_c_phase_channel(const SchemeCConfig &cfg, const DensityMatrix &rho) {
    require_dim(rho, cfg.d, "scheme_c_phase_channel");
    require_work(cfg.set.size(), cfg.d * cfg.d, "scheme_c_phase_channel", "the phase set size");
    const auto points = cfg.set.points();
    return DensityMatrix::trusted(average_terms(points.size(), [&](std::size_t i) {
        return pauli::phase_op_ub(rho, gf2::BitString(cfg.m, points[i]), cfg.d).matrix();
    }));
}

DensityMatrix scheme_c_channel(const SchemeCConfig &cfg, const DensityMatrix &rho) {
    return scheme_c_core_channel(cfg.d, scheme_c_phase_channel(cfg, rho));
}

namespace {
void require_c_key(const SchemeCConfig &cfg, SchemeCKey key) {
    if (key.a >= cfg.d || key.index >= cfg.set.size()) {
        throw std::out_of_range(fmt::format("scheme C key (a={}, index={}) outside Z_{} x [0, {})", key.a, key.index,
                                            cfg.d, cfg.set.size()));
    }
}
}  // namespace

DensityMatrix scheme_c_encrypt(const SchemeCConfig &cfg, SchemeCKey key, const DensityMatrix &rho_d) {
    require_dim(rho_d, cfg.d, "scheme_c_encrypt");
    require_c_key(cfg, key);
    const auto phased = pauli::phase_op_ub(rho_d, cfg.set.point(key.index), cfg.d);
    return pauli::conjugate_qudit(phased, key.a, (key.a * key.a) % cfg.d, cfg.d);
}

DensityMatrix scheme_c_decrypt(const SchemeCConfig &cfg, SchemeCKey key, const DensityMatrix &ct) {
    require_dim(ct, cfg.d, "scheme_c_decrypt");
    require_c_key(cfg, key);
    const std::uint64_t d = cfg.d;
    // (X^a Z^{a^2})^dagger is X^{-a} Z^{-a^2} up to a global phase.
    const auto unshifted = pauli::conjugate_qudit(ct, (d - key.a) % d, (d - (key.a * key.a) % d) % d, d);
    return pauli::phase_op_ub(unshifted, cfg.set.point(key.index), d);
}

double scheme_c_core_purity_bound(std::uint64_t d, double input_purity) {
    return (1.0 + input_purity) / static_cast<double>(d);
}

unsigned scheme_c_key_bits(const SchemeCConfig &cfg) {
    return bits_for_dimension(cfg.d) + bits_for_dimension(cfg.set.size());
}

DensityMatrix embed_qubits(const DensityMatrix &rho, std::uint64_t d) {
    pauli::qubits_of(rho);
    if (d < rho.dim()) {
        throw std::invalid_argument(fmt::format("embed_qubits: dimension {} < {}", d, rho.dim()));
    }
    ComplexMatrix out(d);
    for (std::size_t r = 0; r < rho.dim(); ++r)
        for (std::size_t c = 0; c < rho.dim(); ++c) out(r, c) = rho(r, c);
    return DensityMatrix::trusted(std::move(out));
}

DensityMatrix unembed(const DensityMatrix &rho_d, unsigned n) {
    const std::size_t q = std::size_t{1} << n;
    if (q > rho_d.dim()) {
        throw std::invalid_argument(fmt::format("unembed: 2^{} exceeds dimension {}", n, rho_d.dim()));
    }
    double outside = 0.0;
    for (std::size_t i = q; i < rho_d.dim(); ++i) outside += std::abs(rho_d(i, i).real());
    double inside = 0.0;
    for (std::size_t i = 0; i < q; ++i) inside += rho_d(i, i).real();
    if (outside > 1e-10 || !(inside > 0.0) || 1.0 / inside > 1.0 + 1e-10) {
        throw InvalidState(fmt::format("unembed: {:.3e} of the weight lies outside the first {} coordinates",
                                       outside, q));
    }
    ComplexMatrix out(q);
    for (std::size_t r = 0; r < q; ++r)
        for (std::size_t c = 0; c < q; ++c) out(r, c) = rho_d(r, c) / inside;
    return DensityMatrix::trusted(std::move(out));
}

// ------------------------------------------------------------------ shared

SchemeKind kind_of(const Key &key) {
    if (std::holds_alternative<SchemeAKey>(key)) return SchemeKind::A;
    if (std::holds_alternative<SchemeBKey>(key)) return SchemeKind::B;
    return SchemeKind::C;
}

KeyLengthRow key_length_row(unsigned n, double epsilon) {
    if (n < 1) throw std::invalid_argument("key_length_row: n must be positive");
    if (!(epsilon > 0.0 && epsilon <= 1.0)) {
        throw std::invalid_argument(fmt::format("key_length_row: epsilon {} outside (0, 1]", epsilon));
    }
    const double log_n = std::log2(static_cast<double>(n));
    const double log_inv_eps = std::log2(1.0 / epsilon);
    const double aghp_extra = 2.0 * log_n + 2.0 * log_inv_eps;
    const double abnnr_extra = log_n + 3.0 * log_inv_eps;
    KeyLengthRow row{};
    row.n = n;
    row.epsilon = epsilon;
    row.scheme_a = n + static_cast<std::uint64_t>(log2_ceil_safe(aghp_extra));
    row.scheme_b = n + static_cast<std::uint64_t>(log2_ceil_safe(2.0 * log_inv_eps));
    row.scheme_c_aghp = row.scheme_a;
    row.scheme_c_abnnr = n + static_cast<std::uint64_t>(log2_ceil_safe(abnnr_extra));
    row.abnnr_smaller = abnnr_extra < aghp_extra;
    row.scheme_c = std::min(row.scheme_c_aghp, row.scheme_c_abnnr);
    return row;
}

}  // namespace qpad::schemes
