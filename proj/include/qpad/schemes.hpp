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
#include <optional>
#include <string_view>
#include <utility>
#include <variant>

#include "qpad/gf2.hpp"
#include "qpad/qcore.hpp"
#include "qpad/random.hpp"
#include "qpad/smallbias.hpp"

// The three approximate encryption schemes.
//
//  A  length-preserving: key picks (a, b) from a small-bias set B over 2n
//     bits, ciphertext X^a Z^b rho Z^b X^a.
//  B  length-doubling: key kappa lies in K = span{1, x, .., x^{k-1}} of
//     GF(2^{2n}); encryption draws a public tag alpha != 0 and applies the
//     Pauli labelled by alpha * kappa.
//  C  length-preserving in prime dimension d: a random phase flip U_b with b
//     from a small-bias set over ceil(log2 d) bits, followed by X^a Z^{a^2}.
//
// Each scheme exposes encrypt/decrypt for a single key and the exact channel
// (the average over all keys), which is what an adversary holding no key sees.
//
// Key points of a 2n-bit set are split as a = low n bits, b = high n bits. The
// Pauli trace Tr(X^u Z^v rho) is then scaled by the bias of the set at the
// string with v in the low half and u in the high half.

namespace qpad::schemes {

using qcore::ClassicalQuantumState;
using qcore::DensityMatrix;

enum class SchemeKind { A, B, C };
char to_char(SchemeKind k);
SchemeKind scheme_from_char(char c);

/// Strict: bias <= eps 2^{-n/2}, which the purity argument needs for distance eps.
/// Relaxed: bias <= sqrt(2) eps 2^{-n/2}, which only yields sqrt(2) eps.
enum class BoundMode { Strict, Relaxed };

std::pair<std::uint64_t, std::uint64_t> split_key_point(std::uint64_t point, unsigned n);

// ---------------------------------------------------------------- Scheme A

struct SchemeAConfig {
    unsigned n;
    smallbias::SmallBiasSet set;
    double epsilon_target;
    double certified_bias;
    bool secure;                 // strict mode
    bool secure_relaxed;  // relaxed mode
};

/// Certifies the set; set.bits() must equal 2n.
SchemeAConfig make_scheme_a(unsigned n, smallbias::SmallBiasSet set, double epsilon_target);
bool is_secure(const SchemeAConfig &cfg, BoundMode mode);

struct SchemeAKey {
    std::uint64_t index;
};

DensityMatrix scheme_a_encrypt(const SchemeAConfig &cfg, SchemeAKey key, const DensityMatrix &rho);
DensityMatrix scheme_a_decrypt(const SchemeAConfig &cfg, SchemeAKey key, const DensityMatrix &ct);
DensityMatrix scheme_a_channel(const SchemeAConfig &cfg, const DensityMatrix &rho);

/// (1/2^n)(1 + delta^2 2^n Tr(rho^2)) with the certified delta.
double scheme_a_purity_bound(const SchemeAConfig &cfg, double input_purity);
/// delta 2^{n/2}.
double scheme_a_distance_bound(const SchemeAConfig &cfg);
/// Smallest AGHP field degree f with (n_out - 1)/2^f <= target, capped at 13.
unsigned aghp_degree_for(unsigned n_out, double target_bias);

// ---------------------------------------------------------------- Scheme B

struct SchemeBConfig {
    unsigned n;
    gf2::FieldSpec field;  // degree 2n
    unsigned k;
    double epsilon_target;
    double family_bias;  // 2^{-k/2}, an upper bound on the certified family bias
    bool secure;         // 2^{-k/2} <= eps 2^{-n/2}
};

/// 1 <= n <= 12, 1 <= k <= 2n.
SchemeBConfig make_scheme_b(unsigned n, unsigned k, double epsilon_target);
/// n + 2 ceil(log2(1/eps)), the key length meeting the leakage target, capped at 2n.
unsigned scheme_b_key_bits_for(unsigned n, double epsilon);

struct SchemeBKey {
    std::uint64_t kappa;  // element of K, i.e. < 2^k
};

struct SchemeBCiphertext {
    gf2::FieldElement tag;
    DensityMatrix state;
};

SchemeBCiphertext scheme_b_encrypt_with_tag(const SchemeBConfig &cfg, SchemeBKey key, const DensityMatrix &rho,
                                            std::uint64_t tag);
/// Draws the tag uniformly from the nonzero field elements.
SchemeBCiphertext scheme_b_encrypt(const SchemeBConfig &cfg, SchemeBKey key, const DensityMatrix &rho, Rng &rng);
DensityMatrix scheme_b_decrypt(const SchemeBConfig &cfg, SchemeBKey key, const SchemeBCiphertext &ct);

/// E_{kappa in K}[conjugation by alpha * kappa].
DensityMatrix scheme_b_branch(const SchemeBConfig &cfg, const DensityMatrix &rho, std::uint64_t alpha);
/// Every nonzero tag, uniform weights.
ClassicalQuantumState scheme_b_channel(const SchemeBConfig &cfg, const DensityMatrix &rho);
/// `tags` distinct nonzero tags drawn from seed, uniform weights over them.
ClassicalQuantumState scheme_b_channel_sampled(const SchemeBConfig &cfg, const DensityMatrix &rho,
                                               std::uint64_t tags, std::uint64_t seed);
smallbias::SetFamily scheme_b_family(const SchemeBConfig &cfg);
/// delta 2^{n/2} for a given family bias delta.
double scheme_b_distance_bound(const SchemeBConfig &cfg, double family_bias);

// ---------------------------------------------------------------- Scheme C

/// Smallest odd prime >= x.
std::uint64_t smallest_odd_prime_at_least(std::uint64_t x);
/// ceil(log2 d).
unsigned bits_for_dimension(std::uint64_t d);

struct SchemeCConfig {
    unsigned n;  // qubits embedded: 2^n <= d
    std::uint64_t d;
    unsigned m;  // ceil(log2 d)
    smallbias::SmallBiasSet set;
    double epsilon_target;
    double certified_bias;
    bool secure;  // certified_bias <= epsilon_target
};

/// d = smallest odd prime >= 2^n; set.bits() must equal ceil(log2 d).
SchemeCConfig make_scheme_c(unsigned n, smallbias::SmallBiasSet set, double epsilon_target);
/// Explicit odd prime d; n = floor(log2 d).
SchemeCConfig make_scheme_c_for_dimension(std::uint64_t d, smallbias::SmallBiasSet set, double epsilon_target);

struct SchemeCKey {
    std::uint64_t a;      // in Z_d
    std::uint64_t index;  // into the set
};

/// (1/d) sum_{a=0}^{d-1} X^a Z^{a^2} rho Z^{-a^2} X^{-a}; d must be an odd prime.
DensityMatrix scheme_c_core_channel(std::uint64_t d, const DensityMatrix &rho);
/// (1/|B|) sum_b U_b rho U_b.
DensityMatrix scheme_c_phase_channel(const SchemeCConfig &cfg, const DensityMatrix &rho);
/// Core channel after the phase channel.
DensityMatrix scheme_c_channel(const SchemeCConfig &cfg, const DensityMatrix &rho);

DensityMatrix scheme_c_encrypt(const SchemeCConfig &cfg, SchemeCKey key, const DensityMatrix &rho_d);
DensityMatrix scheme_c_decrypt(const SchemeCConfig &cfg, SchemeCKey key, const DensityMatrix &ct);

/// (1/d)(1 + Tr(rho^2)).
double scheme_c_core_purity_bound(std::uint64_t d, double input_purity);
/// ceil(log2 d) + ceil(log2 |B|).
unsigned scheme_c_key_bits(const SchemeCConfig &cfg);

/// Zero-padding of a 2^n-dimensional state into dimension d >= 2^n.
DensityMatrix embed_qubits(const DensityMatrix &rho, std::uint64_t d);
/// Truncation to the first 2^n coordinates; throws InvalidState if more than
/// 1e-10 of the weight lies outside.
DensityMatrix unembed(const DensityMatrix &rho_d, unsigned n);

// ------------------------------------------------------------------ shared

using Key = std::variant<SchemeAKey, SchemeBKey, SchemeCKey>;

SchemeKind kind_of(const Key &key);

struct Ciphertext {
    SchemeKind kind;
    DensityMatrix state;
    std::optional<gf2::FieldElement> tag;  // scheme B only
};

// ------------------------------------------------------------- key lengths

/// Key-length formulas as functions of (n, eps), ceilinged, without the
/// unspecified additive constants.
struct KeyLengthRow {
    unsigned n;
    double epsilon;
    std::uint64_t scheme_a;        // n + 2 log n + 2 log(1/eps)
    std::uint64_t scheme_b;        // n + 2 log(1/eps)
    std::uint64_t scheme_c_aghp;   // n + 2 log n + 2 log(1/eps)
    std::uint64_t scheme_c_abnnr;  // n + log n + 3 log(1/eps); formula only, not constructed
    std::uint64_t scheme_c;        // the smaller of the two
    bool abnnr_smaller;            // strictly smaller (before ceilings)
};

KeyLengthRow key_length_row(unsigned n, double epsilon);

}  // namespace qpad::schemes
