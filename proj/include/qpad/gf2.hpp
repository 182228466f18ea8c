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

#include <bit>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

// Binary-field arithmetic over GF(2^m), m <= 64, and bit-vector helpers.
//
// Convention throughout the library: bit i of a packed word is the
// coefficient of x^i (little-endian). A BitString of length m is therefore
// the same word as an element of GF(2^m), and basis index t of a 2^n
// dimensional register corresponds to the bits of t.

namespace qpad::gf2 {

inline constexpr unsigned kMaxBits = 64;

constexpr std::uint64_t low_mask(unsigned bits) {
    return bits >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << bits) - 1;
}

/// Parity of popcount(x & y).
constexpr bool dot_word(std::uint64_t x, std::uint64_t y) {
    return (std::popcount(x & y) & 1) != 0;
}

class BitString {
  public:
    /// Throws std::invalid_argument unless 1 <= length <= 64 and bits fit.
    BitString(unsigned length, std::uint64_t bits);

    static BitString zeros(unsigned length) { return BitString(length, 0); }

    unsigned size() const { return length_; }
    std::uint64_t word() const { return bits_; }
    bool operator[](unsigned i) const { return ((bits_ >> i) & 1) != 0; }

    /// Bits printed most significant first, e.g. x+x^2 over 3 bits is "110".
    std::string to_string() const;

    friend bool operator==(const BitString &, const BitString &) = default;

  private:
    unsigned length_;
    std::uint64_t bits_;
};

/// Returns XOR_i x_i y_i. Lengths must match.
bool dot(const BitString &x, const BitString &y);

/// Irreducible modulus x^m + (low bits) defining GF(2^m).
class FieldSpec {
  public:
    /// Validates that x^degree + low is irreducible. low holds the
    /// coefficients of x^0..x^{degree-1}.
    FieldSpec(unsigned degree, std::uint64_t low);

    unsigned degree() const { return degree_; }
    std::uint64_t modulus_low() const { return low_; }
    std::uint64_t mask() const { return low_mask(degree_); }
    std::uint64_t order() const;  // 2^m, requires m < 64

    /// Modulus as length-(m+1) polynomial text, e.g. "x^2+x+1".
    std::string modulus_string() const;

    // Word-level kernels; operands must already be reduced (< 2^m).
    std::uint64_t mul(std::uint64_t a, std::uint64_t b) const;
    std::uint64_t pow(std::uint64_t a, std::uint64_t e) const;

    friend bool operator==(const FieldSpec &, const FieldSpec &) = default;

  private:
    unsigned degree_;
    std::uint64_t low_;
};

/// True iff x^degree + low is irreducible over GF(2). Uses trial division for
/// degree <= 32 and Rabin's test above that.
bool is_irreducible(unsigned degree, std::uint64_t low);

/// Smallest irreducible polynomial of degree m with nonzero constant term,
/// scanning encodings in increasing integer order. 1 <= m <= 64.
FieldSpec find_irreducible(unsigned m);

class FieldElement {
  public:
    FieldElement(FieldSpec spec, std::uint64_t value);
    FieldElement(FieldSpec spec, const BitString &coeffs);

    static FieldElement zero(const FieldSpec &spec) { return {spec, 0}; }
    static FieldElement one(const FieldSpec &spec) { return {spec, 1}; }

    const FieldSpec &spec() const { return spec_; }
    std::uint64_t value() const { return value_; }
    BitString coeffs() const { return {spec_.degree(), value_}; }
    bool is_zero() const { return value_ == 0; }

    friend bool operator==(const FieldElement &, const FieldElement &) = default;

  private:
    FieldSpec spec_;
    std::uint64_t value_;
};

FieldElement gf_add(const FieldElement &a, const FieldElement &b);
FieldElement gf_mul(const FieldElement &a, const FieldElement &b);
FieldElement gf_pow(const FieldElement &a, std::uint64_t e);

/// All 2^k combinations of the basis, in lexicographic order of the
/// coefficient vector (combination c takes basis[j] iff bit j of c is set).
/// An empty basis yields {0^m}. Throws if lengths differ or the basis is
/// linearly dependent.
std::vector<BitString> subgroup_span(std::span<const BitString> basis, unsigned m);

// Word-level linear algebra over GF(2)^m.

/// Rank of the given vectors.
unsigned rank(std::span<const std::uint64_t> vectors);

/// Span of independent vectors; element c is the XOR of vectors[j] for the
/// set bits j of c.
std::vector<std::uint64_t> span_words(std::span<const std::uint64_t> basis);

/// Basis of {a : dot(a, g) = 0 for every g in generators} within GF(2)^m.
std::vector<std::uint64_t> dual_basis(std::span<const std::uint64_t> generators, unsigned m);

}  // namespace qpad::gf2
