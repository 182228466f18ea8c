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

#include "qpad/gf2.hpp"

#include <algorithm>
#include <array>
#include <mutex>
#include <optional>
#include <stdexcept>

#include <fmt/format.h>

namespace qpad::gf2 {

namespace {

using u128 = unsigned __int128;

int degree_of(u128 p) {
    int d = -1;
    while (p != 0) {
        p >>= 1;
        ++d;
    }
    return d;
}

u128 poly_mod(u128 a, u128 b) {
    const int db = degree_of(b);
    for (int da = degree_of(a); da >= db; da = degree_of(a)) {
        a ^= b << (da - db);
    }
    return a;
}

u128 poly_gcd(u128 a, u128 b) {
    while (b != 0) {
        a = poly_mod(a, b);
        std::swap(a, b);
    }
    return a;
}

// Product modulo x^m + low; no irreducibility assumed.
std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, unsigned m, std::uint64_t low) {
    const std::uint64_t mask = low_mask(m);
    const std::uint64_t top = std::uint64_t{1} << (m - 1);
    std::uint64_t r = 0;
    while (b != 0) {
        if (b & 1) r ^= a;
        b >>= 1;
        const bool carry = (a & top) != 0;
        a = (a << 1) & mask;
        if (carry) a ^= low;
    }
    return r;
}

bool trial_division_irreducible(unsigned m, std::uint64_t low) {
    const u128 f = (u128{1} << m) | low;
    const std::uint64_t max_divisor = std::uint64_t{1} << (m / 2 + 1);
    for (std::uint64_t g = 2; g < max_divisor; ++g) {
        if (poly_mod(f, g) == 0) return false;
    }
    return true;
}

std::vector<unsigned> prime_factors(unsigned m) {
    std::vector<unsigned> out;
    for (unsigned p = 2; p * p <= m; ++p) {
        if (m % p == 0) {
            out.push_back(p);
            while (m % p == 0) m /= p;
        }
    }
    if (m > 1) out.push_back(m);
    return out;
}

// x^(2^i) mod f, for i = 0..m.
std::vector<std::uint64_t> frobenius_powers_of_x(unsigned m, std::uint64_t low) {
    std::vector<std::uint64_t> out(m + 1);
    std::uint64_t x = m >= 2 ? 2 : low;  // x mod f
    out[0] = x;
    for (unsigned i = 1; i <= m; ++i) {
        x = mulmod(x, x, m, low);
        out[i] = x;
    }
    return out;
}

bool rabin_irreducible(unsigned m, std::uint64_t low) {
    const u128 f = (u128{1} << m) | low;
    const auto powers = frobenius_powers_of_x(m, low);
    if (powers[m] != powers[0]) return false;
    for (unsigned q : prime_factors(m)) {
        const u128 h = u128{powers[m / q]} ^ u128{powers[0]};
        if (h == 0 || degree_of(poly_gcd(f, h)) != 0) return false;
    }
    return true;
}

}  // namespace

BitString::BitString(unsigned length, std::uint64_t bits) : length_(length), bits_(bits) {
    if (length == 0 || length > kMaxBits) {
        throw std::invalid_argument(fmt::format("bit string length {} outside [1, 64]", length));
    }
    if ((bits & ~low_mask(length)) != 0) {
        throw std::invalid_argument(fmt::format("bits 0x{:x} do not fit in length {}", bits, length));
    }
}

std::string BitString::to_string() const {
    std::string s(length_, '0');
    for (unsigned i = 0; i < length_; ++i) {
        if ((*this)[i]) s[length_ - 1 - i] = '1';
    }
    return s;
}

bool dot(const BitString &x, const BitString &y) {
    if (x.size() != y.size()) {
        throw std::invalid_argument(
            fmt::format("dot: length mismatch {} vs {}", x.size(), y.size()));
    }
    return dot_word(x.word(), y.word());
}

bool is_irreducible(unsigned degree, std::uint64_t low) {
    if (degree == 0 || degree > kMaxBits || (low & ~low_mask(degree)) != 0) return false;
    if (degree <= 32) return trial_division_irreducible(degree, low);
    return rabin_irreducible(degree, low);
}

FieldSpec::FieldSpec(unsigned degree, std::uint64_t low) : degree_(degree), low_(low) {
    if (!is_irreducible(degree, low)) {
        throw std::invalid_argument(
            fmt::format("modulus of degree {} with low bits 0x{:x} is not irreducible", degree, low));
    }
}

std::uint64_t FieldSpec::order() const {
    if (degree_ >= 64) throw std::invalid_argument("field order 2^64 does not fit a word");
    return std::uint64_t{1} << degree_;
}

std::string FieldSpec::modulus_string() const {
    std::string s = degree_ == 1 ? "x" : fmt::format("x^{}", degree_);
    for (int i = static_cast<int>(degree_) - 1; i >= 0; --i) {
        if (((low_ >> i) & 1) == 0) continue;
        s += i == 0 ? "+1" : i == 1 ? "+x" : fmt::format("+x^{}", i);
    }
    return s;
}

std::uint64_t FieldSpec::mul(std::uint64_t a, std::uint64_t b) const {
    return mulmod(a, b, degree_, low_);
}

std::uint64_t FieldSpec::pow(std::uint64_t a, std::uint64_t e) const {
    std::uint64_t result = 1;
    while (e != 0) {
        if (e & 1) result = mul(result, a);
        a = mul(a, a);
        e >>= 1;
    }
    return result;
}

FieldSpec find_irreducible(unsigned m) {
    if (m == 0 || m > kMaxBits) {
        throw std::invalid_argument(fmt::format("find_irreducible: degree {} outside [1, 64]", m));
    }
    static std::mutex mutex;
    static std::array<std::optional<std::uint64_t>, kMaxBits + 1> cache;
    std::lock_guard lock(mutex);
    if (!cache[m]) {
        for (std::uint64_t low = 1;; low += 2) {
            if (is_irreducible(m, low)) {
                cache[m] = low;
                break;
            }
        }
    }
    return FieldSpec(m, *cache[m]);
}

FieldElement::FieldElement(FieldSpec spec, std::uint64_t value) : spec_(spec), value_(value) {
    if ((value & ~spec_.mask()) != 0) {
        throw std::invalid_argument(
            fmt::format("value 0x{:x} exceeds field degree {}", value, spec_.degree()));
    }
}

FieldElement::FieldElement(FieldSpec spec, const BitString &coeffs) : FieldElement(spec, coeffs.word()) {
    if (coeffs.size() != spec_.degree()) {
        throw std::invalid_argument(fmt::format("coefficient length {} != field degree {}",
                                                coeffs.size(), spec_.degree()));
    }
}

namespace {
void require_same_field(const FieldElement &a, const FieldElement &b, const char *op) {
    if (a.spec() != b.spec()) {
        throw std::invalid_argument(fmt::format("{}: operands belong to different fields", op));
    }
}
}  // namespace

FieldElement gf_add(const FieldElement &a, const FieldElement &b) {
    require_same_field(a, b, "gf_add");
    return {a.spec(), a.value() ^ b.value()};
}

FieldElement gf_mul(const FieldElement &a, const FieldElement &b) {
    require_same_field(a, b, "gf_mul");
    return {a.spec(), a.spec().mul(a.value(), b.value())};
}

FieldElement gf_pow(const FieldElement &a, std::uint64_t e) {
    return {a.spec(), a.spec().pow(a.value(), e)};
}

unsigned rank(std::span<const std::uint64_t> vectors) {
    std::vector<std::uint64_t> rows(vectors.begin(), vectors.end());
    unsigned r = 0;
    for (unsigned bit = 0; bit < 64; ++bit) {
        const std::uint64_t mask = std::uint64_t{1} << bit;
        auto pivot = std::find_if(rows.begin() + r, rows.end(),
                                  [mask](std::uint64_t v) { return (v & mask) != 0; });
        if (pivot == rows.end()) continue;
        std::swap(*pivot, rows[r]);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (i != r && (rows[i] & mask)) rows[i] ^= rows[r];
        }
        ++r;
    }
    return r;
}

std::vector<std::uint64_t> span_words(std::span<const std::uint64_t> basis) {
    if (basis.size() >= 40) throw std::invalid_argument("span_words: basis too large to enumerate");
    std::vector<std::uint64_t> out(std::size_t{1} << basis.size());
    // Each new element differs from an earlier one by exactly one basis vector.
    for (std::size_t j = 0; j < basis.size(); ++j) {
        const std::size_t half = std::size_t{1} << j;
        for (std::size_t c = 0; c < half; ++c) out[half + c] = out[c] ^ basis[j];
    }
    return out;
}

std::vector<std::uint64_t> dual_basis(std::span<const std::uint64_t> generators, unsigned m) {
    // Reduced row echelon form, then read the null space off the free columns.
    std::vector<std::uint64_t> rows(generators.begin(), generators.end());
    std::vector<unsigned> pivots;
    std::size_t r = 0;
    for (unsigned bit = 0; bit < m; ++bit) {
        const std::uint64_t mask = std::uint64_t{1} << bit;
        auto pivot = std::find_if(rows.begin() + static_cast<std::ptrdiff_t>(r), rows.end(),
                                  [mask](std::uint64_t v) { return (v & mask) != 0; });
        if (pivot == rows.end()) continue;
        std::swap(*pivot, rows[r]);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (i != r && (rows[i] & mask)) rows[i] ^= rows[r];
        }
        pivots.push_back(bit);
        ++r;
    }
    std::uint64_t pivot_mask = 0;
    for (unsigned p : pivots) pivot_mask |= std::uint64_t{1} << p;

    std::vector<std::uint64_t> out;
    for (unsigned free = 0; free < m; ++free) {
        if (pivot_mask & (std::uint64_t{1} << free)) continue;
        std::uint64_t v = std::uint64_t{1} << free;
        for (std::size_t i = 0; i < pivots.size(); ++i) {
            if (rows[i] & (std::uint64_t{1} << free)) v |= std::uint64_t{1} << pivots[i];
        }
        out.push_back(v);
    }
    return out;
}

std::vector<BitString> subgroup_span(std::span<const BitString> basis, unsigned m) {
    std::vector<std::uint64_t> words;
    words.reserve(basis.size());
    for (const auto &b : basis) {
        if (b.size() != m) {
            throw std::invalid_argument(
                fmt::format("subgroup_span: basis vector of length {} in a span of length {}", b.size(), m));
        }
        words.push_back(b.word());
    }
    if (rank(words) != words.size()) {
        throw std::invalid_argument("subgroup_span: basis is linearly dependent");
    }
    std::vector<BitString> out;
    if (basis.empty()) {
        out.push_back(BitString::zeros(m));
        return out;
    }
    const auto elements = span_words(words);
    out.reserve(elements.size());
    for (auto e : elements) out.emplace_back(m, e);
    return out;
}

}  // namespace qpad::gf2
