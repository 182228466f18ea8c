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

// Independent reference implementations used to check the library. They are
// deliberately naive: bit-by-bit, dense, or textbook-formula versions of what
// the library does with faster or more structured code.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <vector>

#include "qpad/pauli.hpp"
#include "qpad/qcore.hpp"
#include "qpad/smallbias.hpp"

namespace oracle {

using Complex = std::complex<double>;
using qpad::qcore::ComplexMatrix;
using qpad::qcore::DensityMatrix;

// Schoolbook polynomial product over GF(2), then long division by the full
// modulus x^m + low.
inline std::uint64_t poly_mul_mod(std::uint64_t a, std::uint64_t b, unsigned m, std::uint64_t low) {
    std::vector<int> prod(2 * m, 0);
    for (unsigned i = 0; i < m; ++i)
        for (unsigned j = 0; j < m; ++j)
            if (((a >> i) & 1) && ((b >> j) & 1)) prod[i + j] ^= 1;
    for (int deg = 2 * static_cast<int>(m) - 2; deg >= static_cast<int>(m); --deg) {
        if (!prod[deg]) continue;
        prod[deg] = 0;
        for (unsigned t = 0; t < m; ++t)
            if ((low >> t) & 1) prod[deg - m + t] ^= 1;
    }
    std::uint64_t r = 0;
    for (unsigned i = 0; i < m; ++i)
        if (prod[i]) r |= std::uint64_t{1} << i;
    return r;
}

inline int parity(std::uint64_t x) {
    int p = 0;
    while (x) {
        p ^= 1;
        x &= x - 1;
    }
    return p;
}

// E_{s in S}[(-1)^{alpha . s}] straight from the definition.
inline double direct_bias(std::span<const std::uint64_t> points, std::uint64_t alpha) {
    long long sum = 0;
    for (auto s : points) sum += parity(alpha & s) ? -1 : 1;
    return static_cast<double>(sum) / static_cast<double>(points.size());
}

inline double direct_max_bias(const qpad::smallbias::SmallBiasSet &set) {
    double best = 0.0;
    for (std::uint64_t a = 1; a < (std::uint64_t{1} << set.bits()); ++a)
        best = std::max(best, std::abs(direct_bias(set.points(), a)));
    return best;
}

inline ComplexMatrix dense_pauli(unsigned n, std::uint64_t u, std::uint64_t v) {
    // Kronecker product of single-qubit factors X^{u_i} Z^{v_i}, qubit 0 as
    // the least significant index bit.
    const std::size_t dim = std::size_t{1} << n;
    ComplexMatrix m(dim);
    for (std::size_t row = 0; row < dim; ++row)
        for (std::size_t col = 0; col < dim; ++col) {
            Complex e{1.0, 0.0};
            for (unsigned q = 0; q < n; ++q) {
                const int r = (row >> q) & 1, c = (col >> q) & 1;
                const int x = (u >> q) & 1, z = (v >> q) & 1;
                // X^x Z^z on one qubit: entry (r, c) = [r == c xor x] (-1)^{z c}
                Complex f = (r == (c ^ x)) ? Complex{1.0, 0.0} : Complex{0.0, 0.0};
                if (z && c) f = -f;
                e *= f;
            }
            m(row, col) = e;
        }
    return m;
}

inline ComplexMatrix conj_by(const ComplexMatrix &u, const ComplexMatrix &rho) { return u * rho * u.adjoint(); }

inline double trace_of_square(const ComplexMatrix &m) { return (m * m).trace().real(); }

// Characteristic polynomial coefficients c_0..c_n (c_n = 1) by Faddeev-LeVerrier.
inline std::vector<Complex> char_poly(const ComplexMatrix &a) {
    const std::size_t n = a.dim();
    std::vector<Complex> c(n + 1);
    c[n] = 1.0;
    ComplexMatrix mk(n);
    for (std::size_t k = 1; k <= n; ++k) {
        mk = a * mk + ComplexMatrix::identity(n) * c[n - k + 1];
        c[n - k] = -(a * mk).trace() / static_cast<double>(k);
    }
    return c;
}

// Roots of a monic polynomial by Durand-Kerner iteration.
inline std::vector<Complex> poly_roots(const std::vector<Complex> &c) {
    const std::size_t n = c.size() - 1;
    std::vector<Complex> z(n);
    const Complex seed{0.4, 0.9};
    for (std::size_t i = 0; i < n; ++i) z[i] = std::pow(seed, static_cast<double>(i));
    auto eval = [&](Complex x) {
        Complex r = c[n];
        for (std::size_t i = n; i-- > 0;) r = r * x + c[i];
        return r;
    };
    for (int it = 0; it < 2000; ++it) {
        double moved = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            Complex den{1.0, 0.0};
            for (std::size_t j = 0; j < n; ++j)
                if (j != i) den *= z[i] - z[j];
            if (std::abs(den) < 1e-300) den = 1e-300;
            const Complex step = eval(z[i]) / den;
            z[i] -= step;
            moved = std::max(moved, std::abs(step));
        }
        if (moved < 1e-15) break;
    }
    return z;
}

// Tr|rho - sigma|: sum of |eigenvalues| of the difference, from its characteristic
// polynomial. Small dimensions only (conditioning degrades quickly).
inline double trace_distance(const ComplexMatrix &rho, const ComplexMatrix &sigma) {
    const auto roots = poly_roots(char_poly(rho - sigma));
    double s = 0.0;
    for (auto r : roots) s += std::abs(r.real());
    return s;
}

// Average of dense conjugations over every point of a 2n-bit set, split as
// a = low n bits, b = high n bits; the unitary is X^a Z^b.
inline ComplexMatrix scheme_a_channel(unsigned n, const qpad::smallbias::SmallBiasSet &set, const ComplexMatrix &rho) {
    ComplexMatrix acc(rho.dim());
    const auto mask = (std::uint64_t{1} << n) - 1;
    for (auto p : set.points()) acc += conj_by(dense_pauli(n, p & mask, p >> n), rho);
    acc *= Complex{1.0 / static_cast<double>(set.size()), 0.0};
    return acc;
}

inline ComplexMatrix qudit_shift(std::uint64_t d, std::uint64_t j) {
    ComplexMatrix m(d);
    for (std::uint64_t t = 0; t < d; ++t) m((t + j) % d, t) = 1.0;
    return m;
}

inline ComplexMatrix qudit_clock(std::uint64_t d, std::uint64_t k) {
    ComplexMatrix m(d);
    for (std::uint64_t t = 0; t < d; ++t) {
        const double ang = 2.0 * M_PI * static_cast<double>((k * t) % d) / static_cast<double>(d);
        m(t, t) = Complex{std::cos(ang), std::sin(ang)};
    }
    return m;
}

// (1/d) sum_a X^a Z^{a^2} rho (X^a Z^{a^2})^dagger with dense products.
inline ComplexMatrix qudit_core_channel(std::uint64_t d, const ComplexMatrix &rho) {
    ComplexMatrix acc(d);
    for (std::uint64_t a = 0; a < d; ++a) acc += conj_by(qudit_shift(d, a) * qudit_clock(d, (a * a) % d), rho);
    acc *= Complex{1.0 / static_cast<double>(d), 0.0};
    return acc;
}

inline double max_diff(const ComplexMatrix &a, const ComplexMatrix &b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.entries().size(); ++i) m = std::max(m, std::abs(a.entries()[i] - b.entries()[i]));
    return m;
}

}  // namespace oracle
