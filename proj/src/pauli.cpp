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

#include "qpad/pauli.hpp"

#include <bit>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include <fmt/format.h>

#include "qpad/errors.hpp"

namespace qpad::pauli {

namespace {

std::string qubit_order(const gf2::BitString &b) {
    std::string s(b.size(), '0');
    for (unsigned i = 0; i < b.size(); ++i) s[i] = b[i] ? '1' : '0';
    return s;
}

void require_same_size(const PauliOp &p, const PauliOp &q, const char *op) {
    if (p.qubits() != q.qubits()) {
        throw std::invalid_argument(fmt::format("{}: {} vs {} qubits", op, p.qubits(), q.qubits()));
    }
}

inline double parity_sign(bool odd) { return odd ? -1.0 : 1.0; }

}  // namespace

PauliOp::PauliOp(gf2::BitString u, gf2::BitString v, int sign) : u_(u), v_(v), sign_(sign) {
    if (u.size() != v.size()) {
        throw std::invalid_argument(fmt::format("PauliOp: X part has {} bits, Z part {}", u.size(), v.size()));
    }
    if (sign != 1 && sign != -1) throw std::invalid_argument("PauliOp: sign must be +1 or -1");
}

std::string PauliOp::to_string() const {
    return fmt::format("{}X({})Z({})", sign_ > 0 ? '+' : '-', qubit_order(u_), qubit_order(v_));
}

PauliOp pauli_mul(const PauliOp &p, const PauliOp &q) {
    require_same_size(p, q, "pauli_mul");
    const unsigned n = p.qubits();
    const int swap_sign = gf2::dot(q.x_bits(), p.z_bits()) ? -1 : 1;
    return {gf2::BitString(n, p.x_bits().word() ^ q.x_bits().word()),
            gf2::BitString(n, p.z_bits().word() ^ q.z_bits().word()), p.sign() * q.sign() * swap_sign};
}

int commute_sign(const PauliOp &p, const PauliOp &q) {
    require_same_size(p, q, "commute_sign");
    const bool odd = gf2::dot(p.x_bits(), q.z_bits()) != gf2::dot(p.z_bits(), q.x_bits());
    return odd ? -1 : 1;
}

ComplexMatrix pauli_dense(const PauliOp &p) {
    const unsigned n = p.qubits();
    if (n > 12) throw ResourceLimit(fmt::format("pauli_dense: {} qubits exceeds 12", n));
    const std::size_t d = std::size_t{1} << n;
    const auto u = p.x_bits().word();
    const auto v = p.z_bits().word();
    ComplexMatrix m(d);
    for (std::size_t k = 0; k < d; ++k) m(k ^ u, k) = p.sign() * parity_sign(gf2::dot_word(v, k));
    return m;
}

unsigned qubits_of(const DensityMatrix &rho) {
    const std::size_t d = rho.dim();
    if (!std::has_single_bit(d)) {
        throw std::invalid_argument(fmt::format("dimension {} is not a power of two", d));
    }
    return static_cast<unsigned>(std::countr_zero(d));
}

DensityMatrix conjugate_pauli_words(const DensityMatrix &rho, std::uint64_t a, std::uint64_t b) {
    const std::size_t d = rho.dim();
    if (!std::has_single_bit(d) || a >= d || b >= d) {
        throw std::invalid_argument(
            fmt::format("conjugate_pauli: key (0x{:x}, 0x{:x}) does not fit dimension {}", a, b, d));
    }
    ComplexMatrix out(d);
    for (std::size_t i = 0; i < d; ++i) {
        const double si = parity_sign(gf2::dot_word(b, i));
        for (std::size_t j = 0; j < d; ++j) {
            out(i, j) = (si * parity_sign(gf2::dot_word(b, j))) * rho(i ^ a, j ^ a);
        }
    }
    return DensityMatrix::trusted(std::move(out));
}

DensityMatrix conjugate_pauli(const DensityMatrix &rho, const gf2::BitString &a, const gf2::BitString &b) {
    const unsigned n = qubits_of(rho);
    if (a.size() != n || b.size() != n) {
        throw std::invalid_argument(
            fmt::format("conjugate_pauli: key lengths {}/{} for a {}-qubit state", a.size(), b.size(), n));
    }
    return conjugate_pauli_words(rho, a.word(), b.word());
}

Complex pauli_trace(const DensityMatrix &rho, std::uint64_t u, std::uint64_t v) {
    const std::size_t d = rho.dim();
    Complex t = 0.0;
    for (std::size_t k = 0; k < d; ++k) t += parity_sign(gf2::dot_word(v, k)) * rho(k, k ^ u);
    return t;
}

Complex pauli_coefficient(const DensityMatrix &rho, const gf2::BitString &u, const gf2::BitString &v) {
    const unsigned n = qubits_of(rho);
    if (u.size() != n || v.size() != n) {
        throw std::invalid_argument("pauli_coefficient: word length does not match the state");
    }
    // Z^v X^u = (-1)^{u.v} X^u Z^v
    const double s = parity_sign(gf2::dot(u, v));
    return s * pauli_trace(rho, u.word(), v.word()) / static_cast<double>(rho.dim());
}

double purity_via_pauli(const DensityMatrix &rho) {
    qubits_of(rho);
    const std::size_t d = rho.dim();
    double s = 0.0;
    for (std::size_t u = 0; u < d; ++u)
        for (std::size_t v = 0; v < d; ++v) s += std::norm(pauli_trace(rho, u, v));
    return s / static_cast<double>(d);
}

bool is_prime(std::uint64_t d) {
    if (d < 2) return false;
    for (std::uint64_t p = 2; p * p <= d; ++p)
        if (d % p == 0) return false;
    return true;
}

QuditOp::QuditOp(std::uint64_t d, std::uint64_t j, std::uint64_t k, std::uint64_t phase_exp)
    : d_(d), j_(j), k_(k), phase_(phase_exp) {
    if (!is_prime(d)) throw std::invalid_argument(fmt::format("QuditOp: dimension {} is not prime", d));
    if (j >= d || k >= d || phase_exp >= d) {
        throw std::invalid_argument(fmt::format("QuditOp: exponents must be reduced mod {}", d));
    }
}

Complex root_of_unity(std::uint64_t d, std::uint64_t e) {
    e %= d;
    if (e == 0) return 1.0;
    return std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(e) / static_cast<double>(d));
}

namespace {
void require_dense_qudit(std::uint64_t d) {
    if (d == 0 || d > 131) throw ResourceLimit(fmt::format("qudit dimension {} too large for dense matrices", d));
}
}  // namespace

ComplexMatrix qudit_x_pow(std::uint64_t d, std::uint64_t j) {
    require_dense_qudit(d);
    ComplexMatrix m(d);
    for (std::uint64_t t = 0; t < d; ++t) m((t + j) % d, t) = 1.0;
    return m;
}

ComplexMatrix qudit_z_pow(std::uint64_t d, std::uint64_t k) {
    require_dense_qudit(d);
    ComplexMatrix m(d);
    for (std::uint64_t t = 0; t < d; ++t) m(t, t) = root_of_unity(d, (k % d) * t);
    return m;
}

ComplexMatrix qudit_dense(const QuditOp &q) {
    const auto d = q.dim();
    auto m = qudit_x_pow(d, q.x_power()) * qudit_z_pow(d, q.z_power());
    m *= root_of_unity(d, q.phase_exp());
    return m;
}

QuditOp qudit_mul(const QuditOp &p, const QuditOp &q) {
    if (p.dim() != q.dim()) throw std::invalid_argument("qudit_mul: dimension mismatch");
    const auto d = p.dim();
    return {d, (p.x_power() + q.x_power()) % d, (p.z_power() + q.z_power()) % d,
            (p.phase_exp() + q.phase_exp() + p.z_power() * q.x_power()) % d};
}

QuditOp qudit_adjoint(const QuditOp &q) {
    const auto d = q.dim();
    return {d, (d - q.x_power()) % d, (d - q.z_power()) % d,
            (q.x_power() * q.z_power() + d - q.phase_exp()) % d};
}

DensityMatrix conjugate_qudit(const DensityMatrix &rho, std::uint64_t j, std::uint64_t k, std::uint64_t d) {
    if (rho.dim() != d) {
        throw std::invalid_argument(fmt::format("conjugate_qudit: state dimension {} != {}", rho.dim(), d));
    }
    j %= d;
    k %= d;
    std::vector<Complex> w(d);
    for (std::uint64_t e = 0; e < d; ++e) w[e] = root_of_unity(d, e);
    ComplexMatrix out(d);
    for (std::uint64_t s = 0; s < d; ++s) {
        const std::uint64_t s0 = (s + d - j) % d;
        const std::uint64_t es = (k * s0) % d;
        for (std::uint64_t t = 0; t < d; ++t) {
            const std::uint64_t t0 = (t + d - j) % d;
            const std::uint64_t et = (k * t0) % d;
            out(s, t) = w[(es + d - et) % d] * rho(s0, t0);
        }
    }
    return DensityMatrix::trusted(std::move(out));
}

DensityMatrix phase_op_ub(const DensityMatrix &rho, const gf2::BitString &b, std::uint64_t d) {
    if (rho.dim() != d) {
        throw std::invalid_argument(fmt::format("phase_op_ub: state dimension {} != {}", rho.dim(), d));
    }
    if (b.size() < 64 && d > (std::uint64_t{1} << b.size())) {
        throw std::invalid_argument(fmt::format("phase_op_ub: {} bits cannot label {} basis states", b.size(), d));
    }
    ComplexMatrix out(d);
    for (std::uint64_t x = 0; x < d; ++x) {
        const double sx = parity_sign(gf2::dot_word(b.word(), x));
        for (std::uint64_t y = 0; y < d; ++y) out(x, y) = (sx * parity_sign(gf2::dot_word(b.word(), y))) * rho(x, y);
    }
    return DensityMatrix::trusted(std::move(out));
}

}  // namespace qpad::pauli
