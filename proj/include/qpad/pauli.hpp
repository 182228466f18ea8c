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
#include <string>

#include "qpad/gf2.hpp"
#include "qpad/qcore.hpp"

// Pauli words X^u Z^v on n qubits and Weyl operators X^j Z^k in prime
// dimension d.
//
// Qubit convention: X^u |t> = |t xor u>, Z^v |t> = (-1)^{v.t} |t>, where t is
// a basis index read as little-endian bits, so qubit i is bit i of t.
// Qudit convention: X |t> = |t+1 mod d>, Z |t> = w^t |t>, w = exp(2 pi i/d).
// With these, Z X = w X Z, i.e. X^j Z^k = w^{-jk} Z^k X^j.

namespace qpad::pauli {

using qcore::Complex;
using qcore::ComplexMatrix;
using qcore::DensityMatrix;

/// sign * X^u Z^v. The phase is restricted to +-1: products of words in
/// X-then-Z normal form only pick up signs.
class PauliOp {
  public:
    PauliOp(gf2::BitString u, gf2::BitString v, int sign = +1);

    static PauliOp identity(unsigned n) { return {gf2::BitString::zeros(n), gf2::BitString::zeros(n)}; }

    unsigned qubits() const { return u_.size(); }
    const gf2::BitString &x_bits() const { return u_; }
    const gf2::BitString &z_bits() const { return v_; }
    int sign() const { return sign_; }

    /// e.g. "-X(101)Z(001)", qubit 0 printed first.
    std::string to_string() const;

    friend bool operator==(const PauliOp &, const PauliOp &) = default;

  private:
    gf2::BitString u_;
    gf2::BitString v_;
    int sign_;
};

/// (X^u Z^v)(X^a Z^b) = (-1)^{a.v} X^{u^a} Z^{v^b}, signs multiplied.
PauliOp pauli_mul(const PauliOp &p, const PauliOp &q);

/// +1 if p and q commute, -1 if they anticommute: (-1)^{u.b + v.a}.
int commute_sign(const PauliOp &p, const PauliOp &q);

/// Dense 2^n x 2^n matrix, n <= 12.
ComplexMatrix pauli_dense(const PauliOp &p);

/// Number of qubits of a 2^n-dimensional state; throws if dim is not a power of two.
unsigned qubits_of(const DensityMatrix &rho);

/// X^a Z^b rho Z^b X^a, entrywise: (-1)^{b.i + b.j} rho_{i^a, j^a}.
DensityMatrix conjugate_pauli(const DensityMatrix &rho, const gf2::BitString &a, const gf2::BitString &b);
/// Word-level variant for hot loops; a, b < dim.
DensityMatrix conjugate_pauli_words(const DensityMatrix &rho, std::uint64_t a, std::uint64_t b);

/// Tr(X^u Z^v rho) = sum_k (-1)^{v.k} rho_{k, k^u}.
Complex pauli_trace(const DensityMatrix &rho, std::uint64_t u, std::uint64_t v);

/// alpha_{u,v} = 2^{-n} Tr(Z^v X^u rho), so that rho = sum alpha_{u,v} X^u Z^v.
Complex pauli_coefficient(const DensityMatrix &rho, const gf2::BitString &u, const gf2::BitString &v);

/// 2^{-n} sum_{u,v} |Tr(X^u Z^v rho)|^2.
double purity_via_pauli(const DensityMatrix &rho);

bool is_prime(std::uint64_t d);

/// w^{phase_exp} X^j Z^k in prime dimension d; exponents kept reduced mod d.
class QuditOp {
  public:
    QuditOp(std::uint64_t d, std::uint64_t j, std::uint64_t k, std::uint64_t phase_exp = 0);

    std::uint64_t dim() const { return d_; }
    std::uint64_t x_power() const { return j_; }
    std::uint64_t z_power() const { return k_; }
    std::uint64_t phase_exp() const { return phase_; }

    friend bool operator==(const QuditOp &, const QuditOp &) = default;

  private:
    std::uint64_t d_, j_, k_, phase_;
};

/// w^e for w = exp(2 pi i / d).
Complex root_of_unity(std::uint64_t d, std::uint64_t e);

ComplexMatrix qudit_x_pow(std::uint64_t d, std::uint64_t j);
ComplexMatrix qudit_z_pow(std::uint64_t d, std::uint64_t k);
/// Dense matrix; d <= 131.
ComplexMatrix qudit_dense(const QuditOp &q);

/// Product in normal form: w^{p1+p2+k1 j2} X^{j1+j2} Z^{k1+k2}.
QuditOp qudit_mul(const QuditOp &p, const QuditOp &q);
/// (w^p X^j Z^k)^dagger = w^{jk-p} X^{-j} Z^{-k}.
QuditOp qudit_adjoint(const QuditOp &q);

/// X^j Z^k rho Z^{-k} X^{-j}, entrywise: w^{k(s-j) - k(t-j)} rho_{s-j, t-j}.
DensityMatrix conjugate_qudit(const DensityMatrix &rho, std::uint64_t j, std::uint64_t k, std::uint64_t d);

/// U_b rho U_b with U_b |x> = (-1)^{b.x} |x>, basis index x read as m bits.
DensityMatrix phase_op_ub(const DensityMatrix &rho, const gf2::BitString &b, std::uint64_t d);

}  // namespace qpad::pauli
