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

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

// Dense complex matrices, density matrices and the distance measures used to
// audit encryption channels: purity Tr(rho^2), collision entropy, and the
// trace distance computed from a Jacobi eigen-decomposition.

namespace qpad::qcore {

using Complex = std::complex<double>;

/// Tolerances for density-matrix validation.
inline constexpr double kHermitianTol = 1e-10;
inline constexpr double kTraceTol = 1e-10;
inline constexpr double kEigenTol = 1e-9;

class ComplexMatrix {
  public:
    ComplexMatrix() = default;
    explicit ComplexMatrix(std::size_t dim);
    /// Row-major entries; size must be dim * dim and all entries finite.
    ComplexMatrix(std::size_t dim, std::vector<Complex> entries);

    static ComplexMatrix identity(std::size_t dim);

    std::size_t dim() const { return dim_; }
    Complex &operator()(std::size_t r, std::size_t c) { return data_[r * dim_ + c]; }
    const Complex &operator()(std::size_t r, std::size_t c) const { return data_[r * dim_ + c]; }
    std::span<const Complex> entries() const { return data_; }
    std::span<Complex> entries() { return data_; }

    ComplexMatrix adjoint() const;
    Complex trace() const;
    double frobenius_norm() const;
    /// max_{ij} |M_ij - conj(M_ji)|
    double hermitian_defect() const;
    /// max_{ij} |M_ij - N_ij|
    double max_abs_diff(const ComplexMatrix &other) const;

    ComplexMatrix &operator+=(const ComplexMatrix &o);
    ComplexMatrix &operator-=(const ComplexMatrix &o);
    ComplexMatrix &operator*=(Complex s);

    friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix &b) { return a += b; }
    friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix &b) { return a -= b; }
    friend ComplexMatrix operator*(ComplexMatrix a, Complex s) { return a *= s; }
    friend ComplexMatrix operator*(Complex s, ComplexMatrix a) { return a *= s; }
    friend ComplexMatrix operator*(const ComplexMatrix &a, const ComplexMatrix &b);
    friend bool operator==(const ComplexMatrix &, const ComplexMatrix &) = default;

  private:
    std::size_t dim_ = 0;
    std::vector<Complex> data_;
};

/// Hermitian, unit-trace, positive semidefinite matrix (within the tolerances
/// above).
class DensityMatrix {
  public:
    /// Validates every invariant; throws InvalidState on violation.
    static DensityMatrix from_matrix(ComplexMatrix m);
    /// For results of operations that preserve the invariants by construction
    /// (unitary conjugations, convex combinations of valid states). Only
    /// checks shape.
    static DensityMatrix trusted(ComplexMatrix m);

    static DensityMatrix maximally_mixed(std::size_t dim);
    static DensityMatrix basis_state(std::size_t dim, std::size_t index);
    /// |psi><psi| for the normalized amplitude vector.
    static DensityMatrix pure(std::span<const Complex> amplitudes);

    std::size_t dim() const { return m_.dim(); }
    const ComplexMatrix &matrix() const { return m_; }
    const Complex &operator()(std::size_t r, std::size_t c) const { return m_(r, c); }

    friend bool operator==(const DensityMatrix &, const DensityMatrix &) = default;

  private:
    explicit DensityMatrix(ComplexMatrix m) : m_(std::move(m)) {}
    ComplexMatrix m_;
};

struct Branch {
    double probability;
    std::uint64_t tag;
    DensityMatrix state;
};

/// Block-diagonal state sum_i p_i |i><i| (x) rho_i, stored by blocks.
class ClassicalQuantumState {
  public:
    /// Probabilities must be >= 0 and sum to 1; tags distinct; block
    /// dimensions equal.
    explicit ClassicalQuantumState(std::vector<Branch> branches);

    std::span<const Branch> branches() const { return branches_; }
    std::size_t block_dim() const { return branches_.front().state.dim(); }
    /// Dimension of the full state: branches * block_dim.
    std::size_t total_dim() const { return branches_.size() * block_dim(); }

    /// The full block-diagonal matrix; for small instances only.
    ComplexMatrix materialize() const;

  private:
    std::vector<Branch> branches_;
};

/// Tr(rho^2) = sum_ij |rho_ij|^2.
double purity(const DensityMatrix &rho);
/// -log2 Tr(rho^2).
double renyi2(const DensityMatrix &rho);
/// sum_i p_i^2 Tr(rho_i^2), the purity of the block-diagonal state.
double cq_purity(const ClassicalQuantumState &s);

/// Eigenvalues of a Hermitian matrix in ascending order, by cyclic complex
/// Jacobi rotations. Converges when the off-diagonal Frobenius mass drops
/// below 1e-12 of the total; throws NumericalFailure after 100 sweeps and
/// std::invalid_argument if the input is not Hermitian within 1e-8.
std::vector<double> hermitian_eigenvalues(const ComplexMatrix &m);

/// Tr|rho - sigma|.
double trace_distance(const DensityMatrix &rho, const DensityMatrix &sigma);
/// Trace distance of the cq-state from the uniform mixture over the same tags
/// tensored with I/block_dim.
double trace_distance_to_uniform(const ClassicalQuantumState &s);

/// Best single-measurement success probability, 1/2 + D/4.
double distinguish_advantage(const DensityMatrix &rho, const DensityMatrix &sigma);

/// Smallest eps with purity <= (1 + eps^2)/d: sqrt(max(0, d * purity - 1)).
/// Any state of that purity lies within trace distance eps of I/d.
double fact_trace2_epsilon(double purity_value, std::size_t d);

DensityMatrix random_pure_density(std::size_t dim, std::uint64_t seed);
/// Equal-weight mixture of `rank` independent random pure states.
DensityMatrix random_mixed_density(std::size_t dim, std::size_t rank, std::uint64_t seed);

}  // namespace qpad::qcore
