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

#include "qpad/qcore.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <fmt/format.h>

#include "qpad/errors.hpp"
#include "qpad/random.hpp"

namespace qpad::qcore {

ComplexMatrix::ComplexMatrix(std::size_t dim) : dim_(dim), data_(dim * dim) {}

ComplexMatrix::ComplexMatrix(std::size_t dim, std::vector<Complex> entries)
    : dim_(dim), data_(std::move(entries)) {
    if (data_.size() != dim * dim) {
        throw std::invalid_argument(
            fmt::format("matrix of dimension {} needs {} entries, got {}", dim, dim * dim, data_.size()));
    }
    for (const auto &z : data_) {
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
            throw std::invalid_argument("matrix entries must be finite");
        }
    }
}

ComplexMatrix ComplexMatrix::identity(std::size_t dim) {
    ComplexMatrix m(dim);
    for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
    return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
    ComplexMatrix out(dim_);
    for (std::size_t r = 0; r < dim_; ++r)
        for (std::size_t c = 0; c < dim_; ++c) out(c, r) = std::conj((*this)(r, c));
    return out;
}

Complex ComplexMatrix::trace() const {
    Complex t = 0.0;
    for (std::size_t i = 0; i < dim_; ++i) t += (*this)(i, i);
    return t;
}

double ComplexMatrix::frobenius_norm() const {
    double s = 0.0;
    for (const auto &z : data_) s += std::norm(z);
    return std::sqrt(s);
}

double ComplexMatrix::hermitian_defect() const {
    double worst = 0.0;
    for (std::size_t r = 0; r < dim_; ++r)
        for (std::size_t c = r; c < dim_; ++c)
            worst = std::max(worst, std::abs((*this)(r, c) - std::conj((*this)(c, r))));
    return worst;
}

double ComplexMatrix::max_abs_diff(const ComplexMatrix &other) const {
    if (other.dim_ != dim_) throw std::invalid_argument("max_abs_diff: dimension mismatch");
    double worst = 0.0;
    for (std::size_t i = 0; i < data_.size(); ++i) worst = std::max(worst, std::abs(data_[i] - other.data_[i]));
    return worst;
}

ComplexMatrix &ComplexMatrix::operator+=(const ComplexMatrix &o) {
    if (o.dim_ != dim_) throw std::invalid_argument("matrix sum: dimension mismatch");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
    return *this;
}

ComplexMatrix &ComplexMatrix::operator-=(const ComplexMatrix &o) {
    if (o.dim_ != dim_) throw std::invalid_argument("matrix difference: dimension mismatch");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
    return *this;
}

ComplexMatrix &ComplexMatrix::operator*=(Complex s) {
    for (auto &z : data_) z *= s;
    return *this;
}

ComplexMatrix operator*(const ComplexMatrix &a, const ComplexMatrix &b) {
    if (a.dim_ != b.dim_) throw std::invalid_argument("matrix product: dimension mismatch");
    const std::size_t d = a.dim_;
    ComplexMatrix out(d);
    for (std::size_t r = 0; r < d; ++r)
        for (std::size_t k = 0; k < d; ++k) {
            const Complex x = a(r, k);
            if (x == Complex{}) continue;
            for (std::size_t c = 0; c < d; ++c) out(r, c) += x * b(k, c);
        }
    return out;
}

DensityMatrix DensityMatrix::from_matrix(ComplexMatrix m) {
    if (m.dim() == 0) throw InvalidState("density matrix: dimension 0");
    for (const auto &z : m.entries()) {
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
            throw InvalidState("density matrix: non-finite entry");
        }
    }
    if (const double h = m.hermitian_defect(); h > kHermitianTol) {
        throw InvalidState(fmt::format("density matrix: not Hermitian (defect {:.3e})", h));
    }
    if (const Complex t = m.trace(); std::abs(t - 1.0) > kTraceTol) {
        throw InvalidState(fmt::format("density matrix: trace {:.17g}{:+.3e}i is not 1", t.real(), t.imag()));
    }
    if (const double lo = hermitian_eigenvalues(m).front(); lo < -kEigenTol) {
        throw InvalidState(fmt::format("density matrix: negative eigenvalue {:.3e}", lo));
    }
    return DensityMatrix(std::move(m));
}

DensityMatrix DensityMatrix::trusted(ComplexMatrix m) {
    if (m.dim() == 0) throw InvalidState("density matrix: dimension 0");
    return DensityMatrix(std::move(m));
}

DensityMatrix DensityMatrix::maximally_mixed(std::size_t dim) {
    if (dim == 0) throw InvalidState("density matrix: dimension 0");
    auto m = ComplexMatrix::identity(dim);
    m *= 1.0 / static_cast<double>(dim);
    return DensityMatrix(std::move(m));
}

DensityMatrix DensityMatrix::basis_state(std::size_t dim, std::size_t index) {
    if (index >= dim) throw std::invalid_argument(fmt::format("basis state {} outside dimension {}", index, dim));
    ComplexMatrix m(dim);
    m(index, index) = 1.0;
    return DensityMatrix(std::move(m));
}

DensityMatrix DensityMatrix::pure(std::span<const Complex> amplitudes) {
    double norm2 = 0.0;
    for (const auto &a : amplitudes) norm2 += std::norm(a);
    if (amplitudes.empty() || !(norm2 > 0.0) || !std::isfinite(norm2)) {
        throw InvalidState("pure state: amplitude vector must be nonzero and finite");
    }
    const std::size_t d = amplitudes.size();
    ComplexMatrix m(d);
    for (std::size_t r = 0; r < d; ++r)
        for (std::size_t c = 0; c < d; ++c) m(r, c) = amplitudes[r] * std::conj(amplitudes[c]) / norm2;
    return DensityMatrix(std::move(m));
}

ClassicalQuantumState::ClassicalQuantumState(std::vector<Branch> branches) : branches_(std::move(branches)) {
    if (branches_.empty()) throw InvalidState("cq-state: no branches");
    double total = 0.0;
    std::vector<std::uint64_t> tags;
    for (const auto &b : branches_) {
        if (!(b.probability >= 0.0)) throw InvalidState("cq-state: negative branch probability");
        if (b.state.dim() != branches_.front().state.dim()) {
            throw InvalidState("cq-state: branch dimensions differ");
        }
        total += b.probability;
        tags.push_back(b.tag);
    }
    if (std::abs(total - 1.0) > kTraceTol) {
        throw InvalidState(fmt::format("cq-state: probabilities sum to {:.17g}", total));
    }
    std::sort(tags.begin(), tags.end());
    if (std::adjacent_find(tags.begin(), tags.end()) != tags.end()) {
        throw InvalidState("cq-state: duplicate tags");
    }
}

ComplexMatrix ClassicalQuantumState::materialize() const {
    const std::size_t d = block_dim();
    const std::size_t total = total_dim();
    if (total > 4096) {
        throw ResourceLimit(fmt::format("cq-state of dimension {} is too large to materialize", total));
    }
    ComplexMatrix out(total);
    for (std::size_t i = 0; i < branches_.size(); ++i) {
        const auto &b = branches_[i];
        for (std::size_t r = 0; r < d; ++r)
            for (std::size_t c = 0; c < d; ++c) out(i * d + r, i * d + c) = b.probability * b.state(r, c);
    }
    return out;
}

double purity(const DensityMatrix &rho) {
    double s = 0.0;
    for (const auto &z : rho.matrix().entries()) s += std::norm(z);
    return s;
}

double renyi2(const DensityMatrix &rho) { return -std::log2(purity(rho)); }

double cq_purity(const ClassicalQuantumState &s) {
    double total = 0.0;
    for (const auto &b : s.branches()) total += b.probability * b.probability * purity(b.state);
    return total;
}

std::vector<double> hermitian_eigenvalues(const ComplexMatrix &m) {
    constexpr double kInputHermitianTol = 1e-8;
    constexpr double kRelativeOffTol = 1e-12;
    constexpr int kMaxSweeps = 100;

    if (const double h = m.hermitian_defect(); h > kInputHermitianTol) {
        throw std::invalid_argument(fmt::format("hermitian_eigenvalues: input not Hermitian (defect {:.3e})", h));
    }
    const std::size_t d = m.dim();
    ComplexMatrix a = m;
    for (std::size_t i = 0; i < d; ++i) a(i, i) = a(i, i).real();

    auto off_mass = [&] {
        double s = 0.0;
        for (std::size_t r = 0; r < d; ++r)
            for (std::size_t c = 0; c < d; ++c)
                if (r != c) s += std::norm(a(r, c));
        return std::sqrt(s);
    };

    const double norm = a.frobenius_norm();
    bool converged = norm == 0.0;
    for (int sweep = 0; sweep < kMaxSweeps && !converged; ++sweep) {
        if (off_mass() < kRelativeOffTol * norm) {
            converged = true;
            break;
        }
        for (std::size_t p = 0; p + 1 < d; ++p) {
            for (std::size_t q = p + 1; q < d; ++q) {
                const Complex apq = a(p, q);
                const double r = std::abs(apq);
                if (r == 0.0) continue;
                const Complex phase = apq / r;  // e^{i phi}
                const double theta = (a(q, q).real() - a(p, p).real()) / (2.0 * r);
                double t;
                if (std::abs(theta) > 1e150) {
                    t = 0.5 / theta;
                } else {
                    t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                }
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                const Complex e_minus = std::conj(phase);

                // a <- a U with U = diag(phase correction) * real rotation.
                for (std::size_t k = 0; k < d; ++k) {
                    const Complex akp = a(k, p);
                    const Complex akq = a(k, q);
                    a(k, p) = c * akp - s * e_minus * akq;
                    a(k, q) = s * akp + c * e_minus * akq;
                }
                // a <- U^dagger a
                for (std::size_t k = 0; k < d; ++k) {
                    const Complex apk = a(p, k);
                    const Complex aqk = a(q, k);
                    a(p, k) = c * apk - s * phase * aqk;
                    a(q, k) = s * apk + c * phase * aqk;
                }
                a(p, q) = 0.0;
                a(q, p) = 0.0;
                a(p, p) = a(p, p).real();
                a(q, q) = a(q, q).real();
            }
        }
    }
    if (!converged && off_mass() >= kRelativeOffTol * norm) {
        throw NumericalFailure(fmt::format("hermitian_eigenvalues: no convergence after {} sweeps (dimension {})",
                                           kMaxSweeps, d));
    }
    std::vector<double> out(d);
    for (std::size_t i = 0; i < d; ++i) out[i] = a(i, i).real();
    std::sort(out.begin(), out.end());
    return out;
}

double trace_distance(const DensityMatrix &rho, const DensityMatrix &sigma) {
    if (rho.dim() != sigma.dim()) {
        throw std::invalid_argument(
            fmt::format("trace_distance: dimension mismatch {} vs {}", rho.dim(), sigma.dim()));
    }
    double s = 0.0;
    for (double l : hermitian_eigenvalues(rho.matrix() - sigma.matrix())) s += std::abs(l);
    return s;
}

double trace_distance_to_uniform(const ClassicalQuantumState &s) {
    const std::size_t d = s.block_dim();
    const double block_weight = 1.0 / static_cast<double>(s.branches().size());
    const ComplexMatrix target = ComplexMatrix::identity(d) * Complex(block_weight / static_cast<double>(d));
    double total = 0.0;
    for (const auto &b : s.branches()) {
        for (double l : hermitian_eigenvalues(b.state.matrix() * Complex(b.probability) - target)) {
            total += std::abs(l);
        }
    }
    return total;
}

double distinguish_advantage(const DensityMatrix &rho, const DensityMatrix &sigma) {
    return 0.5 + trace_distance(rho, sigma) / 4.0;
}

double fact_trace2_epsilon(double purity_value, std::size_t d) {
    return std::sqrt(std::max(0.0, static_cast<double>(d) * purity_value - 1.0));
}

namespace {
std::vector<Complex> gaussian_vector(std::size_t dim, Rng &rng) {
    std::vector<Complex> v(dim);
    for (auto &z : v) {
        const double re = rng.normal();
        const double im = rng.normal();
        z = Complex(re, im);
    }
    return v;
}

void require_desk_dim(std::size_t dim) {
    if (dim == 0 || dim > 4096) {
        throw std::invalid_argument(fmt::format("random state: dimension {} outside [1, 4096]", dim));
    }
}
}  // namespace

DensityMatrix random_pure_density(std::size_t dim, std::uint64_t seed) {
    require_desk_dim(dim);
    Rng rng(seed);
    return DensityMatrix::pure(gaussian_vector(dim, rng));
}

DensityMatrix random_mixed_density(std::size_t dim, std::size_t rank, std::uint64_t seed) {
    require_desk_dim(dim);
    if (rank == 0) throw std::invalid_argument("random_mixed_density: rank must be positive");
    Rng rng(seed);
    ComplexMatrix acc(dim);
    for (std::size_t j = 0; j < rank; ++j) acc += DensityMatrix::pure(gaussian_vector(dim, rng)).matrix();
    acc *= 1.0 / static_cast<double>(rank);
    return DensityMatrix::trusted(std::move(acc));
}

}  // namespace qpad::qcore
