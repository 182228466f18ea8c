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
#include <functional>
#include <optional>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "qpad/gf2.hpp"

// Small-bias sample spaces over {0,1}^m and families of them.
//
// The bias of a distribution A at a character alpha is
//   A^(alpha) = E_A[(-1)^{alpha . A}],
// and a set is delta-biased when |A^(alpha)| <= delta for every alpha != 0.
// A family {A_i} is delta-biased when sqrt(E_i[A_i^(alpha)^2]) <= delta.
// Everything here certifies bias exactly by enumeration; claimed values are
// only carried along for comparison.

namespace qpad::smallbias {

/// Largest m for which a 2^m-entry Walsh-Hadamard transform is attempted.
inline constexpr unsigned kMaxTransformBits = 24;
/// Largest number of points a construction will materialize.
inline constexpr std::uint64_t kMaxPoints = std::uint64_t{1} << 26;

enum class Construction { Aghp, Exhaustive, FullSpace, ExplicitList };

std::string_view to_string(Construction c);

class SmallBiasSet {
  public:
    /// Throws std::invalid_argument if points is empty or any point does not
    /// fit in m bits.
    SmallBiasSet(unsigned m, std::vector<std::uint64_t> points, double claimed_bias,
                 Construction tag);

    unsigned bits() const { return m_; }
    std::size_t size() const { return points_.size(); }
    std::span<const std::uint64_t> points() const { return points_; }
    gf2::BitString point(std::size_t i) const { return {m_, points_.at(i)}; }
    double claimed_bias() const { return claimed_bias_; }
    Construction construction() const { return tag_; }

  private:
    unsigned m_;
    std::vector<std::uint64_t> points_;
    double claimed_bias_;
    Construction tag_;
};

struct BiasReport {
    double max_bias = 0.0;
    gf2::BitString argmax_alpha{1, 0};
    /// Optional (bucket upper edge, count) pairs over |bias| of nonzero alpha.
    std::optional<std::vector<std::pair<double, std::uint64_t>>> histogram;
};

/// The 2^m points of {0,1}^m, bias 0.
SmallBiasSet full_space_set(unsigned m);

/// Powering construction: points are indexed by (x, y) in GF(2^field_degree)^2
/// and bit i of point (x, y) is <x^i, y>. Claimed bias (n_out - 1)/2^field_degree.
SmallBiasSet aghp_set(unsigned n_out, unsigned field_degree);

/// Signed character sums W(alpha) = sum_s (-1)^{alpha . s} for every alpha,
/// via an in-place fast Walsh-Hadamard transform of the point counts.
std::vector<std::int64_t> character_sums(const SmallBiasSet &set);

/// Exact bias A^(alpha) for every alpha in {0,1}^m.
std::vector<double> bias_spectrum(const SmallBiasSet &set);

/// Exact max_{alpha != 0} |A^(alpha)|; ties go to the smallest alpha.
BiasReport certify_bias(const SmallBiasSet &set, bool with_histogram = false);

enum class FamilyKind { LinearMultiples, AllKDimSpaces, SingletonWrap };

std::string_view to_string(FamilyKind k);

class SetFamily {
  public:
    using MemberFn = std::function<std::vector<std::uint64_t>(std::uint64_t)>;

    SetFamily(unsigned m, std::uint64_t index_size, double claimed_bias, FamilyKind kind,
              MemberFn member, MemberFn generators = {});

    unsigned bits() const { return m_; }
    std::uint64_t index_size() const { return index_size_; }
    double claimed_bias() const { return claimed_bias_; }
    FamilyKind kind() const { return kind_; }

    /// All points of member i, i < index_size().
    std::vector<std::uint64_t> member(std::uint64_t i) const;

    /// For linear kinds: a basis of member i. Empty optional otherwise.
    std::optional<std::vector<std::uint64_t>> generators(std::uint64_t i) const;

  private:
    unsigned m_;
    std::uint64_t index_size_;
    double claimed_bias_;
    FamilyKind kind_;
    MemberFn member_;
    MemberFn generators_;
};

/// {C_a : a in GF(2^n2) \ {0}} with C_a = {a kappa : kappa in K} and K the
/// span of 1, x, ..., x^{k-1}. Index i stands for a = i + 1. Claimed bias 2^{-k/2}.
SetFamily linear_family(unsigned n2, unsigned k);

/// Every k-dimensional subspace of {0,1}^m (m <= 8), enumerated through
/// reduced echelon bases. Claimed bias sqrt((2^{m-k} - 1)/(2^m - 1)).
SetFamily all_k_dim_spaces(unsigned m, unsigned k);

/// The single-member family {S}.
SetFamily singleton_family(const SmallBiasSet &set);

enum class FamilyRoute {
    Auto,     // dual-membership counting for linear kinds, Fourier otherwise
    Fourier,  // per-member Walsh-Hadamard transform for every kind
};

/// Mean squared bias E_i[A_i^(alpha)^2] for every alpha.
std::vector<double> family_mean_square_bias(const SetFamily &family,
                                            FamilyRoute route = FamilyRoute::Auto);

/// Exact max over alpha != 0 of sqrt(E_i[A_i^(alpha)^2]).
BiasReport certify_family_bias(const SetFamily &family, FamilyRoute route = FamilyRoute::Auto);

struct SearchBudget {
    unsigned restarts = 4;
    std::uint64_t proposals_per_restart = 20000;
};

/// Random-restart local search for s distinct points of {0,1}^m (m <= 12)
/// minimizing the maximum bias, then the sum of squared biases. Deterministic
/// for a given seed; returns the best set found with its certified bias as
/// the claimed value.
SmallBiasSet exhaustive_best_set(unsigned m, std::uint64_t s, std::uint64_t seed,
                                 SearchBudget budget = {});

}  // namespace qpad::smallbias
