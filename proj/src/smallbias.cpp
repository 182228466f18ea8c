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

#include "qpad/smallbias.hpp"

#include <algorithm>
#include <bit>
#include <memory>
#include <cmath>
#include <cstdlib>
#include <stdexcept>

#include <fmt/format.h>

#include "qpad/errors.hpp"
#include "qpad/random.hpp"

namespace qpad::smallbias {

namespace {

void require_transform_feasible(unsigned m, const char *op) {
    if (m > kMaxTransformBits) {
        throw ResourceLimit(fmt::format("{}: {} bits exceeds the {}-bit transform limit; reduce the bit count",
                                        op, m, kMaxTransformBits));
    }
}

void walsh_hadamard(std::vector<std::int64_t> &v) {
    for (std::size_t h = 1; h < v.size(); h <<= 1) {
        for (std::size_t i = 0; i < v.size(); i += h << 1) {
            for (std::size_t j = i; j < i + h; ++j) {
                const std::int64_t a = v[j];
                const std::int64_t b = v[j + h];
                v[j] = a + b;
                v[j + h] = a - b;
            }
        }
    }
}

std::vector<std::int64_t> point_counts(unsigned m, std::span<const std::uint64_t> points) {
    std::vector<std::int64_t> counts(std::size_t{1} << m, 0);
    for (auto p : points) ++counts[p];
    return counts;
}

// Largest value over alpha != 0; first (smallest) alpha wins ties.
template <typename Values, typename Key>
BiasReport report_from(unsigned m, const Values &values, Key key, bool with_histogram) {
    std::size_t best = 1;
    double best_value = key(values[1]);
    for (std::size_t alpha = 2; alpha < values.size(); ++alpha) {
        const double v = key(values[alpha]);
        if (v > best_value) {
            best_value = v;
            best = alpha;
        }
    }
    BiasReport report;
    report.max_bias = best_value;
    report.argmax_alpha = gf2::BitString(m, best);
    if (with_histogram) {
        constexpr int kBuckets = 10;
        std::vector<std::pair<double, std::uint64_t>> hist;
        for (int b = 0; b < kBuckets; ++b) hist.emplace_back((b + 1) / double(kBuckets), 0);
        for (std::size_t alpha = 1; alpha < values.size(); ++alpha) {
            const double v = key(values[alpha]);
            const int b = std::min(kBuckets - 1, static_cast<int>(v * kBuckets));
            ++hist[b].second;
        }
        report.histogram = std::move(hist);
    }
    return report;
}

}  // namespace

std::string_view to_string(Construction c) {
    switch (c) {
    case Construction::Aghp: return "AGHP";
    case Construction::Exhaustive: return "EXHAUSTIVE";
    case Construction::FullSpace: return "FULL_SPACE";
    case Construction::ExplicitList: return "EXPLICIT_LIST";
    }
    return "?";
}

std::string_view to_string(FamilyKind k) {
    switch (k) {
    case FamilyKind::LinearMultiples: return "LINEAR_MULTIPLES";
    case FamilyKind::AllKDimSpaces: return "ALL_K_DIM_SPACES";
    case FamilyKind::SingletonWrap: return "SINGLETON_WRAP";
    }
    return "?";
}

SmallBiasSet::SmallBiasSet(unsigned m, std::vector<std::uint64_t> points, double claimed_bias,
                           Construction tag)
    : m_(m), points_(std::move(points)), claimed_bias_(claimed_bias), tag_(tag) {
    if (m == 0 || m > gf2::kMaxBits) {
        throw std::invalid_argument(fmt::format("small-bias set: {} bits outside [1, 64]", m));
    }
    if (points_.empty()) throw std::invalid_argument("small-bias set: no points");
    const auto mask = gf2::low_mask(m);
    for (auto p : points_) {
        if (p & ~mask) {
            throw std::invalid_argument(fmt::format("small-bias set: point 0x{:x} exceeds {} bits", p, m));
        }
    }
    if (!(claimed_bias >= 0.0 && claimed_bias <= 1.0)) {
        throw std::invalid_argument(fmt::format("small-bias set: claimed bias {} outside [0, 1]", claimed_bias));
    }
}

SmallBiasSet full_space_set(unsigned m) {
    if (m == 0 || m > 26) {
        throw ResourceLimit(fmt::format("full space over {} bits is too large to materialize", m));
    }
    std::vector<std::uint64_t> pts(std::size_t{1} << m);
    for (std::size_t i = 0; i < pts.size(); ++i) pts[i] = i;
    return {m, std::move(pts), 0.0, Construction::FullSpace};
}

SmallBiasSet aghp_set(unsigned n_out, unsigned field_degree) {
    if (n_out == 0 || n_out > gf2::kMaxBits) {
        throw std::invalid_argument(fmt::format("aghp_set: output length {} outside [1, 64]", n_out));
    }
    if (field_degree == 0 || field_degree > 24) {
        throw std::invalid_argument(fmt::format("aghp_set: field degree {} outside [1, 24]", field_degree));
    }
    if ((std::uint64_t{1} << (2 * field_degree)) > kMaxPoints) {
        throw ResourceLimit(fmt::format(
            "aghp_set: 2^{} points exceeds the materialization limit; reduce --field", 2 * field_degree));
    }
    const auto field = gf2::find_irreducible(field_degree);
    const std::uint64_t q = field.order();
    std::vector<std::uint64_t> points;
    points.reserve(q * q);
    std::vector<std::uint64_t> powers(n_out);
    for (std::uint64_t x = 0; x < q; ++x) {
        std::uint64_t p = 1;
        for (unsigned i = 0; i < n_out; ++i) {
            powers[i] = p;
            p = field.mul(p, x);
        }
        for (std::uint64_t y = 0; y < q; ++y) {
            std::uint64_t point = 0;
            for (unsigned i = 0; i < n_out; ++i) {
                point |= std::uint64_t{gf2::dot_word(powers[i], y)} << i;
            }
            points.push_back(point);
        }
    }
    const double claimed = std::min(1.0, (n_out - 1) / static_cast<double>(q));
    return {n_out, std::move(points), claimed, Construction::Aghp};
}

std::vector<std::int64_t> character_sums(const SmallBiasSet &set) {
    require_transform_feasible(set.bits(), "character_sums");
    auto counts = point_counts(set.bits(), set.points());
    walsh_hadamard(counts);
    return counts;
}

std::vector<double> bias_spectrum(const SmallBiasSet &set) {
    const auto sums = character_sums(set);
    const double n = static_cast<double>(set.size());
    std::vector<double> out(sums.size());
    for (std::size_t i = 0; i < sums.size(); ++i) out[i] = static_cast<double>(sums[i]) / n;
    return out;
}

BiasReport certify_bias(const SmallBiasSet &set, bool with_histogram) {
    const auto sums = character_sums(set);
    const double n = static_cast<double>(set.size());
    return report_from(set.bits(), sums,
                       [n](std::int64_t w) { return static_cast<double>(std::llabs(w)) / n; },
                       with_histogram);
}

SetFamily::SetFamily(unsigned m, std::uint64_t index_size, double claimed_bias, FamilyKind kind,
                     MemberFn member, MemberFn generators)
    : m_(m), index_size_(index_size), claimed_bias_(claimed_bias), kind_(kind),
      member_(std::move(member)), generators_(std::move(generators)) {
    if (index_size_ == 0) throw std::invalid_argument("set family: empty index set");
    if (!member_) throw std::invalid_argument("set family: missing member function");
}

std::vector<std::uint64_t> SetFamily::member(std::uint64_t i) const {
    if (i >= index_size_) {
        throw std::out_of_range(fmt::format("set family: index {} >= {}", i, index_size_));
    }
    return member_(i);
}

std::optional<std::vector<std::uint64_t>> SetFamily::generators(std::uint64_t i) const {
    if (!generators_) return std::nullopt;
    if (i >= index_size_) {
        throw std::out_of_range(fmt::format("set family: index {} >= {}", i, index_size_));
    }
    return generators_(i);
}

SetFamily linear_family(unsigned n2, unsigned k) {
    if (k < 1 || k > n2 || n2 > 24) {
        throw std::invalid_argument(fmt::format("linear_family: need 1 <= k <= n2 <= 24, got k={} n2={}", k, n2));
    }
    const auto field = gf2::find_irreducible(n2);
    auto gens = [field, k](std::uint64_t i) {
        const std::uint64_t a = i + 1;
        std::vector<std::uint64_t> out(k);
        for (unsigned j = 0; j < k; ++j) out[j] = field.mul(a, std::uint64_t{1} << j);
        return out;
    };
    auto member = [gens](std::uint64_t i) { return gf2::span_words(gens(i)); };
    return {n2, field.order() - 1, std::pow(2.0, -0.5 * k), FamilyKind::LinearMultiples,
            std::move(member), std::move(gens)};
}

namespace {

// Reduced echelon bases: row r has its highest set bit at pivots[r] and is zero
// at every other pivot.
void enumerate_echelon(unsigned m, const std::vector<unsigned> &pivots, std::size_t row,
                       std::vector<std::uint64_t> &current,
                       std::vector<std::vector<std::uint64_t>> &out) {
    if (row == pivots.size()) {
        out.push_back(current);
        return;
    }
    std::uint64_t pivot_mask = 0;
    for (unsigned p : pivots) pivot_mask |= std::uint64_t{1} << p;
    const unsigned p = pivots[row];
    std::vector<unsigned> free_bits;
    for (unsigned b = 0; b < p; ++b) {
        if (!(pivot_mask & (std::uint64_t{1} << b))) free_bits.push_back(b);
    }
    for (std::uint64_t c = 0; c < (std::uint64_t{1} << free_bits.size()); ++c) {
        std::uint64_t v = std::uint64_t{1} << p;
        for (std::size_t j = 0; j < free_bits.size(); ++j) {
            if (c & (std::uint64_t{1} << j)) v |= std::uint64_t{1} << free_bits[j];
        }
        current[row] = v;
        enumerate_echelon(m, pivots, row + 1, current, out);
    }
}

}  // namespace

SetFamily all_k_dim_spaces(unsigned m, unsigned k) {
    if (m < 1 || m > 8 || k < 1 || k > m) {
        throw std::invalid_argument(fmt::format("all_k_dim_spaces: need 1 <= k <= m <= 8, got k={} m={}", k, m));
    }
    auto bases = std::make_shared<std::vector<std::vector<std::uint64_t>>>();
    for (std::uint64_t subset = 0; subset < (std::uint64_t{1} << m); ++subset) {
        if (static_cast<unsigned>(std::popcount(subset)) != k) continue;
        std::vector<unsigned> pivots;
        for (unsigned b = 0; b < m; ++b) {
            if (subset & (std::uint64_t{1} << b)) pivots.push_back(b);
        }
        std::vector<std::uint64_t> current(k);
        enumerate_echelon(m, pivots, 0, current, *bases);
    }
    const double full = std::pow(2.0, m);
    const double claimed = std::sqrt((std::pow(2.0, m - k) - 1.0) / (full - 1.0));
    auto gens = [bases](std::uint64_t i) { return (*bases)[i]; };
    auto member = [bases](std::uint64_t i) { return gf2::span_words((*bases)[i]); };
    return {m, bases->size(), claimed, FamilyKind::AllKDimSpaces, std::move(member), std::move(gens)};
}

SetFamily singleton_family(const SmallBiasSet &set) {
    auto pts = std::make_shared<std::vector<std::uint64_t>>(set.points().begin(), set.points().end());
    return {set.bits(), 1, set.claimed_bias(), FamilyKind::SingletonWrap,
            [pts](std::uint64_t) { return *pts; }};
}

std::vector<double> family_mean_square_bias(const SetFamily &family, FamilyRoute route) {
    const unsigned m = family.bits();
    require_transform_feasible(m, "family_mean_square_bias");
    const std::uint64_t work = family.index_size() << m;
    if (family.index_size() > (std::uint64_t{1} << 32) || work > (std::uint64_t{1} << 36)) {
        throw ResourceLimit(fmt::format(
            "family_mean_square_bias: {} members over {} bits is beyond desk scale; reduce n2", family.index_size(), m));
    }
    const double members = static_cast<double>(family.index_size());
    const bool linear = family.kind() != FamilyKind::SingletonWrap;

    if (route == FamilyRoute::Auto && linear) {
        // For a linear space C the bias is 1 on C^perp and 0 elsewhere.
        std::vector<std::uint64_t> in_dual(std::size_t{1} << m, 0);
        for (std::uint64_t i = 0; i < family.index_size(); ++i) {
            const auto gens = *family.generators(i);
            for (auto alpha : gf2::span_words(gf2::dual_basis(gens, m))) ++in_dual[alpha];
        }
        std::vector<double> out(in_dual.size());
        for (std::size_t a = 0; a < out.size(); ++a) out[a] = static_cast<double>(in_dual[a]) / members;
        return out;
    }

    std::vector<double> acc(std::size_t{1} << m, 0.0);
    for (std::uint64_t i = 0; i < family.index_size(); ++i) {
        const auto pts = family.member(i);
        auto sums = point_counts(m, pts);
        walsh_hadamard(sums);
        const double n = static_cast<double>(pts.size());
        for (std::size_t a = 0; a < acc.size(); ++a) {
            const double b = static_cast<double>(sums[a]) / n;
            acc[a] += b * b;
        }
    }
    for (auto &v : acc) v /= members;
    return acc;
}

BiasReport certify_family_bias(const SetFamily &family, FamilyRoute route) {
    const auto ms = family_mean_square_bias(family, route);
    return report_from(family.bits(), ms, [](double v) { return std::sqrt(std::max(0.0, v)); }, false);
}

namespace {

struct Score {
    std::int64_t max_abs;
    std::int64_t sum_sq;
    auto operator<=>(const Score &) const = default;
};

Score score_of(const std::vector<std::int64_t> &w) {
    Score s{0, 0};
    for (std::size_t a = 1; a < w.size(); ++a) {
        s.max_abs = std::max<std::int64_t>(s.max_abs, std::llabs(w[a]));
        s.sum_sq += w[a] * w[a];
    }
    return s;
}

inline std::int64_t character(std::uint64_t alpha, std::uint64_t p) {
    return gf2::dot_word(alpha, p) ? -1 : 1;
}

}  // namespace

SmallBiasSet exhaustive_best_set(unsigned m, std::uint64_t s, std::uint64_t seed, SearchBudget budget) {
    if (m < 1 || m > 12) {
        throw std::invalid_argument(fmt::format("exhaustive_best_set: {} bits outside [1, 12]", m));
    }
    const std::uint64_t space = std::uint64_t{1} << m;
    if (s < 1 || s > space) {
        throw std::invalid_argument(fmt::format("exhaustive_best_set: size {} outside [1, 2^{}]", s, m));
    }
    Rng rng(seed);
    std::vector<std::uint64_t> best_points;
    Score best_score{INT64_MAX, INT64_MAX};

    for (unsigned restart = 0; restart < std::max(1u, budget.restarts); ++restart) {
        std::vector<std::uint64_t> all(space);
        for (std::uint64_t i = 0; i < space; ++i) all[i] = i;
        rng.shuffle(all);
        std::vector<std::uint64_t> chosen(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(s));
        std::vector<char> in_set(space, 0);
        for (auto p : chosen) in_set[p] = 1;

        auto w = point_counts(m, chosen);
        walsh_hadamard(w);
        Score current = score_of(w);

        if (s < space) {
            for (std::uint64_t prop = 0; prop < budget.proposals_per_restart; ++prop) {
                if (current.max_abs == 0) break;
                const auto slot = static_cast<std::size_t>(rng.below(s));
                std::uint64_t candidate;
                do {
                    candidate = rng.below(space);
                } while (in_set[candidate]);
                const std::uint64_t old = chosen[slot];
                Score trial{0, 0};
                for (std::uint64_t a = 1; a < space; ++a) {
                    const std::int64_t v = w[a] - character(a, old) + character(a, candidate);
                    trial.max_abs = std::max<std::int64_t>(trial.max_abs, std::llabs(v));
                    trial.sum_sq += v * v;
                }
                if (trial < current) {
                    for (std::uint64_t a = 0; a < space; ++a) {
                        w[a] += character(a, candidate) - character(a, old);
                    }
                    in_set[old] = 0;
                    in_set[candidate] = 1;
                    chosen[slot] = candidate;
                    current = trial;
                }
            }
        }
        if (current < best_score) {
            best_score = current;
            best_points = chosen;
        }
    }
    std::sort(best_points.begin(), best_points.end());
    const double bias = static_cast<double>(best_score.max_abs) / static_cast<double>(s);
    return {m, std::move(best_points), bias, Construction::Exhaustive};
}

}  // namespace qpad::smallbias
