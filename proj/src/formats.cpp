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

#include "qpad/formats.hpp"

#include <charconv>
#include <cmath>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <vector>

#include <fmt/format.h>

namespace qpad::formats {

namespace {

std::vector<std::string> split_ws(std::string_view line) {
    std::vector<std::string> out;
    std::istringstream ss{std::string(line)};
    std::string tok;
    while (ss >> tok) out.push_back(tok);
    return out;
}

std::string next_line(std::istream &in, const char *what) {
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.find_first_not_of(" \t") != std::string::npos) return line;
    }
    throw std::invalid_argument(fmt::format("unexpected end of input while reading {}", what));
}

// "<MAGIC> v1 key=value ..." -> key/value map.
std::map<std::string, std::string> parse_header(const std::string &line, std::string_view magic) {
    const auto toks = split_ws(line);
    if (toks.size() < 2 || toks[0] != magic || toks[1] != "v1") {
        throw std::invalid_argument(fmt::format("expected a '{} v1' header, got '{}'", magic, line));
    }
    std::map<std::string, std::string> kv;
    for (std::size_t i = 2; i < toks.size(); ++i) {
        const auto eq = toks[i].find('=');
        if (eq == std::string::npos) throw std::invalid_argument(fmt::format("malformed header field '{}'", toks[i]));
        kv[toks[i].substr(0, eq)] = toks[i].substr(eq + 1);
    }
    return kv;
}

const std::string &field(const std::map<std::string, std::string> &kv, const char *key, const std::string &line) {
    auto it = kv.find(key);
    if (it == kv.end()) throw std::invalid_argument(fmt::format("header '{}' lacks '{}='", line, key));
    return it->second;
}

std::uint64_t parse_uint(std::string_view text) {
    std::uint64_t v = 0;
    const auto *end = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(text.data(), end, v);
    if (ec != std::errc() || ptr != end) throw std::invalid_argument(fmt::format("bad integer '{}'", text));
    return v;
}

double parse_real(std::string_view text) {
    double v = 0.0;
    const auto *end = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(text.data(), end, v);
    if (ec != std::errc() || ptr != end || !std::isfinite(v)) {
        throw std::invalid_argument(fmt::format("bad number '{}'", text));
    }
    return v;
}

}  // namespace

std::string to_hex(std::uint64_t word) { return fmt::format("0x{:x}", word); }

std::uint64_t parse_hex(std::string_view text) {
    if (text.size() < 3 || text[0] != '0' || (text[1] != 'x' && text[1] != 'X')) {
        throw std::invalid_argument(fmt::format("expected 0x-prefixed hex, got '{}'", text));
    }
    std::uint64_t v = 0;
    const auto *end = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(text.data() + 2, end, v, 16);
    if (ec != std::errc() || ptr != end) throw std::invalid_argument(fmt::format("bad hex '{}'", text));
    return v;
}

std::string format_field_element(const gf2::FieldElement &e) { return to_hex(e.value()); }

gf2::FieldElement parse_field_element(const gf2::FieldSpec &spec, std::string_view text) {
    return {spec, parse_hex(text)};
}

std::string format_real(double x) { return fmt::format("{:.17g}", x); }

std::string format_complex(qcore::Complex z) {
    const double im = z.imag();
    return fmt::format("{}{}{}i", format_real(z.real()), std::signbit(im) ? '-' : '+', format_real(std::abs(im)));
}

qcore::Complex parse_complex(std::string_view text) {
    if (text.size() < 4 || text.back() != 'i') throw std::invalid_argument(fmt::format("bad complex '{}'", text));
    // The separator is the last sign that is neither leading nor an exponent sign.
    std::size_t split = std::string_view::npos;
    for (std::size_t i = text.size() - 1; i > 0; --i) {
        if ((text[i] == '+' || text[i] == '-') && text[i - 1] != 'e' && text[i - 1] != 'E') {
            split = i;
            break;
        }
    }
    if (split == std::string_view::npos) throw std::invalid_argument(fmt::format("bad complex '{}'", text));
    const double re = parse_real(text.substr(0, split));
    const double im_mag = parse_real(text.substr(split + 1, text.size() - split - 2));
    return {re, text[split] == '-' ? -im_mag : im_mag};
}

void write_set(std::ostream &out, const smallbias::SmallBiasSet &set, double bias) {
    out << fmt::format("SBSET v1 m={} count={} bias={}\n", set.bits(), set.size(), format_real(bias));
    for (auto p : set.points()) out << to_hex(p) << '\n';
}

smallbias::SmallBiasSet read_set(std::istream &in) {
    const auto header = next_line(in, "set header");
    const auto kv = parse_header(header, "SBSET");
    const auto m = static_cast<unsigned>(parse_uint(field(kv, "m", header)));
    const auto count = parse_uint(field(kv, "count", header));
    const double bias = parse_real(field(kv, "bias", header));
    if (count > smallbias::kMaxPoints) throw std::invalid_argument("set file: count exceeds the point limit");
    std::vector<std::uint64_t> points;
    points.reserve(count);
    for (std::uint64_t i = 0; i < count; ++i) points.push_back(parse_hex(next_line(in, "set point")));
    return {m, std::move(points), bias, smallbias::Construction::ExplicitList};
}

void write_matrix(std::ostream &out, const qcore::ComplexMatrix &m) {
    out << fmt::format("QSTATE v1 dim={}\n", m.dim());
    for (std::size_t r = 0; r < m.dim(); ++r) {
        for (std::size_t c = 0; c < m.dim(); ++c) {
            if (c) out << ' ';
            out << format_complex(m(r, c));
        }
        out << '\n';
    }
}

qcore::ComplexMatrix read_matrix(std::istream &in) {
    const auto header = next_line(in, "state header");
    const auto kv = parse_header(header, "QSTATE");
    const auto d = parse_uint(field(kv, "dim", header));
    if (d == 0 || d > 4096) throw std::invalid_argument(fmt::format("state dimension {} outside [1, 4096]", d));
    std::vector<qcore::Complex> entries;
    entries.reserve(d * d);
    for (std::uint64_t r = 0; r < d; ++r) {
        const auto line = next_line(in, "state row");
        const auto toks = split_ws(line);
        if (toks.size() != d) {
            throw std::invalid_argument(fmt::format("state row {} has {} entries, expected {}", r, toks.size(), d));
        }
        for (const auto &t : toks) entries.push_back(parse_complex(t));
    }
    return {d, std::move(entries)};
}

void write_state(std::ostream &out, const qcore::DensityMatrix &rho) { write_matrix(out, rho.matrix()); }

qcore::DensityMatrix read_state(std::istream &in) { return qcore::DensityMatrix::from_matrix(read_matrix(in)); }

void write_key(std::ostream &out, const KeyFile &key) {
    out << fmt::format("QKEY v1 scheme={} n={}\n", schemes::to_char(key.kind), key.n);
    std::visit(
        [&out](const auto &k) {
            using T = std::decay_t<decltype(k)>;
            if constexpr (std::is_same_v<T, schemes::SchemeAKey>) {
                out << to_hex(k.index) << '\n';
            } else if constexpr (std::is_same_v<T, schemes::SchemeBKey>) {
                out << to_hex(k.kappa) << '\n';
            } else {
                out << to_hex(k.a) << ' ' << to_hex(k.index) << '\n';
            }
        },
        key.key);
}

KeyFile read_key(std::istream &in) {
    const auto header = next_line(in, "key header");
    const auto kv = parse_header(header, "QKEY");
    const auto &scheme = field(kv, "scheme", header);
    if (scheme.size() != 1) throw std::invalid_argument(fmt::format("bad scheme '{}'", scheme));
    const auto kind = schemes::scheme_from_char(scheme[0]);
    const auto n = static_cast<unsigned>(parse_uint(field(kv, "n", header)));
    const auto toks = split_ws(next_line(in, "key material"));
    const std::size_t expected = kind == schemes::SchemeKind::C ? 2 : 1;
    if (toks.size() != expected) {
        throw std::invalid_argument(fmt::format("scheme {} key needs {} hex values", scheme, expected));
    }
    switch (kind) {
    case schemes::SchemeKind::A: return {kind, n, schemes::SchemeAKey{parse_hex(toks[0])}};
    case schemes::SchemeKind::B: return {kind, n, schemes::SchemeBKey{parse_hex(toks[0])}};
    case schemes::SchemeKind::C: return {kind, n, schemes::SchemeCKey{parse_hex(toks[0]), parse_hex(toks[1])}};
    }
    throw std::invalid_argument("unreachable");
}

void write_ciphertext(std::ostream &out, const schemes::Ciphertext &ct) {
    if (ct.kind == schemes::SchemeKind::B) {
        if (!ct.tag) throw std::invalid_argument("scheme B ciphertext without tag");
        out << fmt::format("QCT v1 tag={}\n", format_field_element(*ct.tag));
    }
    write_state(out, ct.state);
}

schemes::Ciphertext read_ciphertext(std::istream &in, schemes::SchemeKind kind, const gf2::FieldSpec *field_spec) {
    if (kind != schemes::SchemeKind::B) return {kind, read_state(in), std::nullopt};
    const auto header = next_line(in, "ciphertext header");
    const auto kv = parse_header(header, "QCT");
    if (!field_spec) throw std::invalid_argument("scheme B ciphertext needs a field to parse its tag");
    auto tag = parse_field_element(*field_spec, field(kv, "tag", header));
    if (tag.is_zero()) throw std::invalid_argument("scheme B ciphertext tag must be nonzero");
    return {kind, read_state(in), tag};
}

}  // namespace qpad::formats
