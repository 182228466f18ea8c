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
#include <iosfwd>
#include <string>
#include <string_view>

#include "qpad/gf2.hpp"
#include "qpad/qcore.hpp"
#include "qpad/schemes.hpp"
#include "qpad/smallbias.hpp"

// Text file formats.
//
//   hex word      "0x" + lowercase hex of the little-endian bit packing
//   SBSET         "SBSET v1 m=<m> count=<c> bias=<delta>", then one hex point per line
//   QSTATE        "QSTATE v1 dim=<d>", then d rows of d entries "<re>{+|-}<im>i",
//                 each number with 17 significant digits
//   QKEY          "QKEY v1 scheme=<A|B|C> n=<n>", then one line of hex material:
//                 A: index   B: kappa   C: a index
//   QCT           "QCT v1 tag=0x..", then a QSTATE block (scheme B ciphertexts)
//
// Parsers throw std::invalid_argument with the offending line on malformed input.

namespace qpad::formats {

std::string to_hex(std::uint64_t word);
std::uint64_t parse_hex(std::string_view text);

std::string format_field_element(const gf2::FieldElement &e);
gf2::FieldElement parse_field_element(const gf2::FieldSpec &spec, std::string_view text);

/// %.17g, which parses back to the identical double.
std::string format_real(double x);
/// "<re>{+|-}<im>i"; the sign of a negative-zero imaginary part is kept.
std::string format_complex(qcore::Complex z);
qcore::Complex parse_complex(std::string_view text);

void write_set(std::ostream &out, const smallbias::SmallBiasSet &set, double bias);
smallbias::SmallBiasSet read_set(std::istream &in);

void write_matrix(std::ostream &out, const qcore::ComplexMatrix &m);
qcore::ComplexMatrix read_matrix(std::istream &in);
void write_state(std::ostream &out, const qcore::DensityMatrix &rho);
/// Validates density-matrix invariants.
qcore::DensityMatrix read_state(std::istream &in);

struct KeyFile {
    schemes::SchemeKind kind;
    unsigned n;
    schemes::Key key;
};

void write_key(std::ostream &out, const KeyFile &key);
KeyFile read_key(std::istream &in);

void write_ciphertext(std::ostream &out, const schemes::Ciphertext &ct);
/// A file starting with QCT yields a tagged ciphertext of kind B; a plain
/// QSTATE file yields the given kind (A or C). The tag is parsed in `field`.
schemes::Ciphertext read_ciphertext(std::istream &in, schemes::SchemeKind kind, const gf2::FieldSpec *field);

}  // namespace qpad::formats
