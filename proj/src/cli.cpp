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

#include "qpad/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <istream>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "qpad/errors.hpp"
#include "qpad/formats.hpp"
#include "qpad/parallel.hpp"
#include "qpad/random.hpp"
#include "qpad/smallbias.hpp"
#include "qpad/verify.hpp"

namespace qpad::cli {

void apply_thread_env() {
    const char *env = std::getenv("QPAD_THREADS");
    if (!env || !*env) return;
    char *end = nullptr;
    const unsigned long v = std::strtoul(env, &end, 10);
    if (*end != '\0' || v == 0) throw std::invalid_argument(fmt::format("QPAD_THREADS='{}' is not a positive integer", env));
    set_thread_budget(static_cast<unsigned>(std::min<unsigned long>(v, 1024)));
}

std::vector<schemes::KeyLengthRow> keylen_table(const KeyLengthSpec &spec) {
    std::vector<schemes::KeyLengthRow> rows;
    for (auto eps : spec.epsilons)
        for (auto n : spec.ns) rows.push_back(schemes::key_length_row(n, eps));
    return rows;
}

namespace {

std::string keylen_header(const KeyLengthSpec &spec) {
    return fmt::format("qpad keylen seed={} prng=mt19937_64 (key lengths in bits, additive constants omitted)",
                       spec.seed);
}

constexpr const char *kKeylenColumns[] = {"n",      "epsilon",        "scheme_a",  "scheme_b",
                                          "scheme_c_aghp", "scheme_c_abnnr_not_constructed", "scheme_c_min",
                                          "min_source"};

}  // namespace

void write_keylen_table(std::ostream &out, const KeyLengthSpec &spec, const std::vector<schemes::KeyLengthRow> &rows) {
    out << "# " << keylen_header(spec) << '\n';
    out << "# scheme_a = n + 2 log n + 2 log(1/eps); scheme_b = n + 2 log(1/eps)\n";
    out << "# scheme_c = min(aghp: n + 2 log n + 2 log(1/eps), abnnr*: n + log n + 3 log(1/eps))\n";
    out << fmt::format("{:>6} {:>12} {:>9} {:>9} {:>9} {:>9} {:>9} {}\n", "n", "epsilon", "A", "B", "C-aghp",
                       "C-abnnr*", "C-min", "min");
    for (const auto &r : rows) {
        out << fmt::format("{:>6} {:>12.6g} {:>9} {:>9} {:>9} {:>9} {:>9} {}\n", r.n, r.epsilon, r.scheme_a,
                           r.scheme_b, r.scheme_c_aghp, r.scheme_c_abnnr, r.scheme_c,
                           r.abnnr_smaller ? "abnnr*" : "aghp");
    }
    out << "# * abnnr: formula only, not constructed\n";
}

void write_keylen_csv(std::ostream &out, const KeyLengthSpec &spec, const std::vector<schemes::KeyLengthRow> &rows) {
    out << "# " << keylen_header(spec) << '\n';
    for (std::size_t i = 0; i < std::size(kKeylenColumns); ++i) out << (i ? "," : "") << kKeylenColumns[i];
    out << '\n';
    for (const auto &r : rows) {
        out << fmt::format("{},{},{},{},{},{},{},{}\n", r.n, formats::format_real(r.epsilon), r.scheme_a, r.scheme_b,
                           r.scheme_c_aghp, r.scheme_c_abnnr, r.scheme_c, r.abnnr_smaller ? "abnnr" : "aghp");
    }
}

std::vector<schemes::KeyLengthRow> parse_keylen_csv(std::istream &in) {
    std::vector<schemes::KeyLengthRow> rows;
    std::string line;
    bool seen_columns = false;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::vector<std::string> cells;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) cells.push_back(cell);
        if (cells.size() != std::size(kKeylenColumns)) {
            throw std::invalid_argument(fmt::format("keylen csv: malformed line '{}'", line));
        }
        if (!seen_columns) {
            if (cells[0] != "n") throw std::invalid_argument("keylen csv: missing column header");
            seen_columns = true;
            continue;
        }
        auto u = [](const std::string &s) { return static_cast<std::uint64_t>(std::stoull(s)); };
        schemes::KeyLengthRow r{};
        r.n = static_cast<unsigned>(u(cells[0]));
        r.epsilon = std::stod(cells[1]);
        r.scheme_a = u(cells[2]);
        r.scheme_b = u(cells[3]);
        r.scheme_c_aghp = u(cells[4]);
        r.scheme_c_abnnr = u(cells[5]);
        r.scheme_c = u(cells[6]);
        if (cells[7] != "abnnr" && cells[7] != "aghp") throw std::invalid_argument("keylen csv: bad min_source");
        r.abnnr_smaller = cells[7] == "abnnr";
        rows.push_back(r);
    }
    return rows;
}

namespace {

// Writes to `path`, or to `fallback` when the path is empty.
void emit(const std::string &path, std::ostream &fallback, const std::function<void(std::ostream &)> &body) {
    if (path.empty()) {
        body(fallback);
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::invalid_argument(fmt::format("cannot open '{}' for writing", path));
    body(f);
    if (!f) throw std::invalid_argument(fmt::format("write to '{}' failed", path));
}

std::ifstream open_input(const std::string &path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw std::invalid_argument(fmt::format("cannot open '{}'", path));
    return f;
}

smallbias::SmallBiasSet load_set(const std::string &path) {
    if (path.empty()) throw std::invalid_argument("this scheme needs --set");
    auto f = open_input(path);
    return formats::read_set(f);
}

qcore::DensityMatrix load_state(const std::string &path) {
    auto f = open_input(path);
    return formats::read_state(f);
}

formats::KeyFile load_key(const std::string &path) {
    auto f = open_input(path);
    return formats::read_key(f);
}

schemes::SchemeKind parse_scheme(const std::string &s) {
    if (s.size() != 1) throw std::invalid_argument(fmt::format("--scheme must be A, B or C, got '{}'", s));
    return schemes::scheme_from_char(s[0]);
}

std::uint64_t qubit_dim(unsigned n) {
    if (n == 0 || n > 12) throw std::invalid_argument("--n must be in [1, 12]");
    return std::uint64_t{1} << n;
}

struct Options {
    std::string format = "table";
    std::uint64_t seed = 1;

    // make-set
    bool aghp = false, full = false, exhaustive = false;
    unsigned bits = 0, field = 0;
    std::uint64_t size = 0;
    unsigned restarts = smallbias::SearchBudget{}.restarts;
    std::uint64_t proposals = smallbias::SearchBudget{}.proposals_per_restart;
    // certify
    std::string set_path;
    bool histogram = false;
    // keys and states
    std::string scheme;
    unsigned n = 2;
    unsigned k = 0;
    double epsilon = 0.5;
    std::string key_path, state_path, in_path, out_path;
    // verify
    unsigned trials = 3;
    // keylen
    std::vector<unsigned> ns{8, 16, 32, 64, 128, 256};
    std::vector<double> epsilons{0.5, 0.125, 1.0 / 32, 1.0 / 1024};
};

int cmd_make_set(const Options &o, std::ostream &out, std::ostream &err) {
    const int chosen = int(o.aghp) + int(o.full) + int(o.exhaustive);
    if (chosen != 1) throw std::invalid_argument("make-set needs exactly one of --aghp, --full, --exhaustive");
    if (o.bits == 0) throw std::invalid_argument("make-set needs --bits");
    auto set = [&] {
        if (o.full) return smallbias::full_space_set(o.bits);
        if (o.aghp) {
            if (o.field == 0) throw std::invalid_argument("make-set --aghp needs --field");
            return smallbias::aghp_set(o.bits, o.field);
        }
        if (o.size == 0) throw std::invalid_argument("make-set --exhaustive needs --size");
        return smallbias::exhaustive_best_set(o.bits, o.size, o.seed, {o.restarts, o.proposals});
    }();
    double bias = set.claimed_bias();
    if (set.bits() <= smallbias::kMaxTransformBits) {
        bias = smallbias::certify_bias(set).max_bias;
    } else {
        err << fmt::format("warning: {} bits is beyond the certifier; writing the claimed bias\n", set.bits());
    }
    emit(o.out_path, out, [&](std::ostream &s) { formats::write_set(s, set, bias); });
    return kExitOk;
}

int cmd_certify(const Options &o, std::ostream &out) {
    const auto set = load_set(o.set_path);
    const auto rep = smallbias::certify_bias(set, o.histogram);
    const bool ok = rep.max_bias <= set.claimed_bias() + 1e-12;
    emit(o.out_path, out, [&](std::ostream &s) {
        s << fmt::format("# qpad certify seed={} prng=mt19937_64\n", o.seed);
        if (o.format == "csv") {
            s << "bits,points,claimed,certified,argmax,status\n";
            s << fmt::format("{},{},{},{},{},{}\n", set.bits(), set.size(), formats::format_real(set.claimed_bias()),
                             formats::format_real(rep.max_bias), formats::to_hex(rep.argmax_alpha.word()),
                             ok ? "PASS" : "FAIL");
        } else {
            s << fmt::format("bits       {}\npoints     {}\nclaimed    {}\ncertified  {}\nargmax     {}\nstatus     {}\n",
                             set.bits(), set.size(), formats::format_real(set.claimed_bias()),
                             formats::format_real(rep.max_bias), formats::to_hex(rep.argmax_alpha.word()),
                             ok ? "PASS" : "FAIL");
        }
        if (rep.histogram) {
            s << (o.format == "csv" ? "bucket_upper,count\n" : "# |bias| histogram over nonzero alpha\n");
            for (const auto &[edge, count] : *rep.histogram) {
                s << (o.format == "csv" ? fmt::format("{},{}\n", formats::format_real(edge), count)
                                        : fmt::format("<= {:<10.4g} {}\n", edge, count));
            }
        }
    });
    return ok ? kExitOk : kExitFail;
}

int cmd_make_key(const Options &o, std::ostream &out) {
    const auto kind = parse_scheme(o.scheme);
    const auto dim = qubit_dim(o.n);
    Rng rng(o.seed);
    formats::KeyFile key{kind, o.n, schemes::SchemeAKey{0}};
    switch (kind) {
    case schemes::SchemeKind::A: {
        const auto set = load_set(o.set_path);
        if (set.bits() != 2 * o.n) throw std::invalid_argument(fmt::format("scheme A needs a {}-bit set", 2 * o.n));
        key.key = schemes::SchemeAKey{rng.below(set.size())};
        break;
    }
    case schemes::SchemeKind::B: {
        const unsigned k = o.k ? o.k : schemes::scheme_b_key_bits_for(o.n, o.epsilon);
        const auto cfg = schemes::make_scheme_b(o.n, k, o.epsilon);
        key.key = schemes::SchemeBKey{rng.below(std::uint64_t{1} << cfg.k)};
        break;
    }
    case schemes::SchemeKind::C: {
        const auto set = load_set(o.set_path);
        const auto d = schemes::smallest_odd_prime_at_least(dim);
        if (set.bits() != schemes::bits_for_dimension(d)) {
            throw std::invalid_argument(fmt::format("scheme C at n={} needs a {}-bit set", o.n, schemes::bits_for_dimension(d)));
        }
        const auto a = rng.below(d);
        key.key = schemes::SchemeCKey{a, rng.below(set.size())};
        break;
    }
    }
    emit(o.out_path, out, [&](std::ostream &s) { formats::write_key(s, key); });
    return kExitOk;
}

int cmd_encrypt(const Options &o, std::ostream &out) {
    const auto key = load_key(o.key_path);
    const auto rho = load_state(o.state_path);
    if (rho.dim() != qubit_dim(key.n)) {
        throw std::invalid_argument(fmt::format("state has dimension {}, the key is for {} qubits", rho.dim(), key.n));
    }
    schemes::Ciphertext ct{key.kind, rho, std::nullopt};
    switch (key.kind) {
    case schemes::SchemeKind::A: {
        const auto cfg = schemes::make_scheme_a(key.n, load_set(o.set_path), 1.0);
        ct.state = schemes::scheme_a_encrypt(cfg, std::get<schemes::SchemeAKey>(key.key), rho);
        break;
    }
    case schemes::SchemeKind::B: {
        const auto cfg = schemes::make_scheme_b(key.n, 2 * key.n, 1.0);
        Rng rng(o.seed);
        auto c = schemes::scheme_b_encrypt(cfg, std::get<schemes::SchemeBKey>(key.key), rho, rng);
        ct.state = c.state;
        ct.tag = c.tag;
        break;
    }
    case schemes::SchemeKind::C: {
        const auto cfg = schemes::make_scheme_c(key.n, load_set(o.set_path), 1.0);
        ct.state = schemes::scheme_c_encrypt(cfg, std::get<schemes::SchemeCKey>(key.key),
                                             schemes::embed_qubits(rho, cfg.d));
        break;
    }
    }
    emit(o.out_path, out, [&](std::ostream &s) { formats::write_ciphertext(s, ct); });
    return kExitOk;
}

int cmd_decrypt(const Options &o, std::ostream &out) {
    const auto key = load_key(o.key_path);
    auto in = open_input(o.in_path);
    std::optional<qcore::DensityMatrix> plain;
    switch (key.kind) {
    case schemes::SchemeKind::A: {
        const auto cfg = schemes::make_scheme_a(key.n, load_set(o.set_path), 1.0);
        const auto ct = formats::read_ciphertext(in, key.kind, nullptr);
        plain = schemes::scheme_a_decrypt(cfg, std::get<schemes::SchemeAKey>(key.key), ct.state);
        break;
    }
    case schemes::SchemeKind::B: {
        const auto cfg = schemes::make_scheme_b(key.n, 2 * key.n, 1.0);
        const auto ct = formats::read_ciphertext(in, key.kind, &cfg.field);
        plain = schemes::scheme_b_decrypt(cfg, std::get<schemes::SchemeBKey>(key.key), {*ct.tag, ct.state});
        break;
    }
    case schemes::SchemeKind::C: {
        const auto cfg = schemes::make_scheme_c(key.n, load_set(o.set_path), 1.0);
        const auto ct = formats::read_ciphertext(in, key.kind, nullptr);
        plain = schemes::unembed(schemes::scheme_c_decrypt(cfg, std::get<schemes::SchemeCKey>(key.key), ct.state),
                                 key.n);
        break;
    }
    }
    emit(o.out_path, out, [&](std::ostream &s) { formats::write_state(s, *plain); });
    return kExitOk;
}

int cmd_verify(const Options &o, std::ostream &out) {
    const auto report = verify::run_verify({o.n, o.epsilon, o.seed, o.trials});
    emit(o.out_path, out, [&](std::ostream &s) {
        if (o.format == "csv") {
            verify::write_report_csv(s, report);
        } else {
            verify::write_report_table(s, report);
        }
    });
    return report.all_pass() ? kExitOk : kExitFail;
}

int cmd_keylen(const Options &o, std::ostream &out) {
    const KeyLengthSpec spec{o.ns, o.epsilons, o.seed};
    const auto rows = keylen_table(spec);
    emit(o.out_path, out, [&](std::ostream &s) {
        if (o.format == "csv") {
            write_keylen_csv(s, spec, rows);
        } else {
            write_keylen_table(s, spec, rows);
        }
    });
    return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    CLI::App app{"qpad: approximate quantum encryption with small-bias key sets"};
    app.name("qpad");
    app.footer(
        "Randomness: every random choice comes from std::mt19937_64 seeded with --seed (default 1);\n"
        "reports echo the seed in their header. QPAD_THREADS caps worker threads.\n"
        "Exit codes: 0 ok, 1 a check FAILed, 2 usage/input error, 3 resource limit, 4 numerical failure.");
    app.require_subcommand(1);
    app.fallthrough();

    Options o;
    app.add_option("--format", o.format, "Report format")->check(CLI::IsMember({"table", "csv"}));
    app.add_option("--seed", o.seed, "Seed for std::mt19937_64");
    app.add_option("--out", o.out_path, "Output file (default: standard output)");

    auto *make_set = app.add_subcommand("make-set", "Build a small-bias set and write it with its certified bias");
    make_set->add_flag("--aghp", o.aghp, "Powering construction over GF(2^field)");
    make_set->add_flag("--full", o.full, "All of {0,1}^bits");
    make_set->add_flag("--exhaustive", o.exhaustive, "Local search for a low-bias set of --size points");
    make_set->add_option("--bits", o.bits, "Output length m");
    make_set->add_option("--field", o.field, "Field degree for --aghp");
    make_set->add_option("--size", o.size, "Number of points for --exhaustive");
    make_set->add_option("--restarts", o.restarts, "Search restarts for --exhaustive");
    make_set->add_option("--proposals", o.proposals, "Swap proposals per restart for --exhaustive");

    auto *certify = app.add_subcommand("certify", "Compute the exact bias of a set file");
    certify->add_option("--set", o.set_path, "SBSET file")->required();
    certify->add_flag("--histogram", o.histogram, "Also print a histogram of |bias|");

    auto *make_key = app.add_subcommand("make-key", "Draw a random key");
    make_key->add_option("--scheme", o.scheme, "A, B or C")->required();
    make_key->add_option("--n", o.n, "Number of qubits");
    make_key->add_option("--set", o.set_path, "Key set (schemes A and C)");
    make_key->add_option("--k", o.k, "Scheme B key bits (default from --epsilon)");
    make_key->add_option("--epsilon", o.epsilon, "Target leakage for scheme B key length");

    auto *encrypt = app.add_subcommand("encrypt", "Encrypt a QSTATE file");
    encrypt->add_option("--key", o.key_path, "QKEY file")->required();
    encrypt->add_option("--state", o.state_path, "QSTATE file")->required();
    encrypt->add_option("--set", o.set_path, "Key set (schemes A and C)");

    auto *decrypt = app.add_subcommand("decrypt", "Decrypt a ciphertext file");
    decrypt->add_option("--key", o.key_path, "QKEY file")->required();
    decrypt->add_option("--in", o.in_path, "Ciphertext file")->required();
    decrypt->add_option("--set", o.set_path, "Key set (schemes A and C)");

    auto *verify_cmd = app.add_subcommand("verify", "Check every scheme's bounds on the adversarial suite");
    verify_cmd->add_option("--n", o.n, "Number of qubits (1..5)");
    verify_cmd->add_option("--epsilon", o.epsilon, "Target leakage");
    verify_cmd->add_option("--trials", o.trials, "Random pure states per suite");

    auto *keylen = app.add_subcommand("keylen", "Tabulate key-length formulas");
    keylen->add_option("--n", o.ns, "Qubit counts")->delimiter(',');
    keylen->add_option("--epsilon", o.epsilons, "Leakage targets")->delimiter(',');

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        apply_thread_env();
        if (make_set->parsed()) return cmd_make_set(o, out, err);
        if (certify->parsed()) return cmd_certify(o, out);
        if (make_key->parsed()) return cmd_make_key(o, out);
        if (encrypt->parsed()) return cmd_encrypt(o, out);
        if (decrypt->parsed()) return cmd_decrypt(o, out);
        if (verify_cmd->parsed()) return cmd_verify(o, out);
        if (keylen->parsed()) return cmd_keylen(o, out);
    } catch (const ResourceLimit &e) {
        err << "resource limit: " << e.what() << '\n';
        return kExitResource;
    } catch (const NumericalFailure &e) {
        err << "numerical failure: " << e.what() << '\n';
        return kExitNumerical;
    } catch (const std::exception &e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    return kExitUsage;
}

}  // namespace qpad::cli
