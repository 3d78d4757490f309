// Copyright 2026 The polydyn Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// polydyn command-line tool. Talks to the library only through polydyn.h.

#include <polydyn/polydyn.h>

#include <charconv>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <iterator>
#include <memory>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <CLI11.hpp>

namespace {

enum ExitCode { kOk = 0, kValidation = 1, kUsage = 2, kBudget = 3, kInternal = 4 };

struct CliError {
    pdyn_status status;
    std::string message;
};

int exit_code_for(pdyn_status s) {
    switch (s) {
        case PDYN_OK: return kOk;
        case PDYN_VALIDATION: return kValidation;
        case PDYN_USAGE:
        case PDYN_IO: return kUsage;
        case PDYN_BUDGET: return kBudget;
        case PDYN_INTERNAL: return kInternal;
    }
    return kInternal;
}

[[noreturn]] void usage_error(std::string message) { throw CliError{PDYN_USAGE, std::move(message)}; }

void check(pdyn_status s) {
    if (s != PDYN_OK) throw CliError{s, pdyn_last_error()};
}

struct StringDeleter {
    void operator()(char* s) const { pdyn_string_free(s); }
};
using OwnedString = std::unique_ptr<char, StringDeleter>;

struct SystemDeleter {
    void operator()(pdyn_system* s) const { pdyn_system_free(s); }
};
using OwnedSystem = std::unique_ptr<pdyn_system, SystemDeleter>;

struct GeneratorDeleter {
    void operator()(pdyn_generator* g) const { pdyn_generator_free(g); }
};
using OwnedGenerator = std::unique_ptr<pdyn_generator, GeneratorDeleter>;

std::uint64_t parse_u64(std::string_view s, const char* what) {
    std::uint64_t v = 0;
    auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || res.ec != std::errc() || res.ptr != s.data() + s.size()) {
        usage_error(std::string("invalid ") + what + " '" + std::string(s) + "'");
    }
    return v;
}

double parse_double(std::string_view s, const char* what) {
    double v = 0;
    auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || res.ec != std::errc() || res.ptr != s.data() + s.size()) {
        usage_error(std::string("invalid ") + what + " '" + std::string(s) + "'");
    }
    return v;
}

template <typename T, typename Parse>
std::vector<T> parse_list(std::string_view text, const char* what, Parse parse) {
    std::vector<T> out;
    while (true) {
        auto comma = text.find(',');
        out.push_back(parse(text.substr(0, comma), what));
        if (comma == std::string_view::npos) break;
        text.remove_prefix(comma + 1);
    }
    return out;
}

std::vector<std::uint64_t> parse_u64_list(std::string_view text, const char* what) {
    return parse_list<std::uint64_t>(text, what, parse_u64);
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw CliError{PDYN_IO, "cannot open '" + path + "'"};
    return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

// Destination chosen by --output, stdout by default.
class Output {
public:
    explicit Output(const std::string& path) {
        if (path.empty() || path == "-") return;
        file_.open(path, std::ios::binary);
        if (!file_) throw CliError{PDYN_IO, "cannot open '" + path + "' for writing"};
    }
    std::ostream& stream() { return file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout; }
    void write(std::string_view s) {
        stream().write(s.data(), static_cast<std::streamsize>(s.size()));
        if (!stream()) throw CliError{PDYN_IO, "write failed"};
    }
    void finish() {
        stream().flush();
        if (!stream()) throw CliError{PDYN_IO, "write failed"};
    }

private:
    std::ofstream file_;
};

void write_text_file(const std::string& path, std::string_view text) {
    std::ofstream out(path, std::ios::binary);
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    if (!out) throw CliError{PDYN_IO, "cannot write '" + path + "'"};
}

OwnedSystem load_system(const std::string& path) {
    pdyn_system* sys = nullptr;
    check(pdyn_system_load(path.c_str(), &sys));
    return OwnedSystem(sys);
}

std::string join(const std::vector<std::uint64_t>& v) {
    std::string s;
    for (std::size_t j = 0; j < v.size(); ++j) s += (j ? "," : "") + std::to_string(v[j]);
    return s;
}

// "random" draws each coordinate from the OS entropy source and reports it.
std::vector<std::uint64_t> resolve_seed(const std::string& text, const pdyn_system* sys) {
    const std::size_t dims = pdyn_system_m(sys) + 1;
    if (text == "random") {
        std::random_device rd;
        std::uniform_int_distribution<std::uint64_t> dist(0, pdyn_system_modulus(sys) - 1);
        std::vector<std::uint64_t> seed(dims);
        for (auto& v : seed) v = dist(rd);
        std::cerr << "seed: " << join(seed) << '\n';
        return seed;
    }
    return parse_u64_list(text, "seed");
}

struct Globals {
    unsigned threads = 1;
    std::uint64_t budget = 0;
    std::string output;

    pdyn_run_options options() const { return {threads, budget}; }
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Triangular permutation polynomial systems: generation and analysis"};
    app.require_subcommand(1);
    app.fallthrough();
    app.set_version_flag("--version", pdyn_version());

    Globals g;
    app.add_option("--threads", g.threads, "Worker threads for parallel sweeps")->check(CLI::Range(1u, 1024u));
    app.add_option("--budget", g.budget, "Work budget for the subcommand (0 = default)");
    app.add_option("--output,-o", g.output, "Output file (default stdout)");

    std::string system_path;
    auto add_system = [&](CLI::App* sub) {
        sub->add_option("--system", system_path, "System file (JSON)")->required();
    };

    // validate
    auto* validate = app.add_subcommand("validate", "Check structure and the permutation property");
    add_system(validate);

    // gen
    auto* gen = app.add_subcommand("gen", "Stream generator output");
    add_system(gen);
    std::string seed_text;
    std::uint64_t count = 0, skip = 0;
    std::string format = "csv";
    bool generic = false;
    gen->add_option("--seed", seed_text, "v0,...,vm or 'random'")->required();
    gen->add_option("--count", count, "Number of output vectors")->required();
    gen->add_option("--skip", skip, "Steps to discard first");
    gen->add_option("--format", format, "csv, ndjson or u64le")->check(CLI::IsMember({"csv", "ndjson", "u64le"}));
    gen->add_flag("--generic", generic, "Disable the product-form fast path");

    // degrees
    auto* degrees = app.add_subcommand("degrees", "Degree growth of the iterates");
    add_system(degrees);
    unsigned k_max = 0, k_first = 1;
    std::string summary_path;
    degrees->add_option("--k-max,--k", k_max, "Largest iterate")->required()->check(CLI::PositiveNumber);
    degrees->add_option("--k-first", k_first, "First k used for the fit")->check(CLI::PositiveNumber);
    degrees->add_option("--summary", summary_path, "Write per-row fit summaries (NDJSON) here");

    // expsum
    auto* expsum = app.add_subcommand("expsum", "Exponential sum of iterate differences, two routes");
    add_system(expsum);
    std::string a_text;
    unsigned k = 0, l = 0;
    expsum->add_option("--a", a_text, "a_0,...,a_{m-1}")->required();
    expsum->add_option("--k", k, "k")->required();
    expsum->add_option("--l", l, "l (<= k)")->required();

    // vsum
    auto* vsum = app.add_subcommand("vsum", "Seed-averaged squared orbit sums against the bound");
    add_system(vsum);
    std::int64_t c = 0;
    std::uint64_t M = 1, n_max = 0, shift = 0;
    vsum->add_option("--a", a_text, "a_0,...,a_{m-1}")->required();
    vsum->add_option("--c", c, "Twist coefficient c");
    vsum->add_option("--M", M, "Twist modulus M >= 1")->check(CLI::PositiveNumber);
    vsum->add_option("--N", n_max, "Largest window length")->required()->check(CLI::PositiveNumber);
    vsum->add_option("--shift,--L", shift, "Window start");

    // discrepancy
    auto* disc = app.add_subcommand("discrepancy", "Discrepancy of a point set");
    std::string input_path, method = "1d";
    unsigned L = 0;
    std::uint64_t denominator = 0;
    disc->add_option("--input", input_path, "Points, one per line, comma separated ('-' for stdin)")->required();
    disc->add_option("--method", method, "1d, grid or etk")->check(CLI::IsMember({"1d", "grid", "etk"}));
    disc->add_option("--L", L, "Truncation for etk");
    disc->add_option("--denominator", denominator, "Read coordinates as integer numerators over this");

    // avg-discrepancy
    auto* avg = app.add_subcommand("avg-discrepancy", "Discrepancy distribution over every seed");
    add_system(avg);
    std::string n_text, t_text, distribution_path;
    avg->add_option("--N", n_text, "N_1,N_2,...")->required();
    avg->add_option("--t", t_text, "Thresholds t (default 0.5,1,2,4)");
    avg->add_option("--distribution", distribution_path, "Write the per-value seed counts (CSV) here");

    // period
    auto* period = app.add_subcommand("period", "Orbit periods");
    add_system(period);
    bool all = false, projection = false;
    auto* period_seed = period->add_option("--seed", seed_text, "v0,...,vm or 'random'");
    auto* period_all = period->add_flag("--all", all, "Cycle structure of the whole state space");
    period_seed->excludes(period_all);
    period->add_flag("--projection", projection, "Also report the period of the emitted projection");

    // bench
    auto* bench = app.add_subcommand("bench", "Generator throughput and multiplication counts");
    add_system(bench);
    std::uint64_t steps = 1'000'000;
    bench->add_option("--seed", seed_text, "v0,...,vm (default all ones)");
    bench->add_option("--steps", steps, "Steps to time");
    bench->add_flag("--generic", generic, "Disable the product-form fast path");

    // make-system
    auto* make = app.add_subcommand("make-system", "Write a system file from a built-in family");
    std::uint64_t p = 0, coef_a = 1, coef_b = 1;
    std::size_t m = 1;
    std::string family = "chain";
    make->add_option("--p", p, "Odd prime")->required();
    make->add_option("--m", m, "m >= 1")->check(CLI::PositiveNumber);
    make->add_option("--family", family, "chain, full-product or planted-zero")
        ->check(CLI::IsMember({"chain", "full-product", "planted-zero"}));
    std::string h_text;
    make->add_option("--h-const", h_text, "Constants h_0,...,h_{m-1} (default 0)");
    make->add_option("--a", coef_a, "f_m = a X_m + b");
    make->add_option("--b", coef_b, "f_m = a X_m + b");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);
        std::cerr << "error[usage]: " << e.what() << '\n';
        return kUsage;
    }

    try {
        Output out(g.output);
        const pdyn_run_options opts = g.options();
        int code = kOk;

        if (*validate) {
            auto sys = load_system(system_path);
            char* report = nullptr;
            const pdyn_status s = pdyn_system_validate(sys.get(), &opts, &report);
            OwnedString owned(report);
            if (report) out.write(report);
            if (s != PDYN_OK) {
                out.finish();
                std::cerr << "error[" << pdyn_status_name(s) << "]: " << pdyn_last_error() << '\n';
                return exit_code_for(s);
            }
        } else if (*gen) {
            auto sys = load_system(system_path);
            const auto seed = resolve_seed(seed_text, sys.get());
            pdyn_generator* raw = nullptr;
            check(pdyn_generator_new(sys.get(), seed.data(), seed.size(), generic ? 0 : 1, &raw));
            OwnedGenerator generator(raw);
            check(pdyn_generator_jump(generator.get(), skip));
            check(pdyn_generator_write(
                generator.get(), count, format.c_str(),
                [](void* ctx, const char* data, std::size_t len) {
                    auto& o = *static_cast<Output*>(ctx);
                    o.stream().write(data, static_cast<std::streamsize>(len));
                    return o.stream() ? 0 : 1;
                },
                &out));
        } else if (*degrees) {
            auto sys = load_system(system_path);
            char *csv = nullptr, *summary = nullptr;
            check(pdyn_degrees(sys.get(), k_first, k_max, &opts, &csv, &summary));
            OwnedString owned_csv(csv), owned_summary(summary);
            out.write(csv);
            if (!summary_path.empty()) write_text_file(summary_path, summary);
        } else if (*expsum) {
            auto sys = load_system(system_path);
            const auto a = parse_u64_list(a_text, "coefficient vector");
            if (l > k) usage_error("need l <= k");
            char* csv = nullptr;
            check(pdyn_expsum(sys.get(), a.data(), a.size(), k, l, &opts, &csv));
            OwnedString owned(csv);
            out.write(csv);
        } else if (*vsum) {
            auto sys = load_system(system_path);
            const auto a = parse_u64_list(a_text, "coefficient vector");
            char* csv = nullptr;
            int growth = 0;
            check(pdyn_vsum(sys.get(), a.data(), a.size(), c, M, n_max, shift, &opts, &csv, &growth));
            OwnedString owned(csv);
            out.write(csv);
            if (growth) std::cerr << "warning[growth]: V/A(N,p) at the largest N exceeds twice its early maximum\n";
        } else if (*disc) {
            const std::string text =
                input_path == "-" ? std::string(std::istreambuf_iterator<char>(std::cin), {}) : read_file(input_path);
            char* csv = nullptr;
            check(pdyn_discrepancy(text.c_str(), method.c_str(), L, denominator, &csv));
            OwnedString owned(csv);
            out.write(csv);
        } else if (*avg) {
            auto sys = load_system(system_path);
            const auto Ns = parse_u64_list(n_text, "N list");
            std::vector<double> ts;
            if (!t_text.empty()) ts = parse_list<double>(t_text, "threshold list", parse_double);
            char *summary = nullptr, *dist = nullptr;
            int decreasing = 0;
            check(pdyn_avg_discrepancy(sys.get(), Ns.data(), Ns.size(), ts.empty() ? nullptr : ts.data(), ts.size(),
                                       &opts, &summary, &dist, &decreasing));
            OwnedString owned_summary(summary), owned_dist(dist);
            out.write(summary);
            if (!distribution_path.empty()) write_text_file(distribution_path, dist);
            std::cerr << "mean_decreasing: " << (decreasing ? "true" : "false") << '\n';
        } else if (*period) {
            auto sys = load_system(system_path);
            char* rec = nullptr;
            pdyn_status s;
            if (all) {
                s = pdyn_cycle_structure(sys.get(), &opts, &rec);
            } else {
                if (seed_text.empty()) usage_error("period needs --seed or --all");
                const auto seed = resolve_seed(seed_text, sys.get());
                s = pdyn_period(sys.get(), seed.data(), seed.size(), projection ? 1 : 0, &opts, &rec);
            }
            OwnedString owned(rec);
            if (rec) out.write(rec);
            check(s);
        } else if (*bench) {
            auto sys = load_system(system_path);
            std::vector<std::uint64_t> seed(pdyn_system_m(sys.get()) + 1, 1);
            if (!seed_text.empty()) seed = resolve_seed(seed_text, sys.get());
            char* json = nullptr;
            check(pdyn_bench(sys.get(), seed.data(), seed.size(), steps, generic ? 0 : 1, &json));
            OwnedString owned(json);
            out.write(json);
        } else if (*make) {
            const pdyn_family fam = family == "full-product"   ? PDYN_FAMILY_FULL_PRODUCT
                                    : family == "planted-zero" ? PDYN_FAMILY_PLANTED_ZERO
                                                               : PDYN_FAMILY_CHAIN;
            std::vector<std::uint64_t> h;
            if (!h_text.empty()) h = parse_u64_list(h_text, "h constants");
            pdyn_system* raw = nullptr;
            check(pdyn_system_make(p, m, fam, h.data(), h.size(), coef_a, coef_b, &raw));
            OwnedSystem sys(raw);
            char* json = nullptr;
            check(pdyn_system_to_json(sys.get(), &json));
            OwnedString owned(json);
            out.write(json);
        }
        out.finish();
        return code;
    } catch (const CliError& e) {
        std::cerr << "error[" << pdyn_status_name(e.status) << "]: " << e.message << '\n';
        return exit_code_for(e.status);
    } catch (const std::exception& e) {
        std::cerr << "error[internal]: " << e.what() << '\n';
        return kInternal;
    }
}
