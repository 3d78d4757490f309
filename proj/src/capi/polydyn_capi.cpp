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

#include "polydyn/polydyn.h"

#include <cmath>
#include <cstdlib>
#include <cstring>
#include <memory>
#include <new>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "polydyn/bench.hpp"
#include "polydyn/discrepancy.hpp"
#include "polydyn/errors.hpp"
#include "polydyn/format.hpp"
#include "polydyn/generator.hpp"
#include "polydyn/iterate.hpp"
#include "polydyn/orbit.hpp"
#include "polydyn/spectral.hpp"
#include "polydyn/system.hpp"

struct pdyn_system {
    polydyn::TriangularSystem sys;
};

struct pdyn_generator {
    polydyn::Generator gen;
};

namespace {

using polydyn::u64;

thread_local std::string g_last_error;

pdyn_status fail(pdyn_status status, std::string message) {
    g_last_error = std::move(message);
    return status;
}

// Runs `fn`, mapping exceptions to status codes.
template <typename Fn>
pdyn_status guarded(Fn&& fn) noexcept {
    try {
        g_last_error.clear();
        return fn();
    } catch (const polydyn::UsageError& e) {
        return fail(PDYN_USAGE, e.what());
    } catch (const polydyn::BudgetExceeded& e) {
        return fail(PDYN_BUDGET, e.what());
    } catch (const polydyn::ValidationError& e) {
        return fail(PDYN_VALIDATION, e.what());
    } catch (const polydyn::IoError& e) {
        return fail(PDYN_IO, e.what());
    } catch (const std::bad_alloc&) {
        return fail(PDYN_BUDGET, "out of memory");
    } catch (const std::exception& e) {
        return fail(PDYN_INTERNAL, e.what());
    } catch (...) {
        return fail(PDYN_INTERNAL, "unknown exception");
    }
}

char* dup_string(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (!out) throw std::bad_alloc();
    std::memcpy(out, s.data(), s.size() + 1);
    return out;
}

void require(bool cond, const char* what) {
    if (!cond) throw polydyn::UsageError(what);
}

unsigned threads_of(const pdyn_run_options* opts) { return opts && opts->threads ? opts->threads : 1; }

u64 budget_of(const pdyn_run_options* opts, u64 fallback) { return opts && opts->budget ? opts->budget : fallback; }

std::vector<u64> copy_array(const uint64_t* data, size_t len) {
    require(data != nullptr || len == 0, "null array");
    return std::vector<u64>(data, data + len);
}

const char* verdict_name(polydyn::PermutationVerdict v) {
    switch (v) {
        case polydyn::PermutationVerdict::certified: return "certified";
        case polydyn::PermutationVerdict::not_permutation: return "not_permutation";
        case polydyn::PermutationVerdict::unknown: return "unknown";
    }
    return "unknown";
}

}  // namespace

extern "C" {

const char* pdyn_version(void) { return "0.1.0"; }

const char* pdyn_status_name(pdyn_status status) {
    switch (status) {
        case PDYN_OK: return "ok";
        case PDYN_VALIDATION: return "validation";
        case PDYN_USAGE: return "usage";
        case PDYN_BUDGET: return "budget";
        case PDYN_IO: return "io";
        case PDYN_INTERNAL: return "internal";
    }
    return "internal";
}

const char* pdyn_last_error(void) { return g_last_error.c_str(); }

void pdyn_string_free(char* s) { std::free(s); }

// ---------------------------------------------------------------------------

pdyn_status pdyn_system_from_json(const char* text, pdyn_system** out) {
    return guarded([&] {
        require(text && out, "null argument");
        *out = new pdyn_system{polydyn::system_from_json(text)};
        return PDYN_OK;
    });
}

pdyn_status pdyn_system_load(const char* path, pdyn_system** out) {
    return guarded([&] {
        require(path && out, "null argument");
        *out = new pdyn_system{polydyn::load_system_file(path)};
        return PDYN_OK;
    });
}

pdyn_status pdyn_system_make(uint64_t p, size_t m, pdyn_family family, const uint64_t* h, size_t h_len, uint64_t a,
                             uint64_t b, pdyn_system** out) {
    return guarded([&] {
        require(out != nullptr, "null argument");
        const polydyn::PrimeField field(p);
        const auto variant = family == PDYN_FAMILY_FULL_PRODUCT ? polydyn::NonresidueVariant::full_product
                                                                : polydyn::NonresidueVariant::chain;
        require(family == PDYN_FAMILY_CHAIN || family == PDYN_FAMILY_FULL_PRODUCT || family == PDYN_FAMILY_PLANTED_ZERO,
                "unknown system family");
        require(h_len <= m, "more h constants than components");
        const auto hv = copy_array(h, h_len);
        auto sys = polydyn::make_nonresidue_system(field, m, variant, hv, a, b);
        if (family == PDYN_FAMILY_PLANTED_ZERO) {
            auto g = sys.g();
            const std::size_t nv = sys.nvars();
            g[0] = polydyn::SparsePoly::variable(field, nv, 1).pow(2) - polydyn::SparsePoly::constant(field, nv, 1);
            sys = polydyn::TriangularSystem(field, m, std::move(g), sys.h(), sys.a(), sys.b());
        }
        *out = new pdyn_system{std::move(sys)};
        return PDYN_OK;
    });
}

void pdyn_system_free(pdyn_system* sys) { delete sys; }

pdyn_status pdyn_system_to_json(const pdyn_system* sys, char** out) {
    return guarded([&] {
        require(sys && out, "null argument");
        *out = dup_string(polydyn::system_to_json(sys->sys));
        return PDYN_OK;
    });
}

pdyn_status pdyn_system_save(const pdyn_system* sys, const char* path) {
    return guarded([&] {
        require(sys && path, "null argument");
        polydyn::save_system_file(sys->sys, path);
        return PDYN_OK;
    });
}

uint64_t pdyn_system_modulus(const pdyn_system* sys) { return sys ? sys->sys.modulus() : 0; }

size_t pdyn_system_m(const pdyn_system* sys) { return sys ? sys->sys.m() : 0; }

pdyn_status pdyn_system_validate(const pdyn_system* sys, const pdyn_run_options* opts, char** report) {
    return guarded([&] {
        require(sys && report, "null argument");
        const auto& s = sys->sys;
        nlohmann::ordered_json r;
        r["p"] = s.modulus();
        r["m"] = s.m();
        const auto violations = polydyn::validate_structure(s);
        r["structure_valid"] = violations.empty();
        auto& vs = r["violations"] = nlohmann::ordered_json::array();
        for (const auto& v : violations) {
            nlohmann::ordered_json jv;
            jv["i"] = v.i;
            if (v.j) jv["j"] = *v.j;
            jv["condition"] = v.condition;
            jv["message"] = v.message;
            vs.push_back(std::move(jv));
        }
        pdyn_status status = PDYN_OK;
        if (!violations.empty()) {
            r["permutation"] = nullptr;
            status = PDYN_VALIDATION;
            g_last_error = std::to_string(violations.size()) + " structural violation(s)";
        } else {
            const auto check = polydyn::check_permutation(s, budget_of(opts, polydyn::kDefaultPermutationBudget),
                                                          threads_of(opts));
            nlohmann::ordered_json perm;
            perm["verdict"] = verdict_name(check.verdict);
            if (check.certificate) {
                const bool syntactic = check.certificate->method == polydyn::CertificateMethod::nonresidue_form;
                perm["method"] = syntactic ? "nonresidue_form" : "exhaustive";
                if (syntactic) {
                    auto& nr = perm["nonresidues"] = nlohmann::ordered_json::array();
                    for (const auto& row : check.certificate->nonresidues) {
                        auto jr = nlohmann::ordered_json::array();
                        for (const auto& [j, c] : row) jr.push_back({{"j", j}, {"c", c}});
                        nr.push_back(std::move(jr));
                    }
                }
            }
            if (check.zero) perm["zero"] = {{"i", check.zero->first}, {"x", check.zero->second}};
            if (!check.reason.empty()) perm["reason"] = check.reason;
            perm["evaluations"] = check.evaluations;
            r["permutation"] = std::move(perm);
            r["chain_degrees_nonzero"] = s.chain_degrees_nonzero();
            if (check.verdict == polydyn::PermutationVerdict::not_permutation) {
                status = PDYN_VALIDATION;
                g_last_error = "map is not a permutation: " + check.reason;
            } else if (check.verdict == polydyn::PermutationVerdict::unknown) {
                status = PDYN_BUDGET;
                g_last_error = "permutation check inconclusive: " + check.reason;
            }
        }
        *report = dup_string(r.dump() + "\n");
        return status;
    });
}

pdyn_status pdyn_system_apply(const pdyn_system* sys, const uint64_t* x, uint64_t* out) {
    return guarded([&] {
        require(sys && x && out, "null argument");
        const auto y = sys->sys.apply(std::span<const u64>(x, sys->sys.nvars()));
        std::copy(y.begin(), y.end(), out);
        return PDYN_OK;
    });
}

// ---------------------------------------------------------------------------

pdyn_status pdyn_generator_new(const pdyn_system* sys, const uint64_t* seed, size_t seed_len, int allow_fast_path,
                               pdyn_generator** out) {
    return guarded([&] {
        require(sys && out, "null argument");
        const auto v = copy_array(seed, seed_len);
        *out = new pdyn_generator{polydyn::Generator(sys->sys, v, allow_fast_path != 0)};
        return PDYN_OK;
    });
}

void pdyn_generator_free(pdyn_generator* gen) { delete gen; }

pdyn_status pdyn_generator_jump(pdyn_generator* gen, uint64_t k) {
    return guarded([&] {
        require(gen != nullptr, "null argument");
        gen->gen.jump(k);
        return PDYN_OK;
    });
}

pdyn_status pdyn_generator_state(const pdyn_generator* gen, uint64_t* out) {
    return guarded([&] {
        require(gen && out, "null argument");
        const auto& u = gen->gen.state();
        std::copy(u.begin(), u.end(), out);
        return PDYN_OK;
    });
}

uint64_t pdyn_generator_steps(const pdyn_generator* gen) { return gen ? gen->gen.steps() : 0; }

const char* pdyn_generator_path(const pdyn_generator* gen) {
    return gen ? polydyn::step_path_name(gen->gen.path()) : "";
}

pdyn_status pdyn_generator_next(pdyn_generator* gen, size_t count, uint64_t* numerators) {
    return guarded([&] {
        require(gen && (numerators || count == 0), "null argument");
        gen->gen.emit_into(count, std::span<u64>(numerators, count * gen->gen.m()));
        return PDYN_OK;
    });
}

pdyn_status pdyn_generator_write(pdyn_generator* gen, size_t count, const char* format, pdyn_write_fn fn,
                                 void* ctx) {
    return guarded([&] {
        require(gen && format && fn, "null argument");
        const auto fmt = polydyn::parse_output_format(format);
        gen->gen.write(count, fmt, [&](std::string_view chunk) {
            if (fn(ctx, chunk.data(), chunk.size()) != 0) throw polydyn::IoError("output callback failed");
        });
        return PDYN_OK;
    });
}

// ---------------------------------------------------------------------------

pdyn_status pdyn_degrees(const pdyn_system* sys, unsigned k_first, unsigned k_max, const pdyn_run_options* opts,
                         char** csv, char** summary) {
    return guarded([&] {
        require(sys && csv, "null argument");
        require(k_max >= 1 && k_first >= 1 && k_first <= k_max, "need 1 <= k_first <= k_max");
        const auto report =
            polydyn::degree_growth_report(sys->sys, k_max, k_first, budget_of(opts, polydyn::kDefaultTermBudget));
        *csv = dup_string(report.to_csv());
        if (summary) {
            std::string lines;
            for (const auto& s : report.summaries) {
                nlohmann::ordered_json j;
                j["i"] = s.i;
                j["predicted_coefficient"] = polydyn::format_rational(s.predicted_coefficient);
                j["fitted_coefficient"] = polydyn::format_rational(s.fitted_coefficient);
                j["residual_order"] = s.residual_order;
                j["residual_order_conclusive"] = s.residual_order_conclusive;
                j["flagged"] = s.flagged;
                lines += j.dump() + "\n";
            }
            *summary = dup_string(lines);
        }
        return PDYN_OK;
    });
}

pdyn_status pdyn_expsum(const pdyn_system* sys, const uint64_t* a, size_t a_len, unsigned k, unsigned l,
                        const pdyn_run_options* opts, char** csv) {
    return guarded([&] {
        require(sys && csv, "null argument");
        const auto av = copy_array(a, a_len);
        const auto& s = sys->sys;
        const auto r = polydyn::collapse_sum(s, av, k, l, budget_of(opts, polydyn::kDefaultSpectralBudget),
                                           threads_of(opts));
        const double p = static_cast<double>(s.modulus());
        const double md = static_cast<double>(s.m());
        const double bound = std::pow(static_cast<double>(k), md) * std::pow(p, md);
        std::ostringstream os;
        os << "p,m,a,k,l,s,abs_route_a,abs_route_b,gap,zero_set_size,bound,ratio\n";
        os << s.modulus() << ',' << s.m() << ',';
        for (std::size_t j = 0; j < av.size(); ++j) os << (j ? ";" : "") << av[j];
        const double abs_a = std::abs(r.route_a);
        os << ',' << k << ',' << l << ',' << r.s << ',' << polydyn::format_double(abs_a) << ','
           << polydyn::format_double(std::abs(r.route_b)) << ',' << polydyn::format_double(r.absolute_gap()) << ','
           << r.zero_set_size << ',' << polydyn::format_double(bound) << ','
           << polydyn::format_double(bound > 0 ? abs_a / bound : 0.0) << '\n';
        *csv = dup_string(os.str());
        return PDYN_OK;
    });
}

pdyn_status pdyn_vsum(const pdyn_system* sys, const uint64_t* a, size_t a_len, int64_t c, uint64_t M,
                      uint64_t n_max, uint64_t shift, const pdyn_run_options* opts, char** csv, int* growth_flag) {
    return guarded([&] {
        require(sys && csv, "null argument");
        const auto av = copy_array(a, a_len);
        const auto report = polydyn::v_bound_check(sys->sys, av, c, M, n_max, shift,
                                                   budget_of(opts, polydyn::kDefaultSpectralBudget), threads_of(opts));
        *csv = dup_string(report.to_csv(av, c, M, shift));
        if (growth_flag) *growth_flag = report.growth_flag ? 1 : 0;
        return PDYN_OK;
    });
}

pdyn_status pdyn_discrepancy(const char* points_csv, const char* method, unsigned L, uint64_t denominator,
                             char** csv) {
    return guarded([&] {
        require(points_csv && method && csv, "null argument");
        const auto m = polydyn::parse_discrepancy_method(method);
        const auto points = polydyn::PointSet::parse_csv(
            points_csv, denominator ? std::optional<u64>(denominator) : std::nullopt);
        std::ostringstream os;
        switch (m) {
            case polydyn::DiscrepancyMethod::exact_1d:
            case polydyn::DiscrepancyMethod::grid_exact: {
                const polydyn::Rational d = m == polydyn::DiscrepancyMethod::exact_1d
                                                ? polydyn::star_discrepancy_1d(points)
                                                : polydyn::discrepancy_grid_exact(points);
                os << "method,N,dim,discrepancy,exact\n"
                   << method << ',' << points.size() << ',' << points.dim() << ','
                   << polydyn::format_double(d.convert_to<double>()) << ',' << d.str() << '\n';
                break;
            }
            case polydyn::DiscrepancyMethod::etk: {
                const auto b = polydyn::etk_bound(points, L);
                os << "method,N,dim,L,first_term,second_term,bound\n"
                   << method << ',' << points.size() << ',' << points.dim() << ',' << L << ','
                   << polydyn::format_double(b.first_term) << ',' << polydyn::format_double(b.second_term) << ','
                   << polydyn::format_double(b.bound()) << '\n';
                break;
            }
        }
        *csv = dup_string(os.str());
        return PDYN_OK;
    });
}

pdyn_status pdyn_avg_discrepancy(const pdyn_system* sys, const uint64_t* N, size_t n_count, const double* thresholds,
                                 size_t t_count, const pdyn_run_options* opts, char** summary_csv,
                                 char** distribution_csv, int* mean_decreasing) {
    return guarded([&] {
        require(sys && summary_csv, "null argument");
        const auto Ns = copy_array(N, n_count);
        require(thresholds != nullptr || t_count == 0, "null array");
        std::vector<double> ts = t_count ? std::vector<double>(thresholds, thresholds + t_count)
                                         : polydyn::default_thresholds();
        const auto r = polydyn::average_discrepancy_experiment(sys->sys, Ns, ts, budget_of(opts, 10'000'000),
                                                               threads_of(opts));
        *summary_csv = dup_string(r.summary_csv());
        if (distribution_csv) *distribution_csv = dup_string(r.distribution_csv());
        if (mean_decreasing) *mean_decreasing = r.mean_decreasing ? 1 : 0;
        return PDYN_OK;
    });
}

pdyn_status pdyn_period(const pdyn_system* sys, const uint64_t* seed, size_t seed_len, int with_projection,
                        const pdyn_run_options* opts, char** ndjson) {
    return guarded([&] {
        require(sys && ndjson, "null argument");
        const auto v = copy_array(seed, seed_len);
        const u64 budget = budget_of(opts, polydyn::kDefaultOrbitBudget);
        // Preperiod 0 is asserted whenever the syntactic certificate applies.
        bool certified = false;
        if (polydyn::validate_structure(sys->sys).empty()) {
            certified = polydyn::check_permutation(sys->sys, 0).verdict == polydyn::PermutationVerdict::certified;
        }
        const auto r = polydyn::period_of_seed(sys->sys, v, budget, with_projection != 0, certified);
        *ndjson = dup_string(r.to_ndjson());
        if (!r.exact) {
            g_last_error = "step budget exhausted; period + preperiod > " + std::to_string(r.rho_lower_bound);
            return PDYN_BUDGET;
        }
        return PDYN_OK;
    });
}

pdyn_status pdyn_cycle_structure(const pdyn_system* sys, const pdyn_run_options* opts, char** ndjson) {
    return guarded([&] {
        require(sys && ndjson, "null argument");
        const auto cs = polydyn::full_cycle_structure(sys->sys, budget_of(opts, polydyn::kDefaultOrbitBudget));
        *ndjson = dup_string(cs.to_ndjson());
        return PDYN_OK;
    });
}

pdyn_status pdyn_bench(const pdyn_system* sys, const uint64_t* seed, size_t seed_len, uint64_t steps,
                       int allow_fast_path, char** json) {
    return guarded([&] {
        require(sys && json, "null argument");
        const auto v = copy_array(seed, seed_len);
        const auto r = polydyn::run_bench(sys->sys, v, steps, allow_fast_path != 0);
        *json = dup_string(r.to_json());
        return PDYN_OK;
    });
}

}  // extern "C"
