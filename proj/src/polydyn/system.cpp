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

#include "polydyn/system.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "polydyn/errors.hpp"
#include "polydyn/state_space.hpp"

namespace polydyn {

TriangularSystem::TriangularSystem(const PrimeField& field, std::size_t m, std::vector<SparsePoly> g,
                                   std::vector<SparsePoly> h, u64 a, u64 b)
    : field_(field), m_(m), g_(std::move(g)), h_(std::move(h)), a_(field.reduce(a)), b_(field.reduce(b)) {
    if (m_ < 1) throw UsageError("a triangular system needs m >= 1");
    if (g_.size() != m_ || h_.size() != m_) {
        throw UsageError("expected " + std::to_string(m_) + " g and h polynomials, got " +
                         std::to_string(g_.size()) + " and " + std::to_string(h_.size()));
    }
    const std::size_t n = m_ + 1;
    for (std::size_t i = 0; i < m_; ++i) {
        for (const SparsePoly* q : {&g_[i], &h_[i]}) {
            if (!(q->field() == field_)) throw UsageError("g/h polynomial over a different field");
            if (q->nvars() != n) {
                throw UsageError("g/h polynomial has " + std::to_string(q->nvars()) + " variables, expected " +
                                 std::to_string(n));
            }
        }
    }

    f_.reserve(n);
    for (std::size_t i = 0; i < m_; ++i) {
        f_.push_back(SparsePoly::variable(field_, n, i) * g_[i] + h_[i]);
    }
    SparsePoly last = SparsePoly::variable(field_, n, m_).scaled(a_);
    last.add_term(Monomial(n), b_);
    f_.push_back(std::move(last));

    s_.assign(m_, std::vector<unsigned>(n, 0));
    for (std::size_t i = 0; i < m_; ++i) {
        if (g_[i].is_zero()) continue;
        for (std::size_t j = i + 1; j < n; ++j) s_[i][j] = static_cast<unsigned>(g_[i].degree_in(j));
    }
}

bool TriangularSystem::chain_degrees_nonzero() const noexcept {
    for (std::size_t i = 0; i < m_; ++i) {
        if (s_[i][i + 1] == 0) return false;
    }
    return true;
}

std::vector<u64> TriangularSystem::apply(std::span<const u64> x) const {
    if (x.size() != nvars()) throw UsageError("state has the wrong dimension");
    std::vector<u64> y(nvars());
    for (std::size_t i = 0; i < nvars(); ++i) y[i] = f_[i].evaluate(x);
    return y;
}

// ---------------------------------------------------------------------------
// Structure

std::vector<Violation> validate_structure(const TriangularSystem& sys) {
    std::vector<Violation> out;
    const std::size_t m = sys.m();
    const std::size_t n = sys.nvars();
    auto add = [&](std::size_t i, std::optional<std::size_t> j, std::string cond, std::string msg) {
        out.push_back({i, j, std::move(cond), std::move(msg)});
    };
    auto idx = [](std::size_t k) { return std::to_string(k); };

    for (std::size_t i = 0; i < m; ++i) {
        const SparsePoly& g = sys.g()[i];
        const SparsePoly& h = sys.h()[i];
        for (std::size_t j = 0; j <= i; ++j) {
            if (g.uses_variable(j)) add(i, j, "support", "g_" + idx(i) + " involves X_" + idx(j));
            if (h.uses_variable(j)) add(i, j, "support", "h_" + idx(i) + " involves X_" + idx(j));
        }
        if (g.is_zero()) {
            add(i, std::nullopt, "zero-g", "g_" + idx(i) + " is the zero polynomial");
            continue;
        }

        Monomial lead(n);
        for (std::size_t j = i + 1; j < n; ++j) lead.set(j, sys.s(i, j));
        const u64 lc = g.coefficient(lead);
        if (lc == 0) {
            add(i, std::nullopt, "leading-monomial",
                "g_" + idx(i) + " has no unique leading monomial (per-variable maximum degrees do not occur "
                                "in a single term)");
        } else if (lc != 1) {
            add(i, std::nullopt, "leading-coefficient",
                "leading coefficient of g_" + idx(i) + " is " + std::to_string(lc) + ", expected 1");
        }

        // s is read off the per-variable maximum degrees, so once the
        // leading monomial exists every other term divides it. That is the
        // tail condition used here; strict per-variable inequality would
        // reject the product (X_1^2 - c)(X_2^2 - c).
        for (std::size_t j = i + 1; j < n; ++j) {
            const unsigned sij = sys.s(i, j);
            if (!h.is_zero() && h.degree_in(j) > sij) {
                add(i, j, "h-degree",
                    "deg_{X_" + idx(j) + "} h_" + idx(i) + " = " + std::to_string(h.degree_in(j)) + " > s_{" +
                        idx(i) + "," + idx(j) + "} = " + std::to_string(sij));
            }
        }
    }
    if (sys.a() == 0) add(m, std::nullopt, "a-zero", "the coefficient a of f_m must be nonzero");
    return out;
}

// ---------------------------------------------------------------------------
// Permutation property

std::optional<std::vector<std::pair<std::size_t, u64>>> square_minus_constant_factors(const SparsePoly& g) {
    if (g.is_zero()) return std::nullopt;
    const PrimeField& F = g.field();
    const std::size_t n = g.nvars();
    std::vector<std::size_t> vars;
    for (std::size_t j = 0; j < n; ++j) {
        const auto d = g.degree_in(j);
        if (d == 0) continue;
        if (d != 2) return std::nullopt;
        vars.push_back(j);
    }

    Monomial lead(n);
    for (auto j : vars) lead.set(j, 2);
    if (g.coefficient(lead) != 1) return std::nullopt;

    std::vector<std::pair<std::size_t, u64>> factors;
    SparsePoly product = SparsePoly::constant(F, n, 1);
    for (auto j : vars) {
        Monomial without = lead;
        without.set(j, 0);
        const u64 c = F.neg(g.coefficient(without));
        factors.emplace_back(j, c);
        SparsePoly factor = SparsePoly::term(F, 1, Monomial::variable(n, j, 2));
        factor.add_term(Monomial(n), F.neg(c));
        product = product * factor;
    }
    if (!(product == g)) return std::nullopt;
    return factors;
}

namespace {

std::optional<PermutationCertificate> nonresidue_certificate(const TriangularSystem& sys) {
    PermutationCertificate cert{CertificateMethod::nonresidue_form, {}};
    for (const auto& g : sys.g()) {
        auto factors = square_minus_constant_factors(g);
        if (!factors) return std::nullopt;
        for (const auto& [j, c] : *factors) {
            if (sys.field().legendre(c) != -1) return std::nullopt;
        }
        cert.nonresidues.push_back(std::move(*factors));
    }
    return cert;
}

}  // namespace

PermutationCheck check_permutation_exhaustive(const TriangularSystem& sys, u64 budget, unsigned threads) {
    const u64 p = sys.modulus();
    const std::size_t m = sys.m();

    u128 total = 0;
    for (std::size_t i = 0; i < m; ++i) {
        auto count = checked_power(p, m - i);
        if (!count) {
            total = u128{budget} + 1;
            break;
        }
        total += *count;
    }
    PermutationCheck result{PermutationVerdict::unknown, std::nullopt, std::nullopt, {}, 0};
    if (total > budget) {
        result.reason = "exhaustive check needs more than the budget of " + std::to_string(budget) +
                        " evaluations";
        return result;
    }

    for (std::size_t i = 0; i < m; ++i) {
        const std::size_t dims = m - i;
        const StateIndexer indexer(p, dims, *checked_power(p, dims));
        const SparsePoly& g = sys.g()[i];
        auto parts = run_chunked<std::optional<u64>>(indexer.size(), threads, [&](u64 begin, u64 end) {
            std::vector<u64> x(sys.nvars(), 0);
            std::span<u64> tail(x.data() + i + 1, dims);
            indexer.decode(begin, tail);
            for (u64 idx = begin; idx < end; ++idx) {
                if (g.evaluate(x) == 0) return std::optional<u64>(idx);
                indexer.next(tail);
            }
            return std::optional<u64>();
        });
        result.evaluations += indexer.size();
        for (const auto& hit : parts) {
            if (!hit) continue;
            std::vector<u64> x(sys.nvars(), 0);
            indexer.decode(*hit, std::span<u64>(x.data() + i + 1, dims));
            result.verdict = PermutationVerdict::not_permutation;
            result.zero = std::make_pair(i, std::move(x));
            result.reason = "g_" + std::to_string(i) + " has a zero";
            return result;
        }
    }
    result.verdict = PermutationVerdict::certified;
    result.certificate = PermutationCertificate{CertificateMethod::exhaustive, {}};
    result.reason = "no g_i has a zero (exhaustive)";
    return result;
}

PermutationCheck check_permutation(const TriangularSystem& sys, u64 budget, unsigned threads) {
    if (auto cert = nonresidue_certificate(sys)) {
        return {PermutationVerdict::certified, std::move(cert), std::nullopt,
                "every g_i is a product of X_j^2 - a with a a quadratic nonresidue", 0};
    }
    return check_permutation_exhaustive(sys, budget, threads);
}

TriangularSystem make_nonresidue_system(const PrimeField& field, std::size_t m, NonresidueVariant variant,
                                        std::span<const u64> b_constants, u64 a, u64 b) {
    if (m < 1) throw UsageError("nonresidue systems need m >= 1");
    if (b_constants.size() > m) throw UsageError("more b_i constants than polynomials");
    if (field.reduce(a) == 0) throw UsageError("a must be nonzero");
    const std::size_t n = m + 1;
    const u64 nr = field.smallest_nonresidue();

    std::vector<SparsePoly> g, h;
    for (std::size_t i = 0; i < m; ++i) {
        const std::size_t last = variant == NonresidueVariant::chain ? i + 1 : m;
        SparsePoly gi = SparsePoly::constant(field, n, 1);
        for (std::size_t j = i + 1; j <= last; ++j) {
            SparsePoly factor = SparsePoly::term(field, 1, Monomial::variable(n, j, 2));
            factor.add_term(Monomial(n), field.neg(nr));
            gi = gi * factor;
        }
        g.push_back(std::move(gi));
        h.push_back(SparsePoly::constant(field, n, i < b_constants.size() ? b_constants[i] : 0));
    }
    return TriangularSystem(field, m, std::move(g), std::move(h), a, b);
}

std::function<std::vector<u64>(std::span<const u64>)> as_map(const TriangularSystem& sys) {
    return [sys](std::span<const u64> x) { return sys.apply(x); };
}

// ---------------------------------------------------------------------------
// System files

std::string system_to_json(const TriangularSystem& sys) {
    nlohmann::ordered_json j;
    j["p"] = sys.modulus();
    j["m"] = sys.m();
    auto& g = j["g"] = nlohmann::ordered_json::array();
    auto& h = j["h"] = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < sys.m(); ++i) {
        g.push_back(sys.g()[i].to_string());
        h.push_back(sys.h()[i].to_string());
    }
    j["a"] = sys.a();
    j["b"] = sys.b();
    return j.dump(2) + "\n";
}

namespace {

u64 residue_field(const nlohmann::json& j, const char* key, const PrimeField& F) {
    if (!j.contains(key)) throw UsageError(std::string("system file is missing \"") + key + "\"");
    const auto& v = j.at(key);
    if (v.is_number_unsigned()) return F.reduce(v.get<u64>());
    if (v.is_number_integer()) return F.reduce_signed(v.get<i64>());
    throw UsageError(std::string("system file field \"") + key + "\" must be an integer");
}

}  // namespace

TriangularSystem system_from_json(std::string_view text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw UsageError(std::string("system file is not valid JSON: ") + e.what());
    }
    if (!j.is_object()) throw UsageError("system file must be a JSON object");
    for (const char* key : {"p", "m", "g", "h"}) {
        if (!j.contains(key)) throw UsageError(std::string("system file is missing \"") + key + "\"");
    }
    if (!j["p"].is_number_unsigned()) throw UsageError("\"p\" must be a positive integer");
    if (!j["m"].is_number_unsigned()) throw UsageError("\"m\" must be a positive integer");
    const PrimeField F(j["p"].get<u64>());
    const auto m = j["m"].get<u64>();
    if (m < 1 || m > 64) throw UsageError("\"m\" must be in [1, 64]");

    auto polys = [&](const char* key) {
        const auto& arr = j.at(key);
        if (!arr.is_array() || arr.size() != m) {
            throw UsageError(std::string("\"") + key + "\" must be an array of " + std::to_string(m) +
                             " polynomial strings");
        }
        std::vector<SparsePoly> out;
        for (const auto& s : arr) {
            if (!s.is_string()) throw UsageError(std::string("\"") + key + "\" entries must be strings");
            out.push_back(SparsePoly::parse(s.get<std::string>(), F, m + 1));
        }
        return out;
    };
    auto g = polys("g");
    auto h = polys("h");
    return TriangularSystem(F, m, std::move(g), std::move(h), residue_field(j, "a", F), residue_field(j, "b", F));
}

TriangularSystem load_system_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open system file " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return system_from_json(ss.str());
}

void save_system_file(const TriangularSystem& sys, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write system file " + path);
    out << system_to_json(sys);
    if (!out) throw IoError("write failed for " + path);
}

}  // namespace polydyn
