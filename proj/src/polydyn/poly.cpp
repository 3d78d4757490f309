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

#include "polydyn/poly.hpp"

#include <algorithm>
#include <cctype>
#include <optional>
#include <sstream>

#include "polydyn/errors.hpp"

namespace polydyn {

// ---------------------------------------------------------------------------
// Monomial

Monomial::Monomial(std::initializer_list<unsigned> exponents)
    : Monomial(std::span<const unsigned>(exponents.begin(), exponents.size())) {}

Monomial::Monomial(std::span<const unsigned> exponents) : e_(exponents.size(), 0) {
    for (std::size_t j = 0; j < exponents.size(); ++j) set(j, exponents[j]);
}

Monomial Monomial::variable(std::size_t nvars, std::size_t j, unsigned exponent) {
    if (j >= nvars) {
        throw UsageError("variable X" + std::to_string(j) + " out of range for " +
                         std::to_string(nvars) + " variables");
    }
    Monomial m(nvars);
    m.set(j, exponent);
    return m;
}

void Monomial::set(std::size_t j, unsigned exponent) {
    if (exponent > kMaxExponent) {
        throw UsageError("exponent " + std::to_string(exponent) + " exceeds the cap of " +
                         std::to_string(kMaxExponent));
    }
    e_[j] = static_cast<std::uint16_t>(exponent);
}

std::int64_t Monomial::total_degree() const noexcept {
    std::int64_t d = 0;
    for (auto e : e_) d += e;
    return d;
}

bool Monomial::is_one() const noexcept {
    return std::all_of(e_.begin(), e_.end(), [](auto e) { return e == 0; });
}

Monomial Monomial::operator*(const Monomial& other) const {
    if (other.nvars() != nvars()) throw UsageError("monomial variable-count mismatch");
    Monomial r(nvars());
    for (std::size_t j = 0; j < e_.size(); ++j) {
        const unsigned e = unsigned{e_[j]} + other.e_[j];
        if (e > kMaxExponent) {
            throw UsageError("exponent overflow in X" + std::to_string(j) + " (" + std::to_string(e) +
                             " > " + std::to_string(kMaxExponent) + ")");
        }
        r.e_[j] = static_cast<std::uint16_t>(e);
    }
    return r;
}

std::strong_ordering operator<=>(const Monomial& x, const Monomial& y) noexcept {
    if (auto c = x.total_degree() <=> y.total_degree(); c != 0) return c;
    const std::size_t n = std::min(x.e_.size(), y.e_.size());
    for (std::size_t j = 0; j < n; ++j) {
        if (auto c = x.e_[j] <=> y.e_[j]; c != 0) return c;
    }
    return x.e_.size() <=> y.e_.size();
}

// ---------------------------------------------------------------------------
// SparsePoly

SparsePoly SparsePoly::constant(const PrimeField& field, std::size_t nvars, u64 c) {
    SparsePoly f(field, nvars);
    f.add_term(Monomial(nvars), field.reduce(c));
    return f;
}

SparsePoly SparsePoly::variable(const PrimeField& field, std::size_t nvars, std::size_t j) {
    SparsePoly f(field, nvars);
    f.add_term(Monomial::variable(nvars, j), 1);
    return f;
}

SparsePoly SparsePoly::term(const PrimeField& field, u64 c, const Monomial& mono) {
    SparsePoly f(field, mono.nvars());
    f.add_term(mono, field.reduce(c));
    return f;
}

u64 SparsePoly::coefficient(const Monomial& mono) const {
    auto it = terms_.find(mono);
    return it == terms_.end() ? 0 : it->second;
}

void SparsePoly::add_term(const Monomial& mono, u64 c) {
    if (mono.nvars() != nvars_) throw UsageError("monomial variable-count mismatch");
    c = field_.reduce(c);
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(mono, c);
    if (!inserted) {
        it->second = field_.add(it->second, c);
        if (it->second == 0) terms_.erase(it);
    }
}

std::int64_t SparsePoly::total_degree() const noexcept {
    // Graded order: the first term has the largest total degree.
    return terms_.empty() ? kDegreeOfZero : terms_.begin()->first.total_degree();
}

std::int64_t SparsePoly::degree_in(std::size_t j) const {
    if (j >= nvars_) throw UsageError("variable index out of range");
    if (terms_.empty()) return kDegreeOfZero;
    std::int64_t d = 0;
    for (const auto& [mono, c] : terms_) d = std::max<std::int64_t>(d, mono[j]);
    return d;
}

std::pair<std::size_t, std::size_t> SparsePoly::variable_span() const noexcept {
    std::size_t lo = nvars_, hi = 0;
    for (const auto& [mono, c] : terms_) {
        for (std::size_t j = 0; j < nvars_; ++j) {
            if (mono[j] != 0) {
                lo = std::min(lo, j);
                hi = std::max(hi, j);
            }
        }
    }
    return {lo, hi};
}

bool SparsePoly::uses_variable(std::size_t j) const {
    return std::any_of(terms_.begin(), terms_.end(), [j](const auto& t) { return t.first[j] != 0; });
}

void SparsePoly::require_compatible(const SparsePoly& g) const {
    if (!(field_ == g.field_)) throw UsageError("polynomials over different fields");
    if (nvars_ != g.nvars_) {
        throw UsageError("variable-count mismatch (" + std::to_string(nvars_) + " vs " +
                         std::to_string(g.nvars_) + ")");
    }
}

SparsePoly SparsePoly::operator-() const {
    SparsePoly r(*this);
    for (auto& [mono, c] : r.terms_) c = field_.neg(c);
    return r;
}

SparsePoly SparsePoly::scaled(u64 c) const {
    c = field_.reduce(c);
    SparsePoly r(field_, nvars_);
    if (c == 0) return r;
    r.terms_ = terms_;
    for (auto& [mono, v] : r.terms_) v = field_.mul(v, c);
    return r;
}

SparsePoly& SparsePoly::operator+=(const SparsePoly& g) {
    require_compatible(g);
    for (const auto& [mono, c] : g.terms_) add_term(mono, c);
    return *this;
}

SparsePoly operator+(const SparsePoly& f, const SparsePoly& g) {
    SparsePoly r(f);
    r += g;
    return r;
}

SparsePoly operator-(const SparsePoly& f, const SparsePoly& g) {
    f.require_compatible(g);
    SparsePoly r(f);
    for (const auto& [mono, c] : g.terms_) r.add_term(mono, f.field_.neg(c));
    return r;
}

SparsePoly operator*(const SparsePoly& f, const SparsePoly& g) {
    f.require_compatible(g);
    SparsePoly r(f.field_, f.nvars_);
    const PrimeField& F = f.field_;
    for (const auto& [mf, cf] : f.terms_) {
        for (const auto& [mg, cg] : g.terms_) {
            auto [it, inserted] = r.terms_.try_emplace(mf * mg, 0);
            it->second = F.add(it->second, F.mul(cf, cg));
        }
    }
    std::erase_if(r.terms_, [](const auto& t) { return t.second == 0; });
    return r;
}

SparsePoly SparsePoly::pow(unsigned e) const {
    SparsePoly result = constant(field_, nvars_, 1);
    SparsePoly base = *this;
    while (e) {
        if (e & 1) result = result * base;
        e >>= 1;
        if (e) base = base * base;
    }
    return result;
}

u64 SparsePoly::evaluate(std::span<const u64> point) const {
    if (point.size() != nvars_) {
        throw UsageError("evaluation point has " + std::to_string(point.size()) + " coordinates, expected " +
                         std::to_string(nvars_));
    }
    u64 acc = 0;
    for (const auto& [mono, c] : terms_) {
        u64 t = c;
        for (std::size_t j = 0; j < nvars_ && t != 0; ++j) {
            if (mono[j]) t = field_.mul(t, field_.pow(point[j], mono[j]));
        }
        acc = field_.add(acc, t);
    }
    return acc;
}

FieldElement SparsePoly::evaluate(std::span<const FieldElement> point) const {
    std::vector<u64> raw;
    raw.reserve(point.size());
    for (const auto& x : point) {
        if (!(x.field() == field_)) throw UsageError("evaluation point is over a different field");
        raw.push_back(x.value());
    }
    return {field_, evaluate(std::span<const u64>(raw))};
}

// ---------------------------------------------------------------------------
// Text form

std::string SparsePoly::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first_term = true;
    for (const auto& [mono, c] : terms_) {
        if (!first_term) os << " + ";
        first_term = false;
        bool need_star = false;
        if (c != 1 || mono.is_one()) {
            os << c;
            need_star = true;
        }
        for (std::size_t j = 0; j < nvars_; ++j) {
            if (mono[j] == 0) continue;
            if (need_star) os << '*';
            os << 'X' << j;
            if (mono[j] != 1) os << '^' << mono[j];
            need_star = true;
        }
    }
    return os.str();
}

namespace {

class PolyParser {
public:
    PolyParser(std::string_view text, const PrimeField& field, std::size_t nvars)
        : s_(text), field_(field), nvars_(nvars) {}

    SparsePoly run() {
        SparsePoly result(field_, nvars_);
        skip_ws();
        if (at_end()) fail("empty polynomial");
        bool negative = false;
        if (peek() == '+' || peek() == '-') {
            negative = get() == '-';
        }
        for (;;) {
            auto [mono, coef] = parse_term();
            result.add_term(mono, negative ? field_.neg(coef) : coef);
            skip_ws();
            if (at_end()) break;
            const char op = get();
            if (op != '+' && op != '-') fail(std::string("expected '+' or '-', found '") + op + "'");
            negative = op == '-';
        }
        return result;
    }

private:
    std::pair<Monomial, u64> parse_term() {
        Monomial mono(nvars_);
        u64 coef = 1;
        for (;;) {
            skip_ws();
            if (at_end()) fail("expected a coefficient or variable");
            const char c = peek();
            if (std::isdigit(static_cast<unsigned char>(c))) {
                coef = field_.mul(coef, parse_residue());
            } else if (c == 'X' || c == 'x') {
                get();
                const u64 j = parse_integer("variable index");
                if (j >= nvars_) {
                    fail("variable X" + std::to_string(j) + " out of range for " + std::to_string(nvars_) +
                         " variables");
                }
                u64 e = 1;
                skip_ws();
                if (!at_end() && peek() == '^') {
                    get();
                    skip_ws();
                    e = parse_integer("exponent");
                }
                const u64 total = u64{mono[j]} + e;
                if (total > Monomial::kMaxExponent) fail("exponent exceeds the cap of 65535");
                mono.set(j, static_cast<unsigned>(total));
            } else {
                fail(std::string("unexpected character '") + c + "'");
            }
            skip_ws();
            if (at_end() || peek() != '*') break;
            get();
        }
        return {mono, coef};
    }

    // Decimal literal of any length, reduced modulo p as it is read.
    u64 parse_residue() {
        const u64 p = field_.modulus();
        u64 r = 0;
        bool any = false;
        while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) {
            r = static_cast<u64>((static_cast<u128>(r) * 10 + static_cast<u64>(get() - '0')) % p);
            any = true;
        }
        if (!any) fail("expected a number");
        return r;
    }

    u64 parse_integer(const char* what) {
        u64 r = 0;
        bool any = false;
        while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) {
            const u64 d = static_cast<u64>(get() - '0');
            if (r > (Monomial::kMaxExponent * u64{10})) fail(std::string(what) + " too large");
            r = r * 10 + d;
            any = true;
        }
        if (!any) fail(std::string("expected ") + what);
        return r;
    }

    void skip_ws() {
        while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) ++pos_;
    }
    bool at_end() const { return pos_ >= s_.size(); }
    char peek() const { return s_[pos_]; }
    char get() { return s_[pos_++]; }

    [[noreturn]] void fail(const std::string& msg) const {
        throw UsageError("polynomial parse error at offset " + std::to_string(pos_) + " in \"" +
                         std::string(s_) + "\": " + msg);
    }

    std::string_view s_;
    const PrimeField& field_;
    std::size_t nvars_;
    std::size_t pos_ = 0;
};

}  // namespace

SparsePoly SparsePoly::parse(std::string_view text, const PrimeField& field, std::size_t nvars) {
    return PolyParser(text, field, nvars).run();
}

// ---------------------------------------------------------------------------
// Composition

std::vector<SparsePoly> compose_all(std::span<const SparsePoly> fs, std::span<const SparsePoly> subs) {
    std::vector<SparsePoly> out;
    if (fs.empty()) return out;
    const std::size_t nvars = fs[0].nvars();
    const PrimeField& F = fs[0].field();
    if (subs.size() != nvars) {
        throw UsageError("compose: " + std::to_string(subs.size()) + " substitutions for " +
                         std::to_string(nvars) + " variables");
    }
    for (const auto& f : fs) {
        if (f.nvars() != nvars || !(f.field() == F)) throw UsageError("compose: inconsistent polynomials");
    }
    if (subs.empty()) return {fs.begin(), fs.end()};
    const std::size_t out_vars = subs[0].nvars();
    for (const auto& s : subs) {
        if (!(s.field() == F)) throw UsageError("compose: substitution over a different field");
        if (s.nvars() != out_vars) throw UsageError("compose: substitutions disagree on variable count");
    }

    // powers[j][e] = subs[j]^e, filled on demand.
    std::vector<std::vector<SparsePoly>> powers(subs.size());
    auto power = [&](std::size_t j, unsigned e) -> const SparsePoly& {
        auto& cache = powers[j];
        if (cache.empty()) cache.push_back(SparsePoly::constant(F, out_vars, 1));
        while (cache.size() <= e) cache.push_back(cache.back() * subs[j]);
        return cache[e];
    };

    out.reserve(fs.size());
    for (const auto& f : fs) {
        SparsePoly result(F, out_vars);
        for (const auto& [mono, c] : f.terms()) {
            std::optional<SparsePoly> t;
            for (std::size_t j = 0; j < subs.size(); ++j) {
                if (!mono[j]) continue;
                t = t ? *t * power(j, mono[j]) : power(j, mono[j]);
            }
            if (t) {
                result += t->scaled(c);
            } else {
                result.add_term(Monomial(out_vars), c);
            }
        }
        out.push_back(std::move(result));
    }
    return out;
}

SparsePoly compose(const SparsePoly& f, std::span<const SparsePoly> subs) {
    return std::move(compose_all(std::span<const SparsePoly>(&f, 1), subs).front());
}

}  // namespace polydyn
