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

#include "polydyn/generator.hpp"

#include <charconv>
#include <ostream>
#include <string>

#include "polydyn/errors.hpp"

namespace polydyn {

Stepper::Stepper(const TriangularSystem& sys, bool allow_fast_path)
    : field_(sys.field()), m_(sys.m()), f_(sys.f()), a_(sys.a()), b_(sys.b()) {
    if (!allow_fast_path) return;
    std::vector<std::vector<std::pair<std::size_t, u64>>> factors;
    std::vector<u64> h_const;
    for (std::size_t i = 0; i < m_; ++i) {
        auto fac = square_minus_constant_factors(sys.g()[i]);
        const SparsePoly& h = sys.h()[i];
        if (!fac || h.total_degree() > 0) return;
        for (const auto& [j, c] : *fac) {
            if (j <= i) return;
        }
        factors.push_back(std::move(*fac));
        h_const.push_back(h.is_zero() ? 0 : h.terms().begin()->second);
    }
    squared_.assign(m_ + 1, false);
    for (const auto& fac : factors) {
        for (const auto& [j, c] : fac) squared_[j] = true;
    }
    factors_ = std::move(factors);
    h_const_ = std::move(h_const);
    path_ = StepPath::product_form;
}

template <bool Count>
void Stepper::step_product(std::span<const u64> in, std::span<u64> out, u64* muls) const {
    const PrimeField& F = field_;
    auto mul = [&](std::size_t comp, u64 x, u64 y) {
        if constexpr (Count) ++muls[comp];
        return F.mul(x, y);
    };
    // Small fixed buffer: dims beyond 16 fall back to a heap vector.
    u64 stack_sq[16];
    std::vector<u64> heap_sq;
    u64* sq = stack_sq;
    if (m_ + 1 > 16) {
        heap_sq.resize(m_ + 1);
        sq = heap_sq.data();
    }
    for (std::size_t j = 1; j <= m_; ++j) {
        if (squared_[j]) sq[j] = mul(j - 1, in[j], in[j]);
    }
    for (std::size_t i = 0; i < m_; ++i) {
        const auto& fac = factors_[i];
        u64 y = in[i];
        if (!fac.empty()) {
            u64 prod = F.sub(sq[fac[0].first], fac[0].second);
            for (std::size_t t = 1; t < fac.size(); ++t) {
                prod = mul(i, prod, F.sub(sq[fac[t].first], fac[t].second));
            }
            y = mul(i, in[i], prod);
        }
        out[i] = F.add(y, h_const_[i]);
    }
    out[m_] = F.add(mul(m_, a_, in[m_]), b_);
}

void Stepper::step(std::span<const u64> in, std::span<u64> out) const {
    if (path_ == StepPath::product_form) {
        step_product<false>(in, out, nullptr);
        return;
    }
    for (std::size_t i = 0; i <= m_; ++i) out[i] = f_[i].evaluate(in);
}

void Stepper::step_counted(std::span<const u64> in, std::span<u64> out, std::span<u64> muls) const {
    if (muls.size() != m_ + 1) throw UsageError("multiplication counter has the wrong size");
    if (path_ == StepPath::product_form) {
        step_product<true>(in, out, muls.data());
        return;
    }
    // Generic path: one multiplication per coefficient-times-power factor
    // plus square-and-multiply for each power.
    for (std::size_t i = 0; i <= m_; ++i) {
        for (const auto& [mono, c] : f_[i].terms()) {
            for (std::size_t j = 0; j <= m_; ++j) {
                unsigned e = mono[j];
                if (e == 0) continue;
                muls[i] += 1;  // multiply into the term
                u64 steps = 0;
                for (unsigned t = e; t > 1; t >>= 1) steps += (t & 1) ? 2 : 1;
                muls[i] += steps;
            }
        }
        out[i] = f_[i].evaluate(in);
    }
}

// ---------------------------------------------------------------------------

Generator::Generator(const TriangularSystem& sys, std::span<const u64> seed, bool allow_fast_path)
    : stepper_(sys, allow_fast_path) {
    if (seed.size() != sys.nvars()) {
        throw UsageError("seed has " + std::to_string(seed.size()) + " coordinates, expected " +
                         std::to_string(sys.nvars()));
    }
    for (u64 v : seed) {
        if (v >= sys.modulus()) {
            throw UsageError("seed coordinate " + std::to_string(v) + " is not a canonical residue modulo " +
                             std::to_string(sys.modulus()));
        }
    }
    u_.assign(seed.begin(), seed.end());
    scratch_.resize(u_.size());
}

void Generator::step() {
    stepper_.step(u_, scratch_);
    u_.swap(scratch_);
    ++n_;
}

void Generator::jump(u64 k) {
    for (u64 t = 0; t < k; ++t) step();
}

std::vector<OutputPoint> Generator::emit(std::size_t count) {
    std::vector<OutputPoint> out;
    out.reserve(count);
    const std::size_t m = this->m();
    for (std::size_t t = 0; t < count; ++t) {
        out.push_back({std::vector<u64>(u_.begin(), u_.begin() + static_cast<std::ptrdiff_t>(m)), modulus()});
        step();
    }
    return out;
}

void Generator::emit_into(std::size_t count, std::span<u64> numerators) {
    const std::size_t m = this->m();
    if (numerators.size() < count * m) throw UsageError("output buffer too small");
    for (std::size_t t = 0; t < count; ++t) {
        for (std::size_t j = 0; j < m; ++j) numerators[t * m + j] = u_[j];
        step();
    }
}

void Generator::write(std::size_t count, OutputFormat format, const std::function<void(std::string_view)>& sink) {
    const std::size_t m = this->m();
    std::string buf;
    constexpr std::size_t kFlushAt = 1 << 16;
    buf.reserve(kFlushAt + 256);
    char num[32];
    auto append_number = [&](u64 v) {
        auto res = std::to_chars(num, num + sizeof num, v);
        buf.append(num, res.ptr);
    };
    for (std::size_t t = 0; t < count; ++t) {
        switch (format) {
            case OutputFormat::csv:
                for (std::size_t j = 0; j < m; ++j) {
                    append_number(u_[j]);
                    buf.push_back(',');
                }
                buf.push_back('\n');
                break;
            case OutputFormat::ndjson:
                buf.append("{\"n\":");
                append_number(n_);
                buf.append(",\"u\":[");
                for (std::size_t j = 0; j < m; ++j) {
                    if (j) buf.push_back(',');
                    append_number(u_[j]);
                }
                buf.append("]}\n");
                break;
            case OutputFormat::u64le:
                for (std::size_t j = 0; j < m; ++j) {
                    u64 v = u_[j];
                    for (int byte = 0; byte < 8; ++byte) {
                        buf.push_back(static_cast<char>(v & 0xFF));
                        v >>= 8;
                    }
                }
                break;
        }
        step();
        if (buf.size() >= kFlushAt) {
            sink(buf);
            buf.clear();
        }
    }
    if (!buf.empty()) sink(buf);
}

void Generator::write(std::size_t count, OutputFormat format, std::ostream& os) {
    write(count, format, [&os](std::string_view chunk) {
        os.write(chunk.data(), static_cast<std::streamsize>(chunk.size()));
        if (!os) throw IoError("write to output stream failed");
    });
}

OutputFormat parse_output_format(std::string_view name) {
    if (name == "csv") return OutputFormat::csv;
    if (name == "ndjson") return OutputFormat::ndjson;
    if (name == "u64le") return OutputFormat::u64le;
    throw UsageError("unknown output format '" + std::string(name) + "' (expected csv, ndjson or u64le)");
}

}  // namespace polydyn
