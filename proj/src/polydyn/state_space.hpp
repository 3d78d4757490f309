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

#ifndef POLYDYN_STATE_SPACE_HPP
#define POLYDYN_STATE_SPACE_HPP

#include <algorithm>
#include <cstddef>
#include <exception>
#include <functional>
#include <mutex>
#include <optional>
#include <span>
#include <thread>
#include <vector>

#include "polydyn/field.hpp"

namespace polydyn {

// p^dims, or nullopt if it does not fit in 64 bits.
inline std::optional<u64> checked_power(u64 p, std::size_t dims) {
    u128 r = 1;
    for (std::size_t i = 0; i < dims; ++i) {
        r *= p;
        if (r > ~u64{0}) return std::nullopt;
    }
    return static_cast<u64>(r);
}

// Mixed-radix indexing of F_p^dims, coordinate 0 least significant.
class StateIndexer {
public:
    StateIndexer(u64 p, std::size_t dims, u64 size) : p_(p), dims_(dims), size_(size) {}

    u64 size() const noexcept { return size_; }
    std::size_t dims() const noexcept { return dims_; }

    u64 encode(std::span<const u64> x) const noexcept {
        u64 idx = 0;
        for (std::size_t j = dims_; j-- > 0;) idx = idx * p_ + x[j];
        return idx;
    }

    void decode(u64 idx, std::span<u64> out) const noexcept {
        for (std::size_t j = 0; j < dims_; ++j) {
            out[j] = idx % p_;
            idx /= p_;
        }
    }

    // Odometer increment; returns false after the last point.
    bool next(std::span<u64> x) const noexcept {
        for (std::size_t j = 0; j < dims_; ++j) {
            if (++x[j] < p_) return true;
            x[j] = 0;
        }
        return false;
    }

private:
    u64 p_;
    std::size_t dims_;
    u64 size_;
};

// Splits [0, total) into a fixed number of contiguous chunks that depends only
// on `total`, so per-chunk partial results combined in chunk order are
// identical for every thread count.
template <typename Partial, typename Fn>
std::vector<Partial> run_chunked(u64 total, unsigned threads, Fn&& fn) {
    constexpr u64 kMaxChunks = 64;
    const u64 chunks = std::max<u64>(1, std::min(kMaxChunks, total));
    std::vector<Partial> parts(chunks);
    auto work = [&](u64 c) {
        const u64 begin = total / chunks * c + std::min(c, total % chunks);
        const u64 end = begin + total / chunks + (c < total % chunks ? 1 : 0);
        parts[c] = fn(begin, end);
    };
    threads = std::max(1u, threads);
    if (threads == 1 || chunks == 1) {
        for (u64 c = 0; c < chunks; ++c) work(c);
        return parts;
    }
    std::vector<std::thread> pool;
    std::exception_ptr failure;
    std::mutex failure_mutex;
    for (unsigned t = 0; t < std::min<u64>(threads, chunks); ++t) {
        pool.emplace_back([&, t] {
            try {
                for (u64 c = t; c < chunks; c += threads) work(c);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
            }
        });
    }
    for (auto& th : pool) th.join();
    if (failure) std::rethrow_exception(failure);
    return parts;
}

}  // namespace polydyn

#endif  // POLYDYN_STATE_SPACE_HPP
