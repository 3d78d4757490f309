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

#ifndef POLYDYN_ERRORS_HPP
#define POLYDYN_ERRORS_HPP

#include <cstdint>
#include <stdexcept>
#include <string>

namespace polydyn {

// Bad caller input: mismatched moduli, malformed polynomial text, bad
// parameter domains.
class UsageError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// A computation would exceed its configured work or memory budget.
class BudgetExceeded : public std::runtime_error {
public:
    BudgetExceeded(const std::string& what, std::uint64_t completed = 0)
        : std::runtime_error(what), completed_(completed) {}

    // Meaning depends on the raiser: largest completed iterate for symbolic
    // iteration, steps walked for period search.
    std::uint64_t completed() const noexcept { return completed_; }

private:
    std::uint64_t completed_;
};

// Structural violations of a polynomial system surfaced as an exception (most
// code paths return violations as data instead).
class ValidationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace polydyn

#endif  // POLYDYN_ERRORS_HPP
