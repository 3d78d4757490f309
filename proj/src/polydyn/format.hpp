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

#ifndef POLYDYN_FORMAT_HPP
#define POLYDYN_FORMAT_HPP

#include <charconv>
#include <cmath>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace polydyn {

// Shortest decimal that round-trips.
inline std::string format_double(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

// Integers print exactly, everything else as the nearest double.
inline std::string format_rational(const boost::multiprecision::cpp_rational& r) {
    if (boost::multiprecision::denominator(r) == 1) return boost::multiprecision::numerator(r).str();
    return format_double(r.convert_to<double>());
}

}  // namespace polydyn

#endif  // POLYDYN_FORMAT_HPP
