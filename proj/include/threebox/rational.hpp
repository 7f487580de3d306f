// Copyright 2026 The threebox Authors
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

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <string_view>

#include "threebox/error.hpp"

namespace threebox {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Always "num/den", including integers ("1/1", "0/1").
inline std::string to_string(const Rational& r) {
    return numerator(r).str() + "/" + denominator(r).str();
}

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

/// Accepts "n", "n/d" and signed forms. Rejects zero denominators.
inline Rational parse_rational(std::string_view text) {
    auto fail = [&] {
        throw Error(ErrorCode::ParseError, "not a rational number: '" + std::string(text) + "'");
    };
    auto is_int = [](std::string_view s) {
        if (!s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
        if (s.empty()) return false;
        for (char c : s)
            if (c < '0' || c > '9') return false;
        return true;
    };
    auto slash = text.find('/');
    std::string_view num = text.substr(0, slash);
    std::string_view den = slash == std::string_view::npos ? std::string_view("1") : text.substr(slash + 1);
    if (!is_int(num) || !is_int(den) || den.front() == '-' || den.front() == '+') fail();
    if (num.front() == '+') num.remove_prefix(1);
    Integer n(std::string(num).c_str());
    Integer d(std::string(den).c_str());
    if (d == 0) fail();
    return Rational(n, d);
}

inline Integer lcm_of_denominators(const Rational& a, const Integer& acc) {
    return boost::multiprecision::lcm(acc, denominator(a));
}

}  // namespace threebox
