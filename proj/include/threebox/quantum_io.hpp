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

// Text forms for complex amplitudes and states: "0.5", "-i", "1/3",
// "0.5-0.25i", "sqrt(1/2)" and comma-separated lists of those.

#pragma once

#include <charconv>
#include <cmath>
#include <string>
#include <string_view>
#include <vector>

#include "threebox/quantum.hpp"

namespace threebox::quantum {

namespace detail {

inline double parse_real(std::string_view text, std::string_view whole) {
    auto fail = [&] { throw Error(ErrorCode::ParseError, "bad amplitude '" + std::string(whole) + "'"); };
    if (text.empty()) fail();
    if (text.starts_with("sqrt(") && text.ends_with(")")) {
        double inside = parse_real(text.substr(5, text.size() - 6), whole);
        if (inside < 0) fail();
        return std::sqrt(inside);
    }
    if (auto slash = text.find('/'); slash != std::string_view::npos) {
        double den = parse_real(text.substr(slash + 1), whole);
        if (den == 0) fail();
        return parse_real(text.substr(0, slash), whole) / den;
    }
    double value = 0;
    std::string s(text);
    std::size_t used = 0;
    try {
        value = std::stod(s, &used);
    } catch (const std::exception&) {
        fail();
    }
    if (used != s.size()) fail();
    return value;
}

/// Signed real term with optional trailing 'i' (which may stand alone).
inline Complex parse_term(std::string_view term, std::string_view whole) {
    bool negative = false;
    if (!term.empty() && (term.front() == '+' || term.front() == '-')) {
        negative = term.front() == '-';
        term.remove_prefix(1);
    }
    bool imaginary = !term.empty() && term.back() == 'i';
    if (imaginary) term.remove_suffix(1);
    if (!term.empty() && term.back() == '*') term.remove_suffix(1);
    double mag = (imaginary && term.empty()) ? 1.0 : parse_real(term, whole);
    if (negative) mag = -mag;
    return imaginary ? Complex(0, mag) : Complex(mag, 0);
}

}  // namespace detail

inline Complex parse_complex(std::string_view text) {
    std::string compact;
    for (char c : text)
        if (c != ' ') compact += c;
    std::string_view s = compact;
    if (s.empty()) throw Error(ErrorCode::ParseError, "empty amplitude");
    // Split at a '+'/'-' that is not leading, not after 'e' and not inside parentheses.
    int depth = 0;
    for (std::size_t i = 1; i < s.size(); ++i) {
        char c = s[i];
        if (c == '(') ++depth;
        if (c == ')') --depth;
        if (depth == 0 && (c == '+' || c == '-') && s[i - 1] != 'e' && s[i - 1] != 'E')
            return detail::parse_term(s.substr(0, i), text) + detail::parse_term(s.substr(i), text);
    }
    return detail::parse_term(s, text);
}

inline Vector parse_amplitudes(std::string_view text) {
    std::vector<Complex> values;
    std::size_t start = 0;
    while (start <= text.size()) {
        auto comma = text.find(',', start);
        auto piece = text.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
        values.push_back(parse_complex(piece));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    Vector v(static_cast<Eigen::Index>(values.size()));
    for (std::size_t i = 0; i < values.size(); ++i) v(static_cast<Eigen::Index>(i)) = values[i];
    return v;
}

/// Parses and, when `normalize` is set, rescales to unit norm.
inline QState parse_state(std::string_view text, bool normalize) {
    Vector v = parse_amplitudes(text);
    return normalize ? QState::normalized(v) : QState(v);
}

}  // namespace threebox::quantum
