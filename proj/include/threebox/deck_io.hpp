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

// Text forms for decks, states, propositions and manifestations.
//
// Deck file grammar (UTF-8, line oriented, '#' starts a comment):
//
//   variables <name-1> <name-2>
//   values <name-1> <label> <label> ...
//   values <name-2> <label> <label> ...
//   card <label-1> <label-2> [multiplicity]
//   ...
//
// Both variables must be declared with `values` before the first `card`.
// Multiplicity defaults to 1; repeated `card` lines for the same pair add up.

#pragma once

#include <fstream>
#include <istream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "threebox/deck.hpp"

namespace threebox {

namespace detail {

inline std::vector<std::string> split_words(std::string_view line) {
    std::vector<std::string> words;
    std::istringstream in{std::string(line)};
    for (std::string w; in >> w;) words.push_back(w);
    return words;
}

inline std::uint64_t parse_count(const std::string& text, std::size_t line_no) {
    std::uint64_t value = 0;
    std::size_t used = 0;
    try {
        if (text.empty() || text.front() == '-') throw std::invalid_argument("negative");
        value = std::stoull(text, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used != text.size() || used == 0)
        throw Error(ErrorCode::ParseError, "line " + std::to_string(line_no) + ": bad multiplicity '" + text + "'");
    return value;
}

}  // namespace detail

inline Deck parse_deck(std::istream& in) {
    Schema schema;
    bool have_names = false;
    std::array<bool, 2> have_values{false, false};
    std::vector<RawCard> raw;

    std::string line;
    for (std::size_t line_no = 1; std::getline(in, line); ++line_no) {
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        auto words = detail::split_words(line);
        if (words.empty()) continue;
        auto fail = [&](const std::string& why) {
            throw Error(ErrorCode::ParseError, "line " + std::to_string(line_no) + ": " + why);
        };
        const std::string& kw = words[0];
        if (kw == "variables") {
            if (have_names) fail("duplicate 'variables' line");
            if (words.size() != 3) fail("'variables' takes exactly two names");
            schema.names = {words[1], words[2]};
            have_names = true;
        } else if (kw == "values") {
            if (!have_names) fail("'values' before 'variables'");
            if (words.size() < 2) fail("'values' needs a variable name");
            auto var = schema.find_variable(words[1]);
            if (!var) fail("unknown variable '" + words[1] + "'");
            if (have_values[index_of(*var)]) fail("duplicate 'values' for " + words[1]);
            schema.labels[index_of(*var)].assign(words.begin() + 2, words.end());
            have_values[index_of(*var)] = true;
        } else if (kw == "card") {
            if (!have_values[0] || !have_values[1]) fail("'card' before both value lists");
            if (words.size() != 3 && words.size() != 4) fail("'card' takes two labels and an optional multiplicity");
            RawCard rc{words[1], words[2], 1};
            if (words.size() == 4) rc.multiplicity = detail::parse_count(words[3], line_no);
            raw.push_back(std::move(rc));
        } else {
            fail("unknown keyword '" + kw + "'");
        }
    }
    if (!have_names || !have_values[0] || !have_values[1])
        throw Error(ErrorCode::ParseError, "deck file must declare variables and both value lists");
    return validate_deck(schema, raw);
}

inline Deck parse_deck(std::string_view text) {
    std::istringstream in{std::string(text)};
    return parse_deck(in);
}

inline Deck load_deck(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::ParseError, "cannot open deck file '" + path + "'");
    return parse_deck(in);
}

/// Canonical deck file text; parse_deck(write_deck(d)) == d.
inline std::string write_deck(const Deck& deck) {
    const Schema& s = deck.schema;
    std::ostringstream out;
    out << "variables " << s.names[0] << ' ' << s.names[1] << '\n';
    for (std::size_t v = 0; v < 2; ++v) {
        out << "values " << s.names[v];
        for (const auto& l : s.labels[v]) out << ' ' << l;
        out << '\n';
    }
    deck.cards.for_each([&](const Card& c, std::uint64_t k) {
        out << "card " << s.labels[0][c.face] << ' ' << s.labels[1][c.suit] << ' ' << k << '\n';
    });
    return out.str();
}

inline std::string card_label(const Schema& s, const Card& c) {
    return s.labels[0][c.face] + s.labels[1][c.suit];
}

/// "(2)KH, QS" in canonical order; "-" for an empty multiset.
inline std::string format_cards(const Schema& s, const CardCounts& cards) {
    std::string out;
    cards.for_each([&](const Card& c, std::uint64_t k) {
        if (!out.empty()) out += ", ";
        if (k > 1) out += "(" + std::to_string(k) + ")";
        out += card_label(s, c);
    });
    return out.empty() ? "-" : out;
}

/// "[These | Others]".
inline std::string format_partition(const Schema& s, const SystemState& st) {
    return "[" + format_cards(s, st.these) + " | " + format_cards(s, st.others) + "]";
}

/// "S" or "~S".
inline std::string format_outcome(const Schema& s, const Proposition& p) {
    return (p.negated ? "~" : "") + s.label(p.value);
}

/// "Suit=S" or "Suit=~S".
inline std::string format_proposition(const Schema& s, const Proposition& p) {
    return s.name(p.variable()) + "=" + format_outcome(s, p);
}

/// "Suit" (complete) or "Suit?S" (partial on S).
inline std::string format_manifestation(const Schema& s, const ManifestationSpec& m) {
    std::string out = s.name(m.variable);
    if (m.partial_on) out += "?" + s.label({m.variable, *m.partial_on});
    return out;
}

inline Proposition parse_proposition(const Schema& s, std::string_view text) {
    auto eq = text.find('=');
    if (eq == std::string_view::npos)
        throw Error(ErrorCode::ParseError, "expected Variable=Value or Variable=~Value, got '" + std::string(text) + "'");
    auto var = s.find_variable(text.substr(0, eq));
    if (!var) throw Error(ErrorCode::ParseError, "unknown variable in '" + std::string(text) + "'");
    std::string_view label = text.substr(eq + 1);
    bool negated = !label.empty() && label.front() == '~';
    if (negated) label.remove_prefix(1);
    auto value = s.find_value(*var, label);
    if (!value) throw Error(ErrorCode::ParseError, "unknown value in '" + std::string(text) + "'");
    return {*value, negated};
}

inline ManifestationSpec parse_manifestation(const Schema& s, std::string_view text) {
    auto q = text.find('?');
    auto var = s.find_variable(text.substr(0, q));
    if (!var) throw Error(ErrorCode::ParseError, "unknown variable in manifestation '" + std::string(text) + "'");
    if (q == std::string_view::npos) return ManifestationSpec::complete(*var);
    auto value = s.find_value(*var, text.substr(q + 1));
    if (!value) throw Error(ErrorCode::ParseError, "unknown value in manifestation '" + std::string(text) + "'");
    return ManifestationSpec::partial(*value);
}

}  // namespace threebox
