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

#include <memory>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "threebox/deck.hpp"
#include "threebox/deck_io.hpp"

namespace threebox {

/// Longest manifestation sequence the exact engine will expand.
inline constexpr std::size_t kMaxSequenceLength = 8;

/// Final filter: keep only runs whose manifestation at `ordinal` reported
/// `outcome`. Ordinals are 1-based; ordinal 0 is the preparation.
struct Postselection {
    std::size_t ordinal = 0;
    Outcome outcome;

    friend bool operator==(const Postselection&, const Postselection&) = default;
};

struct ExperimentSpec {
    Deck deck;
    PreparationTarget preparation;
    std::vector<ManifestationSpec> manifestations;
    std::optional<Postselection> postselection;

    friend bool operator==(const ExperimentSpec&, const ExperimentSpec&) = default;
};

inline bool can_report(const ManifestationSpec& m, const Outcome& o) {
    if (o.variable() != m.variable) return false;
    if (!m.partial_on) return !o.negated;
    return o.value.index == *m.partial_on;
}

inline void validate(const ExperimentSpec& spec) {
    const std::size_t values = spec.deck.values_per_variable();
    if (spec.preparation.value.index >= values)
        throw Error(ErrorCode::InvalidArguments, "preparation value outside the deck schema");
    if (spec.manifestations.size() > kMaxSequenceLength)
        throw Error(ErrorCode::SequenceTooLong, std::to_string(spec.manifestations.size()) +
                                                    " manifestations exceed the limit of " +
                                                    std::to_string(kMaxSequenceLength));
    for (const auto& m : spec.manifestations)
        if (m.partial_on && *m.partial_on >= values)
            throw Error(ErrorCode::InvalidArguments, "partial manifestation value outside the deck schema");
    if (const auto& post = spec.postselection) {
        if (post->ordinal == 0 || post->ordinal > spec.manifestations.size())
            throw Error(ErrorCode::InvalidArguments,
                        "postselection ordinal " + std::to_string(post->ordinal) + " names no manifestation");
        if (!can_report(spec.manifestations[post->ordinal - 1], post->outcome))
            throw Error(ErrorCode::InvalidArguments, "postselected outcome cannot be reported by manifestation " +
                                                         std::to_string(post->ordinal));
    }
}

/// Boolean combination of (ordinal, outcome) atoms over a recorded outcome
/// sequence.
class Pattern {
public:
    static Pattern at(std::size_t ordinal, Outcome outcome) { return Pattern(Atom{ordinal, outcome}); }
    static Pattern always() { return Pattern(True{}); }

    friend Pattern operator&&(Pattern a, Pattern b) { return Pattern(And{std::move(a.node_), std::move(b.node_)}); }
    friend Pattern operator||(Pattern a, Pattern b) { return Pattern(Or{std::move(a.node_), std::move(b.node_)}); }
    friend Pattern operator!(Pattern a) { return Pattern(Not{std::move(a.node_)}); }

    bool matches(std::span<const Outcome> outcomes) const { return eval(*node_, outcomes); }

private:
    struct Node;
    using Ptr = std::shared_ptr<const Node>;
    struct Atom {
        std::size_t ordinal;
        Outcome outcome;
    };
    struct True {};
    struct And {
        Ptr lhs, rhs;
    };
    struct Or {
        Ptr lhs, rhs;
    };
    struct Not {
        Ptr operand;
    };
    struct Node {
        std::variant<Atom, True, And, Or, Not> v;
    };

    template <class T>
    explicit Pattern(T alt) : node_(std::make_shared<const Node>(Node{std::move(alt)})) {}

    static bool eval(const Node& n, std::span<const Outcome> seq) {
        return std::visit(
            [&](const auto& alt) -> bool {
                using T = std::decay_t<decltype(alt)>;
                if constexpr (std::is_same_v<T, Atom>) {
                    if (alt.ordinal == 0 || alt.ordinal > seq.size())
                        throw Error(ErrorCode::InvalidArguments,
                                    "pattern ordinal " + std::to_string(alt.ordinal) + " outside the sequence");
                    return seq[alt.ordinal - 1] == alt.outcome;
                } else if constexpr (std::is_same_v<T, True>) {
                    return true;
                } else if constexpr (std::is_same_v<T, And>) {
                    return eval(*alt.lhs, seq) && eval(*alt.rhs, seq);
                } else if constexpr (std::is_same_v<T, Or>) {
                    return eval(*alt.lhs, seq) || eval(*alt.rhs, seq);
                } else {
                    return !eval(*alt.operand, seq);
                }
            },
            n.v);
    }

    Ptr node_;
};

// Experiment text format: a deck file followed by
//
//   prepare <Var>=<Value>|<Var>=~<Value>
//   observe <Var>|<Var>?<Value>          (repeatable, in order)
//   postselect [<ordinal>] <Var>=<Value>|<Var>=~<Value>
//
// Without an explicit ordinal the postselection refers to the latest
// manifestation of that variable.

inline std::optional<std::size_t> latest_manifestation_of(const std::vector<ManifestationSpec>& ms, Variable v,
                                                          std::size_t before = static_cast<std::size_t>(-1)) {
    for (std::size_t i = std::min(ms.size(), before); i-- > 0;)
        if (ms[i].variable == v) return i + 1;
    return std::nullopt;
}

inline ExperimentSpec parse_experiment(std::string_view text) {
    std::string deck_text;
    std::vector<std::pair<std::size_t, std::vector<std::string>>> directives;
    std::istringstream in{std::string(text)};
    std::string line;
    for (std::size_t line_no = 1; std::getline(in, line); ++line_no) {
        std::string body = line.substr(0, line.find('#'));
        auto words = detail::split_words(body);
        if (!words.empty() && (words[0] == "prepare" || words[0] == "observe" || words[0] == "postselect")) {
            directives.emplace_back(line_no, std::move(words));
            deck_text += '\n';
        } else {
            deck_text += line + '\n';
        }
    }
    ExperimentSpec spec{parse_deck(deck_text), {}, {}, std::nullopt};
    const Schema& schema = spec.deck.schema;
    bool have_prep = false;
    for (const auto& [line_no, words] : directives) {
        auto fail = [&, n = line_no](const std::string& why) {
            throw Error(ErrorCode::ParseError, "line " + std::to_string(n) + ": " + why);
        };
        if (words[0] == "prepare") {
            if (have_prep || words.size() != 2) fail("expected a single 'prepare <Var>=<Value>'");
            spec.preparation = parse_proposition(schema, words[1]);
            have_prep = true;
        } else if (words[0] == "observe") {
            if (words.size() != 2) fail("expected 'observe <Var>' or 'observe <Var>?<Value>'");
            spec.manifestations.push_back(parse_manifestation(schema, words[1]));
        } else {
            if (spec.postselection || (words.size() != 2 && words.size() != 3)) fail("expected a single 'postselect [ordinal] <Var>=<Value>'");
            Outcome o = parse_proposition(schema, words.back());
            std::size_t ordinal = 0;
            if (words.size() == 3) {
                ordinal = detail::parse_count(words[1], line_no);
            } else {
                auto latest = latest_manifestation_of(spec.manifestations, o.variable());
                if (!latest) fail("postselect names a variable that was never observed");
                ordinal = *latest;
            }
            spec.postselection = Postselection{ordinal, o};
        }
    }
    if (!have_prep) throw Error(ErrorCode::ParseError, "experiment has no 'prepare' line");
    validate(spec);
    return spec;
}

inline std::string write_experiment(const ExperimentSpec& spec) {
    const Schema& s = spec.deck.schema;
    std::string out = write_deck(spec.deck);
    out += "prepare " + format_proposition(s, spec.preparation) + "\n";
    for (const auto& m : spec.manifestations) out += "observe " + format_manifestation(s, m) + "\n";
    if (spec.postselection)
        out += "postselect " + std::to_string(spec.postselection->ordinal) + " " +
               format_proposition(s, spec.postselection->outcome) + "\n";
    return out;
}

}  // namespace threebox
