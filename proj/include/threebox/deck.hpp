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

// The card system: a deck of two-variable cards split into These and Others,
// plus a memory holding the name of the last observed variable.

#pragma once

#include <algorithm>
#include <array>
#include <concepts>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "threebox/error.hpp"
#include "threebox/rational.hpp"

namespace threebox {

/// Index of one of the two deck variables (0 = Face-like, 1 = Suit-like).
enum class Variable : std::uint8_t { First = 0, Second = 1 };

constexpr Variable other(Variable v) {
    return v == Variable::First ? Variable::Second : Variable::First;
}
constexpr std::size_t index_of(Variable v) { return static_cast<std::size_t>(v); }

struct CardValue {
    Variable variable = Variable::First;
    std::size_t index = 0;

    friend auto operator<=>(const CardValue&, const CardValue&) = default;
};

struct Card {
    std::size_t face = 0;
    std::size_t suit = 0;

    std::size_t value_of(Variable v) const { return v == Variable::First ? face : suit; }
    bool carries(CardValue v) const { return value_of(v.variable) == v.index; }

    friend auto operator<=>(const Card&, const Card&) = default;
};

/// A value or its negation ("p" or "p~"). Used both for observation outcomes
/// and for preparation targets.
struct Proposition {
    CardValue value;
    bool negated = false;

    static Proposition is(CardValue v) { return {v, false}; }
    static Proposition is_not(CardValue v) { return {v, true}; }

    Variable variable() const { return value.variable; }
    bool holds_for(const Card& c) const { return c.carries(value) != negated; }

    friend auto operator<=>(const Proposition&, const Proposition&) = default;
};

using Outcome = Proposition;
using PreparationTarget = Proposition;

struct ManifestationSpec {
    Variable variable = Variable::First;
    /// Set for the partial manifestation "v or not v"; empty for complete.
    std::optional<std::size_t> partial_on;

    static ManifestationSpec complete(Variable v) { return {v, std::nullopt}; }
    static ManifestationSpec partial(CardValue v) { return {v.variable, v.index}; }

    bool is_partial() const { return partial_on.has_value(); }

    /// Maps a drawn card to what this manifestation reports.
    Outcome report(const Card& c) const {
        std::size_t drawn = c.value_of(variable);
        if (!partial_on) return Outcome::is({variable, drawn});
        return {CardValue{variable, *partial_on}, drawn != *partial_on};
    }

    friend bool operator==(const ManifestationSpec&, const ManifestationSpec&) = default;
};

/// Variable names and ordered value labels.
struct Schema {
    std::array<std::string, 2> names{"Face", "Suit"};
    std::array<std::vector<std::string>, 2> labels;

    std::size_t values_per_variable() const { return labels[0].size(); }

    const std::string& name(Variable v) const { return names[index_of(v)]; }
    const std::string& label(CardValue v) const { return labels[index_of(v.variable)].at(v.index); }

    std::optional<Variable> find_variable(std::string_view name) const {
        for (Variable v : {Variable::First, Variable::Second})
            if (names[index_of(v)] == name) return v;
        return std::nullopt;
    }
    std::optional<CardValue> find_value(Variable v, std::string_view label) const {
        const auto& ls = labels[index_of(v)];
        auto it = std::find(ls.begin(), ls.end(), label);
        if (it == ls.end()) return std::nullopt;
        return CardValue{v, static_cast<std::size_t>(it - ls.begin())};
    }

    friend bool operator==(const Schema&, const Schema&) = default;
};

/// Multiset of cards stored as a V x V table of multiplicities indexed by
/// (face, suit). Iteration order is the canonical card order: face index
/// first, then suit index, both in schema order.
class CardCounts {
public:
    CardCounts() = default;
    explicit CardCounts(std::size_t values) : values_(values), counts_(values * values, 0) {}

    std::size_t values() const { return values_; }

    std::uint64_t operator[](const Card& c) const { return counts_[slot(c)]; }
    std::uint64_t& operator[](const Card& c) { return counts_[slot(c)]; }

    std::uint64_t total() const { return std::accumulate(counts_.begin(), counts_.end(), std::uint64_t{0}); }
    bool empty() const { return total() == 0; }

    template <std::predicate<const Card&> Pred>
    std::uint64_t count_if(Pred pred) const {
        std::uint64_t n = 0;
        for_each([&](const Card& c, std::uint64_t k) {
            if (pred(c)) n += k;
        });
        return n;
    }

    std::uint64_t count_of(CardValue v) const {
        return count_if([&](const Card& c) { return c.carries(v); });
    }

    /// Calls f(card, multiplicity) for every card with nonzero multiplicity.
    template <class F>
    void for_each(F&& f) const {
        for (std::size_t face = 0; face < values_; ++face)
            for (std::size_t suit = 0; suit < values_; ++suit) {
                Card c{face, suit};
                if (auto k = counts_[slot(c)]; k != 0) f(c, k);
            }
    }

    /// The card at position `index` of the flattened canonical sequence.
    std::optional<Card> at_position(std::uint64_t index) const {
        for (std::size_t face = 0; face < values_; ++face)
            for (std::size_t suit = 0; suit < values_; ++suit) {
                Card c{face, suit};
                auto k = counts_[slot(c)];
                if (index < k) return c;
                index -= k;
            }
        return std::nullopt;
    }

    template <std::predicate<const Card&> Pred>
    std::pair<CardCounts, CardCounts> split(Pred pred) const {
        CardCounts yes(values_), no(values_);
        for_each([&](const Card& c, std::uint64_t k) { (pred(c) ? yes : no)[c] += k; });
        return {std::move(yes), std::move(no)};
    }

    CardCounts scaled(std::uint64_t factor) const {
        CardCounts out = *this;
        for (auto& k : out.counts_) k *= factor;
        return out;
    }

    CardCounts& operator+=(const CardCounts& rhs) {
        if (rhs.values_ != values_) throw Error(ErrorCode::InvalidArguments, "card tables of different sizes");
        for (std::size_t i = 0; i < counts_.size(); ++i) counts_[i] += rhs.counts_[i];
        return *this;
    }
    friend CardCounts operator+(CardCounts lhs, const CardCounts& rhs) { return lhs += rhs; }

    friend bool operator==(const CardCounts&, const CardCounts&) = default;

private:
    std::size_t slot(const Card& c) const { return c.face * values_ + c.suit; }

    std::size_t values_ = 0;
    std::vector<std::uint64_t> counts_;
};

/// A validated deck: every value of every variable appears exactly N times.
struct Deck {
    Schema schema;
    CardCounts cards;
    std::uint64_t copies_per_value = 0;  // N

    std::size_t values_per_variable() const { return schema.values_per_variable(); }  // V
    std::uint64_t joint_count(CardValue p, CardValue q) const {
        return cards.count_if([&](const Card& c) { return c.carries(p) && c.carries(q); });
    }

    friend bool operator==(const Deck&, const Deck&) = default;
};

struct RawCard {
    std::string face;
    std::string suit;
    std::uint64_t multiplicity = 1;
};

namespace detail {

inline void check_schema(const Schema& schema) {
    if (schema.names[0].empty() || schema.names[1].empty() || schema.names[0] == schema.names[1])
        throw Error(ErrorCode::InvalidSchema, "variable names must be two distinct non-empty identifiers");
    if (schema.labels[0].size() != schema.labels[1].size())
        throw Error(ErrorCode::InvalidSchema, "both variables must take the same number of values");
    if (schema.labels[0].size() < 2)
        throw Error(ErrorCode::InvalidSchema, "each variable needs at least two values");
    for (const auto& ls : schema.labels) {
        auto sorted = ls;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
            throw Error(ErrorCode::InvalidSchema, "duplicate value label '" + *std::adjacent_find(sorted.begin(), sorted.end()) + "'");
        for (const auto& l : ls)
            if (l.empty() || l.front() == '~')
                throw Error(ErrorCode::InvalidSchema, "value labels must be non-empty and must not start with '~'");
    }
}

}  // namespace detail

/// Builds a deck over an explicit schema and enforces the equal-count rule.
inline Deck validate_deck(const Schema& schema, const std::vector<RawCard>& raw) {
    detail::check_schema(schema);
    if (raw.empty()) throw Error(ErrorCode::EmptyDeck, "a deck needs at least one card");

    const std::size_t values = schema.values_per_variable();
    CardCounts cards(values);
    for (const auto& rc : raw) {
        if (rc.multiplicity == 0)
            throw Error(ErrorCode::InvalidArguments, "card " + rc.face + rc.suit + " has multiplicity 0");
        auto face = schema.find_value(Variable::First, rc.face);
        auto suit = schema.find_value(Variable::Second, rc.suit);
        if (!face) throw Error(ErrorCode::InvalidSchema, "unknown " + schema.names[0] + " value '" + rc.face + "'");
        if (!suit) throw Error(ErrorCode::InvalidSchema, "unknown " + schema.names[1] + " value '" + rc.suit + "'");
        cards[Card{face->index, suit->index}] += rc.multiplicity;
    }

    for (Variable var : {Variable::First, Variable::Second}) {
        std::vector<std::uint64_t> counts;
        for (std::size_t i = 0; i < values; ++i) counts.push_back(cards.count_of({var, i}));
        if (std::adjacent_find(counts.begin(), counts.end(), std::not_equal_to<>()) != counts.end()) {
            std::string msg = schema.name(var) + " values appear unequally often:";
            for (std::size_t i = 0; i < values; ++i)
                msg += " " + schema.label({var, i}) + "=" + std::to_string(counts[i]);
            throw Error(ErrorCode::UnequalValueCounts, msg);
        }
    }
    std::uint64_t copies = cards.count_of({Variable::First, 0});
    return Deck{schema, std::move(cards), copies};
}

/// Infers the schema from the cards: variables are named Face and Suit and
/// labels are ordered by first appearance.
inline Deck validate_deck(const std::vector<RawCard>& raw) {
    Schema schema;
    for (const auto& rc : raw) {
        if (std::find(schema.labels[0].begin(), schema.labels[0].end(), rc.face) == schema.labels[0].end())
            schema.labels[0].push_back(rc.face);
        if (std::find(schema.labels[1].begin(), schema.labels[1].end(), rc.suit) == schema.labels[1].end())
            schema.labels[1].push_back(rc.suit);
    }
    if (raw.empty()) throw Error(ErrorCode::EmptyDeck, "a deck needs at least one card");
    return validate_deck(schema, raw);
}

struct SystemState {
    CardCounts these;
    CardCounts others;
    Variable memory = Variable::First;

    friend bool operator==(const SystemState&, const SystemState&) = default;
};

/// Places every card satisfying the target in These, the rest in Others,
/// and remembers the target's variable.
inline SystemState prepare(const CardCounts& all_cards, const PreparationTarget& target) {
    auto [these, others] = all_cards.split([&](const Card& c) { return target.holds_for(c); });
    return SystemState{std::move(these), std::move(others), target.variable()};
}

inline SystemState prepare(const Deck& deck, const PreparationTarget& target) {
    if (target.value.index >= deck.values_per_variable())
        throw Error(ErrorCode::InvalidArguments, "preparation value outside the deck schema");
    return prepare(deck.cards, target);
}

/// The pool a manifestation draws from: These when the variable is being
/// observed again, Others otherwise. Partial and complete observations of a
/// variable count as the same variable.
inline const CardCounts& selected_pool(const SystemState& state, const ManifestationSpec& m) {
    return state.memory == m.variable ? state.these : state.others;
}

/// State after a manifestation reported `outcome`: unchanged for a repeated
/// variable, otherwise re-prepared in the reported outcome.
inline SystemState next_state(const SystemState& state, const ManifestationSpec& m, const Outcome& outcome) {
    if (state.memory == m.variable) return state;
    return prepare(state.these + state.others, outcome);
}

struct EventRecord {
    ManifestationSpec manifestation;
    Card drawn;
    Outcome outcome;
    SystemState before;
    SystemState after;
};

struct Observation {
    Outcome outcome;
    SystemState state;
    EventRecord record;
};

/// A uniform-index source: given a pool size n > 0, returns an index in [0, n).
template <class F>
concept DrawSource = requires(F f, std::uint64_t n) {
    { f(n) } -> std::convertible_to<std::uint64_t>;
};

/// One observation step. Draws a card from the selected pool, reports its
/// value through the manifestation and, if the variable differs from the
/// memory, re-prepares the system in the reported outcome.
template <DrawSource Draw>
Observation observe(const SystemState& state, const ManifestationSpec& m, Draw&& draw) {
    const CardCounts& pool = selected_pool(state, m);
    const std::uint64_t size = pool.total();
    if (size == 0) throw Error(ErrorCode::DrawOutOfRange, "selected pool is empty");
    const std::uint64_t index = draw(size);
    auto card = pool.at_position(index);
    if (!card)
        throw Error(ErrorCode::DrawOutOfRange,
                    "draw index " + std::to_string(index) + " outside pool of " + std::to_string(size));

    Outcome outcome = m.report(*card);
    SystemState next = next_state(state, m, outcome);
    EventRecord record{m, *card, outcome, state, next};
    return Observation{outcome, std::move(next), std::move(record)};
}

/// Outcomes a manifestation can report, in schema order (partial: v, then ~v).
inline std::vector<Outcome> possible_outcomes(std::size_t values, const ManifestationSpec& m) {
    if (m.partial_on) {
        CardValue v{m.variable, *m.partial_on};
        return {Outcome::is(v), Outcome::is_not(v)};
    }
    std::vector<Outcome> out;
    for (std::size_t i = 0; i < values; ++i) out.push_back(Outcome::is({m.variable, i}));
    return out;
}

/// Exact law of a single observation step.
inline std::map<Outcome, Rational> step_distribution(const SystemState& state, const ManifestationSpec& m) {
    const CardCounts& pool = selected_pool(state, m);
    const std::uint64_t size = pool.total();
    if (size == 0) throw Error(ErrorCode::DrawOutOfRange, "selected pool is empty");
    std::map<Outcome, Rational> dist;
    for (const auto& o : possible_outcomes(pool.values(), m)) dist[o] = 0;
    pool.for_each([&](const Card& c, std::uint64_t k) { dist[m.report(c)] += Rational(k, size); });
    return dist;
}

/// The value a variable definitely has in this state, if any: only the
/// remembered variable can be sharp. Reports "v" when These agree on v and
/// "~v" when the state was prepared as the negation of v.
inline std::optional<Proposition> sharp_value(const SystemState& state, Variable var) {
    if (state.memory != var) return std::nullopt;
    auto uniform = [&](const CardCounts& cards) -> std::optional<CardValue> {
        std::optional<CardValue> seen;
        bool mixed = false;
        cards.for_each([&](const Card& c, std::uint64_t) {
            CardValue v{var, c.value_of(var)};
            if (seen && *seen != v) mixed = true;
            seen = v;
        });
        if (mixed) return std::nullopt;
        return seen;
    };
    if (auto v = uniform(state.these)) return Proposition::is(*v);
    if (auto v = uniform(state.others)) return Proposition::is_not(*v);
    return std::nullopt;
}

}  // namespace threebox
