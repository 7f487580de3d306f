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

#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "support.hpp"

using namespace threebox;
using threebox::testing::face;
using threebox::testing::suit;
using threebox::testing::whole;

namespace {

// Always draws the given index, whatever the pool size.
auto fixed(std::uint64_t index) {
    return [index](std::uint64_t) { return index; };
}

std::vector<PreparationTarget> all_targets(const Deck& d) {
    std::vector<PreparationTarget> out;
    for (Variable v : {Variable::First, Variable::Second})
        for (std::size_t i = 0; i < d.values_per_variable(); ++i) {
            out.push_back(Proposition::is({v, i}));
            out.push_back(Proposition::is_not({v, i}));
        }
    return out;
}

std::vector<ManifestationSpec> all_manifestations(const Deck& d) {
    std::vector<ManifestationSpec> out;
    for (Variable v : {Variable::First, Variable::Second}) {
        out.push_back(ManifestationSpec::complete(v));
        for (std::size_t i = 0; i < d.values_per_variable(); ++i) out.push_back(ManifestationSpec::partial({v, i}));
    }
    return out;
}

std::string partition(const Deck& d, const SystemState& s) { return format_partition(d.schema, s); }

}  // namespace

TEST(Validate, ThreeBoxDeck) {
    Deck d = validate_deck({{"K", "H", 2}, {"Q", "S"}, {"Q", "D"}, {"J", "D"}, {"J", "S"}});
    EXPECT_EQ(d.values_per_variable(), 3u);
    EXPECT_EQ(d.copies_per_value, 2u);
    EXPECT_EQ(d.cards.total(), 6u);
    EXPECT_EQ(d.joint_count(face(d, "K"), suit(d, "H")), 2u);
    EXPECT_EQ(d.joint_count(face(d, "K"), suit(d, "S")), 0u);
}

TEST(Validate, OneOfEachPair) {
    Deck d = validate_deck({{"K", "S"}, {"K", "H"}, {"Q", "S"}, {"Q", "H"}});
    EXPECT_EQ(d.values_per_variable(), 2u);
    EXPECT_EQ(d.copies_per_value, 2u);
}

TEST(Validate, RejectsUnequalCountsAndNamesTheValue) {
    try {
        validate_deck({{"K", "S", 2}, {"K", "H"}, {"Q", "S"}, {"Q", "H"}});
        FAIL() << "expected UnequalValueCounts";
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::UnequalValueCounts);
        std::string msg = e.what();
        EXPECT_NE(msg.find("K=3"), std::string::npos) << msg;
        EXPECT_NE(msg.find("Q=2"), std::string::npos) << msg;
    }
}

TEST(Validate, ErrorPaths) {
    auto code_of = [](auto&& f) {
        try {
            f();
        } catch (const Error& e) {
            return e.code();
        }
        return ErrorCode::ParseError;  // sentinel: nothing thrown
    };
    EXPECT_EQ(code_of([] { validate_deck(std::vector<RawCard>{}); }), ErrorCode::EmptyDeck);
    EXPECT_EQ(code_of([] { validate_deck({{"K", "S", 0}}); }), ErrorCode::InvalidSchema);
    // Three faces but only two suits: V differs between the variables.
    EXPECT_EQ(code_of([] { validate_deck({{"K", "S"}, {"Q", "H"}, {"J", "S"}}); }), ErrorCode::InvalidSchema);
}

TEST(Validate, JointCountsSumToN) {
    for (const Deck& d : {three_box_deck(), counterfactual_deck()})
        for (std::size_t j = 0; j < d.values_per_variable(); ++j) {
            std::uint64_t row = 0;
            for (std::size_t k = 0; k < d.values_per_variable(); ++k)
                row += d.joint_count({Variable::First, j}, {Variable::Second, k});
            EXPECT_EQ(row, d.copies_per_value);
        }
}

TEST(Prepare, Examples) {
    Deck d = three_box_deck();
    SystemState q = prepare(d, Proposition::is(face(d, "Q")));
    EXPECT_EQ(partition(d, q), "[QS, QD | (2)KH, JS, JD]");
    EXPECT_EQ(q.memory, Variable::First);

    SystemState not_s = prepare(d, Proposition::is_not(suit(d, "S")));
    EXPECT_EQ(partition(d, not_s), "[(2)KH, QD, JD | QS, JS]");
    EXPECT_EQ(not_s.memory, Variable::Second);

    EXPECT_EQ(partition(d, prepare(d, Proposition::is(face(d, "K")))), "[(2)KH | QS, QD, JS, JD]");
}

TEST(Prepare, RejectsValueOutsideSchema) {
    Deck d = counterfactual_deck();
    EXPECT_THROW(prepare(d, Proposition::is({Variable::First, 5})), Error);
}

TEST(Observe, PartialHitOnS) {
    Deck d = three_box_deck();
    SystemState q = prepare(d, Proposition::is(face(d, "Q")));
    // Others in canonical order: KH, KH, JS, JD.
    auto obs = observe(q, ManifestationSpec::partial(suit(d, "S")), fixed(2));
    EXPECT_EQ(obs.outcome, Proposition::is(suit(d, "S")));
    EXPECT_EQ(partition(d, obs.state), "[QS, JS | (2)KH, QD, JD]");
    EXPECT_EQ(obs.record.drawn.face, 2u);
    EXPECT_EQ(obs.record.before, q);
    EXPECT_EQ(obs.record.after, obs.state);
}

TEST(Observe, PartialMissOnD) {
    Deck d = three_box_deck();
    SystemState q = prepare(d, Proposition::is(face(d, "Q")));
    auto obs = observe(q, ManifestationSpec::partial(suit(d, "D")), fixed(0));
    EXPECT_EQ(obs.outcome, Proposition::is_not(suit(d, "D")));
    EXPECT_EQ(partition(d, obs.state), "[(2)KH, QS, JS | QD, JD]");
}

TEST(Observe, RepeatedCompleteLeavesStateUnchanged) {
    Deck d = three_box_deck();
    SystemState q = prepare(d, Proposition::is(face(d, "Q")));
    for (std::uint64_t i = 0; i < q.these.total(); ++i) {
        auto obs = observe(q, ManifestationSpec::complete(Variable::First), fixed(i));
        EXPECT_EQ(obs.outcome, Proposition::is(face(d, "Q")));
        EXPECT_EQ(obs.state, q);
    }
}

TEST(Observe, DrawOutOfRange) {
    Deck d = three_box_deck();
    SystemState q = prepare(d, Proposition::is(face(d, "Q")));
    try {
        observe(q, ManifestationSpec::complete(Variable::Second), fixed(4));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::DrawOutOfRange);
    }
}

TEST(StepDistribution, Examples) {
    Deck d = three_box_deck();
    SystemState q = prepare(d, Proposition::is(face(d, "Q")));
    auto full = step_distribution(q, ManifestationSpec::complete(Variable::Second));
    EXPECT_EQ(full.at(Proposition::is(suit(d, "S"))), Rational(1, 4));
    EXPECT_EQ(full.at(Proposition::is(suit(d, "H"))), Rational(1, 2));
    EXPECT_EQ(full.at(Proposition::is(suit(d, "D"))), Rational(1, 4));

    auto part = step_distribution(q, ManifestationSpec::partial(suit(d, "S")));
    EXPECT_EQ(part.at(Proposition::is(suit(d, "S"))), Rational(1, 4));
    EXPECT_EQ(part.at(Proposition::is_not(suit(d, "S"))), Rational(3, 4));

    SystemState not_s = prepare(d, Proposition::is_not(suit(d, "S")));
    auto faces = step_distribution(not_s, ManifestationSpec::complete(Variable::First));
    EXPECT_EQ(faces.at(Proposition::is(face(d, "K"))), 0);
    EXPECT_EQ(faces.at(Proposition::is(face(d, "Q"))), Rational(1, 2));
    EXPECT_EQ(faces.at(Proposition::is(face(d, "J"))), Rational(1, 2));
}

// Every invariant of the transition rule, checked over all preparations and
// manifestations of both example decks and two steps deep.
TEST(Invariants, ReachableStates) {
    for (const Deck& d : {three_box_deck(), counterfactual_deck()}) {
        const auto ms = all_manifestations(d);
        for (const auto& target : all_targets(d)) {
            std::vector<SystemState> frontier{prepare(d, target)};
            for (int depth = 0; depth < 2; ++depth) {
                std::vector<SystemState> next;
                for (const auto& s : frontier) {
                    EXPECT_EQ(whole(s), d.cards);
                    for (const auto& m : ms) {
                        auto dist = step_distribution(s, m);
                        Rational sum = 0;
                        for (const auto& [o, p] : dist) sum += p;
                        EXPECT_EQ(sum, 1);

                        const CardCounts& pool = selected_pool(s, m);
                        for (std::uint64_t i = 0; i < pool.total(); ++i) {
                            auto obs = observe(s, m, fixed(i));
                            EXPECT_EQ(whole(obs.state), d.cards) << "conservation";
                            if (s.memory == m.variable) {
                                EXPECT_EQ(obs.state, s);
                            } else {
                                EXPECT_EQ(obs.state, prepare(d, obs.outcome)) << "re-preparation";
                            }
                            next.push_back(obs.state);
                        }
                    }
                }
                frontier = std::move(next);
            }
        }
    }
}

TEST(Invariants, RepetitionAndStability) {
    for (const Deck& d : {three_box_deck(), counterfactual_deck()}) {
        for (Variable v : {Variable::First, Variable::Second}) {
            for (std::size_t j = 0; j < d.values_per_variable(); ++j) {
                const CardValue pj{v, j};
                SystemState s = prepare(d, Proposition::is(pj));
                auto again = step_distribution(s, ManifestationSpec::complete(v));
                EXPECT_EQ(again.at(Proposition::is(pj)), 1);
                for (std::size_t k = 0; k < d.values_per_variable(); ++k) {
                    if (k == j) continue;
                    const CardValue pk{v, k};
                    auto partial = step_distribution(s, ManifestationSpec::partial(pk));
                    EXPECT_EQ(partial.at(Proposition::is_not(pk)), 1);
                    for (std::uint64_t i = 0; i < s.these.total(); ++i) {
                        auto obs = observe(s, ManifestationSpec::partial(pk), fixed(i));
                        EXPECT_EQ(obs.state, s);
                        auto after = step_distribution(obs.state, ManifestationSpec::complete(v));
                        EXPECT_EQ(after.at(Proposition::is(pj)), 1);
                    }
                }
            }
        }
    }
}

TEST(SharpValue, PreparedAndNegated) {
    Deck d = three_box_deck();
    auto q = prepare(d, Proposition::is(face(d, "Q")));
    EXPECT_EQ(sharp_value(q, Variable::First), Proposition::is(face(d, "Q")));
    EXPECT_FALSE(sharp_value(q, Variable::Second));
    auto not_s = prepare(d, Proposition::is_not(suit(d, "S")));
    EXPECT_EQ(sharp_value(not_s, Variable::Second), Proposition::is_not(suit(d, "S")));
}

// ---------------------------------------------------------------------------
// Deck files

TEST(DeckFile, ParsesTheShippedDecks) {
    EXPECT_EQ(load_deck(THREEBOX_DATA_DIR "/threebox.deck"), three_box_deck());
    EXPECT_EQ(load_deck(THREEBOX_DATA_DIR "/counterfactual.deck"), counterfactual_deck());
    EXPECT_THROW(load_deck(THREEBOX_DATA_DIR "/unequal.deck"), Error);
}

TEST(DeckFile, Errors) {
    auto code_of = [](std::string_view text) {
        try {
            parse_deck(text);
        } catch (const Error& e) {
            return e.code();
        }
        return ErrorCode::EmptyDeck;
    };
    EXPECT_EQ(code_of("variables A\n"), ErrorCode::ParseError);
    EXPECT_EQ(code_of("variables A B\nvalues A x y\nvalues B u v\ncard x w\n"), ErrorCode::InvalidSchema);
    EXPECT_EQ(code_of("variables A B\nvalues A x y\nvalues B u v\ncard x u two\n"), ErrorCode::ParseError);
    EXPECT_EQ(code_of("variables A B\nvalues A x y\nvalues B u v\n"), ErrorCode::EmptyDeck);
}

// Random valid decks (sums of N permutation matrices) survive write/parse.
TEST(DeckFile, RoundTripProperty) {
    std::mt19937_64 rng(2024);
    for (int iter = 0; iter < 200; ++iter) {
        const std::size_t V = 2 + rng() % 4;
        const std::size_t N = 1 + rng() % 4;
        Schema schema;
        schema.names = {"Colour", "Shape"};
        for (std::size_t i = 0; i < V; ++i) {
            schema.labels[0].push_back("c" + std::to_string(i));
            schema.labels[1].push_back("s" + std::to_string(i));
        }
        std::vector<std::uint64_t> joint(V * V, 0);
        std::vector<std::size_t> perm(V);
        for (std::size_t n = 0; n < N; ++n) {
            std::iota(perm.begin(), perm.end(), 0);
            std::shuffle(perm.begin(), perm.end(), rng);
            for (std::size_t i = 0; i < V; ++i) joint[i * V + perm[i]] += 1;
        }
        std::vector<RawCard> raw;
        for (std::size_t i = 0; i < V; ++i)
            for (std::size_t k = 0; k < V; ++k)
                if (joint[i * V + k]) raw.push_back({schema.labels[0][i], schema.labels[1][k], joint[i * V + k]});
        std::shuffle(raw.begin(), raw.end(), rng);

        Deck d = validate_deck(schema, raw);
        ASSERT_EQ(d.copies_per_value, N);
        std::string text = write_deck(d);
        EXPECT_EQ(parse_deck(text), d) << text;
        EXPECT_EQ(write_deck(parse_deck(text)), text);
    }
}

TEST(Syntax, PropositionsAndManifestations) {
    Deck d = three_box_deck();
    const Schema& s = d.schema;
    EXPECT_EQ(parse_proposition(s, "Suit=~S"), Proposition::is_not(suit(d, "S")));
    EXPECT_EQ(format_proposition(s, Proposition::is(face(d, "J"))), "Face=J");
    EXPECT_EQ(format_outcome(s, Proposition::is_not(suit(d, "D"))), "~D");
    EXPECT_EQ(parse_manifestation(s, "Suit?D"), ManifestationSpec::partial(suit(d, "D")));
    EXPECT_EQ(parse_manifestation(s, "Face"), ManifestationSpec::complete(Variable::First));
    EXPECT_EQ(format_manifestation(s, ManifestationSpec::partial(suit(d, "S"))), "Suit?S");
    EXPECT_THROW(parse_proposition(s, "Suit=X"), Error);
    EXPECT_THROW(parse_manifestation(s, "Colour"), Error);
}
