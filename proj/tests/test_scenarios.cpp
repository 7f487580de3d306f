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

#include "support.hpp"

using namespace threebox;

namespace {

const Claim& claim(const ScenarioReport& r, std::string_view description) {
    for (const auto& c : r.claims)
        if (c.description == description) return c;
    throw std::runtime_error("no claim '" + std::string(description) + "' in " + r.name);
}

const Check* route(const Claim& c, std::string_view name) {
    for (const auto& ch : c.checks)
        if (ch.route == name) return &ch;
    return nullptr;
}

std::string dump(const ScenarioReport& r) { return to_json(r).dump(); }

const ScenarioOptions kFull{100000, 42};

}  // namespace

TEST(Scenarios, AllPassAtFullTrials) {
    for (const auto& name : scenario_names()) {
        ScenarioReport r = run_scenario(name, kFull);
        EXPECT_EQ(r.name, name);
        EXPECT_FALSE(r.claims.empty()) << name;
        for (const auto& c : r.claims) {
            EXPECT_FALSE(c.checks.empty()) << name << ": " << c.description;
            EXPECT_TRUE(c.passed()) << name << ": " << c.description << "\n" << to_text(r);
        }
    }
}

TEST(Scenarios, ReproducibleUnderFixedSeed) {
    for (const auto& name : scenario_names())
        EXPECT_EQ(dump(run_scenario(name, kFull)), dump(run_scenario(name, kFull))) << name;
    EXPECT_NE(dump(three_box_card({20000, 1})), dump(three_box_card({20000, 2})));
}

TEST(Scenarios, UnknownName) {
    EXPECT_THROW(run_scenario("four-box"), Error);
}

TEST(ThreeBoxCard, ClaimsUseSeveralRoutes) {
    ScenarioReport r = three_box_card(kFull);
    for (std::string box : {"S", "D"}) {
        const Claim& c = claim(r, "retrodiction Pr_Q(" + box + " | Suit?" + box + ", K)");
        EXPECT_EQ(c.expected, Value(Rational(1)));
        ASSERT_NE(route(c, "enumeration"), nullptr);
        EXPECT_EQ(route(c, "enumeration")->computed, Value(Rational(1)));
        ASSERT_NE(route(c, "monte carlo"), nullptr);
        EXPECT_GE(c.checks.size(), 3u);
    }
    EXPECT_EQ(claim(r, "Pr_Q(S) under Suit?S").expected, Value(Rational(1, 4)));
}

TEST(Interference, MixtureAndConditionalFutures) {
    ScenarioReport r = interference_demo(kFull);
    EXPECT_EQ(claim(r, "Pr_Q(K | ~S)").expected, Value(Rational(0)));
    EXPECT_EQ(claim(r, "Pr_Q(K | H or D)").expected, Value(Rational(1, 6)));
    const Claim& differ = claim(r, "Pr_Q(K | ~S) differs from Pr_Q(K | H or D)");
    EXPECT_EQ(differ.relation, Relation::NotEqual);
    EXPECT_TRUE(differ.passed());
    const Claim& mix = claim(r, "mixture {(H, 2/3), (D, 1/3)} as one partition");
    EXPECT_EQ(mix.expected, Value(std::string("[(4)KH, QD, JD | (2)KH, (3)QS, (2)QD, (3)JS, (2)JD]")));
    for (std::string v : {"S", "H", "D"}) {
        const Claim& c = claim(r, "retrodiction Pr_Q(" + v + " | Suit, K)");
        EXPECT_NE(c.expected, Value(Rational(1)));
    }
}

TEST(ThreeBoxQuantum, Values) {
    ScenarioReport r = three_box_quantum();
    EXPECT_TRUE(r.passed());
    EXPECT_TRUE(claim(r, "three-box amplitude condition holds").passed());
    EXPECT_TRUE(claim(r, "detector distance for a = 10 lambda (in lambda)").passed());
}

TEST(Aad, CustomWeights) {
    EXPECT_TRUE(aad_curious(0.6, 0.8).passed());
    EXPECT_TRUE(aad_curious(std::complex<double>(0, 0.6), std::complex<double>(0.8, 0)).passed());
}

TEST(Counterfactual, TraceShowsNoSuitBeforeTheSuitEvent) {
    ScenarioReport r = counterfactual_trace(counterfactual_deck(), kFull);
    EXPECT_TRUE(r.passed()) << to_text(r);
    EXPECT_EQ(claim(r, "retrodiction Pr_K(K | Face, H)").checks.front().computed, Value(Rational(1)));
    ASSERT_EQ(r.trace.size(), 3u);
    EXPECT_EQ(r.trace[0].event, "prepare Face=K");
    EXPECT_EQ(r.trace[1].event, "observe Face -> K");
    EXPECT_EQ(r.trace[2].event, "observe Suit -> H");
    for (std::size_t i = 0; i < 2; ++i) {
        EXPECT_EQ(r.trace[i].memory, "Face");
        EXPECT_FALSE(r.trace[i].values.at("Suit").has_value());
        EXPECT_EQ(r.trace[i].values.at("Face"), std::optional<std::string>("K"));
    }
    EXPECT_EQ(r.trace[2].values.at("Suit"), std::optional<std::string>("H"));
    EXPECT_FALSE(r.trace[2].values.at("Face").has_value());
    EXPECT_EQ(r.trace[2].partition, "[KH, (2)QH | (2)KS, QS]");
}

TEST(Counterfactual, ThreeBoxDeckHasZeroAcceptance) {
    try {
        counterfactual_trace(three_box_deck(), kFull);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::ZeroAcceptance);
    }
}
