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

// Scenario reports: claims checked along several independent routes, plus
// JSON / CSV / text rendering for reports, branch trees and distributions.

#pragma once

#include <nlohmann/json.hpp>

#include <cmath>
#include <concepts>
#include <cstdio>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "threebox/deck_io.hpp"
#include "threebox/exact.hpp"
#include "threebox/montecarlo.hpp"
#include "threebox/rational.hpp"

namespace threebox {

/// Where an expected value comes from.
enum class Provenance {
    Reference,  // value given by the worked example itself
    Oracle,     // computed by an independent oracle
    Identity,   // follows directly from the definitions
};

enum class Relation { Equal, Less, NotEqual };

enum class Comparison {
    Exact,           // rational / string / boolean equality
    Absolute,        // |computed - expected| <= tolerance
    StandardErrors,  // |computed - expected| <= tolerance * standard error
};

using Value = std::variant<Rational, double, std::string, bool>;

inline std::string format_double(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

/// x rounded to 12 significant digits, so JSON output carries at most that.
inline double round12(double x) { return std::stod(format_double(x)); }

inline std::string format_value(const Value& v) {
    return std::visit(
        [](const auto& x) -> std::string {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, Rational>)
                return to_string(x);
            else if constexpr (std::is_same_v<T, double>)
                return format_double(x);
            else if constexpr (std::is_same_v<T, bool>)
                return x ? "true" : "false";
            else
                return x;
        },
        v);
}

inline std::optional<double> numeric(const Value& v) {
    if (auto r = std::get_if<Rational>(&v)) return to_double(*r);
    if (auto d = std::get_if<double>(&v)) return *d;
    return std::nullopt;
}

struct Check {
    std::string route;
    Value computed;
    Comparison mode = Comparison::Exact;
    double tolerance = 0;
    double standard_error = 0;
    bool passed = false;
};

struct Claim {
    std::string description;
    Provenance provenance = Provenance::Oracle;
    Relation relation = Relation::Equal;
    Value expected;
    std::vector<Check> checks;

    bool passed() const {
        if (checks.empty()) return false;
        for (const auto& c : checks)
            if (!c.passed) return false;
        return true;
    }
};

inline bool evaluate(Relation rel, const Value& expected, Check& check) {
    auto exact_equal = [&] {
        if (expected.index() == check.computed.index()) return expected == check.computed;
        return false;
    };
    if (check.mode == Comparison::Exact) {
        bool equal = exact_equal();
        if (rel == Relation::Equal) return equal;
        if (rel == Relation::NotEqual) return !equal && expected.index() == check.computed.index();
        auto e = std::get_if<Rational>(&expected);
        auto c = std::get_if<Rational>(&check.computed);
        return e && c && *c < *e;
    }
    auto e = numeric(expected);
    auto c = numeric(check.computed);
    if (!e || !c) return false;
    double tol = check.mode == Comparison::Absolute ? check.tolerance : check.tolerance * check.standard_error;
    // A zero standard error means every run agreed; demand agreement to rounding.
    if (check.mode == Comparison::StandardErrors && check.standard_error == 0) tol = 1e-12;
    switch (rel) {
        case Relation::Equal: return std::abs(*c - *e) <= tol;
        case Relation::NotEqual: return std::abs(*c - *e) > tol;
        case Relation::Less: return *c < *e - tol;
    }
    return false;
}

/// Builder for a claim: add routes, each is evaluated as it is added.
class ClaimBuilder {
public:
    ClaimBuilder(std::string description, Provenance provenance, Value expected, Relation rel = Relation::Equal)
        : claim_{std::move(description), provenance, rel, std::move(expected), {}} {}

    ClaimBuilder& exact(std::string route, Value computed) {
        return add(Check{std::move(route), std::move(computed), Comparison::Exact, 0, 0, false});
    }
    ClaimBuilder& within(std::string route, double computed, double tolerance) {
        return add(Check{std::move(route), computed, Comparison::Absolute, tolerance, 0, false});
    }
    ClaimBuilder& sampled(std::string route, const Estimate& est, double sigmas = 5) {
        return add(Check{std::move(route), est.value, Comparison::StandardErrors, sigmas, est.standard_error, false});
    }
    /// Sampled route computed lazily; a sample with nothing to condition on
    /// becomes a failed check instead of aborting the report.
    template <std::invocable F>
    ClaimBuilder& sampled(std::string route, F&& estimate, double sigmas = 5) {
        try {
            return sampled(std::move(route), std::forward<F>(estimate)(), sigmas);
        } catch (const Error& e) {
            if (e.code() != ErrorCode::NoAcceptedTrials) throw;
            return failed(std::move(route), e.what());
        }
    }
    /// Records a route that failed to produce a value (for example, an error).
    ClaimBuilder& failed(std::string route, std::string why) {
        claim_.checks.push_back(Check{std::move(route), std::move(why), Comparison::Exact, 0, 0, false});
        return *this;
    }

    Claim build() const { return claim_; }

private:
    ClaimBuilder& add(Check c) {
        c.passed = evaluate(claim_.relation, claim_.expected, c);
        claim_.checks.push_back(std::move(c));
        return *this;
    }

    Claim claim_;
};

/// State of the card system after an event, as seen from inside.
struct TraceSnapshot {
    std::size_t ordinal = 0;
    std::string event;      // "prepare Face=K", "observe Suit -> H"
    std::string partition;  // "[These | Others]"
    std::string memory;
    std::map<std::string, std::optional<std::string>> values;  // variable -> sharp value, if any
};

struct ScenarioReport {
    std::string name;
    std::vector<Claim> claims;
    std::vector<TraceSnapshot> trace;
    std::vector<std::string> notes;

    bool passed() const {
        for (const auto& c : claims)
            if (!c.passed()) return false;
        return true;
    }
};

// ---------------------------------------------------------------------------
// Rendering

inline std::string_view to_string(Provenance p) {
    switch (p) {
        case Provenance::Reference: return "reference";
        case Provenance::Oracle: return "oracle";
        case Provenance::Identity: return "identity";
    }
    return "?";
}
inline std::string_view to_string(Relation r) {
    switch (r) {
        case Relation::Equal: return "equal";
        case Relation::Less: return "less";
        case Relation::NotEqual: return "not-equal";
    }
    return "?";
}
inline std::string_view to_string(Comparison c) {
    switch (c) {
        case Comparison::Exact: return "exact";
        case Comparison::Absolute: return "absolute";
        case Comparison::StandardErrors: return "standard-errors";
    }
    return "?";
}

inline nlohmann::json to_json(const Value& v) {
    return std::visit(
        [](const auto& x) -> nlohmann::json {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, Rational>)
                return to_string(x);
            else if constexpr (std::is_same_v<T, double>)
                return round12(x);
            else
                return x;
        },
        v);
}

inline nlohmann::json to_json(const ScenarioReport& r) {
    nlohmann::json j;
    j["scenario"] = r.name;
    j["passed"] = r.passed();
    j["claims"] = nlohmann::json::array();
    for (const auto& c : r.claims) {
        nlohmann::json jc{{"description", c.description},
                          {"provenance", to_string(c.provenance)},
                          {"relation", to_string(c.relation)},
                          {"expected", to_json(c.expected)},
                          {"passed", c.passed()},
                          {"checks", nlohmann::json::array()}};
        for (const auto& ch : c.checks) {
            nlohmann::json jch{{"route", ch.route},
                               {"computed", to_json(ch.computed)},
                               {"comparison", to_string(ch.mode)},
                               {"passed", ch.passed}};
            if (ch.mode != Comparison::Exact) jch["tolerance"] = round12(ch.tolerance);
            if (ch.mode == Comparison::StandardErrors) jch["standard_error"] = round12(ch.standard_error);
            jc["checks"].push_back(std::move(jch));
        }
        j["claims"].push_back(std::move(jc));
    }
    if (!r.trace.empty()) {
        j["trace"] = nlohmann::json::array();
        for (const auto& s : r.trace) {
            nlohmann::json values = nlohmann::json::object();
            for (const auto& [var, val] : s.values) values[var] = val ? nlohmann::json(*val) : nlohmann::json(nullptr);
            j["trace"].push_back({{"ordinal", s.ordinal},
                                  {"event", s.event},
                                  {"partition", s.partition},
                                  {"memory", s.memory},
                                  {"values", values}});
        }
    }
    if (!r.notes.empty()) j["notes"] = r.notes;
    return j;
}

namespace detail {

inline std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

}  // namespace detail

inline std::string to_csv(const std::vector<ScenarioReport>& reports) {
    std::ostringstream out;
    out << "scenario,claim,provenance,relation,expected,route,computed,comparison,tolerance,standard_error,passed\n";
    for (const auto& r : reports)
        for (const auto& c : r.claims)
            for (const auto& ch : c.checks)
                out << detail::csv_field(r.name) << ',' << detail::csv_field(c.description) << ','
                    << to_string(c.provenance) << ',' << to_string(c.relation) << ','
                    << detail::csv_field(format_value(c.expected)) << ',' << detail::csv_field(ch.route) << ','
                    << detail::csv_field(format_value(ch.computed)) << ',' << to_string(ch.mode) << ','
                    << format_double(ch.tolerance) << ',' << format_double(ch.standard_error) << ','
                    << (ch.passed ? "true" : "false") << '\n';
    return out.str();
}

inline std::string to_text(const ScenarioReport& r) {
    std::ostringstream out;
    out << "scenario " << r.name << ": " << (r.passed() ? "PASS" : "FAIL") << '\n';
    for (const auto& c : r.claims) {
        out << "  [" << (c.passed() ? "PASS" : "FAIL") << "] " << c.description;
        out << (c.relation == Relation::Equal ? " = " : c.relation == Relation::Less ? " < " : " != ")
            << format_value(c.expected) << " (" << to_string(c.provenance) << ")\n";
        for (const auto& ch : c.checks) {
            out << "      " << (ch.passed ? "ok  " : "BAD ") << ch.route << ": " << format_value(ch.computed);
            if (ch.mode == Comparison::StandardErrors) out << " +/- " << format_double(ch.standard_error);
            out << '\n';
        }
    }
    if (!r.trace.empty()) {
        out << "  trace:\n";
        for (const auto& s : r.trace) {
            out << "    [" << s.ordinal << "] " << s.event << "  " << s.partition << "  memory=" << s.memory;
            for (const auto& [var, val] : s.values) out << "  " << var << "=" << (val ? *val : "(none)");
            out << '\n';
        }
    }
    for (const auto& n : r.notes) out << "  note: " << n << '\n';
    return out.str();
}

// ---------------------------------------------------------------------------
// Branch trees, distributions and frequency tables

inline std::vector<std::string> format_sequence(const Schema& s, const std::vector<Outcome>& seq) {
    std::vector<std::string> out;
    for (const auto& o : seq) out.push_back(format_outcome(s, o));
    return out;
}

inline nlohmann::json experiment_json(const ExperimentSpec& spec) {
    const Schema& s = spec.deck.schema;
    nlohmann::json j{{"deck", format_cards(s, spec.deck.cards)},
                     {"preparation", format_proposition(s, spec.preparation)},
                     {"manifestations", nlohmann::json::array()}};
    for (const auto& m : spec.manifestations) j["manifestations"].push_back(format_manifestation(s, m));
    if (spec.postselection)
        j["postselection"] = {{"ordinal", spec.postselection->ordinal},
                              {"outcome", format_proposition(s, spec.postselection->outcome)}};
    return j;
}

inline nlohmann::json to_json(const ExperimentSpec& spec, const BranchTree& tree) {
    const Schema& s = spec.deck.schema;
    nlohmann::json j = experiment_json(spec);
    j["leaves"] = nlohmann::json::array();
    for (auto i : tree.leaves()) {
        const auto& n = tree.nodes()[i];
        j["leaves"].push_back({{"outcomes", format_sequence(s, n.outcomes)},
                               {"probability", to_string(n.probability)},
                               {"state", format_partition(s, n.state)}});
    }
    return j;
}

inline std::string distribution_csv(const Schema& s, const std::map<Outcome, Rational>& dist) {
    std::string out = "outcome,probability\n";
    for (const auto& [o, p] : dist) out += detail::csv_field(format_outcome(s, o)) + "," + to_string(p) + "\n";
    return out;
}

inline nlohmann::json to_json(const ExperimentSpec& spec, const FrequencyTable& table, std::uint64_t seed) {
    const Schema& s = spec.deck.schema;
    nlohmann::json j = experiment_json(spec);
    j["trials"] = table.trials;
    j["seed"] = seed;
    j["rng"] = CounterRng::kVersion;
    j["accepted"] = table.accepted;
    Estimate acc = proportion(table.accepted, table.trials);
    j["acceptance_rate"] = round12(acc.value);
    j["acceptance_standard_error"] = round12(acc.standard_error);
    j["sequences"] = nlohmann::json::array();
    for (const auto& [seq, k] : table.counts) {
        Estimate e = proportion(k, table.trials);
        j["sequences"].push_back({{"outcomes", format_sequence(s, seq)},
                                  {"count", k},
                                  {"accepted", table.is_accepted(seq)},
                                  {"estimate", round12(e.value)},
                                  {"standard_error", round12(e.standard_error)}});
    }
    return j;
}

}  // namespace threebox
