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

// Exact rational probability engine: full enumeration of event sequences,
// conditional and retrodictive queries, closed-form card-system formulas and
// mixture states.

#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "threebox/deck.hpp"
#include "threebox/experiment.hpp"
#include "threebox/rational.hpp"

namespace threebox {

struct BranchNode {
    SystemState state;
    std::vector<Outcome> outcomes;  // outcome sequence from the root
    Rational probability;           // probability of reaching this node
    Rational step_probability;      // probability of the last step given the parent
    std::optional<std::size_t> parent;
    std::vector<std::size_t> children;
};

/// Every event sequence of an experiment, including zero-probability
/// branches. Node 0 is the prepared state.
class BranchTree {
public:
    const std::vector<BranchNode>& nodes() const { return nodes_; }
    const BranchNode& root() const { return nodes_.front(); }
    std::size_t depth() const { return depth_; }

    std::vector<std::size_t> leaves() const {
        std::vector<std::size_t> out;
        for (std::size_t i = 0; i < nodes_.size(); ++i)
            if (nodes_[i].children.empty()) out.push_back(i);
        return out;
    }

    Rational probability_of(const Pattern& pattern) const {
        Rational total = 0;
        for (auto i : leaves())
            if (pattern.matches(nodes_[i].outcomes)) total += nodes_[i].probability;
        return total;
    }

private:
    friend BranchTree enumerate(const ExperimentSpec& spec);

    std::vector<BranchNode> nodes_;
    std::size_t depth_ = 0;
};

inline BranchTree enumerate(const ExperimentSpec& spec) {
    validate(spec);
    BranchTree tree;
    tree.depth_ = spec.manifestations.size();
    tree.nodes_.push_back(BranchNode{prepare(spec.deck, spec.preparation), {}, 1, 1, std::nullopt, {}});

    std::vector<std::size_t> frontier{0};
    for (const auto& m : spec.manifestations) {
        std::vector<std::size_t> next;
        for (auto parent : frontier) {
            // Copy: push_back below may reallocate.
            const SystemState state = tree.nodes_[parent].state;
            for (const auto& [outcome, p] : step_distribution(state, m)) {
                BranchNode child{next_state(state, m, outcome), tree.nodes_[parent].outcomes,
                                 tree.nodes_[parent].probability * p, p, parent, {}};
                child.outcomes.push_back(outcome);
                tree.nodes_.push_back(std::move(child));
                tree.nodes_[parent].children.push_back(tree.nodes_.size() - 1);
                next.push_back(tree.nodes_.size() - 1);
            }
        }
        frontier = std::move(next);
    }
    return tree;
}

/// Pr(target | condition) over the leaves; undefined when Pr(condition) = 0.
inline Rational conditional_probability(const BranchTree& tree, const Pattern& target, const Pattern& condition) {
    Rational denom = tree.probability_of(condition);
    if (denom == 0) throw Error(ErrorCode::UndefinedConditional, "conditioning event has probability 0");
    return tree.probability_of(target && condition) / denom;
}

inline Rational conditional_probability(const ExperimentSpec& spec, const Pattern& target, const Pattern& condition) {
    return conditional_probability(enumerate(spec), target, condition);
}

/// Probability that the manifestation at `ordinal` reported `value`, given
/// the preparation, the manifestations, and the postselected outcome.
inline Rational retrodict_exact(const ExperimentSpec& spec, std::size_t ordinal, const Outcome& value) {
    if (!spec.postselection) throw Error(ErrorCode::InvalidArguments, "retrodiction needs a postselection");
    if (ordinal == 0 || ordinal >= spec.postselection->ordinal)
        throw Error(ErrorCode::InvalidArguments, "queried ordinal must precede the postselection");
    return conditional_probability(spec, Pattern::at(ordinal, value),
                                   Pattern::at(spec.postselection->ordinal, spec.postselection->outcome));
}

// ---------------------------------------------------------------------------
// Closed forms for the probability of the next observed value after a
// preparation. N = copies per value, V = values per variable,
// N(p.q) = number of cards carrying both p and q.

enum class FormulaId {
    SameVariable,          // Pr_{p_j}[p_k]  = delta_jk
    CrossVariable,         // Pr_{p_j}[q_k]  = (N - N(p_j.q_k)) / (N (V - 1))
    NegatedSameVariable,   // Pr_{~p_k}[p_j] = (1 - delta_jk) / (V - 1)
    NegatedCrossVariable,  // Pr_{~p_j}[q_k] = N(p_j.q_k) / N
    NegationComplement,    // Pr_s[~p_j]     = 1 - Pr_s[p_j]
};

inline constexpr std::string_view to_string(FormulaId id) {
    switch (id) {
        case FormulaId::SameVariable: return "same-var";
        case FormulaId::CrossVariable: return "cross-var";
        case FormulaId::NegatedSameVariable: return "negated-same-var";
        case FormulaId::NegatedCrossVariable: return "negated-cross-var";
        case FormulaId::NegationComplement: return "negation-complement";
    }
    return "?";
}

inline FormulaId parse_formula_id(std::string_view text) {
    for (auto id : {FormulaId::SameVariable, FormulaId::CrossVariable, FormulaId::NegatedSameVariable,
                    FormulaId::NegatedCrossVariable, FormulaId::NegationComplement})
        if (to_string(id) == text) return id;
    throw Error(ErrorCode::InvalidArguments, "unknown formula '" + std::string(text) + "'");
}

/// The formula that applies to Pr_prep[query].
inline FormulaId formula_for(const PreparationTarget& prep, const CardValue& query) {
    bool same = prep.variable() == query.variable;
    if (prep.negated) return same ? FormulaId::NegatedSameVariable : FormulaId::NegatedCrossVariable;
    return same ? FormulaId::SameVariable : FormulaId::CrossVariable;
}

/// Evaluates one closed form. For NegationComplement the result is
/// Pr_prep[~query]; for the others it is Pr_prep[query].
inline Rational closed_form(const Deck& deck, FormulaId id, const PreparationTarget& prep, const CardValue& query) {
    const std::size_t values = deck.values_per_variable();
    if (prep.value.index >= values || query.index >= values)
        throw Error(ErrorCode::InvalidArguments, "value outside the deck schema");
    if (id == FormulaId::NegationComplement) return 1 - closed_form(deck, formula_for(prep, query), prep, query);
    if (formula_for(prep, query) != id)
        throw Error(ErrorCode::InvalidArguments,
                    std::string(to_string(id)) + " does not apply to this preparation/query pair");

    const Integer n = deck.copies_per_value;
    const Integer v = values;
    auto delta = [](const CardValue& a, const CardValue& b) { return a == b ? Integer(1) : Integer(0); };
    switch (id) {
        case FormulaId::SameVariable: return Rational(delta(prep.value, query));
        case FormulaId::CrossVariable: return Rational(n - deck.joint_count(prep.value, query), n * (v - 1));
        case FormulaId::NegatedSameVariable: return Rational(1 - delta(prep.value, query), v - 1);
        case FormulaId::NegatedCrossVariable: return Rational(Integer(deck.joint_count(prep.value, query)), n);
        case FormulaId::NegationComplement: break;
    }
    return 0;
}

// ---------------------------------------------------------------------------
// Mixtures

struct MixtureComponent {
    SystemState state;
    Rational weight;
};

struct MixtureState {
    std::vector<MixtureComponent> components;
};

/// A mixture rewritten as one enlarged partition: each component's cards are
/// multiplied by weight * scale, where scale is the least common denominator
/// of the weights.
struct CombinedPartition {
    SystemState state;
    Integer scale;
};

inline CombinedPartition mixture_combine(const MixtureState& m) {
    if (m.components.empty()) throw Error(ErrorCode::WeightsNotNormalized, "mixture has no components");
    Rational sum = 0;
    Integer scale = 1;
    for (const auto& c : m.components) {
        if (c.weight <= 0) throw Error(ErrorCode::WeightsNotNormalized, "weight " + to_string(c.weight) + " is not positive");
        sum += c.weight;
        scale = lcm_of_denominators(c.weight, scale);
    }
    if (sum != 1) throw Error(ErrorCode::WeightsNotNormalized, "weights sum to " + to_string(sum));

    const SystemState& first = m.components.front().state;
    for (const auto& c : m.components) {
        const SystemState& s = c.state;
        if (s.memory != first.memory || s.these.values() != first.these.values() ||
            s.these.total() != first.these.total() || s.others.total() != first.others.total())
            throw Error(ErrorCode::InvalidArguments,
                        "mixture components must share the memory variable and pool sizes");
    }

    SystemState combined{CardCounts(first.these.values()), CardCounts(first.these.values()), first.memory};
    for (const auto& c : m.components) {
        const Rational scaled = c.weight * scale;
        auto factor = numerator(scaled).convert_to<std::uint64_t>();
        combined.these += c.state.these.scaled(factor);
        combined.others += c.state.others.scaled(factor);
    }
    return CombinedPartition{std::move(combined), scale};
}

/// Sum over components of weight * step distribution.
inline std::map<Outcome, Rational> weighted_step_distribution(const MixtureState& m, const ManifestationSpec& spec) {
    std::map<Outcome, Rational> out;
    for (const auto& c : m.components)
        for (const auto& [o, p] : step_distribution(c.state, spec)) out[o] += c.weight * p;
    return out;
}

}  // namespace threebox
