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

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <thread>
#include <vector>

#include "threebox/counter_rng.hpp"
#include "threebox/deck.hpp"
#include "threebox/experiment.hpp"

namespace threebox {

struct RunConfig {
    ExperimentSpec spec;
    std::uint64_t trials = 1;
    std::uint64_t seed = 0;
    /// Worker threads; 0 picks the hardware concurrency. Results do not
    /// depend on this value.
    unsigned threads = 0;
};

using OutcomeSequence = std::vector<Outcome>;

struct FrequencyTable {
    std::map<OutcomeSequence, std::uint64_t> counts;
    std::uint64_t trials = 0;
    std::uint64_t accepted = 0;
    std::optional<Postselection> postselection;

    bool is_accepted(const OutcomeSequence& seq) const {
        return !postselection || seq.at(postselection->ordinal - 1) == postselection->outcome;
    }

    double acceptance_rate() const { return trials ? double(accepted) / double(trials) : 0.0; }

    /// Count of runs matching `pattern` (accepted runs only when `accepted_only`).
    std::uint64_t count(const Pattern& pattern, bool accepted_only = false) const {
        std::uint64_t n = 0;
        for (const auto& [seq, k] : counts)
            if ((!accepted_only || is_accepted(seq)) && pattern.matches(seq)) n += k;
        return n;
    }

    FrequencyTable& operator+=(const FrequencyTable& rhs) {
        for (const auto& [seq, k] : rhs.counts) counts[seq] += k;
        trials += rhs.trials;
        accepted += rhs.accepted;
        return *this;
    }

    friend bool operator==(const FrequencyTable&, const FrequencyTable&) = default;
};

/// Empirical proportion with its normal-approximation binomial standard error.
struct Estimate {
    double value = 0;
    double standard_error = 0;
    std::uint64_t hits = 0;
    std::uint64_t total = 0;
};

inline Estimate proportion(std::uint64_t hits, std::uint64_t total) {
    if (total == 0) throw Error(ErrorCode::NoAcceptedTrials, "no trials to estimate from");
    double p = double(hits) / double(total);
    return {p, std::sqrt(p * (1 - p) / double(total)), hits, total};
}

/// Runs one trial. The draw at manifestation i uses step index i of the
/// trial's stream. Appends event records to `trace` when given.
inline OutcomeSequence run_trial(const ExperimentSpec& spec, std::uint64_t seed, std::uint64_t trial,
                                 std::vector<EventRecord>* trace = nullptr) {
    CounterRng rng(seed, trial);
    SystemState state = prepare(spec.deck, spec.preparation);
    OutcomeSequence seq;
    seq.reserve(spec.manifestations.size());
    for (std::size_t step = 0; step < spec.manifestations.size(); ++step) {
        auto obs = observe(state, spec.manifestations[step],
                           [&](std::uint64_t n) { return rng.uniform_index(step, n); });
        seq.push_back(obs.outcome);
        if (trace) trace->push_back(std::move(obs.record));
        state = std::move(obs.state);
    }
    return seq;
}

inline FrequencyTable simulate_range(const ExperimentSpec& spec, std::uint64_t seed, std::uint64_t first,
                                     std::uint64_t last) {
    FrequencyTable table;
    table.postselection = spec.postselection;
    for (std::uint64_t t = first; t < last; ++t) {
        auto seq = run_trial(spec, seed, t);
        table.trials += 1;
        if (table.is_accepted(seq)) table.accepted += 1;
        table.counts[std::move(seq)] += 1;
    }
    return table;
}

/// Deterministic in (spec, trials, seed): trial t always uses stream (seed, t),
/// and per-thread tables are merged by addition.
inline FrequencyTable simulate(const RunConfig& cfg) {
    validate(cfg.spec);
    if (cfg.trials == 0) throw Error(ErrorCode::InvalidArguments, "trials must be at least 1");
    unsigned threads = cfg.threads ? cfg.threads : std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::uint64_t>(threads, std::max<std::uint64_t>(1, cfg.trials / 1000)));

    std::vector<FrequencyTable> parts(threads);
    {
        std::vector<std::jthread> workers;
        for (unsigned w = 0; w < threads; ++w) {
            std::uint64_t first = cfg.trials * w / threads;
            std::uint64_t last = cfg.trials * (w + 1) / threads;
            workers.emplace_back([&, w, first, last] { parts[w] = simulate_range(cfg.spec, cfg.seed, first, last); });
        }
    }
    FrequencyTable total;
    total.postselection = cfg.spec.postselection;
    for (const auto& p : parts) total += p;
    return total;
}

/// Empirical Pr(target | condition) among all runs.
inline Estimate estimate_conditional(const FrequencyTable& table, const Pattern& target, const Pattern& condition) {
    std::uint64_t cond = table.count(condition);
    if (cond == 0) throw Error(ErrorCode::NoAcceptedTrials, "conditioning event never occurred");
    return proportion(table.count(target && condition), cond);
}

struct RetrodictionEstimate {
    Estimate estimate;
    std::uint64_t accepted = 0;
    std::uint64_t trials = 0;
    Estimate acceptance;  // acceptance rate with its standard error
};

inline RetrodictionEstimate estimate_retrodiction(const FrequencyTable& table, std::size_t ordinal,
                                                  const Outcome& value) {
    if (!table.postselection) throw Error(ErrorCode::InvalidArguments, "retrodiction needs a postselection");
    if (ordinal == 0 || ordinal >= table.postselection->ordinal)
        throw Error(ErrorCode::InvalidArguments, "queried ordinal must precede the postselection");
    if (table.accepted == 0)
        throw Error(ErrorCode::NoAcceptedTrials,
                    "postselection never fired in " + std::to_string(table.trials) + " trials");
    std::uint64_t hits = table.count(Pattern::at(ordinal, value), true);
    return {proportion(hits, table.accepted), table.accepted, table.trials, proportion(table.accepted, table.trials)};
}

inline RetrodictionEstimate estimate_retrodiction(const RunConfig& cfg, std::size_t ordinal, const Outcome& value) {
    if (!cfg.spec.postselection) throw Error(ErrorCode::InvalidArguments, "retrodiction needs a postselection");
    return estimate_retrodiction(simulate(cfg), ordinal, value);
}

}  // namespace threebox
