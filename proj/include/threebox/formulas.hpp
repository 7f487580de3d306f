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

// Retrodiction formulas as plain arithmetic. They know nothing about decks or
// Hilbert spaces; the scalar type is Rational for the card system and double
// for the quantum module.

#pragma once

#include <cmath>
#include <span>
#include <vector>

#include "threebox/error.hpp"
#include "threebox/rational.hpp"

namespace threebox::formulas {

template <class T>
struct RetrodictionInputs {
    T likelihood;          // Pr_s[q | p_j]
    T prior;               // Pr_s[p_j]
    T likelihood_negated;  // Pr_s[q | ~p_j]
    T prior_negated;       // Pr_s[~p_j]
};

namespace detail {

template <class T>
bool is_zero(const T& x) {
    if constexpr (std::is_floating_point_v<T>)
        return std::abs(x) <= T(1e-300);
    else
        return x == 0;
}

template <class T>
bool sums_to_one(const T& x) {
    if constexpr (std::is_floating_point_v<T>)
        return std::abs(x - T(1)) <= T(1e-9);
    else
        return x == 1;
}

template <class T>
void check_nonnegative(const T& x) {
    if (x < T(0)) throw Error(ErrorCode::InvalidArguments, "probabilities must be non-negative");
}

}  // namespace detail

/// Retrodicted probability of p_j after the partial manifestation "p_j or
/// not p_j" and a postselected q:
///
///   L_j pi_j / (L_j pi_j + L_~ pi_~)
template <class T>
T retrodict_partial(const RetrodictionInputs<T>& in) {
    for (const T* x : {&in.likelihood, &in.prior, &in.likelihood_negated, &in.prior_negated})
        detail::check_nonnegative(*x);
    if (!detail::sums_to_one(in.prior + in.prior_negated))
        throw Error(ErrorCode::InvalidArguments, "prior and negated prior must sum to 1");
    T hit = in.likelihood * in.prior;
    T denom = hit + in.likelihood_negated * in.prior_negated;
    if (detail::is_zero(denom))
        throw Error(ErrorCode::ZeroDenominator, "the postselected outcome is impossible");
    return hit / denom;
}

/// Retrodicted probability of p_j after a complete manifestation:
///
///   L_j pi_j / sum_t L_t pi_t
template <class T>
T retrodict_complete(std::span<const T> likelihoods, std::span<const T> priors, std::size_t j) {
    if (likelihoods.size() != priors.size())
        throw Error(ErrorCode::LengthMismatch, "likelihoods and priors differ in length");
    if (j >= likelihoods.size()) throw Error(ErrorCode::InvalidArguments, "index outside the value list");
    T denom = T(0);
    T prior_sum = T(0);
    for (std::size_t t = 0; t < priors.size(); ++t) {
        detail::check_nonnegative(likelihoods[t]);
        detail::check_nonnegative(priors[t]);
        denom += likelihoods[t] * priors[t];
        prior_sum += priors[t];
    }
    if (!detail::sums_to_one(prior_sum)) throw Error(ErrorCode::InvalidArguments, "priors must sum to 1");
    if (detail::is_zero(denom))
        throw Error(ErrorCode::ZeroDenominator, "the postselected outcome is impossible");
    return likelihoods[j] * priors[j] / denom;
}

template <class T>
T retrodict_complete(const std::vector<T>& likelihoods, const std::vector<T>& priors, std::size_t j) {
    return retrodict_complete(std::span<const T>(likelihoods), std::span<const T>(priors), j);
}

}  // namespace threebox::formulas
