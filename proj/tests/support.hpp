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

#include <string_view>

#include "threebox.hpp"

namespace threebox::testing {

inline CardValue face(const Deck& d, std::string_view label) { return detail::value_of(d, "Face", label); }
inline CardValue suit(const Deck& d, std::string_view label) { return detail::value_of(d, "Suit", label); }

inline ExperimentSpec make_spec(Deck deck, Proposition prep, std::vector<ManifestationSpec> ms,
                                std::optional<Postselection> post = std::nullopt) {
    ExperimentSpec spec{std::move(deck), prep, std::move(ms), post};
    validate(spec);
    return spec;
}

/// All cards of a partition, These and Others together.
inline CardCounts whole(const SystemState& s) { return s.these + s.others; }

}  // namespace threebox::testing
