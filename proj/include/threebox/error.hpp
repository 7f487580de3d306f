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

#include <stdexcept>
#include <string>
#include <string_view>

namespace threebox {

enum class ErrorCode {
    EmptyDeck,
    UnequalValueCounts,
    InvalidSchema,
    ParseError,
    DrawOutOfRange,
    SequenceTooLong,
    UndefinedConditional,
    InvalidArguments,
    WeightsNotNormalized,
    ZeroDenominator,
    LengthMismatch,
    DimensionMismatch,
    NonProjector,
    NotNormalized,
    BasisNotOrthonormal,
    GeometryInfeasible,
    NoAcceptedTrials,
    ZeroAcceptance,
};

constexpr std::string_view to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::EmptyDeck: return "EmptyDeck";
        case ErrorCode::UnequalValueCounts: return "UnequalValueCounts";
        case ErrorCode::InvalidSchema: return "InvalidSchema";
        case ErrorCode::ParseError: return "ParseError";
        case ErrorCode::DrawOutOfRange: return "DrawOutOfRange";
        case ErrorCode::SequenceTooLong: return "SequenceTooLong";
        case ErrorCode::UndefinedConditional: return "UndefinedConditional";
        case ErrorCode::InvalidArguments: return "InvalidArguments";
        case ErrorCode::WeightsNotNormalized: return "WeightsNotNormalized";
        case ErrorCode::ZeroDenominator: return "ZeroDenominator";
        case ErrorCode::LengthMismatch: return "LengthMismatch";
        case ErrorCode::DimensionMismatch: return "DimensionMismatch";
        case ErrorCode::NonProjector: return "NonProjector";
        case ErrorCode::NotNormalized: return "NotNormalized";
        case ErrorCode::BasisNotOrthonormal: return "BasisNotOrthonormal";
        case ErrorCode::GeometryInfeasible: return "GeometryInfeasible";
        case ErrorCode::NoAcceptedTrials: return "NoAcceptedTrials";
        case ErrorCode::ZeroAcceptance: return "ZeroAcceptance";
    }
    return "Unknown";
}

/// Every failure raised by the library. The code identifies the failure
/// class; what() carries a human-readable explanation.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace threebox
