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

#include "threebox/counter_rng.hpp"
#include "threebox/deck.hpp"
#include "threebox/deck_io.hpp"
#include "threebox/error.hpp"
#include "threebox/exact.hpp"
#include "threebox/experiment.hpp"
#include "threebox/formulas.hpp"
#include "threebox/montecarlo.hpp"
#include "threebox/quantum.hpp"
#include "threebox/quantum_io.hpp"
#include "threebox/rational.hpp"
#include "threebox/report.hpp"
#include "threebox/scenarios.hpp"
