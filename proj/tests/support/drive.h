// Copyright 2026 The Marble Drop Lab Authors
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


#ifndef MARBLEDROP_TESTS_SUPPORT_DRIVE_H_
#define MARBLEDROP_TESTS_SUPPORT_DRIVE_H_

#include <cstdint>
#include <vector>

#include "marbledrop/rng.h"
#include "marbledrop/session.h"

namespace marbledrop::testing {

// Four answers, positions A..D, with non-blank motivations.
std::vector<FinalAnswer> SampleFinalAnswers();

// Drives a session from its current state to the end: random legal moves,
// random question options, the sample questionnaires and the default
// payment draw.
void PlayThrough(Session& session, Clock& clock, std::uint64_t seed);

// One command of PlayThrough; false once the session is done.
bool Step(Session& session, Clock& clock, Rng& rng);

}  // namespace marbledrop::testing

#endif  // MARBLEDROP_TESTS_SUPPORT_DRIVE_H_
