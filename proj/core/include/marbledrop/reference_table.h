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

#ifndef MARBLEDROP_REFERENCE_TABLE_H_
#define MARBLEDROP_REFERENCE_TABLE_H_

#include <array>
#include <string>
#include <string_view>
#include <vector>

#include "marbledrop/catalog.h"

namespace marbledrop {

// Reference BI and EFR plan sets for the six games, in the row order of the
// results table. Plan lists are as printed (not sorted).
struct ReferenceRow {
  GameId game;
  std::vector<std::string_view> bi_computer;
  std::vector<std::string_view> bi_participant;
  std::vector<std::string_view> efr_computer;
  std::vector<std::string_view> efr_participant;
};

const std::array<ReferenceRow, 6>& ReferenceTable();

struct RowCheck {
  GameId game;
  bool matches = false;
  std::string expected;  // "BI C: ... | P: ...  EFR C: ... | P: ..."
  std::string actual;
};

// Solves every catalog game and compares against ReferenceTable().
std::vector<RowCheck> CheckReferenceTable();

}  // namespace marbledrop

#endif  // MARBLEDROP_REFERENCE_TABLE_H_
