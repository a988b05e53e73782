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

#include "marbledrop/reference_table.h"

#include <algorithm>

#include "marbledrop/solvers.h"

namespace marbledrop {
namespace {

std::string SortedList(std::vector<std::string_view> items) {
  std::sort(items.begin(), items.end());
  std::string out;
  for (std::string_view s : items) {
    if (!out.empty()) out += ", ";
    out += s;
  }
  return out;
}

std::string RowText(std::string bi_c, std::string bi_p, std::string efr_c,
                    std::string efr_p) {
  return "BI C: " + bi_c + " | P: " + bi_p + "  EFR C: " + efr_c +
         " | P: " + efr_p;
}

}  // namespace

const std::array<ReferenceRow, 6>& ReferenceTable() {
  static const std::array<ReferenceRow, 6> table = {{
      {GameId::kG1, {"a;e"}, {"c;g"}, {"a;e"}, {"d;g"}},
      {GameId::kG2, {"a;e"}, {"c;g"}, {"a;e"}, {"c;g"}},
      {GameId::kG3,
       {"a;e", "b;e", "a;f", "b;f"},
       {"c;g", "d;g", "c;h", "d;h"},
       {"a;e", "a;f", "b;f"},
       {"d;g", "d;h"}},
      {GameId::kG4,
       {"a;e", "b;e", "a;f", "b;f"},
       {"c;g", "d;g", "c;h", "d;h"},
       {"a;e", "b;e", "a;f", "b;f"},
       {"c;g", "d;g", "c;h", "d;h"}},
      {GameId::kG1t, {"e"}, {"c;g"}, {"e"}, {"c;g"}},
      {GameId::kG3t,
       {"e", "f"},
       {"c;g", "d;g", "c;h", "d;h"},
       {"e", "f"},
       {"c;g", "d;g", "c;h", "d;h"}},
  }};
  return table;
}

std::vector<RowCheck> CheckReferenceTable() {
  std::vector<RowCheck> out;
  for (const ReferenceRow& row : ReferenceTable()) {
    const GameTree& tree = CatalogGame(row.game);
    const PlanSets bi = BackwardInduction(tree);
    const PlanSets efr = Efr(tree);
    RowCheck check;
    check.game = row.game;
    check.expected =
        RowText(SortedList(row.bi_computer), SortedList(row.bi_participant),
                SortedList(row.efr_computer), SortedList(row.efr_participant));
    check.actual = RowText(RenderPlanSet(tree, bi.computer),
                           RenderPlanSet(tree, bi.participant),
                           RenderPlanSet(tree, efr.computer),
                           RenderPlanSet(tree, efr.participant));
    check.matches = check.expected == check.actual;
    out.push_back(std::move(check));
  }
  return out;
}

}  // namespace marbledrop
