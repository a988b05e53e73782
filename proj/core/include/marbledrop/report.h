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


#ifndef MARBLEDROP_REPORT_H_
#define MARBLEDROP_REPORT_H_

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "marbledrop/event_log.h"

namespace marbledrop {

struct ReportOptions {
  std::uint64_t seed = 1;  // LCA restarts
  int lca_restarts = 20;
  int max_classes = 4;
};

// File name -> contents. Deterministic given the logs and options.
using ReportBundle = std::map<std::string, std::string>;

// Aggregates, somewhat-more counts, fixed-effect logistic regressions,
// binomial Bayes factors, and the LCA/BIC curve over Games 3 and 4.
// Throws InvalidArgument when there are no logs.
ReportBundle BuildReport(const std::vector<std::vector<Event>>& logs,
                         const ReportOptions& options = {});

void WriteReport(const ReportBundle& bundle, const std::filesystem::path& dir);

}  // namespace marbledrop

#endif  // MARBLEDROP_REPORT_H_
