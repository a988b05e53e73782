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


#include "marbledrop/report.h"

#include <fmt/format.h>

#include <fstream>

#include "marbledrop/bayes.h"
#include "marbledrop/catalog.h"
#include "marbledrop/choices.h"
#include "marbledrop/errors.h"
#include "marbledrop/lca.h"
#include "marbledrop/logistic.h"

namespace marbledrop {
namespace {

std::string Num(double v) { return fmt::format("{:.6f}", v); }

constexpr std::pair<GameId, GameId> kComparisons[] = {
    {GameId::kG1, GameId::kG2},
    {GameId::kG3, GameId::kG4},
    {GameId::kG1t, GameId::kG1},
    {GameId::kG3t, GameId::kG3},
};

constexpr GameId kLcaGames[] = {GameId::kG3, GameId::kG4};

RegressionFit CompareGames(const std::vector<ChoicePattern>& cohort, GameId x,
                           GameId y) {
  std::vector<int> outcomes;
  std::vector<double> indicator;
  std::vector<std::string> ids;
  for (const ChoicePattern& c : cohort) {
    for (const Decision& d : c.decisions) {
      if (d.decision != 1 || (d.game != x && d.game != y)) continue;
      outcomes.push_back(d.stop ? 1 : 0);
      indicator.push_back(d.game == y ? 1.0 : 0.0);
      ids.push_back(c.participant);
    }
  }
  Eigen::MatrixXd cov(static_cast<Eigen::Index>(indicator.size()), 1);
  for (std::size_t i = 0; i < indicator.size(); ++i) cov(i, 0) = indicator[i];
  return LogisticFit(outcomes, cov, {std::string("is_") + std::string(GameName(y))},
                     ids);
}

LcaData BuildLcaData(const std::vector<ChoicePattern>& cohort) {
  LcaData data;
  for (GameId g : kLcaGames) {
    data.groups.push_back(fmt::format("{}.first", GameName(g)));
    data.groups.push_back(fmt::format("{}.second", GameName(g)));
  }
  for (const ChoicePattern& c : cohort) {
    std::vector<std::pair<int, int>> row;
    for (GameId g : kLcaGames) {
      row.push_back(c.Count(g, 1));
      row.push_back(c.Count(g, 2));
    }
    data.counts.push_back(std::move(row));
  }
  return data;
}

constexpr const char* kPlotScript = R"(#!/usr/bin/env python3
"""Plots the CSV tables of a marbledrop report directory."""
import csv
import pathlib
import sys

import matplotlib.pyplot as plt


def read(path):
    with open(path, newline="") as f:
        return list(csv.DictReader(f))


def main(report_dir):
    d = pathlib.Path(report_dir)
    props = [r for r in read(d / "proportions.csv") if r["rate"] != "NA"]
    fig, ax = plt.subplots(1, 2, figsize=(10, 4))
    ax[0].bar([r["game"] for r in props], [float(r["rate"]) for r in props])
    ax[0].set_ylabel("P(c) at first decision")
    ax[0].set_ylim(0, 1)
    bic = read(d / "bic_curve.csv")
    ax[1].plot([int(r["classes"]) for r in bic], [float(r["bic"]) for r in bic],
               marker="o")
    ax[1].set_xlabel("classes")
    ax[1].set_ylabel("BIC")
    fig.tight_layout()
    fig.savefig(d / "report.png", dpi=150)


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else ".")
)";

}  // namespace

ReportBundle BuildReport(const std::vector<std::vector<Event>>& logs,
                         const ReportOptions& options) {
  if (logs.empty()) throw InvalidArgument("no logs to analyze");
  const std::vector<ChoicePattern> cohort = ExtractChoices(logs);
  const FirstChoiceSummary summary = AggregateFirstChoice(cohort);
  ReportBundle out;
  std::string text = fmt::format(
      "marbledrop analysis report\nparticipants: {}\n\n"
      "First-decision c rate (reached nodes only)\n",
      cohort.size());

  std::string csv = "game,stops,reached,rate\n";
  std::string bayes = "game,stops,reached,bf10,bf01\n";
  for (const Proportion& p : summary.games) {
    const std::string rate = p.rate ? Num(*p.rate) : "NA";
    csv += fmt::format("{},{},{},{}\n", GameName(p.game), p.stops, p.reached,
                       rate);
    text += fmt::format("  {:<4} {:>4}/{:<4} {}{}\n", GameName(p.game), p.stops,
                        p.reached, rate, p.rate ? "" : " (no reached node)");
    const double bf = BayesFactorBinomial(p.stops, p.reached);
    bayes += fmt::format("{},{},{},{},{}\n", GameName(p.game), p.stops,
                         p.reached, Num(bf), Num(1.0 / bf));
  }
  out["proportions.csv"] = csv;
  out["bayes.csv"] = bayes;

  std::string more = "x,y,more,fewer,similar\n";
  text += "\nParticipants playing c somewhat more often in y than in x "
          "(difference > 1)\n";
  for (const auto& [x, y] : kComparisons) {
    const SomewhatMore s = SomewhatMoreCounts(cohort, x, y);
    more += fmt::format("{},{},{},{},{}\n", GameName(x), GameName(y), s.more,
                        s.fewer, s.similar);
    text += fmt::format("  {} vs {}: more {}, fewer {}, similar {}\n",
                        GameName(y), GameName(x), s.more, s.fewer, s.similar);
  }
  out["somewhat_more.csv"] = more;

  std::string reg =
      "x,y,term,estimate,se,z,p,status,observations,participants,dropped\n";
  text += "\nLogistic regression of c on the game indicator "
          "(FE approximation: per-participant intercepts)\n";
  for (const auto& [x, y] : kComparisons) {
    const RegressionFit fit = CompareGames(cohort, x, y);
    const std::string term = std::string("is_") + std::string(GameName(y));
    if (fit.converged()) {
      reg += fmt::format("{},{},{},{},{},{},{},{},{},{},{}\n", GameName(x),
                         GameName(y), term, Num(fit.coefficients[0]),
                         Num(fit.standard_errors[0]), Num(fit.z[0]),
                         Num(fit.p_values[0]), FitStatusName(fit.status),
                         fit.observations, fit.participants,
                         fit.dropped_participants);
      text += fmt::format("  {} vs {}: beta {} (se {}, p {}), n {}, {} "
                          "participants, {} dropped\n",
                          GameName(y), GameName(x), Num(fit.coefficients[0]),
                          Num(fit.standard_errors[0]), Num(fit.p_values[0]),
                          fit.observations, fit.participants,
                          fit.dropped_participants);
    } else {
      reg += fmt::format("{},{},{},NA,NA,NA,NA,{},{},{},{}\n", GameName(x),
                         GameName(y), term, FitStatusName(fit.status),
                         fit.observations, fit.participants,
                         fit.dropped_participants);
      text += fmt::format("  {} vs {}: no estimate ({})\n", GameName(y),
                          GameName(x), FitStatusName(fit.status));
    }
  }
  out["regression.csv"] = reg;

  const LcaData data = BuildLcaData(cohort);
  const BicCurve curve =
      BicSelect(data, options.max_classes, options.seed, options.lca_restarts);
  std::string bic = "classes,log_likelihood,free_parameters,bic,converged\n";
  text += "\nLatent classes over the two decisions of G3 and G4\n";
  for (const LcaModel& m : curve.models) {
    bic += fmt::format("{},{},{},{},{}\n", m.n_classes, Num(m.log_likelihood),
                       m.free_parameters, Num(m.bic), m.converged ? 1 : 0);
    text += fmt::format("  {} classes: logL {}, BIC {}\n", m.n_classes,
                        Num(m.log_likelihood), Num(m.bic));
  }
  out["bic_curve.csv"] = bic;
  const LcaModel& chosen = curve.models[curve.selected - 1];
  std::string params = "class,share";
  for (const std::string& g : data.groups) params += "," + g;
  params += "\n";
  text += fmt::format("  BIC selects {} classes\n", curve.selected);
  for (int c = 0; c < chosen.n_classes; ++c) {
    params += fmt::format("{},{}", c + 1, Num(chosen.shares[c]));
    text += fmt::format("    class {}: share {}, P(stop)", c + 1,
                        Num(chosen.shares[c]));
    for (std::size_t g = 0; g < data.groups.size(); ++g) {
      params += "," + Num(chosen.probs[c][g]);
      text += fmt::format(" {}={}", data.groups[g], Num(chosen.probs[c][g]));
    }
    params += "\n";
    text += "\n";
  }
  out["lca_params.csv"] = params;
  out["report.txt"] = text;
  out["plot_results.py"] = kPlotScript;
  return out;
}

void WriteReport(const ReportBundle& bundle, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  for (const auto& [name, contents] : bundle) {
    std::ofstream out(dir / name, std::ios::binary);
    out << contents;
    if (!out) throw Error("cannot write " + (dir / name).string());
  }
}

}  // namespace marbledrop
