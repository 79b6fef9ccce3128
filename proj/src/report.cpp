// Copyright 2026 The drmlab Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <algorithm>
#include <atomic>
#include <sstream>
#include <thread>

#include "drmlab/verifier.hpp"

namespace drmlab {

Report SummarizeRows(std::vector<ReportRow> rows) {
  Report report;
  std::vector<std::string> seen;
  for (const ReportRow& row : rows) {
    if (std::find(seen.begin(), seen.end(), row.instance) == seen.end()) {
      seen.push_back(row.instance);
    }
    if (row.liveness == false) {
      (row.chooser == Algorithm::kOma ? report.baseline_loss
                                      : report.labeled_loss)
          .push_back(row.instance);
    }
  }
  report.instances = seen.size();
  report.labeled_subset_of_baseline =
      std::all_of(report.labeled_loss.begin(), report.labeled_loss.end(),
                  [&](const std::string& id) {
                    return std::find(report.baseline_loss.begin(),
                                     report.baseline_loss.end(),
                                     id) != report.baseline_loss.end();
                  });
  report.strict = report.labeled_subset_of_baseline &&
                  report.labeled_loss.size() < report.baseline_loss.size();
  report.rows = std::move(rows);
  return report;
}

namespace {

ReportRow RunOne(const Instance& instance, Algorithm algorithm,
                 const PrecedenceTable& table, std::size_t state_cap) {
  ReportRow row;
  row.instance = instance.id;
  row.chooser = algorithm;
  const Chooser choose = MakeChooser(algorithm, table);
  try {
    row.safety = CheckSafety(instance, choose, state_cap).holds;
  } catch (const Error& e) {
    row.note = e.what();
  }
  try {
    Verdict liveness = CheckLiveness(instance, choose, state_cap);
    row.liveness = liveness.holds;
    row.lost_rights = liveness.lost.size();
    if (!liveness.warnings.empty() && row.note.empty()) {
      row.note = liveness.warnings.front();
    }
  } catch (const Error& e) {
    row.note = e.what();
  }
  return row;
}

}  // namespace

Report CompareChoosers(const std::vector<Instance>& corpus,
                       const PrecedenceTable& table, std::size_t state_cap) {
  if (corpus.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "corpus must not be empty");
  }
  // Rows are written by index, so the result does not depend on scheduling.
  std::vector<ReportRow> rows(corpus.size() * 2);
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < corpus.size(); i = next++) {
      rows[2 * i] = RunOne(corpus[i], Algorithm::kOma, table, state_cap);
      rows[2 * i + 1] = RunOne(corpus[i], Algorithm::kLabeled, table, state_cap);
    }
  };
  const std::size_t workers = std::clamp<std::size_t>(
      std::thread::hardware_concurrency(), 1, corpus.size());
  std::vector<std::thread> pool;
  for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(work);
  work();
  for (std::thread& t : pool) t.join();
  return SummarizeRows(std::move(rows));
}

namespace {

nlohmann::ordered_json Optional(const std::optional<bool>& v) {
  return v ? nlohmann::ordered_json(*v) : nlohmann::ordered_json(nullptr);
}

std::string Cell(const std::optional<bool>& v) {
  return v ? (*v ? "holds" : "VIOLATED") : "n/a";
}

}  // namespace

nlohmann::ordered_json ReportToJson(const Report& report) {
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const ReportRow& row : report.rows) {
    rows.push_back({{"instance", row.instance},
                    {"chooser", std::string(ToString(row.chooser))},
                    {"safety", Optional(row.safety)},
                    {"liveness", Optional(row.liveness)},
                    {"lostRights", row.lost_rights},
                    {"note", row.note}});
  }
  return {{"instances", report.instances},
          {"rows", std::move(rows)},
          {"aggregates",
           {{"baselineLoss", report.baseline_loss},
            {"labeledLoss", report.labeled_loss},
            {"labeledSubsetOfBaseline", report.labeled_subset_of_baseline},
            {"strict", report.strict}}}};
}

std::string ReportToText(const Report& report) {
  std::size_t width = std::string("instance").size();
  for (const ReportRow& row : report.rows) {
    width = std::max(width, row.instance.size());
  }
  auto pad = [](std::string s, std::size_t n) {
    s.resize(std::max(n, s.size()), ' ');
    return s;
  };
  std::ostringstream out;
  out << pad("instance", width) << "  " << pad("chooser", 8) << "  "
      << pad("safety", 8) << "  " << pad("liveness", 8) << "  lost  note\n";
  for (const ReportRow& row : report.rows) {
    std::string line = pad(row.instance, width) + "  " +
                       pad(std::string(ToString(row.chooser)), 8) + "  " +
                       pad(Cell(row.safety), 8) + "  " +
                       pad(Cell(row.liveness), 8) + "  " +
                       pad(std::to_string(row.lost_rights), 4) + "  " +
                       row.note;
    while (!line.empty() && line.back() == ' ') line.pop_back();
    out << line << '\n';
  }
  out << "\ninstances: " << report.instances << '\n'
      << "baseline liveness violations: " << report.baseline_loss.size() << '\n'
      << "labeled liveness violations: " << report.labeled_loss.size() << '\n'
      << "labeled violations subset of baseline: "
      << (report.labeled_subset_of_baseline ? "yes" : "no") << '\n'
      << "strict: " << (report.strict ? "yes" : "no") << '\n';
  return out.str();
}

}  // namespace drmlab
