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

#include "drmlab/choosers.hpp"

#include <tuple>

#include "drmlab/errors.hpp"

namespace drmlab {

std::string_view ToString(Algorithm algorithm) {
  return algorithm == Algorithm::kOma ? "oma" : "labeled";
}

std::optional<Algorithm> ParseAlgorithm(std::string_view name) {
  if (name == "oma") return Algorithm::kOma;
  if (name == "labeled") return Algorithm::kLabeled;
  return std::nullopt;
}

ChoiceKey MakeChoiceKey(const License& license, const ConstraintState& state,
                        const PrecedenceTable& table) {
  const Label label = ComputeLabel(license, state, table);
  return ChoiceKey{label.multi && label.last, table.Rank(label.dominant),
                   EarliestDeadline(license), license.id};
}

namespace {

// nullopt sorts after every deadline.
auto DeadlineOrder(const std::optional<Tick>& d) {
  return std::make_pair(!d.has_value(), d.value_or(0));
}

template <typename Before>
LicenseId Minimal(const std::set<LicenseId>& candidates,
                  const AgentState& state, const PrecedenceTable& table,
                  Before before) {
  if (candidates.empty()) {
    throw Error(ErrorCode::kEmptyCandidates, "no candidate licenses");
  }
  std::optional<ChoiceKey> best;
  for (const LicenseId& id : candidates) {
    auto it = state.licenses.find(id);
    if (it == state.licenses.end()) {
      throw Error(ErrorCode::kInvalidArgument,
                  "candidate '" + id + "' is not installed");
    }
    ChoiceKey key = MakeChoiceKey(*it->second, state.constraints, table);
    if (!best || before(key, *best)) best = std::move(key);
  }
  return best->id;
}

}  // namespace

bool BaselineBefore(const ChoiceKey& a, const ChoiceKey& b) {
  const auto da = DeadlineOrder(a.deadline);
  const auto db = DeadlineOrder(b.deadline);
  return std::tie(a.dominant_rank, da, a.id) <
         std::tie(b.dominant_rank, db, b.id);
}

bool LabeledBefore(const ChoiceKey& a, const ChoiceKey& b) {
  if (a.penalized != b.penalized) return !a.penalized;
  return BaselineBefore(a, b);
}

LicenseId ChooseBaseline(const std::set<LicenseId>& candidates,
                         const AgentState& state,
                         const PrecedenceTable& table) {
  return Minimal(candidates, state, table, BaselineBefore);
}

LicenseId ChooseLabeled(const std::set<LicenseId>& candidates,
                        const AgentState& state, const PrecedenceTable& table) {
  return Minimal(candidates, state, table, LabeledBefore);
}

Chooser MakeChooser(Algorithm algorithm, PrecedenceTable table) {
  if (algorithm == Algorithm::kOma) {
    return [table](const std::set<LicenseId>& c, const AgentState& s) {
      return ChooseBaseline(c, s, table);
    };
  }
  return [table](const std::set<LicenseId>& c, const AgentState& s) {
    return ChooseLabeled(c, s, table);
  };
}

}  // namespace drmlab
