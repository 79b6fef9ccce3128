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

// License selection policies.
//
// Both choosers rank candidates by a ChoiceKey and return the minimum. The
// baseline ("oma") ignores the penalty flag: highest-priority dominant
// constraint first, then earliest deadline, then id. The labeled chooser
// first avoids licenses that grant several rights and have exactly one
// execution left, since spending that execution strands the other rights.

#ifndef DRMLAB_CHOOSERS_HPP
#define DRMLAB_CHOOSERS_HPP

#include <optional>
#include <set>
#include <string_view>

#include "drmlab/agent.hpp"
#include "drmlab/rel.hpp"

namespace drmlab {

enum class Algorithm { kOma, kLabeled };

std::string_view ToString(Algorithm algorithm);
std::optional<Algorithm> ParseAlgorithm(std::string_view name);

struct ChoiceKey {
  bool penalized = false;
  std::size_t dominant_rank = 0;
  std::optional<Tick> deadline;
  LicenseId id;

  bool operator==(const ChoiceKey&) const = default;
};

ChoiceKey MakeChoiceKey(const License& license, const ConstraintState& state,
                        const PrecedenceTable& table);

// Lexicographic: penalized, dominant rank, deadline (absent last), id.
bool LabeledBefore(const ChoiceKey& a, const ChoiceKey& b);
// Same order with the penalty component ignored.
bool BaselineBefore(const ChoiceKey& a, const ChoiceKey& b);

// Both throw Error(kEmptyCandidates) for an empty set and
// Error(kInvalidArgument) for ids that are not installed.
LicenseId ChooseBaseline(const std::set<LicenseId>& candidates,
                         const AgentState& state,
                         const PrecedenceTable& table);
LicenseId ChooseLabeled(const std::set<LicenseId>& candidates,
                        const AgentState& state, const PrecedenceTable& table);

Chooser MakeChooser(Algorithm algorithm,
                    PrecedenceTable table = PrecedenceTable::Default());

}  // namespace drmlab

#endif  // DRMLAB_CHOOSERS_HPP
