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

// Bounded exhaustive checking of license-choice policies.
//
// An Instance is a set of licenses installed at tick 0 plus a horizon. From
// the installed state a run branches over every request that some license
// can serve and over a clock tick, until the clock reaches the horizon or no
// right is servable any more. Requests that leave the state unchanged are
// not steps. Two properties are checked over all runs:
//
//   safety    every chosen license has its constraints met at choice time;
//   liveness  on every fair run, every right ends up Black.
//
// A run is fair when no tick expires a right that is still White and
// servable, and when it does not end at the horizon with such a right
// pending.

#ifndef DRMLAB_VERIFIER_HPP
#define DRMLAB_VERIFIER_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "drmlab/agent.hpp"
#include "drmlab/choosers.hpp"
#include "drmlab/errors.hpp"
#include "drmlab/rel.hpp"
#include "json.hpp"

namespace drmlab {

inline constexpr std::size_t kDefaultCorpusCap = 100000;
inline constexpr std::size_t kDefaultStateCap = 1000000;
inline constexpr std::size_t kDefaultTraceCap = 100000;

struct CorpusBounds {
  std::uint32_t max_licenses = 2;
  std::uint32_t max_assets = 2;
  std::uint32_t max_actions = 1;
  std::uint32_t max_count = 2;
  std::uint32_t max_deadline = 2;
  Tick horizon = 4;

  // "maxLicenses=2,maxAssets=2,..."; unnamed keys keep their defaults.
  static CorpusBounds Parse(std::string_view text);
  std::string ToString() const;

  bool operator==(const CorpusBounds&) const = default;
};

struct Instance {
  std::string id;
  std::vector<License> licenses;
  Tick horizon = 1;
};

// {"id":"t2","horizon":40,"licenses":[<license>, ...]}
Instance InstanceFromJson(const nlohmann::json& doc);
Instance ParseInstance(std::string_view text);
nlohmann::ordered_json InstanceToJson(const Instance& instance);

// Corpus licenses grant one or more (asset, action) pairs under "true"
// permission constraints, with a top constraint drawn from: true, count k,
// until d, interval d, count k and until d, count k and interval d, for
// 1 <= k <= maxCount and 1 <= d <= maxDeadline. An instance holds 1 to
// maxLicenses licenses; instances equal up to renaming assets, actions or
// licenses are enumerated once.
//
// Throws Error(kBoundsTooLarge) when the corpus would exceed `cap`
// instances, and Error(kInvalidArgument) for bounds below 1.
std::vector<Instance> GenerateCorpus(const CorpusBounds& bounds,
                                     std::size_t cap = kDefaultCorpusCap);

// Streams the same enumeration without materializing it. `visit` returns
// false to stop early.
void EnumerateCorpus(const CorpusBounds& bounds,
                     const std::function<bool(const Instance&)>& visit);

// Canonical code of `instance` under the corpus symmetry, or nullopt when
// the instance is not expressible within `bounds`.
std::optional<std::vector<std::uint64_t>> CanonicalCodes(
    const Instance& instance, const CorpusBounds& bounds);

// Whether an instance equivalent to `instance` is enumerated for `bounds`.
bool CorpusContains(const CorpusBounds& bounds, const Instance& instance);

// The installed state of an instance and the events that produced it.
AgentState InitialState(const Instance& instance);
Trace InstallEvents(const Instance& instance);

// Thrown when exploration exceeds its cap; carries what was found so far.
class ExplorationCapExceeded : public Error {
 public:
  ExplorationCapExceeded(const std::string& message, std::vector<Trace> partial)
      : Error(ErrorCode::kCapExceeded, message), partial_(std::move(partial)) {}

  const std::vector<Trace>& partial() const { return partial_; }

 private:
  std::vector<Trace> partial_;
};

// Depth-first enumeration of all maximal runs, each starting with the
// install events. With `fair_only`, unfair runs are pruned.
std::vector<Trace> ExploreRequests(const Instance& instance,
                                   const Chooser& choose, bool fair_only,
                                   std::size_t cap = kDefaultTraceCap);

// Replays a trace produced for `instance`, returning the state after every
// step (the first entry is the installed state).
std::vector<AgentState> Replay(const Instance& instance, const Trace& trace);

// Fairness of a complete run, judged from its trace alone.
bool IsFairRun(const Instance& instance, const Trace& trace);

enum class Property { kSafety, kLiveness };

std::string_view ToString(Property property);
std::optional<Property> ParseProperty(std::string_view name);

struct Verdict {
  Property property = Property::kSafety;
  bool holds = true;
  std::optional<Trace> counterexample;
  std::string reason;
  std::size_t states = 0;
  // Liveness only: rights left White at the end of some fair run.
  std::set<Right> lost;
  std::vector<std::string> warnings;
};

// The safety predicate on a single decision, re-evaluated in `before`.
bool DecisionIsSafe(const AgentState& before, const Decision& decision);

// Both explore the reachable state graph (breadth first, so counterexamples
// are shortest) and throw Error(kCapExceeded) past `state_cap` states.
Verdict CheckSafety(const Instance& instance, const Chooser& choose,
                    std::size_t state_cap = kDefaultStateCap);
Verdict CheckLiveness(const Instance& instance, const Chooser& choose,
                      std::size_t state_cap = kDefaultStateCap);

nlohmann::ordered_json VerdictToJson(const Verdict& verdict);

struct ReportRow {
  std::string instance;
  Algorithm chooser = Algorithm::kOma;
  std::optional<bool> safety;
  std::optional<bool> liveness;
  std::size_t lost_rights = 0;
  std::string note;
};

struct Report {
  std::vector<ReportRow> rows;
  std::size_t instances = 0;
  std::vector<std::string> baseline_loss;
  std::vector<std::string> labeled_loss;
  bool labeled_subset_of_baseline = true;
  bool strict = false;
};

// Aggregates derived from `rows` only.
Report SummarizeRows(std::vector<ReportRow> rows);

Report CompareChoosers(const std::vector<Instance>& corpus,
                       const PrecedenceTable& table = PrecedenceTable::Default(),
                       std::size_t state_cap = kDefaultStateCap);

nlohmann::ordered_json ReportToJson(const Report& report);
std::string ReportToText(const Report& report);

}  // namespace drmlab

#endif  // DRMLAB_VERIFIER_HPP
