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

// The license store of a DRM agent as a state machine.
//
// AgentState is a value; transitions (Install, Tick, Request) return new
// states and observers (Usable, ColorOf, LostRights) are pure. Every right
// granted by an installed license carries a color: White until it is used,
// Black once exercised or sacrificed when the only license able to serve a
// request is depleted by it.

#ifndef DRMLAB_AGENT_HPP
#define DRMLAB_AGENT_HPP

#include <functional>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "drmlab/rel.hpp"
#include "json.hpp"

namespace drmlab {

enum class Color { kWhite, kBlack };

std::string_view ToString(Color color);

struct AgentState {
  std::map<LicenseId, std::shared_ptr<const License>> licenses;
  ConstraintState constraints;
  Tick now = 0;
  std::map<Right, Color> coloring;

  // Licenses compare by value.
  bool operator==(const AgentState& other) const;
};

struct Decision {
  Right request;
  LicenseId chosen;
  Tick at = 0;
  bool depleted = false;
  std::set<Right> blackened;

  bool operator==(const Decision&) const = default;
};

enum class ColorCause { kExercised, kForcedDepletion };

std::string_view ToString(ColorCause cause);

struct Installed {
  LicenseId license;
  bool operator==(const Installed&) const = default;
};
struct Ticked {
  Tick now = 0;
  bool operator==(const Ticked&) const = default;
};
struct Requested {
  Decision decision;
  bool operator==(const Requested&) const = default;
};
struct Colored {
  Right right;
  ColorCause cause = ColorCause::kExercised;
  bool operator==(const Colored&) const = default;
};
struct Rejected {
  Right right;
  std::string reason;
  bool operator==(const Rejected&) const = default;
};

using Event = std::variant<Installed, Ticked, Requested, Colored, Rejected>;
using Trace = std::vector<Event>;

// Picks one license id out of a non-empty candidate set.
using Chooser =
    std::function<LicenseId(const std::set<LicenseId>&, const AgentState&)>;

AgentState InitAgent();

// Throws Error(kDuplicateId) when a license with the same id is installed.
AgentState Install(const AgentState& state, const License& license);

AgentState AdvanceTick(const AgentState& state);

std::set<LicenseId> Usable(const AgentState& state, const Right& right);

// Throws Error(kNotPermitted) when no installed license can serve `right`;
// the state is left untouched. The chooser's pick is applied as returned.
std::pair<AgentState, Decision> Request(const AgentState& state,
                                        const Right& right,
                                        const Chooser& choose);

// Throws Error(kUndefinedRight) for rights no installed license grants.
Color ColorOf(const AgentState& state, const Right& right);

std::set<Right> LostRights(const AgentState& state);

// Rights some installed license grants.
std::set<Right> GrantedRights(const AgentState& state);

// Rights with a non-empty Usable set.
std::set<Right> UsableRights(const AgentState& state);

bool LicenseServesAny(const AgentState& state, const License& license);

// Installed licenses in id order.
std::vector<License> InstalledLicenses(const AgentState& state);

// Events describing a decision: Requested followed by one Colored per
// blackened right.
std::vector<Event> EventsFor(const Decision& decision);

nlohmann::ordered_json EventToJson(const Event& event, std::size_t seq);
nlohmann::ordered_json DecisionToJson(const Decision& decision);
// One JSON object per line, `seq` counting from 0.
std::string TraceToJsonLines(const Trace& trace);

// Drives an agent while recording the event stream. Rejected requests are
// logged and leave the state unchanged.
class Simulation {
 public:
  Simulation() : state_(InitAgent()) {}

  void Install(const License& license);
  void AdvanceTick();
  // Returns the decision, or nullopt when the request was rejected.
  std::optional<Decision> Request(const Right& right, const Chooser& choose);

  const AgentState& state() const { return state_; }
  const Trace& trace() const { return trace_; }
  std::size_t rejected() const { return rejected_; }

 private:
  AgentState state_;
  Trace trace_;
  std::size_t rejected_ = 0;
};

}  // namespace drmlab

#endif  // DRMLAB_AGENT_HPP
