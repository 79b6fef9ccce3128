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

#include "drmlab/agent.hpp"

#include "drmlab/errors.hpp"
#include "drmlab/license_json.hpp"

namespace drmlab {

std::string_view ToString(Color color) {
  return color == Color::kWhite ? "white" : "black";
}

std::string_view ToString(ColorCause cause) {
  return cause == ColorCause::kExercised ? "exercised" : "forcedDepletion";
}

bool AgentState::operator==(const AgentState& other) const {
  if (now != other.now || constraints != other.constraints ||
      coloring != other.coloring || licenses.size() != other.licenses.size()) {
    return false;
  }
  auto it = other.licenses.begin();
  for (const auto& [id, license] : licenses) {
    if (id != it->first) return false;
    if (license != it->second && *license != *it->second) return false;
    ++it;
  }
  return true;
}

AgentState InitAgent() { return AgentState{}; }

AgentState Install(const AgentState& state, const License& license) {
  if (state.licenses.contains(license.id)) {
    throw Error(ErrorCode::kDuplicateId,
                "license '" + license.id + "' is already installed");
  }
  AgentState next = state;
  next.licenses.emplace(license.id, std::make_shared<const License>(license));
  SeedConstraintState(next.constraints, license);
  for (const Right& right : GrantedRights(license)) {
    next.coloring.try_emplace(right, Color::kWhite);
  }
  return next;
}

AgentState AdvanceTick(const AgentState& state) {
  AgentState next = state;
  ++next.now;
  return next;
}

namespace {

bool ServesRight(const AgentState& state, const License& license,
                 const Right& right) {
  for (std::size_t i = 0; i < license.permissions.size(); ++i) {
    if (license.permissions[i].right == right &&
        PermissionHolds(license, i, state.constraints, state.now)) {
      return true;
    }
  }
  return false;
}

std::optional<std::size_t> MatchPermission(const AgentState& state,
                                           const License& license,
                                           const Right& right) {
  std::optional<std::size_t> fallback;
  for (std::size_t i = 0; i < license.permissions.size(); ++i) {
    if (license.permissions[i].right != right) continue;
    if (PermissionHolds(license, i, state.constraints, state.now)) return i;
    if (!fallback) fallback = i;
  }
  return fallback;
}

// Consumes one execution from every Count node in `constraint` and starts
// every Interval node that has not been started yet.
void Consume(AgentState& state, const License& license,
             const Constraint& constraint, const ConstraintPath& path) {
  auto apply = [&](const Atom& atom, const ConstraintPath& at) {
    NodeKey key{license.id, at};
    if (std::holds_alternative<Count>(atom)) {
      auto& remaining = state.constraints.remaining.at(key);
      if (remaining > 0) --remaining;
    } else if (std::holds_alternative<Interval>(atom)) {
      auto& first = state.constraints.first_use.at(key);
      if (!first) first = state.now;
    }
  };
  internal::ForEachAtomOf(constraint, path, apply);
}

}  // namespace

std::set<LicenseId> Usable(const AgentState& state, const Right& right) {
  std::set<LicenseId> ids;
  for (const auto& [id, license] : state.licenses) {
    if (ServesRight(state, *license, right)) ids.insert(id);
  }
  return ids;
}

bool LicenseServesAny(const AgentState& state, const License& license) {
  for (std::size_t i = 0; i < license.permissions.size(); ++i) {
    if (PermissionHolds(license, i, state.constraints, state.now)) return true;
  }
  return false;
}

std::pair<AgentState, Decision> Request(const AgentState& state,
                                        const Right& right,
                                        const Chooser& choose) {
  const std::set<LicenseId> candidates = Usable(state, right);
  if (candidates.empty()) {
    throw Error(ErrorCode::kNotPermitted,
                "no installed license permits " + ToString(right));
  }
  const LicenseId chosen = choose(candidates, state);
  auto found = state.licenses.find(chosen);
  if (found == state.licenses.end()) {
    throw Error(ErrorCode::kInvalidArgument,
                "chooser returned unknown license '" + chosen + "'");
  }
  const License& license = *found->second;

  AgentState next = state;
  Consume(next, license, license.top, ConstraintPath::Top());
  if (auto matched = MatchPermission(state, license, right)) {
    Consume(next, license, license.permissions[*matched].constraint,
            ConstraintPath::OfPermission(*matched));
  }

  Decision decision;
  decision.request = right;
  decision.chosen = chosen;
  decision.at = state.now;
  decision.depleted = !LicenseServesAny(next, license);

  next.coloring[right] = Color::kBlack;
  decision.blackened.insert(right);

  const bool sole_option =
      candidates.size() == 1 && *candidates.begin() == chosen;
  if (decision.depleted && sole_option) {
    for (const Right& other : GrantedRights(license)) {
      auto& color = next.coloring.at(other);
      if (color == Color::kWhite) {
        color = Color::kBlack;
        decision.blackened.insert(other);
      }
    }
  }
  return {std::move(next), std::move(decision)};
}

Color ColorOf(const AgentState& state, const Right& right) {
  auto it = state.coloring.find(right);
  if (it == state.coloring.end()) {
    throw Error(ErrorCode::kUndefinedRight,
                ToString(right) + " is not granted by any installed license");
  }
  return it->second;
}

std::set<Right> LostRights(const AgentState& state) {
  std::set<Right> lost;
  for (const auto& [right, color] : state.coloring) {
    if (color != Color::kWhite) continue;
    bool alive = false;
    for (const auto& [id, license] : state.licenses) {
      if (CanEverServe(*license, right, state.constraints, state.now)) {
        alive = true;
        break;
      }
    }
    if (!alive) lost.insert(right);
  }
  return lost;
}

std::set<Right> GrantedRights(const AgentState& state) {
  std::set<Right> rights;
  for (const auto& [id, license] : state.licenses) {
    rights.merge(GrantedRights(*license));
  }
  return rights;
}

std::set<Right> UsableRights(const AgentState& state) {
  std::set<Right> rights;
  for (const auto& [id, license] : state.licenses) {
    rights.merge(ServableRights(*license, state.constraints, state.now));
  }
  return rights;
}

std::vector<License> InstalledLicenses(const AgentState& state) {
  std::vector<License> out;
  out.reserve(state.licenses.size());
  for (const auto& [id, license] : state.licenses) out.push_back(*license);
  return out;
}

std::vector<Event> EventsFor(const Decision& decision) {
  std::vector<Event> events;
  events.emplace_back(Requested{decision});
  events.emplace_back(Colored{decision.request, ColorCause::kExercised});
  for (const Right& right : decision.blackened) {
    if (right != decision.request) {
      events.emplace_back(Colored{right, ColorCause::kForcedDepletion});
    }
  }
  return events;
}

nlohmann::ordered_json DecisionToJson(const Decision& decision) {
  nlohmann::ordered_json blackened = nlohmann::ordered_json::array();
  for (const Right& right : decision.blackened) {
    blackened.push_back(RightToJson(right));
  }
  return {{"request", RightToJson(decision.request)},
          {"chosen", decision.chosen},
          {"at", decision.at},
          {"depleted", decision.depleted},
          {"blackened", std::move(blackened)}};
}

nlohmann::ordered_json EventToJson(const Event& event, std::size_t seq) {
  nlohmann::ordered_json out;
  out["seq"] = seq;
  std::visit(
      [&](const auto& e) {
        using T = std::decay_t<decltype(e)>;
        if constexpr (std::is_same_v<T, Installed>) {
          out["event"] = "installed";
          out["license"] = e.license;
        } else if constexpr (std::is_same_v<T, Ticked>) {
          out["event"] = "ticked";
          out["now"] = e.now;
        } else if constexpr (std::is_same_v<T, Requested>) {
          out["event"] = "requested";
          out["decision"] = DecisionToJson(e.decision);
        } else if constexpr (std::is_same_v<T, Colored>) {
          out["event"] = "colored";
          out["right"] = RightToJson(e.right);
          out["cause"] = std::string(ToString(e.cause));
        } else {
          out["event"] = "rejected";
          out["right"] = RightToJson(e.right);
          out["reason"] = e.reason;
        }
      },
      event);
  return out;
}

std::string TraceToJsonLines(const Trace& trace) {
  std::string out;
  for (std::size_t i = 0; i < trace.size(); ++i) {
    out += EventToJson(trace[i], i).dump();
    out += '\n';
  }
  return out;
}

void Simulation::Install(const License& license) {
  state_ = drmlab::Install(state_, license);
  trace_.emplace_back(Installed{license.id});
}

void Simulation::AdvanceTick() {
  state_ = drmlab::AdvanceTick(state_);
  trace_.emplace_back(Ticked{state_.now});
}

std::optional<Decision> Simulation::Request(const Right& right,
                                            const Chooser& choose) {
  try {
    auto [next, decision] = drmlab::Request(state_, right, choose);
    state_ = std::move(next);
    for (Event& e : EventsFor(decision)) trace_.push_back(std::move(e));
    return decision;
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kNotPermitted) throw;
    trace_.emplace_back(Rejected{right, "not-permitted"});
    ++rejected_;
    return std::nullopt;
  }
}

}  // namespace drmlab
