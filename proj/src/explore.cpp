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

#include <deque>
#include <unordered_map>

#include "drmlab/license_json.hpp"
#include "drmlab/verifier.hpp"

namespace drmlab {

AgentState InitialState(const Instance& instance) {
  AgentState state = InitAgent();
  for (const License& license : instance.licenses) {
    state = Install(state, license);
  }
  return state;
}

Trace InstallEvents(const Instance& instance) {
  Trace trace;
  for (const License& license : instance.licenses) {
    trace.emplace_back(Installed{license.id});
  }
  return trace;
}

namespace {

bool IsTerminal(const AgentState& state, Tick horizon) {
  return state.now >= horizon || UsableRights(state).empty();
}

std::set<Right> WhiteUsable(const AgentState& state) {
  std::set<Right> out;
  for (const Right& right : UsableRights(state)) {
    if (state.coloring.at(right) == Color::kWhite) out.insert(right);
  }
  return out;
}

// A tick that expires a right which is still White and servable.
bool Starves(const AgentState& before, const AgentState& after) {
  const std::set<Right> still = UsableRights(after);
  for (const Right& right : WhiteUsable(before)) {
    if (!still.contains(right)) return true;
  }
  return false;
}

bool FairEnding(const AgentState& state) { return WhiteUsable(state).empty(); }

// A fair user only asks for rights it has not used yet, and once no White
// right is servable nothing it could do matters for liveness any more.
bool FairTerminal(const AgentState& state, Tick horizon) {
  return state.now >= horizon || FairEnding(state);
}

std::set<Right> Requests(const AgentState& state, bool fair_only) {
  return fair_only ? WhiteUsable(state) : UsableRights(state);
}

bool ColoringMonotone(const AgentState& before, const AgentState& after) {
  for (const auto& [right, color] : before.coloring) {
    auto it = after.coloring.find(right);
    if (it == after.coloring.end()) return false;
    if (color == Color::kBlack && it->second != Color::kBlack) return false;
  }
  return true;
}

std::set<Right> WhiteRights(const AgentState& state) {
  std::set<Right> out;
  for (const auto& [right, color] : state.coloring) {
    if (color == Color::kWhite) out.insert(right);
  }
  return out;
}

void Append(Trace& trace, const std::vector<Event>& events) {
  trace.insert(trace.end(), events.begin(), events.end());
}

class TraceEnumerator {
 public:
  TraceEnumerator(const Instance& instance, const Chooser& choose,
                  bool fair_only, std::size_t cap)
      : instance_(instance), choose_(choose), fair_only_(fair_only), cap_(cap) {}

  std::vector<Trace> Run() {
    Trace trace = InstallEvents(instance_);
    Visit(InitialState(instance_), trace);
    return std::move(out_);
  }

 private:
  void Visit(const AgentState& state, Trace& trace) {
    if (fair_only_ ? FairTerminal(state, instance_.horizon)
                   : IsTerminal(state, instance_.horizon)) {
      if (fair_only_ && !FairEnding(state)) return;
      if (out_.size() == cap_) {
        throw ExplorationCapExceeded(
            "exploration of '" + instance_.id + "' exceeds " +
                std::to_string(cap_) + " traces",
            std::move(out_));
      }
      out_.push_back(trace);
      return;
    }
    for (const Right& right : Requests(state, fair_only_)) {
      auto [next, decision] = Request(state, right, choose_);
      if (next == state) continue;
      const std::size_t mark = trace.size();
      Append(trace, EventsFor(decision));
      Visit(next, trace);
      trace.resize(mark);
    }
    if (state.now < instance_.horizon) {
      AgentState next = AdvanceTick(state);
      if (fair_only_ && Starves(state, next)) return;
      trace.emplace_back(Ticked{next.now});
      Visit(next, trace);
      trace.pop_back();
    }
  }

  const Instance& instance_;
  const Chooser& choose_;
  bool fair_only_;
  std::size_t cap_;
  std::vector<Trace> out_;
};

struct Step {
  bool is_tick = false;
  AgentState state;
  Right request;
};

std::vector<Step> ReplaySteps(const Instance& instance, const Trace& trace) {
  auto mismatch = [](const std::string& why) {
    return Error(ErrorCode::kInvalidArgument, "trace does not replay: " + why);
  };
  std::vector<Step> steps;
  steps.push_back({false, InitialState(instance), {}});
  std::size_t installs = 0;
  for (const Event& event : trace) {
    const AgentState& current = steps.back().state;
    if (const auto* e = std::get_if<Installed>(&event)) {
      if (installs >= instance.licenses.size() ||
          instance.licenses[installs].id != e->license) {
        throw mismatch("unexpected install of '" + e->license + "'");
      }
      ++installs;
    } else if (std::holds_alternative<Ticked>(event)) {
      steps.push_back({true, AdvanceTick(current), {}});
    } else if (const auto* e = std::get_if<Requested>(&event)) {
      const LicenseId chosen = e->decision.chosen;
      auto [next, decision] = Request(
          current, e->decision.request,
          [&](const std::set<LicenseId>&, const AgentState&) { return chosen; });
      if (decision != e->decision) throw mismatch("decision differs");
      steps.push_back({false, std::move(next), e->decision.request});
    }
  }
  return steps;
}

// Breadth-first search over distinct agent states with parent links, so the
// path to any state is a shortest run.
class StateGraph {
 public:
  explicit StateGraph(const Instance& instance, std::size_t cap)
      : instance_(instance), cap_(cap) {
    Add(InitialState(instance), kNone, {});
  }

  std::size_t size() const { return nodes_.size(); }
  const AgentState& state(std::size_t i) const { return nodes_[i].state; }

  void Add(AgentState state, std::size_t parent, std::vector<Event> via) {
    std::string key = Key(state);
    if (seen_.contains(key)) return;
    if (nodes_.size() == cap_) {
      throw Error(ErrorCode::kCapExceeded,
                  "state space of '" + instance_.id + "' exceeds " +
                      std::to_string(cap_) + " states");
    }
    seen_.emplace(std::move(key), nodes_.size());
    nodes_.push_back(Node{std::move(state), parent, std::move(via)});
  }

  Trace PathTo(std::size_t i) const {
    std::vector<const std::vector<Event>*> segments;
    for (std::size_t at = i; at != kNone; at = nodes_[at].parent) {
      segments.push_back(&nodes_[at].via);
    }
    Trace trace = InstallEvents(instance_);
    for (auto it = segments.rbegin(); it != segments.rend(); ++it) {
      Append(trace, **it);
    }
    return trace;
  }

 private:
  static constexpr std::size_t kNone = static_cast<std::size_t>(-1);

  struct Node {
    AgentState state;
    std::size_t parent;
    std::vector<Event> via;
  };

  // Installed licenses are fixed per instance, so the residue, clock and
  // coloring identify a state.
  static std::string Key(const AgentState& state) {
    std::string key = std::to_string(state.now);
    for (const auto& [node, remaining] : state.constraints.remaining) {
      key += ',' + std::to_string(remaining);
    }
    key += '|';
    for (const auto& [node, first] : state.constraints.first_use) {
      key += first ? std::to_string(*first) + ',' : std::string("-,");
    }
    key += '|';
    for (const auto& [right, color] : state.coloring) {
      key += color == Color::kBlack ? 'b' : 'w';
    }
    return key;
  }

  const Instance& instance_;
  std::size_t cap_;
  std::deque<Node> nodes_;
  std::unordered_map<std::string, std::size_t> seen_;
};

std::vector<std::string> HorizonWarnings(const Instance& instance) {
  std::optional<Tick> latest;
  for (const License& license : instance.licenses) {
    ForEachAtom(license, [&](const Atom& atom, const ConstraintPath&) {
      if (const auto* until = std::get_if<Until>(&atom)) {
        if (!latest || until->deadline > *latest) latest = until->deadline;
      }
    });
  }
  if (latest && instance.horizon <= *latest) {
    return {"horizon " + std::to_string(instance.horizon) +
            " does not exceed the largest deadline " + std::to_string(*latest) +
            "; verdicts only cover runs that end before expiry matters"};
  }
  return {};
}

}  // namespace

std::vector<Trace> ExploreRequests(const Instance& instance,
                                   const Chooser& choose, bool fair_only,
                                   std::size_t cap) {
  return TraceEnumerator(instance, choose, fair_only, cap).Run();
}

std::vector<AgentState> Replay(const Instance& instance, const Trace& trace) {
  std::vector<AgentState> states;
  for (Step& step : ReplaySteps(instance, trace)) {
    states.push_back(std::move(step.state));
  }
  return states;
}

bool IsFairRun(const Instance& instance, const Trace& trace) {
  const std::vector<Step> steps = ReplaySteps(instance, trace);
  for (std::size_t i = 1; i < steps.size(); ++i) {
    const AgentState& before = steps[i - 1].state;
    if (FairTerminal(before, instance.horizon)) return false;
    if (steps[i].is_tick) {
      if (Starves(before, steps[i].state)) return false;
    } else if (before.coloring.at(steps[i].request) != Color::kWhite) {
      return false;
    }
  }
  const AgentState& last = steps.back().state;
  return FairEnding(last);
}

std::string_view ToString(Property property) {
  return property == Property::kSafety ? "safety" : "liveness";
}

std::optional<Property> ParseProperty(std::string_view name) {
  if (name == "safety") return Property::kSafety;
  if (name == "liveness") return Property::kLiveness;
  return std::nullopt;
}

bool DecisionIsSafe(const AgentState& before, const Decision& decision) {
  auto it = before.licenses.find(decision.chosen);
  if (it == before.licenses.end()) return false;
  const License& license = *it->second;
  if (!EvalConstraint(license.top, before.constraints, license.id,
                      ConstraintPath::Top(), before.now)) {
    return false;
  }
  for (std::size_t i = 0; i < license.permissions.size(); ++i) {
    if (license.permissions[i].right == decision.request &&
        EvalConstraint(license.permissions[i].constraint, before.constraints,
                       license.id, ConstraintPath::OfPermission(i),
                       before.now)) {
      return true;
    }
  }
  return false;
}

Verdict CheckSafety(const Instance& instance, const Chooser& choose,
                    std::size_t state_cap) {
  Verdict verdict;
  verdict.property = Property::kSafety;
  StateGraph graph(instance, state_cap);
  for (std::size_t i = 0; i < graph.size(); ++i) {
    const AgentState& state = graph.state(i);
    if (IsTerminal(state, instance.horizon)) continue;
    for (const Right& right : UsableRights(state)) {
      std::pair<AgentState, Decision> step;
      try {
        step = Request(state, right, choose);
      } catch (const Error& e) {
        if (e.code() != ErrorCode::kInvalidArgument) throw;
        verdict.holds = false;
        verdict.reason = e.what();
        verdict.counterexample = graph.PathTo(i);
        verdict.counterexample->emplace_back(Rejected{right, e.what()});
        verdict.states = graph.size();
        return verdict;
      }
      auto& [next, decision] = step;
      if (!DecisionIsSafe(state, decision)) {
        verdict.holds = false;
        verdict.reason = "license '" + decision.chosen + "' chosen for " +
                         ToString(right) + " at tick " +
                         std::to_string(decision.at) +
                         " without its constraints being met";
        verdict.counterexample = graph.PathTo(i);
        Append(*verdict.counterexample, EventsFor(decision));
        verdict.states = graph.size();
        return verdict;
      }
      if (next != state) graph.Add(std::move(next), i, EventsFor(decision));
    }
    if (state.now < instance.horizon) {
      AgentState next = AdvanceTick(state);
      const Tick now = next.now;
      graph.Add(std::move(next), i, {Ticked{now}});
    }
  }
  verdict.states = graph.size();
  return verdict;
}

Verdict CheckLiveness(const Instance& instance, const Chooser& choose,
                      std::size_t state_cap) {
  Verdict verdict;
  verdict.property = Property::kLiveness;
  verdict.warnings = HorizonWarnings(instance);
  StateGraph graph(instance, state_cap);
  auto fail = [&](std::size_t at, std::string reason,
                  const std::vector<Event>& tail) {
    if (!verdict.holds) return;
    verdict.holds = false;
    verdict.reason = std::move(reason);
    verdict.counterexample = graph.PathTo(at);
    Append(*verdict.counterexample, tail);
  };

  for (std::size_t i = 0; i < graph.size(); ++i) {
    const AgentState& state = graph.state(i);
    if (FairTerminal(state, instance.horizon)) {
      if (!FairEnding(state)) continue;  // pruned: cut off by the horizon
      const std::set<Right> white = WhiteRights(state);
      if (white.empty()) continue;
      std::string names;
      for (const Right& right : white) {
        names += (names.empty() ? "" : ", ") + ToString(right);
        verdict.lost.insert(right);
      }
      fail(i, "fair run ends with " + names + " still white", {});
      continue;
    }
    for (const Right& right : WhiteUsable(state)) {
      auto [next, decision] = Request(state, right, choose);
      // unless: no transition turns a black right white again.
      if (!ColoringMonotone(state, next)) {
        fail(i, "request for " + ToString(right) + " whitened a black right",
             EventsFor(decision));
      }
      // eventually: requesting a white right is a step that blackens it.
      if (state.coloring.at(right) == Color::kWhite &&
          next.coloring.at(right) != Color::kBlack) {
        fail(i, "request for " + ToString(right) + " left it white",
             EventsFor(decision));
      }
      if (next != state) graph.Add(std::move(next), i, EventsFor(decision));
    }
    if (state.now < instance.horizon) {
      AgentState next = AdvanceTick(state);
      if (Starves(state, next)) continue;
      const Tick now = next.now;
      graph.Add(std::move(next), i, {Ticked{now}});
    }
  }
  verdict.states = graph.size();
  return verdict;
}

nlohmann::ordered_json VerdictToJson(const Verdict& verdict) {
  nlohmann::ordered_json out;
  out["property"] = std::string(ToString(verdict.property));
  out["holds"] = verdict.holds;
  out["reason"] = verdict.reason;
  out["states"] = verdict.states;
  nlohmann::ordered_json lost = nlohmann::ordered_json::array();
  for (const Right& right : verdict.lost) lost.push_back(RightToJson(right));
  out["lost"] = std::move(lost);
  out["warnings"] = verdict.warnings;
  if (verdict.counterexample) {
    nlohmann::ordered_json events = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < verdict.counterexample->size(); ++i) {
      events.push_back(EventToJson((*verdict.counterexample)[i], i));
    }
    out["counterexample"] = std::move(events);
  } else {
    out["counterexample"] = nullptr;
  }
  return out;
}

}  // namespace drmlab
