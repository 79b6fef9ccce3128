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

#include "drmlab/rel.hpp"

#include <algorithm>
#include <cctype>

#include "drmlab/errors.hpp"

namespace drmlab {

std::string_view ToString(ErrorCode code) {
  switch (code) {
    case ErrorCode::kParse: return "parse";
    case ErrorCode::kValidation: return "validation";
    case ErrorCode::kMissingState: return "missing-state";
    case ErrorCode::kDuplicateId: return "duplicate-id";
    case ErrorCode::kNotPermitted: return "not-permitted";
    case ErrorCode::kUndefinedRight: return "undefined-right";
    case ErrorCode::kEmptyCandidates: return "empty-candidates";
    case ErrorCode::kCapExceeded: return "cap-exceeded";
    case ErrorCode::kBoundsTooLarge: return "bounds-too-large";
    case ErrorCode::kInvalidArgument: return "invalid-argument";
  }
  return "unknown";
}

std::string_view ToString(ActionKind action) {
  switch (action) {
    case ActionKind::kPlay: return "play";
    case ActionKind::kDisplay: return "display";
    case ActionKind::kPrint: return "print";
    case ActionKind::kExecute: return "execute";
  }
  return "play";
}

std::optional<ActionKind> ParseActionKind(std::string_view name) {
  for (ActionKind action : kAllActions) {
    if (ToString(action) == name) return action;
  }
  return std::nullopt;
}

std::string ToString(const Right& right) {
  return "(" + right.asset.value + "," + std::string(ToString(right.action)) +
         ")";
}

std::string ToString(const ConstraintPath& path) {
  std::string out = path.scope == ConstraintPath::kTopScope
                        ? std::string("top")
                        : "permissions/" + std::to_string(path.scope);
  if (path.part != ConstraintPath::kWhole) {
    out += "/" + std::to_string(path.part);
  }
  return out;
}

void SeedConstraintState(ConstraintState& state, const License& license) {
  ForEachAtom(license, [&](const Atom& atom, const ConstraintPath& path) {
    NodeKey key{license.id, path};
    if (const auto* count = std::get_if<Count>(&atom)) {
      state.remaining[key] = count->total;
    } else if (std::holds_alternative<Interval>(atom)) {
      state.first_use[key] = std::nullopt;
    }
  });
}

ConstraintState FreshConstraintState(const std::vector<License>& licenses) {
  ConstraintState state;
  for (const License& license : licenses) SeedConstraintState(state, license);
  return state;
}

namespace {

[[noreturn]] void ThrowMissing(const NodeKey& key) {
  throw Error(ErrorCode::kMissingState, "no constraint state for license '" +
                                            key.license + "' at " +
                                            ToString(key.path));
}

bool EvalAtom(const Atom& atom, const ConstraintState& state,
              const NodeKey& key, Tick now) {
  return std::visit(
      [&](const auto& node) -> bool {
        using T = std::decay_t<decltype(node)>;
        if constexpr (std::is_same_v<T, AlwaysTrue>) {
          return true;
        } else if constexpr (std::is_same_v<T, Count>) {
          auto it = state.remaining.find(key);
          if (it == state.remaining.end()) ThrowMissing(key);
          return it->second > 0;
        } else if constexpr (std::is_same_v<T, Until>) {
          return now <= node.deadline;
        } else {
          auto it = state.first_use.find(key);
          if (it == state.first_use.end()) ThrowMissing(key);
          return !it->second.has_value() ||
                 static_cast<std::uint64_t>(now) <=
                     static_cast<std::uint64_t>(*it->second) + node.duration;
        }
      },
      atom);
}

}  // namespace

bool EvalConstraint(const Constraint& constraint, const ConstraintState& state,
                    const LicenseId& license, const ConstraintPath& path,
                    Tick now) {
  bool holds = true;
  // Every part is visited even after a false one so that missing state is
  // reported regardless of evaluation order.
  auto visit = [&](const Atom& atom, const ConstraintPath& at) {
    holds = EvalAtom(atom, state, NodeKey{license, at}, now) && holds;
  };
  internal::ForEachAtomOf(constraint, path, visit);
  return holds;
}

bool PermissionHolds(const License& license, std::size_t index,
                     const ConstraintState& state, Tick now) {
  return EvalConstraint(license.top, state, license.id, ConstraintPath::Top(),
                        now) &&
         EvalConstraint(license.permissions[index].constraint, state,
                        license.id, ConstraintPath::OfPermission(index), now);
}

std::set<Right> GrantedRights(const License& license) {
  std::set<Right> rights;
  for (const Permission& p : license.permissions) rights.insert(p.right);
  return rights;
}

std::set<Right> ServableRights(const License& license,
                               const ConstraintState& state, Tick now) {
  std::set<Right> rights;
  if (!EvalConstraint(license.top, state, license.id, ConstraintPath::Top(),
                      now)) {
    return rights;
  }
  for (std::size_t i = 0; i < license.permissions.size(); ++i) {
    const Permission& p = license.permissions[i];
    if (EvalConstraint(p.constraint, state, license.id,
                       ConstraintPath::OfPermission(i), now)) {
      rights.insert(p.right);
    }
  }
  return rights;
}

std::set<Right> PermissionSet(const std::vector<License>& licenses,
                              const ConstraintState& state, Tick now) {
  std::set<Right> result;
  for (const License& license : licenses) {
    result.merge(ServableRights(license, state, now));
  }
  return result;
}

bool Permitted(const Right& right, const std::vector<License>& licenses,
               const ConstraintState& state, Tick now) {
  return PermissionSet(licenses, state, now).contains(right);
}

namespace {

// Time atoms are upper bounds, so a window open at some t >= now is open at
// now; counts never replenish.
bool AtomSatisfiableFrom(const Atom& atom, const ConstraintState& state,
                         const NodeKey& key, Tick now) {
  if (const auto* until = std::get_if<Until>(&atom)) {
    return now <= until->deadline;
  }
  if (const auto* interval = std::get_if<Interval>(&atom)) {
    auto it = state.first_use.find(key);
    if (it == state.first_use.end()) ThrowMissing(key);
    if (!it->second) return true;
    return static_cast<std::uint64_t>(*it->second) + interval->duration >=
           now;
  }
  if (std::holds_alternative<Count>(atom)) {
    auto it = state.remaining.find(key);
    if (it == state.remaining.end()) ThrowMissing(key);
    return it->second > 0;
  }
  return true;
}

bool SatisfiableFrom(const Constraint& constraint, const ConstraintState& state,
                     const LicenseId& license, const ConstraintPath& path,
                     Tick now) {
  bool ok = true;
  auto visit = [&](const Atom& atom, const ConstraintPath& at) {
    ok = AtomSatisfiableFrom(atom, state, NodeKey{license, at}, now) && ok;
  };
  internal::ForEachAtomOf(constraint, path, visit);
  return ok;
}

}  // namespace

bool CanEverServe(const License& license, const Right& right,
                  const ConstraintState& state, Tick now) {
  if (!SatisfiableFrom(license.top, state, license.id, ConstraintPath::Top(),
                       now)) {
    return false;
  }
  for (std::size_t i = 0; i < license.permissions.size(); ++i) {
    const Permission& p = license.permissions[i];
    if (p.right == right &&
        SatisfiableFrom(p.constraint, state, license.id,
                        ConstraintPath::OfPermission(i), now)) {
      return true;
    }
  }
  return false;
}

std::string_view ToString(ConstraintKind kind) {
  switch (kind) {
    case ConstraintKind::kUntil: return "UntilKind";
    case ConstraintKind::kInterval: return "IntervalKind";
    case ConstraintKind::kCount: return "CountKind";
    case ConstraintKind::kUnconstrained: return "Unconstrained";
  }
  return "Unconstrained";
}

std::optional<ConstraintKind> ParseConstraintKind(std::string_view name) {
  std::string lower;
  for (char c : name) {
    lower.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  }
  if (lower == "untilkind" || lower == "until") return ConstraintKind::kUntil;
  if (lower == "intervalkind" || lower == "interval") {
    return ConstraintKind::kInterval;
  }
  if (lower == "countkind" || lower == "count") return ConstraintKind::kCount;
  if (lower == "unconstrained" || lower == "true") {
    return ConstraintKind::kUnconstrained;
  }
  return std::nullopt;
}

PrecedenceTable::PrecedenceTable()
    : order_{ConstraintKind::kUntil, ConstraintKind::kInterval,
             ConstraintKind::kCount, ConstraintKind::kUnconstrained} {}

PrecedenceTable::PrecedenceTable(const std::vector<ConstraintKind>& order) {
  if (order.size() != order_.size()) {
    throw Error(ErrorCode::kInvalidArgument,
                "precedence must list exactly four constraint kinds");
  }
  std::set<ConstraintKind> seen(order.begin(), order.end());
  if (seen.size() != order.size()) {
    throw Error(ErrorCode::kInvalidArgument,
                "precedence must not repeat a constraint kind");
  }
  std::copy(order.begin(), order.end(), order_.begin());
}

PrecedenceTable PrecedenceTable::Parse(std::string_view text) {
  std::vector<ConstraintKind> order;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t comma = text.find(',', start);
    if (comma == std::string_view::npos) comma = text.size();
    std::string_view name = text.substr(start, comma - start);
    while (!name.empty() && std::isspace(static_cast<unsigned char>(name.front()))) {
      name.remove_prefix(1);
    }
    while (!name.empty() && std::isspace(static_cast<unsigned char>(name.back()))) {
      name.remove_suffix(1);
    }
    auto kind = ParseConstraintKind(name);
    if (!kind) {
      throw Error(ErrorCode::kInvalidArgument,
                  "unknown constraint kind '" + std::string(name) + "'");
    }
    order.push_back(*kind);
    start = comma + 1;
  }
  return PrecedenceTable(order);
}

std::size_t PrecedenceTable::Rank(ConstraintKind kind) const {
  return static_cast<std::size_t>(
      std::find(order_.begin(), order_.end(), kind) - order_.begin());
}

std::string PrecedenceTable::ToString() const {
  std::string out;
  for (ConstraintKind kind : order_) {
    if (!out.empty()) out += ",";
    out += drmlab::ToString(kind);
  }
  return out;
}

namespace {

std::optional<ConstraintKind> KindOf(const Atom& atom) {
  if (std::holds_alternative<Until>(atom)) return ConstraintKind::kUntil;
  if (std::holds_alternative<Interval>(atom)) return ConstraintKind::kInterval;
  if (std::holds_alternative<Count>(atom)) return ConstraintKind::kCount;
  return std::nullopt;
}

}  // namespace

ConstraintKind DominantConstraint(const License& license,
                                  const PrecedenceTable& table) {
  ConstraintKind best = ConstraintKind::kUnconstrained;
  bool any = false;
  ForEachAtom(license, [&](const Atom& atom, const ConstraintPath&) {
    auto kind = KindOf(atom);
    if (!kind) return;
    if (!any || table.Rank(*kind) < table.Rank(best)) best = *kind;
    any = true;
  });
  return best;
}

std::optional<Tick> EarliestDeadline(const License& license) {
  std::optional<Tick> earliest;
  ForEachAtom(license, [&](const Atom& atom, const ConstraintPath&) {
    if (const auto* until = std::get_if<Until>(&atom)) {
      if (!earliest || until->deadline < *earliest) earliest = until->deadline;
    }
  });
  return earliest;
}

std::vector<ConstraintPath> GoverningCountPaths(const License& license) {
  std::vector<ConstraintPath> paths;
  auto collect = [&](const Atom& atom, const ConstraintPath& path) {
    if (std::holds_alternative<Count>(atom)) paths.push_back(path);
  };
  internal::ForEachAtomOf(license.top, ConstraintPath::Top(), collect);
  if (license.permissions.size() == 1) {
    internal::ForEachAtomOf(license.permissions.front().constraint,
                            ConstraintPath::OfPermission(0), collect);
  }
  return paths;
}

Label ComputeLabel(const License& license, const ConstraintState& state,
                   const PrecedenceTable& table) {
  Label label;
  label.multi = GrantedRights(license).size() > 1;
  label.dominant = DominantConstraint(license, table);
  for (const ConstraintPath& path : GoverningCountPaths(license)) {
    auto it = state.remaining.find(NodeKey{license.id, path});
    if (it == state.remaining.end()) ThrowMissing(NodeKey{license.id, path});
    if (it->second == 1) label.last = true;
  }
  return label;
}

}  // namespace drmlab
