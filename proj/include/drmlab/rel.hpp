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

// License abstract syntax and its evaluation semantics.
//
// A license is an agreement `about` a set of assets, guarded by a top-level
// constraint, offering a list of permissions of which any one may be
// exercised per request. Constraints form a small algebra (true, count,
// deadline, interval, conjunction); the mutable part of a constraint (how
// many executions remain, when an interval was first used) lives outside the
// license in a ConstraintState keyed by license id and node path, so licenses
// stay immutable values.

#ifndef DRMLAB_REL_HPP
#define DRMLAB_REL_HPP

#include <array>
#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace drmlab {

// Abstract discrete time. 0 is the initial clock value.
using Tick = std::uint32_t;

using LicenseId = std::string;

struct AssetId {
  std::string value;

  auto operator<=>(const AssetId&) const = default;
};

enum class ActionKind { kPlay, kDisplay, kPrint, kExecute };

inline constexpr std::array<ActionKind, 4> kAllActions = {
    ActionKind::kPlay, ActionKind::kDisplay, ActionKind::kPrint,
    ActionKind::kExecute};

std::string_view ToString(ActionKind action);
std::optional<ActionKind> ParseActionKind(std::string_view name);

struct Right {
  AssetId asset;
  ActionKind action = ActionKind::kPlay;

  auto operator<=>(const Right&) const = default;
};

std::string ToString(const Right& right);

// Constraint atoms. A conjunction holds atoms only: nested conjunctions are
// flattened when parsed.
struct AlwaysTrue {
  bool operator==(const AlwaysTrue&) const = default;
};
struct Count {
  std::uint32_t total = 1;
  bool operator==(const Count&) const = default;
};
struct Until {
  Tick deadline = 0;
  bool operator==(const Until&) const = default;
};
struct Interval {
  Tick duration = 1;
  bool operator==(const Interval&) const = default;
};

using Atom = std::variant<AlwaysTrue, Count, Until, Interval>;

struct And {
  std::vector<Atom> parts;
  bool operator==(const And&) const = default;
};

using Constraint = std::variant<AlwaysTrue, Count, Until, Interval, And>;

struct Permission {
  Constraint constraint;
  Right right;

  bool operator==(const Permission&) const = default;
};

struct License {
  LicenseId id;
  std::set<AssetId> about;
  Constraint top;
  std::vector<Permission> permissions;

  bool operator==(const License&) const = default;
};

// Addresses one constraint node inside a license: `scope` is kTopScope for
// the top-level constraint or a permission index; `part` is the index inside
// a conjunction, or kWhole for the node itself.
struct ConstraintPath {
  static constexpr int kTopScope = -1;
  static constexpr int kWhole = -1;

  int scope = kTopScope;
  int part = kWhole;

  static ConstraintPath Top() { return {}; }
  static ConstraintPath OfPermission(std::size_t index) {
    return {static_cast<int>(index), kWhole};
  }
  ConstraintPath Part(std::size_t index) const {
    return {scope, static_cast<int>(index)};
  }

  auto operator<=>(const ConstraintPath&) const = default;
};

std::string ToString(const ConstraintPath& path);

struct NodeKey {
  LicenseId license;
  ConstraintPath path;

  auto operator<=>(const NodeKey&) const = default;
};

// Residue of the stateful constraint nodes: unconsumed executions of each
// Count node and the activation tick of each Interval node.
struct ConstraintState {
  std::map<NodeKey, std::uint32_t> remaining;
  std::map<NodeKey, std::optional<Tick>> first_use;

  bool operator==(const ConstraintState&) const = default;
};

// Adds fresh entries for every Count/Interval node of `license`: remaining
// equal to the Count total, first use unset.
void SeedConstraintState(ConstraintState& state, const License& license);
ConstraintState FreshConstraintState(const std::vector<License>& licenses);

// Visits every stateful atom of `license` with its path.
template <typename Fn>
void ForEachAtom(const License& license, Fn&& fn);

bool EvalConstraint(const Constraint& constraint, const ConstraintState& state,
                    const LicenseId& license, const ConstraintPath& path,
                    Tick now);

// True when the top constraint and the constraint of permission `index`
// both hold at `now`.
bool PermissionHolds(const License& license, std::size_t index,
                     const ConstraintState& state, Tick now);

// Distinct rights mentioned by the license's permissions.
std::set<Right> GrantedRights(const License& license);

// Rights the license can serve at `now` under `state`.
std::set<Right> ServableRights(const License& license,
                               const ConstraintState& state, Tick now);

std::set<Right> PermissionSet(const std::vector<License>& licenses,
                              const ConstraintState& state, Tick now);

bool Permitted(const Right& right, const std::vector<License>& licenses,
               const ConstraintState& state, Tick now);

// Whether some tick t >= now exists at which the license serves `right`
// given the current residue. Walks every node of the top constraint and of
// each permission for `right`.
bool CanEverServe(const License& license, const Right& right,
                  const ConstraintState& state, Tick now);

enum class ConstraintKind { kUntil, kInterval, kCount, kUnconstrained };

std::string_view ToString(ConstraintKind kind);
std::optional<ConstraintKind> ParseConstraintKind(std::string_view name);

// Strict total order over constraint kinds, highest priority first.
class PrecedenceTable {
 public:
  PrecedenceTable();
  // Throws Error(kInvalidArgument) unless `order` is a permutation of the
  // four kinds.
  explicit PrecedenceTable(const std::vector<ConstraintKind>& order);

  static PrecedenceTable Default() { return PrecedenceTable(); }
  // Comma-separated kind names, e.g. "UntilKind,IntervalKind,CountKind,
  // Unconstrained". Whitespace around names is ignored.
  static PrecedenceTable Parse(std::string_view text);

  // Position in the order; 0 is the highest priority.
  std::size_t Rank(ConstraintKind kind) const;
  const std::array<ConstraintKind, 4>& order() const { return order_; }
  std::string ToString() const;

  bool operator==(const PrecedenceTable&) const = default;

 private:
  std::array<ConstraintKind, 4> order_;
};

ConstraintKind DominantConstraint(
    const License& license,
    const PrecedenceTable& table = PrecedenceTable::Default());

// Earliest Until deadline anywhere in the license.
std::optional<Tick> EarliestDeadline(const License& license);

struct Label {
  bool multi = false;
  ConstraintKind dominant = ConstraintKind::kUnconstrained;
  bool last = false;

  bool operator==(const Label&) const = default;
};

Label ComputeLabel(const License& license, const ConstraintState& state,
                   const PrecedenceTable& table = PrecedenceTable::Default());

// Count nodes whose satisfaction every permission of the license depends on:
// a Count in the top constraint, plus the Count of the sole permission when
// the license has exactly one.
std::vector<ConstraintPath> GoverningCountPaths(const License& license);

// ---------------------------------------------------------------------------

namespace internal {

template <typename Fn>
void ForEachAtomOf(const Constraint& constraint, const ConstraintPath& path,
                   Fn& fn) {
  if (const auto* conj = std::get_if<And>(&constraint)) {
    for (std::size_t i = 0; i < conj->parts.size(); ++i) {
      fn(conj->parts[i], path.Part(i));
    }
    return;
  }
  std::visit(
      [&](const auto& node) {
        using T = std::decay_t<decltype(node)>;
        if constexpr (!std::is_same_v<T, And>) fn(Atom(node), path);
      },
      constraint);
}

}  // namespace internal

template <typename Fn>
void ForEachAtom(const License& license, Fn&& fn) {
  internal::ForEachAtomOf(license.top, ConstraintPath::Top(), fn);
  for (std::size_t i = 0; i < license.permissions.size(); ++i) {
    internal::ForEachAtomOf(license.permissions[i].constraint,
                            ConstraintPath::OfPermission(i), fn);
  }
}

}  // namespace drmlab

#endif  // DRMLAB_REL_HPP
