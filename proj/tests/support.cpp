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

#include "support.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <tuple>

#include "drmlab/license_json.hpp"

#ifndef DRMLAB_FIXTURE_DIR
#error "DRMLAB_FIXTURE_DIR must point at tests/fixtures"
#endif

namespace drmlab::testing {

using nlohmann::json;

std::string FixturePath(const std::string& name) {
  return std::string(DRMLAB_FIXTURE_DIR) + "/" + name;
}

std::string ReadFixture(const std::string& name) {
  std::ifstream in(FixturePath(name), std::ios::binary);
  if (!in) throw std::runtime_error("missing fixture " + name);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

License LoadLicense(const std::string& name) {
  return ParseLicense(ReadFixture(name));
}

Instance LoadInstance(const std::string& name) {
  return ParseInstance(ReadFixture(name));
}

Right R(const std::string& asset, ActionKind action) {
  return Right{AssetId{asset}, action};
}

namespace {

const char* const kActionNames[] = {"play", "display", "print", "execute"};

json RandomAtomJson(std::mt19937& rng, int kind) {
  auto pick = [&](int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(rng);
  };
  switch (kind) {
    case 0: return "true";
    case 1: return json{{"count", pick(1, 3)}};
    case 2: return json{{"until", pick(0, 6)}};
    default: return json{{"interval", pick(1, 3)}};
  }
}

json RandomConstraintJson(std::mt19937& rng) {
  const int shape = std::uniform_int_distribution<int>(0, 5)(rng);
  if (shape < 4) return RandomAtomJson(rng, shape);
  // Conjunction of distinct kinds, occasionally with a true part.
  std::vector<int> kinds{1, 2, 3};
  std::shuffle(kinds.begin(), kinds.end(), rng);
  const int n = std::uniform_int_distribution<int>(1, 3)(rng);
  json parts = json::array();
  for (int i = 0; i < n; ++i) parts.push_back(RandomAtomJson(rng, kinds[i]));
  if (std::bernoulli_distribution(0.2)(rng)) parts.push_back("true");
  return json{{"and", parts}};
}

}  // namespace

json RandomLicenseJson(std::mt19937& rng, const std::string& id) {
  const std::vector<std::string> assets{"A", "B", "C"};
  std::set<std::string> about;
  json perms = json::array();
  const int n = std::uniform_int_distribution<int>(1, 4)(rng);
  for (int i = 0; i < n; ++i) {
    const std::string asset =
        assets[std::uniform_int_distribution<int>(0, 2)(rng)];
    about.insert(asset);
    perms.push_back(
        {{"action", kActionNames[std::uniform_int_distribution<int>(0, 3)(rng)]},
         {"asset", asset},
         {"constraint", std::bernoulli_distribution(0.6)(rng)
                            ? json("true")
                            : RandomConstraintJson(rng)}});
  }
  if (std::bernoulli_distribution(0.2)(rng)) about.insert("C");
  return {{"id", id},
          {"about", json(std::vector<std::string>(about.begin(), about.end()))},
          {"top", RandomConstraintJson(rng)},
          {"permissions", perms}};
}

License RandomLicense(std::mt19937& rng, const std::string& id) {
  return LicenseFromJson(RandomLicenseJson(rng, id));
}

ConstraintState RandomResidue(std::mt19937& rng,
                              const std::vector<License>& licenses,
                              Tick max_now) {
  ConstraintState state = FreshConstraintState(licenses);
  for (auto& [key, remaining] : state.remaining) {
    remaining = std::uniform_int_distribution<std::uint32_t>(0, remaining)(rng);
  }
  for (auto& [key, first] : state.first_use) {
    if (std::bernoulli_distribution(0.5)(rng)) {
      first = std::uniform_int_distribution<Tick>(0, max_now)(rng);
    }
  }
  return state;
}

std::vector<AgentState> RandomWalk(std::mt19937& rng, const Instance& instance,
                                   const Chooser& choose, std::size_t steps) {
  std::vector<AgentState> states{InitialState(instance)};
  for (std::size_t i = 0; i < steps; ++i) {
    const AgentState& s = states.back();
    std::vector<Right> rights;
    for (const Right& r : UsableRights(s)) rights.push_back(r);
    const bool can_tick = s.now < instance.horizon;
    if (rights.empty() && !can_tick) break;
    const std::size_t last = can_tick ? rights.size() : rights.size() - 1;
    const std::size_t pick =
        std::uniform_int_distribution<std::size_t>(0, last)(rng);
    if (pick == rights.size()) {
      states.push_back(AdvanceTick(s));
    } else {
      states.push_back(Request(s, rights[pick], choose).first);
    }
  }
  return states;
}

// ---------------------------------------------------------------------------
// permissionSet oracle

namespace {

struct OracleResidue {
  const ConstraintState& state;

  std::uint32_t Remaining(const std::string& id, int scope, int part) const {
    for (const auto& [key, value] : state.remaining) {
      if (key.license == id && key.path.scope == scope &&
          key.path.part == part) {
        return value;
      }
    }
    throw std::runtime_error("oracle: no count residue for " + id);
  }

  std::optional<Tick> FirstUse(const std::string& id, int scope,
                               int part) const {
    for (const auto& [key, value] : state.first_use) {
      if (key.license == id && key.path.scope == scope &&
          key.path.part == part) {
        return value;
      }
    }
    throw std::runtime_error("oracle: no interval residue for " + id);
  }
};

bool OracleAtom(const json& node, const OracleResidue& residue,
                const std::string& id, int scope, int part, Tick now) {
  if (node.is_string()) return true;
  if (node.contains("count")) return residue.Remaining(id, scope, part) != 0;
  if (node.contains("until")) return now <= node["until"].get<Tick>();
  if (node.contains("interval")) {
    const auto first = residue.FirstUse(id, scope, part);
    return !first || now <= *first + node["interval"].get<Tick>();
  }
  throw std::runtime_error("oracle: unexpected node " + node.dump());
}

void FlattenParts(const json& node, std::vector<json>& out) {
  for (const json& part : node["and"]) {
    if (part.is_object() && part.contains("and")) {
      FlattenParts(part, out);
    } else {
      out.push_back(part);
    }
  }
}

bool OracleNode(const json& node, const OracleResidue& residue,
                const std::string& id, int scope, Tick now) {
  if (node.is_object() && node.contains("and")) {
    std::vector<json> parts;
    FlattenParts(node, parts);
    bool all = true;
    for (std::size_t i = 0; i < parts.size(); ++i) {
      // Every part is evaluated so that missing residue is never masked.
      all = OracleAtom(parts[i], residue, id, scope, static_cast<int>(i), now) &&
            all;
    }
    return all;
  }
  return OracleAtom(node, residue, id, scope, -1, now);
}

}  // namespace

std::set<Right> OraclePermissionSet(const std::vector<json>& docs,
                                    const ConstraintState& state, Tick now) {
  OracleResidue residue{state};
  std::set<Right> out;
  for (const json& doc : docs) {
    const std::string id = doc["id"];
    const bool top = OracleNode(doc["top"], residue, id, -1, now);
    const json& perms = doc["permissions"];
    for (std::size_t i = 0; i < perms.size(); ++i) {
      const bool own =
          OracleNode(perms[i]["constraint"], residue, id, static_cast<int>(i), now);
      if (!top || !own) continue;
      const std::string action = perms[i]["action"];
      for (std::size_t a = 0; a < 4; ++a) {
        if (action == kActionNames[a]) {
          out.insert(Right{AssetId{perms[i]["asset"]}, kAllActions[a]});
        }
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Corpus size oracle

std::uint64_t OracleCorpusSize(const CorpusBounds& b) {
  // Top constraints per license: true, count k, until d, interval d,
  // count and until, count and interval.
  const std::uint64_t tops = 1 + b.max_count + 2ull * b.max_deadline +
                             2ull * b.max_count * b.max_deadline;
  const std::uint32_t assets = b.max_assets;
  const std::uint32_t actions = b.max_actions;
  const std::uint32_t cells = assets * actions;
  const std::uint32_t masks = (1u << cells);
  const std::uint32_t k = b.max_licenses;

  std::vector<std::uint32_t> sigma(assets);
  std::iota(sigma.begin(), sigma.end(), 0u);
  std::uint64_t group = 0;
  std::uint64_t fixed_total = 0;
  do {
    std::vector<std::uint32_t> tau(actions);
    std::iota(tau.begin(), tau.end(), 0u);
    do {
      ++group;
      auto image = [&](std::uint32_t mask) {
        std::uint32_t out = 0;
        for (std::uint32_t a = 0; a < assets; ++a) {
          for (std::uint32_t c = 0; c < actions; ++c) {
            if (mask & (1u << (a * actions + c))) {
              out |= 1u << (sigma[a] * actions + tau[c]);
            }
          }
        }
        return out;
      };
      // Cycle type of the induced permutation on non-empty masks; each
      // cycle appears once per top constraint.
      std::vector<bool> seen(masks, false);
      std::vector<std::uint64_t> poly(k + 1, 0);  // multisets by size
      poly[0] = 1;
      for (std::uint32_t m = 1; m < masks; ++m) {
        if (seen[m]) continue;
        std::uint32_t len = 0;
        for (std::uint32_t x = m; !seen[x]; x = image(x)) {
          seen[x] = true;
          ++len;
        }
        for (std::uint64_t t = 0; t < tops; ++t) {
          // Multiply by 1 / (1 - z^len).
          for (std::uint32_t d = len; d <= k; ++d) poly[d] += poly[d - len];
        }
      }
      for (std::uint32_t d = 1; d <= k; ++d) fixed_total += poly[d];
    } while (std::next_permutation(tau.begin(), tau.end()));
  } while (std::next_permutation(sigma.begin(), sigma.end()));
  return fixed_total / group;
}

// ---------------------------------------------------------------------------
// Trace oracle

Instance OracleTraceInstance() {
  return ParseInstance(R"({"id":"oracle","horizon":3,"licenses":[
    {"id":"L1","about":["A","B"],"top":{"count":2},"permissions":[
      {"action":"play","asset":"A","constraint":"true"},
      {"action":"play","asset":"B","constraint":"true"}]},
    {"id":"L2","about":["A"],"top":{"until":1},"permissions":[
      {"action":"play","asset":"A","constraint":"true"}]}]})");
}

namespace {

struct Mini {
  int count = 2;  // L1 residue
  int now = 0;
  bool black_a = false;
  bool black_b = false;

  auto Tie() const { return std::tie(count, now, black_a, black_b); }
  bool operator==(const Mini& o) const { return Tie() == o.Tie(); }

  bool L2Alive() const { return now <= 1; }
  bool CanA() const { return count > 0 || L2Alive(); }
  bool CanB() const { return count > 0; }
  bool WhiteUsable() const {
    return (CanA() && !black_a) || (CanB() && !black_b);
  }

  Mini Serve(char right) const {
    Mini next = *this;
    if (right == 'A' && L2Alive()) {  // until outranks count
      next.black_a = true;
      return next;
    }
    const bool sole = right == 'B' || !L2Alive();
    next.count -= 1;
    if (right == 'A') next.black_a = true;
    if (right == 'B') next.black_b = true;
    if (next.count == 0 && sole) next.black_a = next.black_b = true;
    return next;
  }
};

void Walk(const Mini& s, std::string path, bool fair,
          std::set<std::string>& out) {
  const int horizon = 3;
  const bool terminal = fair ? (s.now >= horizon || !s.WhiteUsable())
                             : (s.now >= horizon || (!s.CanA() && !s.CanB()));
  if (terminal) {
    if (!fair || !s.WhiteUsable()) out.insert(path);
    return;
  }
  for (char r : {'A', 'B'}) {
    const bool usable = r == 'A' ? s.CanA() : s.CanB();
    const bool white = r == 'A' ? !s.black_a : !s.black_b;
    if (!usable || (fair && !white)) continue;
    const Mini next = s.Serve(r);
    if (next == s) continue;
    Walk(next, path + r, fair, out);
  }
  if (s.now < horizon) {
    Mini next = s;
    ++next.now;
    if (fair) {
      const bool lost_a = s.CanA() && !s.black_a && !next.CanA();
      const bool lost_b = s.CanB() && !s.black_b && !next.CanB();
      if (lost_a || lost_b) return;
    }
    Walk(next, path + 't', fair, out);
  }
}

}  // namespace

std::set<std::string> OracleTraces(bool fair_only) {
  std::set<std::string> out;
  Walk(Mini{}, "", fair_only, out);
  return out;
}

std::string RenderSteps(const Trace& trace) {
  std::string out;
  for (const Event& e : trace) {
    if (const auto* req = std::get_if<Requested>(&e)) {
      out += req->decision.request.asset.value;
    } else if (std::holds_alternative<Ticked>(e)) {
      out += 't';
    }
  }
  return out;
}

}  // namespace drmlab::testing
