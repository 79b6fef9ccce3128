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

// Shared test helpers: fixtures, random generators and reference oracles.
// The oracles deliberately avoid the library's evaluation code so they can
// act as independent witnesses.

#ifndef DRMLAB_TESTS_SUPPORT_HPP
#define DRMLAB_TESTS_SUPPORT_HPP

#include <cstdint>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "drmlab/agent.hpp"
#include "drmlab/rel.hpp"
#include "drmlab/verifier.hpp"
#include "json.hpp"

namespace drmlab::testing {

std::string FixturePath(const std::string& name);
std::string ReadFixture(const std::string& name);
License LoadLicense(const std::string& name);
Instance LoadInstance(const std::string& name);

Right R(const std::string& asset, ActionKind action = ActionKind::kPlay);

// Random license document over assets A..C and all four actions, with
// constraints on the top node and on permissions.
nlohmann::json RandomLicenseJson(std::mt19937& rng, const std::string& id);

// RandomLicenseJson parsed by the library.
License RandomLicense(std::mt19937& rng, const std::string& id);

// Random residue for `licenses`: every node present, counts anywhere in
// [0, total], intervals started or not.
ConstraintState RandomResidue(std::mt19937& rng,
                              const std::vector<License>& licenses,
                              Tick max_now);

// Walks `steps` random transitions (requests and ticks) from the installed
// state, collecting every visited state.
std::vector<AgentState> RandomWalk(std::mt19937& rng, const Instance& instance,
                                   const Chooser& choose, std::size_t steps);

// permissionSet computed straight from the JSON documents: every node of
// every constraint is re-read and evaluated here.
std::set<Right> OraclePermissionSet(const std::vector<nlohmann::json>& docs,
                                    const ConstraintState& state, Tick now);

// Number of instances within `bounds` up to asset/action renaming, counted
// with Burnside's lemma over the same license grammar the generator uses.
std::uint64_t OracleCorpusSize(const CorpusBounds& bounds);

// Maximal runs of the instance
//   L1 about {A,B}, top count 2, permissions play A, play B
//   L2 about {A},   top until 1, permission play A
// with horizon 3 and the dominant-constraint chooser, rendered as strings of
// "A", "B" and "t" (tick). Written against a hand-rolled model of the agent.
std::set<std::string> OracleTraces(bool fair_only);
Instance OracleTraceInstance();

// The same rendering for library traces.
std::string RenderSteps(const Trace& trace);

}  // namespace drmlab::testing

#endif  // DRMLAB_TESTS_SUPPORT_HPP
