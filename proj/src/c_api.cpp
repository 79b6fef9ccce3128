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

#include "drmlab/drmlab.h"

#include <cstdlib>
#include <cstring>
#include <sstream>
#include <string>
#include <vector>

#include "drmlab/agent.hpp"
#include "drmlab/choosers.hpp"
#include "drmlab/config.hpp"
#include "drmlab/errors.hpp"
#include "drmlab/license_json.hpp"
#include "drmlab/verifier.hpp"

struct drm_config {
  drmlab::Config config;
};

struct drm_license_set {
  std::vector<drmlab::License> licenses;
};

struct drm_agent {
  drmlab::Simulation simulation;
  drmlab::Chooser choose;
};

namespace {

thread_local std::string g_last_error;

drm_status StatusOf(drmlab::ErrorCode code) {
  using drmlab::ErrorCode;
  switch (code) {
    case ErrorCode::kParse: return DRM_ERR_PARSE;
    case ErrorCode::kValidation: return DRM_ERR_VALIDATION;
    case ErrorCode::kMissingState: return DRM_ERR_MISSING_STATE;
    case ErrorCode::kDuplicateId: return DRM_ERR_DUPLICATE_ID;
    case ErrorCode::kNotPermitted: return DRM_ERR_NOT_PERMITTED;
    case ErrorCode::kUndefinedRight: return DRM_ERR_UNDEFINED_RIGHT;
    case ErrorCode::kEmptyCandidates: return DRM_ERR_EMPTY_CANDIDATES;
    case ErrorCode::kCapExceeded: return DRM_ERR_CAP_EXCEEDED;
    case ErrorCode::kBoundsTooLarge: return DRM_ERR_BOUNDS_TOO_LARGE;
    case ErrorCode::kInvalidArgument: return DRM_ERR_INVALID_ARGUMENT;
  }
  return DRM_ERR_INTERNAL;
}

drm_status Fail(drm_status status, std::string message) {
  g_last_error = std::move(message);
  return status;
}

// Runs `body`, translating exceptions into status codes.
template <typename Body>
drm_status Guard(Body&& body) {
  try {
    body();
    return DRM_OK;
  } catch (const drmlab::Error& e) {
    return Fail(StatusOf(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return Fail(DRM_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return Fail(DRM_ERR_INTERNAL, e.what());
  }
}

char* Dup(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void Emit(char** out, const std::string& s) {
  if (out != nullptr) *out = Dup(s);
}

void Require(const void* p, const char* what) {
  if (p == nullptr) {
    throw drmlab::Error(drmlab::ErrorCode::kInvalidArgument,
                        std::string(what) + " must not be NULL");
  }
}

drmlab::Right MakeRight(const char* asset, const char* action) {
  Require(asset, "asset");
  Require(action, "action");
  if (*asset == '\0') {
    throw drmlab::Error(drmlab::ErrorCode::kInvalidArgument,
                        "asset must be non-empty");
  }
  auto kind = drmlab::ParseActionKind(action);
  if (!kind) {
    throw drmlab::Error(drmlab::ErrorCode::kInvalidArgument,
                        std::string("unknown action '") + action + "'");
  }
  return drmlab::Right{drmlab::AssetId{asset}, *kind};
}

drmlab::License ParseWithSource(const char* json, const char* source) {
  Require(json, "json");
  try {
    return drmlab::ParseLicense(json);
  } catch (const drmlab::Error& e) {
    if (source == nullptr) throw;
    throw drmlab::Error(e.code(), std::string(source) + ": " + e.what());
  }
}

drmlab::AgentState Installed(const drm_license_set* set) {
  drmlab::AgentState state = drmlab::InitAgent();
  for (const drmlab::License& l : set->licenses) state = drmlab::Install(state, l);
  return state;
}

void EmitReport(const drmlab::Report& report, char** json, char** text) {
  Emit(json, drmlab::ReportToJson(report).dump(2) + "\n");
  Emit(text, drmlab::ReportToText(report));
}

}  // namespace

extern "C" {

const char* drm_last_error(void) { return g_last_error.c_str(); }

const char* drm_status_name(drm_status status) {
  switch (status) {
    case DRM_OK: return "ok";
    case DRM_ERR_PARSE: return "parse";
    case DRM_ERR_VALIDATION: return "validation";
    case DRM_ERR_MISSING_STATE: return "missing-state";
    case DRM_ERR_DUPLICATE_ID: return "duplicate-id";
    case DRM_ERR_NOT_PERMITTED: return "not-permitted";
    case DRM_ERR_UNDEFINED_RIGHT: return "undefined-right";
    case DRM_ERR_EMPTY_CANDIDATES: return "empty-candidates";
    case DRM_ERR_CAP_EXCEEDED: return "cap-exceeded";
    case DRM_ERR_BOUNDS_TOO_LARGE: return "bounds-too-large";
    case DRM_ERR_INVALID_ARGUMENT: return "invalid-argument";
    case DRM_ERR_INTERNAL: return "internal";
  }
  return "unknown";
}

void drm_free(char* str) { std::free(str); }

drm_status drm_config_new(drm_config** out) {
  return Guard([&] {
    Require(out, "out");
    *out = new drm_config{};
  });
}

void drm_config_free(drm_config* config) { delete config; }

drm_status drm_config_load(drm_config* config, const char* text,
                           const char* source) {
  return Guard([&] {
    Require(config, "config");
    Require(text, "text");
    config->config.Merge(text, source != nullptr ? source : "config");
  });
}

drm_status drm_config_set(drm_config* config, const char* key,
                          const char* value) {
  return Guard([&] {
    Require(config, "config");
    Require(key, "key");
    Require(value, "value");
    config->config.Set(key, value);
  });
}

drm_status drm_config_get(const drm_config* config, const char* key,
                          char** out) {
  return Guard([&] {
    Require(config, "config");
    Require(key, "key");
    Require(out, "out");
    *out = Dup(config->config.Get(key));
  });
}

drm_status drm_license_canonical(const char* json, char** out) {
  return Guard([&] {
    Require(out, "out");
    *out = Dup(drmlab::SerializeLicense(ParseWithSource(json, nullptr)));
  });
}

drm_status drm_license_set_new(drm_license_set** out) {
  return Guard([&] {
    Require(out, "out");
    *out = new drm_license_set{};
  });
}

void drm_license_set_free(drm_license_set* set) { delete set; }

drm_status drm_license_set_add(drm_license_set* set, const char* json,
                               const char* source) {
  return Guard([&] {
    Require(set, "set");
    drmlab::License license = ParseWithSource(json, source);
    for (const drmlab::License& l : set->licenses) {
      if (l.id == license.id) {
        throw drmlab::Error(
            drmlab::ErrorCode::kDuplicateId,
            (source != nullptr ? std::string(source) + ": " : std::string()) +
                "duplicate license id '" + license.id + "'");
      }
    }
    set->licenses.push_back(std::move(license));
  });
}

size_t drm_license_set_size(const drm_license_set* set) {
  return set == nullptr ? 0 : set->licenses.size();
}

drm_status drm_license_set_get(const drm_license_set* set, size_t index,
                               char** out) {
  return Guard([&] {
    Require(set, "set");
    Require(out, "out");
    if (index >= set->licenses.size()) {
      throw drmlab::Error(drmlab::ErrorCode::kInvalidArgument,
                          "license index out of range");
    }
    *out = Dup(drmlab::SerializeLicense(set->licenses[index]));
  });
}

drm_status drm_permitted(const drm_license_set* set, const char* asset,
                         const char* action, uint32_t now, int* permitted) {
  return Guard([&] {
    Require(set, "set");
    Require(permitted, "permitted");
    const drmlab::Right right = MakeRight(asset, action);
    *permitted = drmlab::Permitted(
                     right, set->licenses,
                     drmlab::FreshConstraintState(set->licenses), now)
                     ? 1
                     : 0;
  });
}

drm_status drm_permission_set(const drm_license_set* set, uint32_t now,
                              char** out) {
  return Guard([&] {
    Require(set, "set");
    Require(out, "out");
    nlohmann::ordered_json rights = nlohmann::ordered_json::array();
    for (const drmlab::Right& r : drmlab::PermissionSet(
             set->licenses, drmlab::FreshConstraintState(set->licenses), now)) {
      rights.push_back(drmlab::RightToJson(r));
    }
    *out = Dup(rights.dump());
  });
}

drm_status drm_choose(const drm_license_set* set, const drm_config* config,
                      const char* asset, const char* action, char** out) {
  return Guard([&] {
    Require(set, "set");
    Require(config, "config");
    Require(out, "out");
    const drmlab::Right right = MakeRight(asset, action);
    const drmlab::Config& cfg = config->config;
    const drmlab::AgentState state = Installed(set);
    const std::set<drmlab::LicenseId> candidates = drmlab::Usable(state, right);
    if (candidates.empty()) {
      throw drmlab::Error(drmlab::ErrorCode::kNotPermitted,
                          "no installed license permits " +
                              drmlab::ToString(right));
    }
    const drmlab::LicenseId chosen =
        drmlab::MakeChooser(cfg.chooser, cfg.precedence)(candidates, state);
    const drmlab::License& license = *state.licenses.at(chosen);
    const drmlab::Label label =
        drmlab::ComputeLabel(license, state.constraints, cfg.precedence);
    nlohmann::ordered_json doc;
    doc["algo"] = std::string(drmlab::ToString(cfg.chooser));
    doc["request"] = drmlab::RightToJson(right);
    doc["candidates"] = candidates;
    doc["chosen"] = chosen;
    doc["label"] = {{"multi", label.multi},
                    {"dominant", std::string(drmlab::ToString(label.dominant))},
                    {"last", label.last}};
    doc["penalized"] = label.multi && label.last;
    *out = Dup(doc.dump());
  });
}

drm_status drm_simulate(const drm_license_set* set, const drm_config* config,
                        const char* script, const char* source, char** trace,
                        size_t* rejected) {
  return Guard([&] {
    Require(set, "set");
    Require(config, "config");
    Require(script, "script");
    const std::string where = source != nullptr ? source : "script";
    const drmlab::Chooser choose =
        drmlab::MakeChooser(config->config.chooser, config->config.precedence);

    // Parse the whole script before running anything.
    struct Command {
      bool tick;
      drmlab::Right right;
    };
    std::vector<Command> commands;
    std::istringstream in{std::string(script)};
    std::string line;
    for (std::size_t line_no = 1; std::getline(in, line); ++line_no) {
      if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
      std::istringstream words(line);
      std::vector<std::string> w;
      for (std::string word; words >> word;) w.push_back(word);
      if (w.empty()) continue;
      auto bad = [&](const std::string& why) {
        return drmlab::Error(drmlab::ErrorCode::kParse,
                             where + ":" + std::to_string(line_no) + ": " + why);
      };
      if (w[0] == "tick" && w.size() == 1) {
        commands.push_back({true, {}});
      } else if (w[0] == "request" && w.size() == 3) {
        auto kind = drmlab::ParseActionKind(w[2]);
        if (!kind) throw bad("unknown action '" + w[2] + "'");
        commands.push_back({false, {drmlab::AssetId{w[1]}, *kind}});
      } else {
        throw bad("expected 'request <asset> <action>' or 'tick'");
      }
    }

    drmlab::Simulation sim;
    for (const drmlab::License& l : set->licenses) sim.Install(l);
    for (const Command& c : commands) {
      if (c.tick) {
        sim.AdvanceTick();
      } else {
        sim.Request(c.right, choose);
      }
    }
    Emit(trace, drmlab::TraceToJsonLines(sim.trace()));
    if (rejected != nullptr) *rejected = sim.rejected();
  });
}

drm_status drm_verify(const drm_license_set* set, const drm_config* config,
                      const char* property, char** verdict, char** trace,
                      int* holds) {
  return Guard([&] {
    Require(set, "set");
    Require(config, "config");
    Require(property, "property");
    const drmlab::Config& cfg = config->config;
    auto prop = drmlab::ParseProperty(property);
    if (!prop) {
      throw drmlab::Error(drmlab::ErrorCode::kInvalidArgument,
                          std::string("unknown property '") + property + "'");
    }
    if (set->licenses.empty()) {
      throw drmlab::Error(drmlab::ErrorCode::kInvalidArgument,
                          "at least one license is required");
    }
    drmlab::Instance instance{"licenses", set->licenses, cfg.horizon};
    const drmlab::Chooser choose =
        drmlab::MakeChooser(cfg.chooser, cfg.precedence);
    const drmlab::Verdict result =
        *prop == drmlab::Property::kSafety
            ? drmlab::CheckSafety(instance, choose, cfg.state_cap)
            : drmlab::CheckLiveness(instance, choose, cfg.state_cap);
    nlohmann::ordered_json doc;
    doc["algo"] = std::string(drmlab::ToString(cfg.chooser));
    doc["horizon"] = cfg.horizon;
    doc.update(drmlab::VerdictToJson(result));
    Emit(verdict, doc.dump() + "\n");
    Emit(trace, result.counterexample
                    ? drmlab::TraceToJsonLines(*result.counterexample)
                    : std::string());
    if (holds != nullptr) *holds = result.holds ? 1 : 0;
  });
}

drm_status drm_compare_bounds(const drm_config* config, char** report_json,
                              char** report_text) {
  return Guard([&] {
    Require(config, "config");
    const drmlab::Config& cfg = config->config;
    auto corpus = drmlab::GenerateCorpus(cfg.bounds, cfg.corpus_cap);
    EmitReport(drmlab::CompareChoosers(corpus, cfg.precedence, cfg.state_cap),
               report_json, report_text);
  });
}

drm_status drm_compare_instances(const drm_config* config,
                                 const char* const* documents,
                                 const char* const* sources, size_t count,
                                 char** report_json, char** report_text) {
  return Guard([&] {
    Require(config, "config");
    Require(documents, "documents");
    const drmlab::Config& cfg = config->config;
    std::vector<drmlab::Instance> corpus;
    for (size_t i = 0; i < count; ++i) {
      Require(documents[i], "document");
      try {
        corpus.push_back(drmlab::ParseInstance(documents[i]));
      } catch (const drmlab::Error& e) {
        if (sources == nullptr || sources[i] == nullptr) throw;
        throw drmlab::Error(e.code(), std::string(sources[i]) + ": " + e.what());
      }
    }
    EmitReport(drmlab::CompareChoosers(corpus, cfg.precedence, cfg.state_cap),
               report_json, report_text);
  });
}

drm_status drm_agent_new(const drm_config* config, drm_agent** out) {
  return Guard([&] {
    Require(config, "config");
    Require(out, "out");
    *out = new drm_agent{
        drmlab::Simulation{},
        drmlab::MakeChooser(config->config.chooser, config->config.precedence)};
  });
}

void drm_agent_free(drm_agent* agent) { delete agent; }

drm_status drm_agent_install(drm_agent* agent, const char* json) {
  return Guard([&] {
    Require(agent, "agent");
    agent->simulation.Install(ParseWithSource(json, nullptr));
  });
}

drm_status drm_agent_tick(drm_agent* agent) {
  return Guard([&] {
    Require(agent, "agent");
    agent->simulation.AdvanceTick();
  });
}

uint32_t drm_agent_now(const drm_agent* agent) {
  return agent == nullptr ? 0 : agent->simulation.state().now;
}

drm_status drm_agent_request(drm_agent* agent, const char* asset,
                             const char* action, char** decision) {
  return Guard([&] {
    Require(agent, "agent");
    const drmlab::Right right = MakeRight(asset, action);
    auto made = agent->simulation.Request(right, agent->choose);
    if (!made) {
      throw drmlab::Error(drmlab::ErrorCode::kNotPermitted,
                          "no installed license permits " +
                              drmlab::ToString(right));
    }
    Emit(decision, drmlab::DecisionToJson(*made).dump());
  });
}

drm_status drm_agent_color(const drm_agent* agent, const char* asset,
                           const char* action, int* black) {
  return Guard([&] {
    Require(agent, "agent");
    Require(black, "black");
    *black = drmlab::ColorOf(agent->simulation.state(),
                             MakeRight(asset, action)) == drmlab::Color::kBlack
                 ? 1
                 : 0;
  });
}

drm_status drm_agent_lost_rights(const drm_agent* agent, char** out) {
  return Guard([&] {
    Require(agent, "agent");
    Require(out, "out");
    nlohmann::ordered_json rights = nlohmann::ordered_json::array();
    for (const drmlab::Right& r : drmlab::LostRights(agent->simulation.state())) {
      rights.push_back(drmlab::RightToJson(r));
    }
    *out = Dup(rights.dump());
  });
}

drm_status drm_agent_trace(const drm_agent* agent, char** out) {
  return Guard([&] {
    Require(agent, "agent");
    Require(out, "out");
    *out = Dup(drmlab::TraceToJsonLines(agent->simulation.trace()));
  });
}

}  // extern "C"
