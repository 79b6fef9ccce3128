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

// drmlab command-line front end. Talks to the library through the C API.
//
// Exit codes: 0 success, 1 file/parse/runtime error, 2 usage error,
// 3 not permitted, 4 simulate saw a rejected request, 5 property violated.

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "drmlab/drmlab.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitUsage = 2;
constexpr int kExitNotPermitted = 3;
constexpr int kExitRejected = 4;
constexpr int kExitViolated = 5;

// Carries an exit code out of nested helpers.
struct Exit {
  int code;
};

[[noreturn]] void Die(int code, const std::string& message) {
  std::cerr << "drmlab: " << message << '\n';
  throw Exit{code};
}

void Check(drm_status status) {
  if (status == DRM_OK) return;
  Die(status == DRM_ERR_NOT_PERMITTED ? kExitNotPermitted : kExitError,
      drm_last_error());
}

struct CString {
  char* p = nullptr;
  ~CString() { drm_free(p); }
  std::string str() const { return p != nullptr ? p : ""; }
};

struct ConfigHandle {
  drm_config* p = nullptr;
  ~ConfigHandle() { drm_config_free(p); }
};

struct SetHandle {
  drm_license_set* p = nullptr;
  ~SetHandle() { drm_license_set_free(p); }
};

std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) Die(kExitError, "cannot read '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void WriteFile(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << text)) Die(kExitError, "cannot write '" + path + "'");
}

void LoadLicenses(SetHandle& set, const std::vector<std::string>& files) {
  Check(drm_license_set_new(&set.p));
  for (const std::string& file : files) {
    Check(drm_license_set_add(set.p, ReadFile(file).c_str(), file.c_str()));
  }
}

struct Options {
  std::string config_path;
  std::vector<std::string> licenses;
  std::string file;
  std::string asset;
  std::string action;
  std::uint32_t time = 0;
  std::string algo;
  std::string script;
  std::string property;
  std::optional<std::uint32_t> horizon;
  std::string trace_out;
  std::string bounds;
  std::string corpus;
  std::string format = "json";
};

void LoadConfig(ConfigHandle& config, const Options& opt) {
  Check(drm_config_new(&config.p));
  std::string path = opt.config_path;
  if (path.empty()) {
    if (const char* env = std::getenv("DRMLAB_CONFIG"); env != nullptr) {
      path = env;
    }
  }
  if (!path.empty()) {
    Check(drm_config_load(config.p, ReadFile(path).c_str(), path.c_str()));
  }
  if (!opt.algo.empty()) {
    Check(drm_config_set(config.p, "chooser", opt.algo.c_str()));
  }
  if (opt.horizon) {
    Check(drm_config_set(config.p, "horizon",
                         std::to_string(*opt.horizon).c_str()));
  }
  if (!opt.bounds.empty()) {
    Check(drm_config_set(config.p, "bounds", opt.bounds.c_str()));
  }
}

int RunParse(const Options& opt) {
  CString canonical;
  Check(drm_license_canonical(ReadFile(opt.file).c_str(), &canonical.p));
  std::cout << canonical.str() << '\n';
  return kExitOk;
}

int RunEval(const Options& opt) {
  SetHandle set;
  LoadLicenses(set, opt.licenses);
  int permitted = 0;
  Check(drm_permitted(set.p, opt.asset.c_str(), opt.action.c_str(), opt.time,
                      &permitted));
  std::cout << (permitted ? "true" : "false") << '\n';
  return permitted ? kExitOk : kExitNotPermitted;
}

int RunChoose(const Options& opt) {
  ConfigHandle config;
  LoadConfig(config, opt);
  SetHandle set;
  LoadLicenses(set, opt.licenses);
  CString explanation;
  Check(drm_choose(set.p, config.p, opt.asset.c_str(), opt.action.c_str(),
                   &explanation.p));
  std::cout << explanation.str() << '\n';
  return kExitOk;
}

int RunSimulate(const Options& opt) {
  ConfigHandle config;
  LoadConfig(config, opt);
  SetHandle set;
  LoadLicenses(set, opt.licenses);
  CString trace;
  size_t rejected = 0;
  Check(drm_simulate(set.p, config.p, ReadFile(opt.script).c_str(),
                     opt.script.c_str(), &trace.p, &rejected));
  std::cout << trace.str();
  return rejected > 0 ? kExitRejected : kExitOk;
}

int RunVerify(const Options& opt) {
  ConfigHandle config;
  LoadConfig(config, opt);
  SetHandle set;
  LoadLicenses(set, opt.licenses);
  CString verdict;
  CString trace;
  int holds = 0;
  Check(drm_verify(set.p, config.p, opt.property.c_str(), &verdict.p, &trace.p,
                   &holds));
  std::cout << verdict.str();
  if (!opt.trace_out.empty()) WriteFile(opt.trace_out, trace.str());
  return holds ? kExitOk : kExitViolated;
}

int RunCompare(const Options& opt) {
  ConfigHandle config;
  LoadConfig(config, opt);
  CString json;
  CString text;
  if (!opt.corpus.empty()) {
    namespace fs = std::filesystem;
    std::error_code ec;
    std::vector<std::string> files;
    for (fs::directory_iterator it(opt.corpus, ec), end; !ec && it != end;
         it.increment(ec)) {
      if (it->is_regular_file() && it->path().extension() == ".json") {
        files.push_back(it->path().string());
      }
    }
    if (ec) Die(kExitError, "cannot list '" + opt.corpus + "': " + ec.message());
    if (files.empty()) Die(kExitError, "no *.json instances in '" + opt.corpus + "'");
    std::sort(files.begin(), files.end());
    std::vector<std::string> docs;
    for (const std::string& f : files) docs.push_back(ReadFile(f));
    std::vector<const char*> doc_ptrs;
    std::vector<const char*> src_ptrs;
    for (std::size_t i = 0; i < files.size(); ++i) {
      doc_ptrs.push_back(docs[i].c_str());
      src_ptrs.push_back(files[i].c_str());
    }
    Check(drm_compare_instances(config.p, doc_ptrs.data(), src_ptrs.data(),
                                doc_ptrs.size(), &json.p, &text.p));
  } else {
    Check(drm_compare_bounds(config.p, &json.p, &text.p));
  }
  std::cout << (opt.format == "text" ? text.str() : json.str());
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"drmlab: rights-expression license engine and bounded verifier"};
  app.require_subcommand(1);
  Options opt;
  app.add_option("--config", opt.config_path,
                 "Config file (default: $DRMLAB_CONFIG)");

  const std::vector<std::string> algos{"oma", "labeled"};
  const std::vector<std::string> actions{"play", "display", "print", "execute"};

  auto* parse = app.add_subcommand("parse", "Validate a license and print its canonical form");
  parse->add_option("file", opt.file, "License file")->required();

  auto add_licenses = [&](CLI::App* sub) {
    sub->add_option("--licenses", opt.licenses, "License files")
        ->required()
        ->expected(1, -1);
  };
  auto add_request = [&](CLI::App* sub) {
    sub->add_option("--action", opt.action, "Action")
        ->required()
        ->check(CLI::IsMember(actions));
    sub->add_option("--asset", opt.asset, "Asset id")->required();
  };
  auto add_algo = [&](CLI::App* sub) {
    sub->add_option("--algo", opt.algo, "Chooser: oma or labeled")
        ->check(CLI::IsMember(algos));
  };

  auto* eval = app.add_subcommand("eval", "Is a right permitted at a tick?");
  add_licenses(eval);
  add_request(eval);
  eval->add_option("--time", opt.time, "Tick (default 0)");

  auto* choose = app.add_subcommand("choose", "Pick a license for a request");
  add_licenses(choose);
  add_request(choose);
  add_algo(choose);

  auto* simulate = app.add_subcommand("simulate", "Run a request/tick script");
  add_licenses(simulate);
  simulate->add_option("--script", opt.script, "Script file")->required();
  add_algo(simulate);

  auto* verify = app.add_subcommand("verify", "Check safety or liveness");
  add_licenses(verify);
  verify->add_option("--property", opt.property, "safety or liveness")
      ->required()
      ->check(CLI::IsMember({"safety", "liveness"}));
  add_algo(verify);
  verify->add_option("--horizon", opt.horizon, "Exploration horizon")
      ->check(CLI::PositiveNumber);
  verify->add_option("--trace-out", opt.trace_out,
                     "Write the counterexample trace (JSON Lines) here");

  auto* compare = app.add_subcommand("compare", "Compare both choosers over a corpus");
  auto* bounds = compare->add_option("--bounds", opt.bounds,
                                     "Corpus bounds, e.g. maxLicenses=2,maxAssets=2");
  auto* corpus = compare->add_option("--corpus", opt.corpus,
                                     "Directory of instance *.json files");
  bounds->excludes(corpus);
  compare->add_option("--format", opt.format, "json or text")
      ->check(CLI::IsMember({"json", "text"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*parse) return RunParse(opt);
    if (*eval) return RunEval(opt);
    if (*choose) return RunChoose(opt);
    if (*simulate) return RunSimulate(opt);
    if (*verify) return RunVerify(opt);
    if (*compare) return RunCompare(opt);
  } catch (const Exit& e) {
    return e.code;
  }
  return kExitUsage;
}
