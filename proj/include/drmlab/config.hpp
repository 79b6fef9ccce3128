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

#ifndef DRMLAB_CONFIG_HPP
#define DRMLAB_CONFIG_HPP

#include <string>
#include <string_view>

#include "drmlab/choosers.hpp"
#include "drmlab/rel.hpp"
#include "drmlab/verifier.hpp"

namespace drmlab {

// Run configuration. The file format is one `key = value` per line; `#`
// starts a comment. Keys:
//
//   precedence  = [UntilKind, IntervalKind, CountKind, Unconstrained]
//   chooser     = oma | labeled
//   horizon     = 40
//   bounds      = maxLicenses=2,maxAssets=2,maxActions=1,maxCount=2,...
//   stateCap    = 1000000
//   corpusCap   = 100000
struct Config {
  PrecedenceTable precedence;
  Algorithm chooser = Algorithm::kOma;
  Tick horizon = 40;
  CorpusBounds bounds;
  std::size_t state_cap = kDefaultStateCap;
  std::size_t corpus_cap = kDefaultCorpusCap;

  // Throws Error(kInvalidArgument) for unknown keys or bad values.
  void Set(std::string_view key, std::string_view value);
  std::string Get(std::string_view key) const;

  // Errors carry "<source>:<line>: " prefixes.
  static Config Parse(std::string_view text, std::string_view source = "config");
  void Merge(std::string_view text, std::string_view source = "config");
};

}  // namespace drmlab

#endif  // DRMLAB_CONFIG_HPP
