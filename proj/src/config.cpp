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

#include "drmlab/config.hpp"

#include <cctype>
#include <sstream>

#include "drmlab/errors.hpp"

namespace drmlab {

namespace {

std::string_view Trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
    s.remove_prefix(1);
  }
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
    s.remove_suffix(1);
  }
  return s;
}

std::uint64_t ParsePositive(std::string_view key, std::string_view value) {
  std::uint64_t out = 0;
  if (value.empty()) {
    throw Error(ErrorCode::kInvalidArgument,
                std::string(key) + " expects a positive integer");
  }
  for (char c : value) {
    if (!std::isdigit(static_cast<unsigned char>(c)) || out > 0xffffffffffULL) {
      throw Error(ErrorCode::kInvalidArgument,
                  std::string(key) + " expects a positive integer, got '" +
                      std::string(value) + "'");
    }
    out = out * 10 + static_cast<std::uint64_t>(c - '0');
  }
  if (out == 0) {
    throw Error(ErrorCode::kInvalidArgument, std::string(key) + " must be >= 1");
  }
  return out;
}

}  // namespace

void Config::Set(std::string_view key, std::string_view value) {
  value = Trim(value);
  if (key == "precedence") {
    std::string names;
    for (char c : value) {
      if (c != '[' && c != ']' && c != '"') names.push_back(c);
    }
    precedence = PrecedenceTable::Parse(names);
  } else if (key == "chooser") {
    auto algorithm = ParseAlgorithm(value);
    if (!algorithm) {
      throw Error(ErrorCode::kInvalidArgument,
                  "chooser must be 'oma' or 'labeled', got '" +
                      std::string(value) + "'");
    }
    chooser = *algorithm;
  } else if (key == "horizon") {
    std::uint64_t h = ParsePositive(key, value);
    if (h > 0xffffffffULL) {
      throw Error(ErrorCode::kInvalidArgument, "horizon out of range");
    }
    horizon = static_cast<Tick>(h);
  } else if (key == "bounds") {
    bounds = CorpusBounds::Parse(value);
  } else if (key == "stateCap") {
    state_cap = ParsePositive(key, value);
  } else if (key == "corpusCap") {
    corpus_cap = ParsePositive(key, value);
  } else {
    throw Error(ErrorCode::kInvalidArgument,
                "unknown config key '" + std::string(key) + "'");
  }
}

std::string Config::Get(std::string_view key) const {
  if (key == "precedence") return precedence.ToString();
  if (key == "chooser") return std::string(ToString(chooser));
  if (key == "horizon") return std::to_string(horizon);
  if (key == "bounds") return bounds.ToString();
  if (key == "stateCap") return std::to_string(state_cap);
  if (key == "corpusCap") return std::to_string(corpus_cap);
  throw Error(ErrorCode::kInvalidArgument,
              "unknown config key '" + std::string(key) + "'");
}

void Config::Merge(std::string_view text, std::string_view source) {
  std::istringstream in{std::string(text)};
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = raw;
    if (auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = Trim(line);
    if (line.empty()) continue;
    const std::string where =
        std::string(source) + ":" + std::to_string(line_no) + ": ";
    auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw Error(ErrorCode::kInvalidArgument, where + "expected key = value");
    }
    try {
      Set(Trim(line.substr(0, eq)), line.substr(eq + 1));
    } catch (const Error& e) {
      throw Error(e.code(), where + e.what());
    }
  }
}

Config Config::Parse(std::string_view text, std::string_view source) {
  Config config;
  config.Merge(text, source);
  return config;
}

}  // namespace drmlab
