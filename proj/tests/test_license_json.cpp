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

#include <string>

#include "doctest.h"
#include "drmlab/errors.hpp"
#include "drmlab/license_json.hpp"
#include "support.hpp"

namespace drmlab {
namespace {

using testing::LoadLicense;
using testing::ReadFixture;

// Parses `text` expecting failure; returns the error.
Error ParseFailure(const std::string& text) {
  try {
    ParseLicense(text);
  } catch (const Error& e) {
    return e;
  }
  FAIL("parse unexpectedly succeeded: " << text);
  return Error(ErrorCode::kParse, "");
}

TEST_SUITE("license_json") {

TEST_CASE("agreement and minimal documents") {
  const License agreement = LoadLicense("agreement.json");
  CHECK(agreement.id == "agr1");
  CHECK(agreement.permissions.size() == 3);
  CHECK(agreement.about == std::set<AssetId>{{"c1"}, {"c2"}});
  CHECK(std::holds_alternative<AlwaysTrue>(agreement.top));
  CHECK(LoadLicense("minimal.json").permissions.size() == 1);
}

TEST_CASE("asset outside about is rejected with a path") {
  const Error e = ParseFailure(ReadFixture("bad_asset.json"));
  CHECK(e.code() == ErrorCode::kValidation);
  CHECK(std::string(e.what()).find("permissions[0].asset") != std::string::npos);
}

TEST_CASE("validation errors") {
  const std::string head = R"({"id":"x","about":["A"],"top":)";
  const std::string tail =
      R"(,"permissions":[{"action":"play","asset":"A","constraint":"true"}]})";
  CHECK(ParseFailure(head + R"({"count":0})" + tail).code() ==
        ErrorCode::kValidation);
  CHECK(ParseFailure(head + R"({"interval":0})" + tail).code() ==
        ErrorCode::kValidation);
  CHECK(ParseFailure(head + R"({"until":-1})" + tail).code() ==
        ErrorCode::kValidation);
  CHECK(ParseFailure(head + R"({"and":[{"count":1},{"count":2}]})" + tail)
            .code() == ErrorCode::kValidation);
  CHECK(ParseFailure(head + R"({"and":[{"until":1},{"and":[{"until":2}]}]})" +
                     tail)
            .code() == ErrorCode::kValidation);
  CHECK(ParseFailure(head + R"({"and":[]})" + tail).code() ==
        ErrorCode::kValidation);
  CHECK(ParseFailure(R"({"id":"x","about":[],"top":"true","permissions":[]})")
            .code() == ErrorCode::kValidation);
  CHECK(ParseFailure(
            R"({"id":"x","about":["A","A"],"top":"true","permissions":[]})")
            .code() == ErrorCode::kValidation);
}

TEST_CASE("signed integers built in code are accepted") {
  nlohmann::json doc = nlohmann::json::parse(ReadFixture("minimal.json"));
  doc["top"] = {{"until", static_cast<int>(3)}};
  CHECK(LicenseFromJson(doc).top == Constraint(Until{3}));
  doc["top"] = {{"until", -3}};
  CHECK_THROWS_AS(LicenseFromJson(doc), Error);
}

TEST_CASE("syntax errors") {
  CHECK(ParseFailure("{").code() == ErrorCode::kParse);
  CHECK(ParseFailure("[]").code() == ErrorCode::kParse);
  CHECK(ParseFailure(R"({"id":"x","about":["A"],"top":"false","permissions":[]})")
            .code() == ErrorCode::kParse);
  CHECK(ParseFailure(
            R"({"id":"x","about":["A"],"top":"true","permissions":[],"extra":1})")
            .code() == ErrorCode::kParse);
  CHECK(ParseFailure(R"({"id":"x","about":["A"],"top":"true"})").code() ==
        ErrorCode::kParse);
  const Error bad_action = ParseFailure(
      R"({"id":"x","about":["A"],"top":"true","permissions":[{"action":"listen","asset":"A","constraint":"true"}]})");
  CHECK(bad_action.code() == ErrorCode::kParse);
  CHECK(std::string(bad_action.what()).find("permissions[0].action") !=
        std::string::npos);
}

TEST_CASE("nested conjunctions are flattened") {
  const License l = ParseLicense(
      R"({"id":"x","about":["A"],"top":{"and":[{"count":2},{"and":[{"until":4},"true"]}]},
          "permissions":[{"action":"play","asset":"A","constraint":"true"}]})");
  const auto* conj = std::get_if<And>(&l.top);
  REQUIRE(conj != nullptr);
  REQUIRE(conj->parts.size() == 3);
  CHECK(conj->parts[0] == Atom(Count{2}));
  CHECK(conj->parts[1] == Atom(Until{4}));
  CHECK(conj->parts[2] == Atom(AlwaysTrue{}));
}

TEST_CASE("serialization is canonical") {
  const License l1 = LoadLicense("songs_l1.json");
  CHECK(SerializeLicense(l1) == ReadFixture("songs_l1.json").substr(
                                    0, ReadFixture("songs_l1.json").find('\n')));
  CHECK(ParseLicense(SerializeLicense(l1)) == l1);
  const License l2 = LoadLicense("songs_l2.json");
  CHECK(SerializeLicense(l2) ==
        R"({"id":"L2","about":["A","D"],"top":{"count":10},"permissions":[)"
        R"({"action":"play","asset":"A","constraint":"true"},)"
        R"({"action":"play","asset":"D","constraint":"true"}]})");
}

TEST_CASE("round trip of generated licenses") {
  std::mt19937 rng(11);
  for (int i = 0; i < 1000; ++i) {
    const License l = testing::RandomLicense(rng, "L" + std::to_string(i));
    const std::string text = SerializeLicense(l);
    CHECK(ParseLicense(text) == l);
    CHECK(SerializeLicense(ParseLicense(text)) == text);
  }
}

}  // TEST_SUITE

}  // namespace
}  // namespace drmlab
