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

// JSON license documents.
//
//   {"id":"L1","about":["A","B"],
//    "top":{"and":[{"count":1},{"until":30}]},
//    "permissions":[{"action":"play","asset":"A","constraint":"true"}, ...]}
//
// Constraints are "true", {"count":N}, {"until":T}, {"interval":D} or
// {"and":[...]}. Unknown keys are rejected. Serialization emits keys in the
// order above with no whitespace, so equal licenses serialize to equal bytes.

#ifndef DRMLAB_LICENSE_JSON_HPP
#define DRMLAB_LICENSE_JSON_HPP

#include <string>
#include <string_view>

#include "drmlab/rel.hpp"
#include "json.hpp"

namespace drmlab {

// Throws ParseError with code kParse for malformed JSON or a document of the
// wrong shape, and kValidation for invariant violations.
License ParseLicense(std::string_view text);
License LicenseFromJson(const nlohmann::json& doc, const std::string& path = "");

std::string SerializeLicense(const License& license);
nlohmann::ordered_json LicenseToJson(const License& license);

nlohmann::ordered_json ConstraintToJson(const Constraint& constraint);
nlohmann::ordered_json RightToJson(const Right& right);

}  // namespace drmlab

#endif  // DRMLAB_LICENSE_JSON_HPP
