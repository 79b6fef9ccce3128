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

#include "drmlab/license_json.hpp"

#include <cstdint>
#include <limits>

#include "drmlab/errors.hpp"

namespace drmlab {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

std::string Join(const std::string& path, const std::string& field) {
  return path.empty() ? field : path + "." + field;
}

std::string Index(const std::string& path, std::size_t i) {
  return path + "[" + std::to_string(i) + "]";
}

[[noreturn]] void Syntax(const std::string& path, const std::string& msg) {
  throw ParseError(ErrorCode::kParse, path, msg);
}

[[noreturn]] void Invalid(const std::string& path, const std::string& msg) {
  throw ParseError(ErrorCode::kValidation, path, msg);
}

void RequireKeys(const json& obj, const std::string& path,
                 std::initializer_list<std::string_view> allowed) {
  for (const auto& [key, value] : obj.items()) {
    bool known = false;
    for (std::string_view a : allowed) known = known || key == a;
    if (!known) Syntax(Join(path, key), "unknown key");
  }
  for (std::string_view a : allowed) {
    if (!obj.contains(std::string(a))) {
      Syntax(Join(path, std::string(a)), "missing required key");
    }
  }
}

std::uint32_t ReadTick(const json& value, const std::string& path) {
  if (!value.is_number_integer()) {
    Syntax(path, "expected a non-negative integer");
  }
  if (!value.is_number_unsigned() && value.get<std::int64_t>() < 0) {
    Invalid(path, "must be non-negative");
  }
  auto v = value.get<std::uint64_t>();
  if (v > std::numeric_limits<std::uint32_t>::max()) {
    Invalid(path, "value out of range");
  }
  return static_cast<std::uint32_t>(v);
}

std::string ReadString(const json& value, const std::string& path) {
  if (!value.is_string()) Syntax(path, "expected a string");
  auto s = value.get<std::string>();
  if (s.empty()) Invalid(path, "must be non-empty");
  return s;
}

Atom AtomFromObject(const std::string& key, const json& value,
                    const std::string& path) {
  if (key == "count") {
    std::uint32_t total = ReadTick(value, path);
    if (total < 1) Invalid(path, "count total must be at least 1");
    return Count{total};
  }
  if (key == "until") return Until{ReadTick(value, path)};
  if (key == "interval") {
    std::uint32_t duration = ReadTick(value, path);
    if (duration < 1) Invalid(path, "interval duration must be at least 1");
    return Interval{duration};
  }
  Syntax(path, "unknown constraint");
}

void CollectConjuncts(const json& doc, const std::string& path,
                      std::vector<Atom>& out);

// Parses one constraint node; conjunctions are returned flattened.
Constraint ConstraintFromJson(const json& doc, const std::string& path) {
  if (doc.is_string()) {
    if (doc.get<std::string>() != "true") {
      Syntax(path, "unknown constraint '" + doc.get<std::string>() + "'");
    }
    return AlwaysTrue{};
  }
  if (!doc.is_object() || doc.size() != 1) {
    Syntax(path, "constraint must be \"true\" or an object with one key");
  }
  const auto it = doc.begin();
  const std::string& key = it.key();
  if (key != "and") {
    Atom atom = AtomFromObject(key, it.value(), Join(path, key));
    return std::visit([](const auto& a) -> Constraint { return a; }, atom);
  }
  And conj;
  CollectConjuncts(doc, path, conj.parts);
  std::set<std::size_t> seen;
  for (std::size_t i = 0; i < conj.parts.size(); ++i) {
    std::size_t kind = conj.parts[i].index();
    if (std::holds_alternative<AlwaysTrue>(conj.parts[i])) continue;
    if (!seen.insert(kind).second) {
      Invalid(Join(path, "and"), "duplicate constraint kind in conjunction");
    }
  }
  return conj;
}

void CollectConjuncts(const json& doc, const std::string& path,
                      std::vector<Atom>& out) {
  const std::string list_path = Join(path, "and");
  const json& parts = doc.at("and");
  if (!parts.is_array()) Syntax(list_path, "expected an array");
  if (parts.empty()) Invalid(list_path, "conjunction must be non-empty");
  for (std::size_t i = 0; i < parts.size(); ++i) {
    const json& part = parts[i];
    const std::string part_path = Index(list_path, i);
    if (part.is_object() && part.size() == 1 && part.contains("and")) {
      CollectConjuncts(part, part_path, out);
      continue;
    }
    Constraint c = ConstraintFromJson(part, part_path);
    std::visit(
        [&](const auto& node) {
          using T = std::decay_t<decltype(node)>;
          if constexpr (!std::is_same_v<T, And>) out.push_back(node);
        },
        c);
  }
}

ordered_json AtomToJson(const Atom& atom) {
  return std::visit(
      [](const auto& node) -> ordered_json {
        using T = std::decay_t<decltype(node)>;
        if constexpr (std::is_same_v<T, AlwaysTrue>) {
          return "true";
        } else if constexpr (std::is_same_v<T, Count>) {
          return ordered_json{{"count", node.total}};
        } else if constexpr (std::is_same_v<T, Until>) {
          return ordered_json{{"until", node.deadline}};
        } else {
          return ordered_json{{"interval", node.duration}};
        }
      },
      atom);
}

}  // namespace

License LicenseFromJson(const json& doc, const std::string& path) {
  if (!doc.is_object()) Syntax(path, "license must be a JSON object");
  RequireKeys(doc, path, {"id", "about", "top", "permissions"});

  License license;
  license.id = ReadString(doc.at("id"), Join(path, "id"));

  const std::string about_path = Join(path, "about");
  const json& about = doc.at("about");
  if (!about.is_array()) Syntax(about_path, "expected an array");
  if (about.empty()) Invalid(about_path, "must name at least one asset");
  for (std::size_t i = 0; i < about.size(); ++i) {
    AssetId asset{ReadString(about[i], Index(about_path, i))};
    if (!license.about.insert(asset).second) {
      Invalid(Index(about_path, i), "duplicate asset '" + asset.value + "'");
    }
  }

  license.top = ConstraintFromJson(doc.at("top"), Join(path, "top"));

  const std::string perms_path = Join(path, "permissions");
  const json& perms = doc.at("permissions");
  if (!perms.is_array()) Syntax(perms_path, "expected an array");
  if (perms.empty()) Invalid(perms_path, "must hold at least one permission");
  for (std::size_t i = 0; i < perms.size(); ++i) {
    const std::string p_path = Index(perms_path, i);
    const json& p = perms[i];
    if (!p.is_object()) Syntax(p_path, "permission must be a JSON object");
    RequireKeys(p, p_path, {"action", "asset", "constraint"});
    Permission permission;
    const std::string action_path = Join(p_path, "action");
    auto action = ParseActionKind(ReadString(p.at("action"), action_path));
    if (!action) Syntax(action_path, "unknown action");
    permission.right.action = *action;
    const std::string asset_path = Join(p_path, "asset");
    permission.right.asset = AssetId{ReadString(p.at("asset"), asset_path)};
    if (!license.about.contains(permission.right.asset)) {
      Invalid(asset_path, "asset '" + permission.right.asset.value +
                              "' is not listed in about");
    }
    permission.constraint =
        ConstraintFromJson(p.at("constraint"), Join(p_path, "constraint"));
    license.permissions.push_back(std::move(permission));
  }
  return license;
}

License ParseLicense(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(ErrorCode::kParse, "", e.what());
  }
  return LicenseFromJson(doc);
}

ordered_json ConstraintToJson(const Constraint& constraint) {
  if (const auto* conj = std::get_if<And>(&constraint)) {
    ordered_json parts = ordered_json::array();
    for (const Atom& atom : conj->parts) parts.push_back(AtomToJson(atom));
    return ordered_json{{"and", std::move(parts)}};
  }
  return std::visit(
      [](const auto& node) -> ordered_json {
        using T = std::decay_t<decltype(node)>;
        if constexpr (std::is_same_v<T, And>) {
          return nullptr;
        } else {
          return AtomToJson(node);
        }
      },
      constraint);
}

ordered_json RightToJson(const Right& right) {
  return ordered_json{{"asset", right.asset.value},
                      {"action", std::string(ToString(right.action))}};
}

ordered_json LicenseToJson(const License& license) {
  ordered_json doc;
  doc["id"] = license.id;
  ordered_json about = ordered_json::array();
  for (const AssetId& asset : license.about) about.push_back(asset.value);
  doc["about"] = std::move(about);
  doc["top"] = ConstraintToJson(license.top);
  ordered_json perms = ordered_json::array();
  for (const Permission& p : license.permissions) {
    perms.push_back(ordered_json{{"action", std::string(ToString(p.right.action))},
                                 {"asset", p.right.asset.value},
                                 {"constraint", ConstraintToJson(p.constraint)}});
  }
  doc["permissions"] = std::move(perms);
  return doc;
}

std::string SerializeLicense(const License& license) {
  return LicenseToJson(license).dump();
}

}  // namespace drmlab
