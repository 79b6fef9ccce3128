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

#include <algorithm>
#include <cctype>
#include <map>
#include <numeric>

#include "drmlab/license_json.hpp"
#include "drmlab/verifier.hpp"

namespace drmlab {

namespace {

std::string Trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
    s.remove_prefix(1);
  }
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
    s.remove_suffix(1);
  }
  return std::string(s);
}

std::uint32_t ParseBound(const std::string& key, const std::string& value) {
  std::size_t used = 0;
  unsigned long parsed = 0;
  try {
    parsed = std::stoul(value, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != value.size() || value.empty() || value.front() == '-' ||
      parsed > 0xffffffffUL) {
    throw Error(ErrorCode::kInvalidArgument,
                "bound '" + key + "' expects a non-negative integer, got '" +
                    value + "'");
  }
  return static_cast<std::uint32_t>(parsed);
}

}  // namespace

CorpusBounds CorpusBounds::Parse(std::string_view text) {
  CorpusBounds bounds;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t comma = text.find(',', start);
    if (comma == std::string_view::npos) comma = text.size();
    std::string item = Trim(text.substr(start, comma - start));
    start = comma + 1;
    if (item.empty()) continue;
    std::size_t eq = item.find('=');
    if (eq == std::string::npos) {
      throw Error(ErrorCode::kInvalidArgument,
                  "bound '" + item + "' is not of the form key=value");
    }
    std::string key = Trim(item.substr(0, eq));
    std::uint32_t value = ParseBound(key, Trim(item.substr(eq + 1)));
    if (key == "maxLicenses") bounds.max_licenses = value;
    else if (key == "maxAssets") bounds.max_assets = value;
    else if (key == "maxActions") bounds.max_actions = value;
    else if (key == "maxCount") bounds.max_count = value;
    else if (key == "maxDeadline") bounds.max_deadline = value;
    else if (key == "horizon") bounds.horizon = value;
    else throw Error(ErrorCode::kInvalidArgument, "unknown bound '" + key + "'");
  }
  return bounds;
}

std::string CorpusBounds::ToString() const {
  return "maxLicenses=" + std::to_string(max_licenses) +
         ",maxAssets=" + std::to_string(max_assets) +
         ",maxActions=" + std::to_string(max_actions) +
         ",maxCount=" + std::to_string(max_count) +
         ",maxDeadline=" + std::to_string(max_deadline) +
         ",horizon=" + std::to_string(horizon);
}

Instance InstanceFromJson(const nlohmann::json& doc) {
  if (!doc.is_object()) {
    throw ParseError(ErrorCode::kParse, "", "instance must be a JSON object");
  }
  for (const auto& [key, value] : doc.items()) {
    if (key != "id" && key != "horizon" && key != "licenses") {
      throw ParseError(ErrorCode::kParse, key, "unknown key");
    }
  }
  for (const char* key : {"id", "horizon", "licenses"}) {
    if (!doc.contains(key)) {
      throw ParseError(ErrorCode::kParse, key, "missing required key");
    }
  }
  Instance instance;
  if (!doc["id"].is_string() || doc["id"].get<std::string>().empty()) {
    throw ParseError(ErrorCode::kParse, "id", "expected a non-empty string");
  }
  instance.id = doc["id"].get<std::string>();
  if (!doc["horizon"].is_number_unsigned() ||
      doc["horizon"].get<std::uint64_t>() < 1 ||
      doc["horizon"].get<std::uint64_t>() > 0xffffffffULL) {
    throw ParseError(ErrorCode::kValidation, "horizon",
                     "must be a positive integer");
  }
  instance.horizon = doc["horizon"].get<Tick>();
  const auto& licenses = doc["licenses"];
  if (!licenses.is_array() || licenses.empty()) {
    throw ParseError(ErrorCode::kValidation, "licenses",
                     "must be a non-empty array");
  }
  std::set<LicenseId> ids;
  for (std::size_t i = 0; i < licenses.size(); ++i) {
    const std::string path = "licenses[" + std::to_string(i) + "]";
    License license = LicenseFromJson(licenses[i], path);
    if (!ids.insert(license.id).second) {
      throw ParseError(ErrorCode::kValidation, path + ".id",
                       "duplicate license id '" + license.id + "'");
    }
    instance.licenses.push_back(std::move(license));
  }
  return instance;
}

Instance ParseInstance(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(ErrorCode::kParse, "", e.what());
  }
  return InstanceFromJson(doc);
}

nlohmann::ordered_json InstanceToJson(const Instance& instance) {
  nlohmann::ordered_json licenses = nlohmann::ordered_json::array();
  for (const License& l : instance.licenses) licenses.push_back(LicenseToJson(l));
  return {{"id", instance.id},
          {"horizon", instance.horizon},
          {"licenses", std::move(licenses)}};
}

namespace {

// Largest number of (asset, action) cells and symmetry permutations the
// enumerator accepts; beyond these the corpus is far past any sane cap.
constexpr std::uint32_t kMaxCells = 16;
constexpr std::size_t kMaxSymmetries = 40320;

std::uint64_t Factorial(std::uint32_t n) {
  std::uint64_t f = 1;
  for (std::uint32_t i = 2; i <= n; ++i) f *= i;
  return f;
}

// The license grammar of a corpus, with codes: license code =
// top_index * 2^cells + cell mask, cell = asset * actions + action.
class CorpusShape {
 public:
  explicit CorpusShape(const CorpusBounds& b) : bounds_(b) {
    if (b.max_licenses < 1 || b.max_assets < 1 || b.max_actions < 1 ||
        b.max_count < 1 || b.max_deadline < 1 || b.horizon < 1) {
      throw Error(ErrorCode::kInvalidArgument, "all corpus bounds must be >= 1");
    }
    if (b.max_actions > kAllActions.size()) {
      throw Error(ErrorCode::kInvalidArgument,
                  "maxActions cannot exceed the 4 known actions");
    }
    if (b.max_assets > 26 ||
        static_cast<std::uint64_t>(b.max_assets) * b.max_actions > kMaxCells ||
        Factorial(b.max_assets) * Factorial(b.max_actions) > kMaxSymmetries) {
      throw Error(ErrorCode::kBoundsTooLarge,
                  "corpus bounds " + b.ToString() + " are too large");
    }
    cells_ = b.max_assets * b.max_actions;

    tops_.push_back(AlwaysTrue{});
    for (std::uint32_t k = 1; k <= b.max_count; ++k) tops_.push_back(Count{k});
    for (Tick d = 1; d <= b.max_deadline; ++d) tops_.push_back(Until{d});
    for (Tick d = 1; d <= b.max_deadline; ++d) tops_.push_back(Interval{d});
    for (std::uint32_t k = 1; k <= b.max_count; ++k) {
      for (Tick d = 1; d <= b.max_deadline; ++d) {
        tops_.push_back(And{{Count{k}, Until{d}}});
      }
    }
    for (std::uint32_t k = 1; k <= b.max_count; ++k) {
      for (Tick d = 1; d <= b.max_deadline; ++d) {
        tops_.push_back(And{{Count{k}, Interval{d}}});
      }
    }

    std::vector<std::uint32_t> assets(b.max_assets);
    std::iota(assets.begin(), assets.end(), 0u);
    do {
      std::vector<std::uint32_t> actions(b.max_actions);
      std::iota(actions.begin(), actions.end(), 0u);
      do {
        std::vector<std::uint32_t> map(cells_);
        for (std::uint32_t a = 0; a < b.max_assets; ++a) {
          for (std::uint32_t c = 0; c < b.max_actions; ++c) {
            map[a * b.max_actions + c] = assets[a] * b.max_actions + actions[c];
          }
        }
        symmetries_.push_back(std::move(map));
      } while (std::next_permutation(actions.begin(), actions.end()));
    } while (std::next_permutation(assets.begin(), assets.end()));
  }

  std::uint64_t MaskCount() const { return (std::uint64_t{1} << cells_) - 1; }
  std::uint64_t ShapeCount() const { return tops_.size() * MaskCount(); }
  std::size_t SymmetryCount() const { return symmetries_.size(); }

  std::uint64_t CodeOfIndex(std::uint64_t index) const {
    std::uint64_t top = index / MaskCount();
    std::uint64_t mask = index % MaskCount() + 1;
    return (top << cells_) | mask;
  }

  std::uint64_t Permute(std::uint64_t code,
                        const std::vector<std::uint32_t>& map) const {
    const std::uint64_t mask = code & ((std::uint64_t{1} << cells_) - 1);
    std::uint64_t out = 0;
    for (std::uint32_t bit = 0; bit < cells_; ++bit) {
      if (mask >> bit & 1) out |= std::uint64_t{1} << map[bit];
    }
    return (code >> cells_ << cells_) | out;
  }

  // True when no renaming yields a lexicographically smaller sorted tuple.
  bool IsCanonical(const std::vector<std::uint64_t>& codes) const {
    std::vector<std::uint64_t> permuted(codes.size());
    for (std::size_t s = 1; s < symmetries_.size(); ++s) {
      for (std::size_t i = 0; i < codes.size(); ++i) {
        permuted[i] = Permute(codes[i], symmetries_[s]);
      }
      std::sort(permuted.begin(), permuted.end());
      if (permuted < codes) return false;
    }
    return true;
  }

  std::vector<std::uint64_t> Canonicalize(std::vector<std::uint64_t> codes) const {
    std::sort(codes.begin(), codes.end());
    std::vector<std::uint64_t> best = codes;
    std::vector<std::uint64_t> permuted(codes.size());
    for (const auto& map : symmetries_) {
      for (std::size_t i = 0; i < codes.size(); ++i) {
        permuted[i] = Permute(codes[i], map);
      }
      std::sort(permuted.begin(), permuted.end());
      if (permuted < best) best = permuted;
    }
    return best;
  }

  License Materialize(std::uint64_t code, std::size_t position) const {
    License license;
    license.id = "L" + std::to_string(position + 1);
    license.top = tops_[code >> cells_];
    for (std::uint32_t bit = 0; bit < cells_; ++bit) {
      if (!(code >> bit & 1)) continue;
      AssetId asset{std::string(1, static_cast<char>('A' + bit / bounds_.max_actions))};
      license.about.insert(asset);
      license.permissions.push_back(
          Permission{AlwaysTrue{},
                     Right{asset, kAllActions[bit % bounds_.max_actions]}});
    }
    return license;
  }

  Instance MaterializeInstance(const std::vector<std::uint64_t>& codes,
                               std::size_t ordinal) const {
    Instance instance;
    instance.id = "corpus-" + std::to_string(ordinal);
    instance.horizon = bounds_.horizon;
    for (std::size_t i = 0; i < codes.size(); ++i) {
      instance.licenses.push_back(Materialize(codes[i], i));
    }
    return instance;
  }

  std::optional<std::vector<std::uint64_t>> Encode(const Instance& instance) const {
    if (instance.horizon != bounds_.horizon || instance.licenses.empty() ||
        instance.licenses.size() > bounds_.max_licenses) {
      return std::nullopt;
    }
    std::map<AssetId, std::uint32_t> asset_index;
    std::map<ActionKind, std::uint32_t> action_index;
    for (const License& l : instance.licenses) {
      for (const Permission& p : l.permissions) {
        asset_index.emplace(p.right.asset, 0);
        action_index.emplace(p.right.action, 0);
      }
    }
    if (asset_index.size() > bounds_.max_assets ||
        action_index.size() > bounds_.max_actions) {
      return std::nullopt;
    }
    std::uint32_t next = 0;
    for (auto& [asset, index] : asset_index) index = next++;
    next = 0;
    for (auto& [action, index] : action_index) index = next++;

    std::vector<std::uint64_t> codes;
    for (const License& l : instance.licenses) {
      auto top = std::find(tops_.begin(), tops_.end(), l.top);
      if (top == tops_.end()) return std::nullopt;
      std::uint64_t mask = 0;
      std::set<AssetId> assets;
      for (const Permission& p : l.permissions) {
        if (!std::holds_alternative<AlwaysTrue>(p.constraint)) return std::nullopt;
        std::uint64_t bit = std::uint64_t{1}
                            << (asset_index.at(p.right.asset) * bounds_.max_actions +
                                action_index.at(p.right.action));
        if (mask & bit) return std::nullopt;
        mask |= bit;
        assets.insert(p.right.asset);
      }
      if (assets != l.about) return std::nullopt;
      codes.push_back((static_cast<std::uint64_t>(top - tops_.begin()) << cells_) |
                      mask);
    }
    return Canonicalize(std::move(codes));
  }

  // Visits canonical code tuples, size-major then lexicographic.
  template <typename Visit>
  void Enumerate(Visit&& visit) const {
    const std::uint64_t shapes = ShapeCount();
    for (std::uint32_t n = 1; n <= bounds_.max_licenses; ++n) {
      std::vector<std::uint64_t> index(n, 0);
      std::vector<std::uint64_t> codes(n);
      while (true) {
        for (std::uint32_t i = 0; i < n; ++i) codes[i] = CodeOfIndex(index[i]);
        if (IsCanonical(codes) && !visit(codes)) return;
        // Next non-decreasing index tuple.
        int pos = static_cast<int>(n) - 1;
        while (pos >= 0 && index[pos] + 1 == shapes) --pos;
        if (pos < 0) break;
        ++index[pos];
        for (std::uint32_t j = pos + 1; j < n; ++j) index[j] = index[pos];
      }
    }
  }

  // Multisets of 1..maxLicenses shapes before symmetry reduction, saturated.
  double RawCount() const {
    double total = 0;
    const double shapes = static_cast<double>(ShapeCount());
    for (std::uint32_t n = 1; n <= bounds_.max_licenses; ++n) {
      double c = 1;
      for (std::uint32_t i = 0; i < n; ++i) c = c * (shapes + i) / (i + 1);
      total += c;
    }
    return total;
  }

 private:
  CorpusBounds bounds_;
  std::uint32_t cells_ = 0;
  std::vector<Constraint> tops_;
  std::vector<std::vector<std::uint32_t>> symmetries_;
};

}  // namespace

std::vector<Instance> GenerateCorpus(const CorpusBounds& bounds,
                                     std::size_t cap) {
  CorpusShape shape(bounds);
  const double lower_bound = shape.RawCount() / static_cast<double>(shape.SymmetryCount());
  auto too_large = [&] {
    return Error(ErrorCode::kBoundsTooLarge,
                 "corpus for " + bounds.ToString() + " exceeds the cap of " +
                     std::to_string(cap) + " instances");
  };
  if (lower_bound > static_cast<double>(cap)) throw too_large();
  std::vector<Instance> corpus;
  bool overflow = false;
  shape.Enumerate([&](const std::vector<std::uint64_t>& codes) {
    if (corpus.size() == cap) {
      overflow = true;
      return false;
    }
    corpus.push_back(shape.MaterializeInstance(codes, corpus.size()));
    return true;
  });
  if (overflow) throw too_large();
  return corpus;
}

void EnumerateCorpus(const CorpusBounds& bounds,
                     const std::function<bool(const Instance&)>& visit) {
  CorpusShape shape(bounds);
  std::size_t ordinal = 0;
  shape.Enumerate([&](const std::vector<std::uint64_t>& codes) {
    return visit(shape.MaterializeInstance(codes, ordinal++));
  });
}

std::optional<std::vector<std::uint64_t>> CanonicalCodes(
    const Instance& instance, const CorpusBounds& bounds) {
  return CorpusShape(bounds).Encode(instance);
}

bool CorpusContains(const CorpusBounds& bounds, const Instance& instance) {
  CorpusShape shape(bounds);
  auto target = shape.Encode(instance);
  if (!target) return false;
  bool found = false;
  shape.Enumerate([&](const std::vector<std::uint64_t>& codes) {
    found = codes == *target;
    return !found;
  });
  return found;
}

}  // namespace drmlab
