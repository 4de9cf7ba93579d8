// Copyright 2023 The Authors.
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

#include "adasub/instance_io.h"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace adasub {
namespace {

using nlohmann::json;

[[noreturn]] void Fail(const std::string& where, const std::string& what) {
  throw Error(ErrorKind::kParse, "parse error at " + where + ": " + what);
}

const json& Field(const json& obj, const std::string& key,
                  const std::string& where) {
  if (!obj.is_object()) Fail(where, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) Fail(where, "missing field '" + key + "'");
  return *it;
}

bool Has(const json& obj, const std::string& key) {
  return obj.is_object() && obj.contains(key);
}

int64_t AsInt(const json& value, const std::string& where) {
  if (!value.is_number_integer()) Fail(where, "expected an integer");
  return value.get<int64_t>();
}

double AsReal(const json& value, const std::string& where) {
  if (!value.is_number()) Fail(where, "expected a number");
  return value.get<double>();
}

std::string AsString(const json& value, const std::string& where) {
  if (!value.is_string()) Fail(where, "expected a string");
  return value.get<std::string>();
}

const json& AsArray(const json& value, const std::string& where) {
  if (!value.is_array()) Fail(where, "expected an array");
  return value;
}

std::string At(const std::string& where, size_t index) {
  return where + "/" + std::to_string(index);
}

std::string At(const std::string& where, const std::string& key) {
  return where + "/" + key;
}

// An item named by index or label.
ItemIndex ItemRef(const json& value, const Model& model,
                  const std::string& where) {
  if (value.is_string()) {
    const std::string label = value.get<std::string>();
    if (auto item = model.FindItem(label)) return *item;
    Fail(where, "unknown item label '" + label + "'");
  }
  const int64_t index = AsInt(value, where);
  if (index < 0 || index >= model.size()) {
    Fail(where, "item index " + std::to_string(index) + " out of range");
  }
  return static_cast<ItemIndex>(index);
}

ItemSet ItemRefs(const json& value, const Model& model,
                 const std::string& where) {
  ItemSet items;
  const json& array = AsArray(value, where);
  for (size_t k = 0; k < array.size(); ++k) {
    items.push_back(ItemRef(array[k], model, At(where, k)));
  }
  std::sort(items.begin(), items.end());
  return items;
}

OutcomeIndex OutcomeRef(const json& obj, const std::string& key,
                        const std::string& where) {
  if (!Has(obj, key)) return 0;
  const int64_t index = AsInt(obj[key], At(where, key));
  if (index < 0) Fail(At(where, key), "negative outcome index");
  return static_cast<OutcomeIndex>(index);
}

Model ParseItems(const json& value, const std::string& where) {
  Model model;
  const json& array = AsArray(value, where);
  for (size_t i = 0; i < array.size(); ++i) {
    const std::string item_where = At(where, i);
    const json& entry = array[i];
    Item item;
    if (Has(entry, "label")) {
      item.label = AsString(entry["label"], At(item_where, "label"));
    }
    const json& outcomes =
        AsArray(Field(entry, "outcomes", item_where), At(item_where, "outcomes"));
    for (size_t o = 0; o < outcomes.size(); ++o) {
      item.outcomes.push_back(
          AsString(outcomes[o], At(At(item_where, "outcomes"), o)));
    }
    const json& probabilities = AsArray(Field(entry, "probabilities", item_where),
                                        At(item_where, "probabilities"));
    for (size_t o = 0; o < probabilities.size(); ++o) {
      item.prior.push_back(
          AsReal(probabilities[o], At(At(item_where, "probabilities"), o)));
    }
    model.items.push_back(std::move(item));
  }
  return model;
}

MatchmakingSpec ParseMatchmakingSpec(const json& obj, const std::string& where) {
  MatchmakingSpec spec;
  spec.left_count = static_cast<int>(AsInt(Field(obj, "left", where), At(where, "left")));
  spec.right_count =
      static_cast<int>(AsInt(Field(obj, "right", where), At(where, "right")));
  spec.cap_left = Has(obj, "cap_left")
                      ? static_cast<int>(AsInt(obj["cap_left"], At(where, "cap_left")))
                      : 1;
  spec.cap_right =
      Has(obj, "cap_right")
          ? static_cast<int>(AsInt(obj["cap_right"], At(where, "cap_right")))
          : 1;
  const json& prob = Field(obj, "success_prob", where);
  const std::string prob_where = At(where, "success_prob");
  spec.success_prob.clear();
  if (prob.is_array()) {
    // Either a flat row-major list or a left x right matrix.
    for (size_t k = 0; k < prob.size(); ++k) {
      if (prob[k].is_array()) {
        for (size_t r = 0; r < prob[k].size(); ++r) {
          spec.success_prob.push_back(
              AsReal(prob[k][r], At(At(prob_where, k), r)));
        }
      } else {
        spec.success_prob.push_back(AsReal(prob[k], At(prob_where, k)));
      }
    }
  } else {
    spec.success_prob.push_back(AsReal(prob, prob_where));
  }
  return spec;
}

Objective ParseObjective(const json& obj, const Model& model,
                         const std::string& where) {
  const std::string kind = AsString(Field(obj, "kind", where), At(where, "kind"));
  std::optional<Objective> objective;
  if (kind == "count") {
    objective = Objective::Count(OutcomeRef(obj, "success_outcome", where));
  } else if (kind == "and") {
    ItemSet items;
    if (Has(obj, "items")) items = ItemRefs(obj["items"], model, At(where, "items"));
    objective = Objective::And(items, OutcomeRef(obj, "success_outcome", where));
  } else if (kind == "coverage") {
    const int64_t universe =
        AsInt(Field(obj, "universe_size", where), At(where, "universe_size"));
    const std::string sets_where = At(where, "sets");
    const json& sets = AsArray(Field(obj, "sets", where), sets_where);
    std::vector<std::vector<int>> covers;
    for (size_t k = 0; k < sets.size(); ++k) {
      std::vector<int> set;
      const json& elements = AsArray(sets[k], At(sets_where, k));
      for (size_t e = 0; e < elements.size(); ++e) {
        set.push_back(static_cast<int>(
            AsInt(elements[e], At(At(sets_where, k), e))));
      }
      covers.push_back(std::move(set));
    }
    try {
      objective = Objective::Coverage(static_cast<int>(universe),
                                      std::move(covers),
                                      OutcomeRef(obj, "works_outcome", where));
    } catch (const Error& e) {
      throw Error(ErrorKind::kValidation, std::string("validation failed: ") + e.what());
    }
  } else {
    throw Error(ErrorKind::kParse, "unknown objective kind '" + kind +
                                       "' at " + At(where, "kind"));
  }
  if (Has(obj, "name")) objective->set_name(AsString(obj["name"], At(where, "name")));
  return *objective;
}

IndependenceSystem ParseConstraint(const json& obj, const Model& model,
                                   const std::string& where) {
  const std::string kind = AsString(Field(obj, "kind", where), At(where, "kind"));
  const int n = model.size();
  std::optional<IndependenceSystem> system;
  try {
    if (kind == "uniform") {
      system = IndependenceSystem::Uniform(
          n, static_cast<int>(AsInt(Field(obj, "k", where), At(where, "k"))));
    } else if (kind == "partition") {
      const std::string blocks_where = At(where, "blocks");
      const json& blocks = AsArray(Field(obj, "blocks", where), blocks_where);
      std::vector<ItemSet> parsed_blocks;
      for (size_t b = 0; b < blocks.size(); ++b) {
        parsed_blocks.push_back(ItemRefs(blocks[b], model, At(blocks_where, b)));
      }
      const std::string caps_where = At(where, "capacities");
      const json& caps = AsArray(Field(obj, "capacities", where), caps_where);
      std::vector<int> capacities;
      for (size_t b = 0; b < caps.size(); ++b) {
        capacities.push_back(static_cast<int>(AsInt(caps[b], At(caps_where, b))));
      }
      system = IndependenceSystem::Partition(n, std::move(parsed_blocks),
                                             std::move(capacities));
    } else if (kind == "intersection") {
      const std::string members_where = At(where, "members");
      const json& members = AsArray(Field(obj, "members", where), members_where);
      std::vector<IndependenceSystem> parsed;
      for (size_t m = 0; m < members.size(); ++m) {
        parsed.push_back(ParseConstraint(members[m], model, At(members_where, m)));
      }
      system = Intersect(std::move(parsed));
    } else if (kind == "explicit") {
      const std::string sets_where = At(where, "sets");
      const json& sets = AsArray(Field(obj, "sets", where), sets_where);
      std::vector<ItemSet> family;
      for (size_t k = 0; k < sets.size(); ++k) {
        family.push_back(ItemRefs(sets[k], model, At(sets_where, k)));
      }
      system = IndependenceSystem::Explicit(n, std::move(family));
    } else {
      throw Error(ErrorKind::kParse, "unknown constraint kind '" + kind +
                                         "' at " + At(where, "kind"));
    }
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::kParse) throw;
    throw Error(ErrorKind::kValidation, std::string("validation failed: ") + e.what());
  }
  if (Has(obj, "name")) system->set_name(AsString(obj["name"], At(where, "name")));
  return *system;
}

Rational ParseDeclaredP(const json& value, const std::string& where) {
  try {
    if (value.is_number_integer()) return Rational::Of(value.get<int64_t>(), 1);
    return ParseRational(AsString(value, where));
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::kParse) throw;
    Fail(where, e.what());
  }
}

Instance ParseGenerator(const json& obj, const std::string& where) {
  const std::string kind = AsString(Field(obj, "kind", where), At(where, "kind"));
  if (kind == "random_small") {
    const int64_t seed = AsInt(Field(obj, "seed", where), At(where, "seed"));
    RandomInstanceCaps caps;
    if (Has(obj, "min_items")) {
      caps.min_items = static_cast<int>(AsInt(obj["min_items"], At(where, "min_items")));
    }
    if (Has(obj, "max_items")) {
      caps.max_items = static_cast<int>(AsInt(obj["max_items"], At(where, "max_items")));
    }
    if (Has(obj, "max_universe")) {
      caps.max_universe =
          static_cast<int>(AsInt(obj["max_universe"], At(where, "max_universe")));
    }
    return RandomSmallInstance(static_cast<uint64_t>(seed), caps);
  }
  if (kind == "matchmaking") return MakeMatchmaking(ParseMatchmakingSpec(obj, where));
  throw Error(ErrorKind::kParse,
              "unknown generator kind '" + kind + "' at " + At(where, "kind"));
}

Instance ParseDocument(const json& doc) {
  if (!doc.is_object()) Fail("/", "expected an object");
  std::optional<Instance> instance;
  const bool is_matchmaking =
      Has(doc, "objective") && doc["objective"].is_object() &&
      doc["objective"].value("kind", "") == "matchmaking";

  if (Has(doc, "generator") || is_matchmaking) {
    const std::string section = Has(doc, "generator") ? "generator" : "objective";
    for (const char* key : {"items", "constraint", "generator", "objective"}) {
      if (key != section && Has(doc, key)) {
        Fail("/" + std::string(key), "section not allowed alongside /" + section);
      }
    }
    try {
      instance = section == "generator"
                     ? ParseGenerator(doc["generator"], "/generator")
                     : MakeMatchmaking(ParseMatchmakingSpec(doc["objective"], "/objective"));
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::kParse) throw;
      throw Error(ErrorKind::kValidation, std::string("validation failed: ") + e.what());
    }
  } else {
    Model model = ParseItems(Field(doc, "items", "/"), "/items");
    // Labels must resolve before objective and constraint refer to them.
    if (ValidationResult v = ValidateModel(model); !v) {
      throw Error(ErrorKind::kValidation, "validation failed: " + v.reason);
    }
    Objective objective =
        ParseObjective(Field(doc, "objective", "/"), model, "/objective");
    IndependenceSystem system =
        ParseConstraint(Field(doc, "constraint", "/"), model, "/constraint");
    instance = Instance{"instance", std::move(model), std::move(objective),
                        std::move(system), std::nullopt, {}};
  }
  if (Has(doc, "name")) instance->name = AsString(doc["name"], "/name");
  if (Has(doc, "declared_p")) {
    instance->declared_p = ParseDeclaredP(doc["declared_p"], "/declared_p");
  }
  try {
    ValidateInstance(*instance);
  } catch (const Error& e) {
    throw Error(ErrorKind::kValidation, std::string("validation failed: ") + e.what());
  }
  return std::move(*instance);
}

json SerializeObjective(const Objective& objective) {
  json out;
  switch (objective.kind()) {
    case ObjectiveKind::kCount:
      out = {{"kind", "count"}, {"success_outcome", objective.success_outcome()}};
      break;
    case ObjectiveKind::kAnd:
      out = {{"kind", "and"},
             {"items", objective.and_items()},
             {"success_outcome", objective.success_outcome()}};
      break;
    case ObjectiveKind::kCoverage:
      out = {{"kind", "coverage"},
             {"universe_size", objective.universe_size()},
             {"sets", objective.coverage_sets()},
             {"works_outcome", objective.success_outcome()}};
      break;
    case ObjectiveKind::kCustom:
      throw Error(ErrorKind::kInvalidArgument,
                  "custom objective '" + objective.name() + "' is not serializable");
  }
  out["name"] = objective.name();
  return out;
}

json SerializeConstraint(const IndependenceSystem& system) {
  json out;
  switch (system.kind()) {
    case SystemKind::kUniform:
      out = {{"kind", "uniform"}, {"k", system.k()}};
      break;
    case SystemKind::kPartition:
      out = {{"kind", "partition"},
             {"blocks", system.blocks()},
             {"capacities", system.capacities()}};
      break;
    case SystemKind::kIntersection: {
      json members = json::array();
      for (const auto& member : system.members()) {
        members.push_back(SerializeConstraint(member));
      }
      out = {{"kind", "intersection"}, {"members", members}};
      break;
    }
    case SystemKind::kExplicit:
      out = {{"kind", "explicit"}, {"sets", system.family()}};
      break;
    case SystemKind::kCustom:
      throw Error(ErrorKind::kInvalidArgument,
                  "custom system '" + system.name() + "' is not serializable");
  }
  out["name"] = system.name();
  return out;
}

}  // namespace

Instance ParseInstanceText(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::kParse, "parse error at byte " +
                                       std::to_string(e.byte) + ": " + e.what());
  }
  return ParseDocument(doc);
}

Instance ParseInstance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::kParse, "parse error at " + path + ": cannot open file");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return ParseInstanceText(buffer.str());
}

std::string SerializeInstance(const Instance& instance) {
  json items = json::array();
  for (const Item& item : instance.model.items) {
    json entry = {{"outcomes", item.outcomes}, {"probabilities", item.prior}};
    if (!item.label.empty()) entry["label"] = item.label;
    items.push_back(std::move(entry));
  }
  json doc = {{"name", instance.name},
              {"items", items},
              {"objective", SerializeObjective(instance.objective)},
              {"constraint", SerializeConstraint(instance.system)}};
  if (instance.declared_p) {
    const Rational& p = *instance.declared_p;
    if (p.den == 1) {
      doc["declared_p"] = p.num;
    } else {
      doc["declared_p"] = p.ToString();
    }
  }
  return doc.dump(2) + "\n";
}

}  // namespace adasub
