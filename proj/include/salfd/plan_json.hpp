#pragma once

#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "salfd/plan.hpp"

namespace salfd {

using ordered_json = nlohmann::ordered_json;

// Malformed plan or trace document. `field` is a JSON path such as
// "tasks[2].position"; `line` is set for syntax errors (1-based, 0 if unknown).
class FormatError : public Error {
public:
  FormatError(const std::string& message, std::string field = {}, int line = 0)
      : Error(compose(message, field, line)), field_(std::move(field)), line_(line) {}

  const std::string& field() const { return field_; }
  int line() const { return line_; }

private:
  static std::string compose(const std::string& message, const std::string& field, int line) {
    std::string out;
    if (line > 0) out += "line " + std::to_string(line) + ": ";
    if (!field.empty()) out += field + ": ";
    return out + message;
  }

  std::string field_;
  int line_;
};

// Plan parsed fine but would not build.
class PlanFeasibilityError : public FeasibilityError {
public:
  PlanFeasibilityError(Verdict v, int step)
      : FeasibilityError(std::move(v), "step " + std::to_string(step)), step_(step) {}
  int step() const { return step_; }

private:
  int step_;
};

namespace detail {

inline ordered_json parse_document(std::string_view text) {
  try {
    return ordered_json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    int line = 1;
    const std::size_t end = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
    for (std::size_t i = 0; i < end; ++i) {
      if (text[i] == '\n') ++line;
    }
    throw FormatError(std::string("malformed JSON: ") + e.what(), {}, line);
  }
}

inline const ordered_json& require(const ordered_json& obj, const char* key, const std::string& path) {
  if (!obj.is_object()) throw FormatError("expected an object", path);
  auto it = obj.find(key);
  if (it == obj.end()) throw FormatError(std::string("missing key '") + key + "'", path);
  return *it;
}

inline long long require_int(const ordered_json& v, const std::string& path) {
  if (!v.is_number_integer()) throw FormatError("expected an integer", path);
  return v.get<long long>();
}

inline double require_number(const ordered_json& v, const std::string& path) {
  if (!v.is_number()) throw FormatError("expected a number", path);
  return v.get<double>();
}

inline Cell parse_triple(const ordered_json& v, const std::string& path) {
  if (!v.is_array() || v.size() != 3) throw FormatError("expected [x, y, z]", path);
  return {static_cast<int>(require_int(v[0], path + "[0]")),
          static_cast<int>(require_int(v[1], path + "[1]")),
          static_cast<int>(require_int(v[2], path + "[2]"))};
}

}  // namespace detail

inline ordered_json to_json(const BrickCatalog& catalog, const BrickPlacement& b) {
  ordered_json j;
  j["brick"] = catalog.at(b.id).name();
  j["omega"] = to_int(b.omega);
  j["position"] = {b.position.x, b.position.y, b.position.z};
  j["color"] = std::string(to_string(b.color));
  return j;
}

// Reads {brick, omega, position, color}. Square bricks are normalized to omega 0.
inline BrickPlacement placement_from_json(const BrickCatalog& catalog, const ordered_json& j,
                                          const std::string& path = "placement") {
  using namespace detail;
  BrickPlacement b;
  const auto& brick = require(j, "brick", path);
  if (!brick.is_string()) throw FormatError("expected a brick name like \"2x4\"", path + ".brick");
  auto id = catalog.find(brick.get<std::string>());
  if (!id) throw FormatError("unknown brick '" + brick.get<std::string>() + "'", path + ".brick");
  b.id = *id;
  auto omega = orientation_from_int(require_int(require(j, "omega", path), path + ".omega"));
  if (!omega) throw FormatError("omega must be 0 or 1", path + ".omega");
  b.omega = *omega;
  b.position = parse_triple(require(j, "position", path), path + ".position");
  const auto& color = require(j, "color", path);
  if (!color.is_string()) throw FormatError("expected a color name", path + ".color");
  auto c = color_from_string(color.get<std::string>());
  if (!c || *c == Color::background) {
    throw FormatError("unknown color '" + color.get<std::string>() + "'", path + ".color");
  }
  b.color = *c;
  return normalized(catalog, b);
}

inline ordered_json to_json(const BrickCatalog& catalog, const ConstructionPlan& plan) {
  ordered_json j;
  j["version"] = 1;
  j["bounds"] = {plan.bounds.x, plan.bounds.y, plan.bounds.z};
  j["tasks"] = ordered_json::array();
  for (const Task& t : plan.tasks) {
    ordered_json task;
    task["step"] = t.step;
    task["action"] = std::string(to_string(t.action));
    const ordered_json placement = to_json(catalog, t.placement);
    for (const auto& [key, value] : placement.items()) task[key] = value;
    j["tasks"].push_back(std::move(task));
  }
  return j;
}

inline std::string serialize(const ConstructionPlan& plan,
                             const BrickCatalog& catalog = *BrickCatalog::standard()) {
  return to_json(catalog, plan).dump(2) + "\n";
}

// Parses and validates a plan document. Assembly plans must replay
// feasibly from an empty workspace; disassembly plans must be the reversal
// of such a plan.
inline ConstructionPlan parse_plan(std::string_view text,
                                   const CatalogPtr& catalog = BrickCatalog::standard()) {
  using namespace detail;
  const ordered_json doc = parse_document(text);
  if (!doc.is_object()) throw FormatError("plan must be a JSON object");
  if (require_int(require(doc, "version", ""), "version") != 1) {
    throw FormatError("unsupported version", "version");
  }
  const Cell b = parse_triple(require(doc, "bounds", ""), "bounds");
  if (b.x < 1 || b.y < 1 || b.z < 1) throw FormatError("bounds must be positive", "bounds");

  ConstructionPlan plan{{b.x, b.y, b.z}, {}};
  const auto& tasks = require(doc, "tasks", "");
  if (!tasks.is_array()) throw FormatError("expected an array", "tasks");
  for (std::size_t i = 0; i < tasks.size(); ++i) {
    const std::string path = "tasks[" + std::to_string(i) + "]";
    Task t;
    const long long step = require_int(require(tasks[i], "step", path), path + ".step");
    const long long expected = static_cast<long long>(i) + 1;
    if (step != expected) {
      throw FormatError("step " + std::to_string(expected) + " missing (found step " +
                            std::to_string(step) + ")",
                        path + ".step");
    }
    t.step = static_cast<int>(step);
    const auto& action = require(tasks[i], "action", path);
    if (action == "assemble") {
      t.action = Action::assemble;
    } else if (action == "disassemble") {
      t.action = Action::disassemble;
    } else {
      throw FormatError("action must be \"assemble\" or \"disassemble\"", path + ".action");
    }
    t.placement = placement_from_json(*catalog, tasks[i], path);
    plan.tasks.push_back(t);
  }

  if (!plan.is_assembly() && !plan.is_disassembly()) {
    throw FormatError("plan mixes assemble and disassemble actions", "tasks");
  }
  // Validate geometry by building the equivalent assembly sequence.
  Assembly a(catalog, plan.bounds);
  const std::size_t n = plan.tasks.size();
  for (std::size_t k = 0; k < n; ++k) {
    const Task& t = plan.is_assembly() ? plan.tasks[k] : plan.tasks[n - 1 - k];
    Verdict v = a.check(t.placement);
    if (!v.ok()) throw PlanFeasibilityError(std::move(v), t.step);
    a.push(t.placement);
  }
  return plan;
}

}  // namespace salfd
