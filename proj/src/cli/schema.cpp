#include "gibbs/cli/schema.hpp"

#include <cmath>
#include <sstream>

#include "gibbs/embedded_schemas.hpp"

namespace gibbs::cli {
namespace {

using nlohmann::json;

std::string kind_of(const json& v) {
  switch (v.type()) {
    case json::value_t::null: return "null";
    case json::value_t::boolean: return "boolean";
    case json::value_t::number_integer:
    case json::value_t::number_unsigned: return "integer";
    case json::value_t::number_float: return "number";
    case json::value_t::string: return "string";
    case json::value_t::array: return "array";
    case json::value_t::object: return "object";
    default: return "other";
  }
}

bool has_type(const json& v, const std::string& t) {
  const std::string k = kind_of(v);
  if (t == k) return true;
  if (t == "number") return k == "integer";
  // 3.0 counts as an integer, as in the schema spec
  if (t == "integer" && k == "number") {
    const double d = v.get<double>();
    return std::isfinite(d) && std::floor(d) == d;
  }
  return false;
}

std::string show(const json& v) {
  std::string s = v.dump();
  return s.size() > 40 ? s.substr(0, 37) + "..." : s;
}

class Validator {
 public:
  explicit Validator(const json& root) : root_(root) {}

  void check(const json& schema, const json& v, const std::string& path) {
    if (schema.contains("$ref")) {
      check(resolve(schema["$ref"].get<std::string>()), v, path);
      return;
    }
    if (schema.contains("anyOf")) {
      bool ok = false;
      for (const auto& alt : schema["anyOf"]) {
        Validator probe(root_);
        probe.check(alt, v, path);
        if (probe.errors.empty()) {
          ok = true;
          break;
        }
      }
      if (!ok) fail(path, "matches no alternative (" + show(v) + ")");
    }
    if (schema.contains("type")) {
      const json& t = schema["type"];
      bool ok = false;
      if (t.is_string()) ok = has_type(v, t.get<std::string>());
      else
        for (const auto& one : t) ok = ok || has_type(v, one.get<std::string>());
      if (!ok) {
        fail(path, "expected type " + t.dump() + ", got " + kind_of(v));
        return;
      }
    }
    if (schema.contains("enum")) {
      bool ok = false;
      for (const auto& e : schema["enum"]) ok = ok || e == v;
      if (!ok) fail(path, show(v) + " is not one of " + schema["enum"].dump());
    }
    if (v.is_number()) {
      const double x = v.get<double>();
      if (schema.contains("minimum") && x < schema["minimum"].get<double>())
        fail(path, show(v) + " is below the minimum " + schema["minimum"].dump());
      if (schema.contains("maximum") && x > schema["maximum"].get<double>())
        fail(path, show(v) + " exceeds the maximum " + schema["maximum"].dump());
      if (schema.contains("exclusiveMinimum") && !(x > schema["exclusiveMinimum"].get<double>()))
        fail(path, show(v) + " must exceed " + schema["exclusiveMinimum"].dump());
    }
    if (v.is_array()) {
      if (schema.contains("minItems") && v.size() < schema["minItems"].get<std::size_t>())
        fail(path, "needs at least " + schema["minItems"].dump() + " items");
      if (schema.contains("items"))
        for (std::size_t i = 0; i < v.size(); ++i) check(schema["items"], v[i], path + "[" + std::to_string(i) + "]");
    }
    if (v.is_object()) {
      const json empty = json::object();
      const json& props = schema.contains("properties") ? schema["properties"] : empty;
      if (schema.contains("required"))
        for (const auto& r : schema["required"])
          if (!v.contains(r.get<std::string>())) fail(path, "missing required key '" + r.get<std::string>() + "'");
      const bool closed = schema.contains("additionalProperties") && schema["additionalProperties"] == false;
      for (auto it = v.begin(); it != v.end(); ++it) {
        const std::string child = path + "/" + it.key();
        if (props.contains(it.key())) check(props[it.key()], it.value(), child);
        else if (closed) fail(child, "unknown key");
      }
    }
  }

  std::vector<std::string> errors;

 private:
  const json& resolve(const std::string& ref) {
    const std::string prefix = "#/$defs/";
    if (ref.rfind(prefix, 0) != 0 || !root_.contains("$defs") || !root_["$defs"].contains(ref.substr(prefix.size())))
      throw std::invalid_argument("schema: unsupported $ref " + ref);
    return root_["$defs"][ref.substr(prefix.size())];
  }
  void fail(const std::string& path, const std::string& msg) { errors.push_back((path.empty() ? "/" : path) + ": " + msg); }

  const json& root_;
};

json fill(const json& schema, json v) {
  if (!v.is_object() || !schema.contains("properties")) return v;
  for (auto it = schema["properties"].begin(); it != schema["properties"].end(); ++it) {
    const json& sub = it.value();
    if (!v.contains(it.key())) {
      if (!sub.contains("default")) continue;
      v[it.key()] = sub["default"];
    }
    v[it.key()] = fill(sub, v[it.key()]);
  }
  return v;
}

}  // namespace

std::vector<std::string> validate(const nlohmann::json& schema, const nlohmann::json& doc) {
  Validator val(schema);
  val.check(schema, doc, "");
  return val.errors;
}

nlohmann::json apply_defaults(const nlohmann::json& schema, nlohmann::json doc) { return fill(schema, std::move(doc)); }

const nlohmann::json& config_schema() {
  static const json s = json::parse(embedded::config_schema);
  return s;
}

const nlohmann::json& report_schema() {
  static const json s = json::parse(embedded::report_schema);
  return s;
}

}  // namespace gibbs::cli
