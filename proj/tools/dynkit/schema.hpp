#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

namespace dynkit::cli {

using json = nlohmann::ordered_json;

struct Schema;
using SchemaPtr = std::shared_ptr<const Schema>;
using FieldList = std::vector<std::pair<std::string, SchemaPtr>>;

// Declarative description of one config value.
struct Schema {
  enum class Kind { number, integer, string, boolean, object, array, variant, cvalue };

  Kind kind = Kind::number;
  bool required = false;
  std::optional<json> fallback;  // default when absent
  std::optional<double> min, max;
  bool min_open = false;
  bool max_open = false;
  std::vector<std::string> choices;
  std::vector<long long> int_choices;
  FieldList fields;                         // object
  SchemaPtr item;                           // array
  size_t min_items = 0;
  std::map<std::string, FieldList> variants;  // variant, tagged by "type"
  std::string fallback_variant;
};

// Builders. Ranges are closed unless the *_open flag says otherwise.
SchemaPtr number(std::optional<double> fallback = std::nullopt);
SchemaPtr integer(std::optional<long long> fallback = std::nullopt);
SchemaPtr string_enum(std::vector<std::string> choices, std::optional<std::string> fallback = std::nullopt);
SchemaPtr boolean(bool fallback);
SchemaPtr object(FieldList fields, bool required = false);
SchemaPtr array(SchemaPtr item, size_t min_items = 0, std::optional<json> fallback = std::nullopt);
SchemaPtr variant(std::map<std::string, FieldList> variants, std::string fallback_variant = "");
// A number or a [re, im] pair.
SchemaPtr complex_value();

SchemaPtr required(SchemaPtr s);
SchemaPtr at_least(SchemaPtr s, double v, bool open = false);
SchemaPtr at_most(SchemaPtr s, double v, bool open = false);
SchemaPtr one_of(SchemaPtr s, std::vector<long long> values);

// Returns the value with defaults filled in; problems are appended to errors
// as "<path>: <message>".
json validate(const json& value, const Schema& schema, const std::string& path,
              std::vector<std::string>& errors);

}  // namespace dynkit::cli
