#include "schema.hpp"

#include <cmath>
#include <sstream>

namespace dynkit::cli {

namespace {

std::shared_ptr<Schema> make(Schema::Kind k) {
  auto s = std::make_shared<Schema>();
  s->kind = k;
  return s;
}

std::shared_ptr<Schema> copy(const SchemaPtr& s) { return std::make_shared<Schema>(*s); }

std::string join(const std::vector<std::string>& v) {
  std::string out;
  for (size_t i = 0; i < v.size(); ++i) out += (i ? ", " : "") + v[i];
  return out;
}

std::string fmt(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

std::string child(const std::string& path, const std::string& key) { return path + "/" + key; }

void check_range(double v, const Schema& s, const std::string& path, std::vector<std::string>& errors) {
  if (s.min) {
    if (s.min_open ? !(v > *s.min) : !(v >= *s.min))
      errors.push_back(path + ": must be " + (s.min_open ? "> " : ">= ") + fmt(*s.min) + ", got " + fmt(v));
  }
  if (s.max) {
    if (s.max_open ? !(v < *s.max) : !(v <= *s.max))
      errors.push_back(path + ": must be " + (s.max_open ? "< " : "<= ") + fmt(*s.max) + ", got " + fmt(v));
  }
}

json validate_fields(const json& value, const FieldList& fields, const std::string& path,
                     std::vector<std::string>& errors, const char* skip = nullptr) {
  json out = json::object();
  for (auto it = value.begin(); it != value.end(); ++it) {
    if (skip && it.key() == skip) continue;
    bool known = false;
    for (const auto& f : fields) known = known || f.first == it.key();
    if (!known) errors.push_back(child(path, it.key()) + ": unknown key");
  }
  for (const auto& [name, schema] : fields) {
    const std::string p = child(path, name);
    if (value.contains(name)) {
      json v = validate(value.at(name), *schema, p, errors);
      if (!v.is_null()) out[name] = std::move(v);
    } else if (schema->fallback) {
      out[name] = validate(*schema->fallback, *schema, p, errors);
    } else if (schema->kind == Schema::Kind::object && !schema->required) {
      // optional blocks stay absent
    } else if (schema->required) {
      errors.push_back(p + ": required key missing");
    }
  }
  return out;
}

}  // namespace

SchemaPtr number(std::optional<double> fallback) {
  auto s = make(Schema::Kind::number);
  if (fallback) s->fallback = *fallback;
  return s;
}

SchemaPtr integer(std::optional<long long> fallback) {
  auto s = make(Schema::Kind::integer);
  if (fallback) s->fallback = *fallback;
  return s;
}

SchemaPtr string_enum(std::vector<std::string> choices, std::optional<std::string> fallback) {
  auto s = make(Schema::Kind::string);
  s->choices = std::move(choices);
  if (fallback) s->fallback = *fallback;
  return s;
}

SchemaPtr boolean(bool fallback) {
  auto s = make(Schema::Kind::boolean);
  s->fallback = fallback;
  return s;
}

SchemaPtr object(FieldList fields, bool req) {
  auto s = make(Schema::Kind::object);
  s->fields = std::move(fields);
  s->required = req;
  return s;
}

SchemaPtr array(SchemaPtr item, size_t min_items, std::optional<json> fallback) {
  auto s = make(Schema::Kind::array);
  s->item = std::move(item);
  s->min_items = min_items;
  s->fallback = std::move(fallback);
  return s;
}

SchemaPtr variant(std::map<std::string, FieldList> variants, std::string fallback_variant) {
  auto s = make(Schema::Kind::variant);
  s->variants = std::move(variants);
  s->fallback_variant = std::move(fallback_variant);
  if (!s->fallback_variant.empty()) s->fallback = json{{"type", s->fallback_variant}};
  return s;
}

SchemaPtr complex_value() { return make(Schema::Kind::cvalue); }

SchemaPtr required(SchemaPtr s) {
  auto c = copy(s);
  c->required = true;
  c->fallback.reset();
  return c;
}

SchemaPtr at_least(SchemaPtr s, double v, bool open) {
  auto c = copy(s);
  c->min = v;
  c->min_open = open;
  return c;
}

SchemaPtr at_most(SchemaPtr s, double v, bool open) {
  auto c = copy(s);
  c->max = v;
  c->max_open = open;
  return c;
}

SchemaPtr one_of(SchemaPtr s, std::vector<long long> values) {
  auto c = copy(s);
  c->int_choices = std::move(values);
  return c;
}

json validate(const json& value, const Schema& s, const std::string& path, std::vector<std::string>& errors) {
  switch (s.kind) {
    case Schema::Kind::number: {
      if (!value.is_number()) {
        errors.push_back(path + ": expected a number");
        return nullptr;
      }
      const double v = value.get<double>();
      if (!std::isfinite(v)) {
        errors.push_back(path + ": must be finite");
        return nullptr;
      }
      check_range(v, s, path, errors);
      return v;
    }
    case Schema::Kind::integer: {
      if (!value.is_number_integer()) {
        errors.push_back(path + ": expected an integer");
        return nullptr;
      }
      const long long v = value.get<long long>();
      check_range(static_cast<double>(v), s, path, errors);
      if (!s.int_choices.empty()) {
        bool ok = false;
        std::vector<std::string> names;
        for (long long c : s.int_choices) {
          ok = ok || c == v;
          names.push_back(std::to_string(c));
        }
        if (!ok) errors.push_back(path + ": must be one of " + join(names) + ", got " + std::to_string(v));
      }
      return v;
    }
    case Schema::Kind::string: {
      if (!value.is_string()) {
        errors.push_back(path + ": expected a string");
        return nullptr;
      }
      const auto v = value.get<std::string>();
      if (!s.choices.empty()) {
        bool ok = false;
        for (const auto& c : s.choices) ok = ok || c == v;
        if (!ok) errors.push_back(path + ": must be one of " + join(s.choices) + ", got '" + v + "'");
      }
      return v;
    }
    case Schema::Kind::boolean:
      if (!value.is_boolean()) {
        errors.push_back(path + ": expected true or false");
        return nullptr;
      }
      return value;
    case Schema::Kind::object:
      if (!value.is_object()) {
        errors.push_back(path + ": expected an object");
        return nullptr;
      }
      return validate_fields(value, s.fields, path, errors);
    case Schema::Kind::array: {
      if (!value.is_array()) {
        errors.push_back(path + ": expected an array");
        return nullptr;
      }
      if (value.size() < s.min_items)
        errors.push_back(path + ": needs at least " + std::to_string(s.min_items) + " entries");
      json out = json::array();
      for (size_t i = 0; i < value.size(); ++i) out.push_back(validate(value[i], *s.item, child(path, std::to_string(i)), errors));
      return out;
    }
    case Schema::Kind::variant: {
      if (!value.is_object()) {
        errors.push_back(path + ": expected an object with a 'type' key");
        return nullptr;
      }
      std::vector<std::string> names;
      for (const auto& v : s.variants) names.push_back(v.first);
      if (!value.contains("type") || !value.at("type").is_string()) {
        errors.push_back(path + "/type: required, one of " + join(names));
        return nullptr;
      }
      const auto type = value.at("type").get<std::string>();
      auto it = s.variants.find(type);
      if (it == s.variants.end()) {
        errors.push_back(path + "/type: must be one of " + join(names) + ", got '" + type + "'");
        return nullptr;
      }
      json out = json{{"type", type}};
      json rest = validate_fields(value, it->second, path, errors, "type");
      for (auto f = rest.begin(); f != rest.end(); ++f) out[f.key()] = f.value();
      return out;
    }
    case Schema::Kind::cvalue:
      if (value.is_number()) return json::array({value.get<double>(), 0.0});
      if (value.is_array() && value.size() == 2 && value[0].is_number() && value[1].is_number())
        return json::array({value[0].get<double>(), value[1].get<double>()});
      errors.push_back(path + ": expected a number or a [re, im] pair");
      return nullptr;
  }
  return nullptr;
}

}  // namespace dynkit::cli
