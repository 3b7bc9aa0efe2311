#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "schema.hpp"

namespace dynkit::cli {

// Schema violations; reported with exit status 2.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(std::vector<std::string> diagnostics);
  const std::vector<std::string>& diagnostics() const { return diagnostics_; }

 private:
  std::vector<std::string> diagnostics_;
};

// Unreadable input or unwritable output; exit status 4.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

const std::vector<std::string>& task_names();

json read_config_file(const std::string& path);

// All problems of a parsed config; when the list is empty, *resolved holds
// the config with every default filled in.
std::vector<std::string> check_config(const json& raw, json* resolved = nullptr);

json load_config(const std::string& path);

}  // namespace dynkit::cli
