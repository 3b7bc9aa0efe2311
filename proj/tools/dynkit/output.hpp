#pragma once

#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "dynkit/common.hpp"
#include "schema.hpp"

namespace dynkit::cli {

// 17 significant digits, "nan"/"inf" spelled out.
std::string format_double(double v);

// Tracks every file a run writes, for the manifest.
class OutputDir {
 public:
  explicit OutputDir(std::filesystem::path dir);

  const std::filesystem::path& path() const { return dir_; }
  const std::vector<std::string>& files() const { return files_; }
  // Registers name and returns its full path.
  std::filesystem::path add(const std::string& name);

 private:
  std::filesystem::path dir_;
  std::vector<std::string> files_;
};

class CsvWriter {
 public:
  CsvWriter(OutputDir& out, const std::string& name, const std::vector<std::string>& header);
  void row(const std::vector<double>& values);
  void close();

 private:
  std::ofstream os_;
  std::string path_;
};

struct Axis {
  std::string name;
  double start = 0.0;
  double step = 0.0;
  long long count = 0;
};

// field_<name>.f64 (little-endian float64, row-major, complex entries as re,im
// pairs) plus field_<name>.json describing shape, axes and conventions.
void write_field(OutputDir& out, const std::string& name, const RMatrix& values, const std::vector<Axis>& axes,
                 const json& conventions = json::object());
void write_field(OutputDir& out, const std::string& name, const CMatrix& values, const std::vector<Axis>& axes,
                 const json& conventions = json::object());

std::string sha256_file(const std::filesystem::path& path);

// Writes manifest.json through a temporary file and a rename.
void write_manifest(const OutputDir& out, json manifest);

}  // namespace dynkit::cli
