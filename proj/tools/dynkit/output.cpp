#include "output.hpp"

#include <bit>
#include <cmath>
#include <cstdio>
#include <cstring>

#include <openssl/evp.h>

#include "config.hpp"

namespace dynkit::cli {

namespace fs = std::filesystem;

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

OutputDir::OutputDir(fs::path dir) : dir_(std::move(dir)) {
  std::error_code ec;
  fs::create_directories(dir_, ec);
  if (ec || !fs::is_directory(dir_)) throw IoError("cannot create output directory '" + dir_.string() + "'");
}

fs::path OutputDir::add(const std::string& name) {
  files_.push_back(name);
  return dir_ / name;
}

CsvWriter::CsvWriter(OutputDir& out, const std::string& name, const std::vector<std::string>& header)
    : path_(out.add(name).string()) {
  os_.open(path_, std::ios::binary | std::ios::trunc);
  if (!os_) throw IoError("cannot write '" + path_ + "'");
  for (size_t i = 0; i < header.size(); ++i) os_ << (i ? "," : "") << header[i];
  os_ << '\n';
}

void CsvWriter::row(const std::vector<double>& values) {
  for (size_t i = 0; i < values.size(); ++i) os_ << (i ? "," : "") << format_double(values[i]);
  os_ << '\n';
}

void CsvWriter::close() {
  os_.close();
  if (os_.fail()) throw IoError("error writing '" + path_ + "'");
}

namespace {

void put_le(std::ofstream& os, double v) {
  auto bits = std::bit_cast<std::uint64_t>(v);
  unsigned char b[8];
  for (int i = 0; i < 8; ++i) b[i] = static_cast<unsigned char>(bits >> (8 * i));
  os.write(reinterpret_cast<const char*>(b), 8);
}

template <typename Fill>
void write_field_impl(OutputDir& out, const std::string& name, Eigen::Index rows, Eigen::Index cols, bool complex,
                      const std::vector<Axis>& axes, const json& conventions, Fill fill) {
  const std::string stem = "field_" + name;
  {
    const fs::path p = out.add(stem + ".f64");
    std::ofstream os(p, std::ios::binary | std::ios::trunc);
    if (!os) throw IoError("cannot write '" + p.string() + "'");
    fill(os);
    os.close();
    if (os.fail()) throw IoError("error writing '" + p.string() + "'");
  }
  json side;
  side["data"] = stem + ".f64";
  side["dtype"] = "float64";
  side["byte_order"] = "little";
  side["order"] = "row-major";
  side["complex"] = complex;
  side["shape"] = json::array({rows, cols});
  json ax = json::array();
  for (const auto& a : axes) ax.push_back({{"name", a.name}, {"start", a.start}, {"step", a.step}, {"count", a.count}});
  side["axes"] = ax;
  side["conventions"] = conventions;
  const fs::path p = out.add(stem + ".json");
  std::ofstream os(p, std::ios::binary | std::ios::trunc);
  if (!os) throw IoError("cannot write '" + p.string() + "'");
  os << side.dump(2) << '\n';
  os.close();
  if (os.fail()) throw IoError("error writing '" + p.string() + "'");
}

}  // namespace

void write_field(OutputDir& out, const std::string& name, const RMatrix& v, const std::vector<Axis>& axes,
                 const json& conventions) {
  write_field_impl(out, name, v.rows(), v.cols(), false, axes, conventions, [&](std::ofstream& os) {
    for (Eigen::Index i = 0; i < v.rows(); ++i)
      for (Eigen::Index j = 0; j < v.cols(); ++j) put_le(os, v(i, j));
  });
}

void write_field(OutputDir& out, const std::string& name, const CMatrix& v, const std::vector<Axis>& axes,
                 const json& conventions) {
  write_field_impl(out, name, v.rows(), v.cols(), true, axes, conventions, [&](std::ofstream& os) {
    for (Eigen::Index i = 0; i < v.rows(); ++i)
      for (Eigen::Index j = 0; j < v.cols(); ++j) {
        put_le(os, v(i, j).real());
        put_le(os, v(i, j).imag());
      }
  });
}

std::string sha256_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read '" + path.string() + "'");
  EVP_MD_CTX* ctx = EVP_MD_CTX_new();
  if (!ctx || EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr) != 1) {
    EVP_MD_CTX_free(ctx);
    throw IoError("sha256 unavailable");
  }
  char buf[1 << 16];
  while (in) {
    in.read(buf, sizeof buf);
    if (in.gcount() > 0) EVP_DigestUpdate(ctx, buf, static_cast<size_t>(in.gcount()));
  }
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_DigestFinal_ex(ctx, md, &len);
  EVP_MD_CTX_free(ctx);
  static const char* hex = "0123456789abcdef";
  std::string s;
  for (unsigned int i = 0; i < len; ++i) {
    s += hex[md[i] >> 4];
    s += hex[md[i] & 15];
  }
  return s;
}

void write_manifest(const OutputDir& out, json manifest) {
  json files = json::array();
  for (const auto& f : out.files()) {
    const fs::path p = out.path() / f;
    files.push_back({{"path", f}, {"bytes", fs::file_size(p)}, {"sha256", sha256_file(p)}});
  }
  manifest["files"] = files;
  const fs::path final_path = out.path() / "manifest.json";
  const fs::path tmp = out.path() / "manifest.json.tmp";
  {
    std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
    if (!os) throw IoError("cannot write '" + tmp.string() + "'");
    os << manifest.dump(2) << '\n';
    os.close();
    if (os.fail()) throw IoError("error writing '" + tmp.string() + "'");
  }
  std::error_code ec;
  fs::rename(tmp, final_path, ec);
  if (ec) throw IoError("cannot finalize '" + final_path.string() + "': " + ec.message());
}

}  // namespace dynkit::cli
