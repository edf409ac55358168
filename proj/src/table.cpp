#include "pairwise/table.hpp"

#include <openssl/evp.h>

#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace pairwise {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_table(const std::string& path, const std::vector<std::string>& columns,
                 const std::vector<std::vector<double>>& data) {
  if (columns.size() != data.size()) throw std::invalid_argument("write_table: column name/count mismatch");
  std::size_t rows = data.empty() ? 0 : data[0].size();
  for (const auto& col : data)
    if (col.size() != rows) throw std::invalid_argument("write_table: ragged columns");

  std::ofstream out(path);
  if (!out) throw std::runtime_error("write_table: cannot open " + path);
  out << "#";
  for (const auto& name : columns) out << " " << name;
  out << "\n";
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < data.size(); ++c) {
      if (c) out << "\t";
      out << format_double(data[c][r]);
    }
    out << "\n";
  }
  if (!out) throw std::runtime_error("write_table: write failed for " + path);
}

std::string sha256_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("sha256_file: cannot open " + path);

  EVP_MD_CTX* ctx = EVP_MD_CTX_new();
  if (!ctx) throw std::runtime_error("sha256_file: EVP context allocation failed");
  EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr);

  char buf[1 << 15];
  while (in) {
    in.read(buf, sizeof buf);
    std::streamsize got = in.gcount();
    if (got > 0) EVP_DigestUpdate(ctx, buf, static_cast<std::size_t>(got));
  }
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_DigestFinal_ex(ctx, digest, &len);
  EVP_MD_CTX_free(ctx);

  static const char hex[] = "0123456789abcdef";
  std::string out;
  out.reserve(2 * len);
  for (unsigned int i = 0; i < len; ++i) {
    out.push_back(hex[digest[i] >> 4]);
    out.push_back(hex[digest[i] & 0xf]);
  }
  return out;
}

}  // namespace pairwise
