#pragma once

#include <string>
#include <vector>

namespace pairwise {

// Columnar text output: one '#'-prefixed header line naming the columns
// (units in the names), then tab-separated rows printed with %.17g so that
// reruns are byte-identical.
void write_table(const std::string& path, const std::vector<std::string>& columns,
                 const std::vector<std::vector<double>>& data);

std::string format_double(double v);

// SHA-256 of a file's contents, lowercase hex.
std::string sha256_file(const std::string& path);

}  // namespace pairwise
