#pragma once

#include <string>
#include <string_view>

#include "mrhs/constructions.hpp"
#include "mrhs/deficit.hpp"
#include "mrhs/equation.hpp"

namespace mrhs::io {

// System format, line oriented, UTF-8, '#' introduces a comment line:
//   MRHS 1
//   q <int>
//   n <int>
//   m <int>
//   per equation: "eq <t> <s>", then t rows of n entries, then s rows of t.
//
// Family format:
//   FAM 1
//   q <int>  /  n <int>  /  m <int>  /  t <int>
//   per set: "set <size>", then <size> rows of n entries.
std::string serialize_system(const MrhsSystem& sys);
MrhsSystem parse_system(std::string_view text);

std::string serialize_family(const VectorFamily& fam);
VectorFamily parse_family(std::string_view text);

// First significant token of the file: "MRHS" or "FAM".
std::string sniff_format(std::string_view text);

MrhsSystem load_system(const std::string& path);
VectorFamily load_family(const std::string& path);
void save_text(const std::string& path, std::string_view text);
std::string read_text(const std::string& path);

// Fixed-format decimal rendering used everywhere a double reaches an output
// file, so equal runs are byte-identical.
std::string format_double(double v);

}  // namespace mrhs::io
