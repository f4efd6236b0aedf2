#include "cli/csv.hpp"

#include <charconv>
#include <fstream>
#include <system_error>

namespace talbot::cli {

std::string format_double(double v) {
  char buf[40];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

std::string fnv1a_hex(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  static const char* digits = "0123456789abcdef";
  for (int i = 15; i >= 0; --i) {
    buf[i] = digits[h & 0xF];
    h >>= 4;
  }
  buf[16] = '\0';
  return std::string(buf, 16);
}

void CsvBuilder::meta(const std::string& key, const std::string& value) {
  text_ += "# " + key + " " + value + "\n";
}

void CsvBuilder::header(std::span<const std::string> names) {
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (i) text_ += ',';
    text_ += names[i];
  }
  text_ += '\n';
}

void CsvBuilder::row(std::span<const double> values) {
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) text_ += ',';
    text_ += format_double(values[i]);
  }
  text_ += '\n';
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::ios_base::failure("cannot open output file: " + path);
  out << text;
  out.flush();
  if (!out) throw std::ios_base::failure("write failed: " + path);
}

}  // namespace talbot::cli
