#pragma once

#include <cstdint>
#include <span>
#include <sstream>
#include <string>
#include <vector>

namespace talbot::cli {

/// Shortest round-trip decimal representation of a double.
std::string format_double(double v);

/// FNV-1a 64-bit hash, hex-encoded; used as the config fingerprint.
std::string fnv1a_hex(const std::string& bytes);

/// Deterministic CSV assembly: '#'-prefixed metadata lines, one header
/// row, then data rows formatted with format_double.
class CsvBuilder {
 public:
  void meta(const std::string& key, const std::string& value);
  void header(std::span<const std::string> names);
  void row(std::span<const double> values);
  const std::string& str() const { return text_; }

 private:
  std::string text_;
};

/// Write text to a file; throws std::ios_base::failure on failure.
void write_file(const std::string& path, const std::string& text);

}  // namespace talbot::cli
