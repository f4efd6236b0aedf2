#pragma once

#include <string>

namespace talbot::cli {

inline constexpr const char* kVersion = "0.1.0";

/// Execute a run configuration. Returns the process exit code:
/// 0 success, 2 schema violation, 3 numerical accuracy error, 4 I/O failure.
int run_file(const std::string& config_path, const std::string& out_dir, bool write_svg);

/// Parse and validate only.
int validate_file(const std::string& config_path);

}  // namespace talbot::cli
