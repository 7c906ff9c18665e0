#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

namespace qldpc::cli {

inline constexpr const char* kToolVersion = "0.1.0";

enum ExitCode : int {
  kOk = 0,
  kUsage = 2,
  kInvariant = 3,
  kMaxTrials = 4,
  kInterrupted = 130,
};

/// Bad flags or files; reported with exit status 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path);
nlohmann::json read_json(const std::string& path);
void write_file(const std::string& path, const std::string& contents);

std::string sha256_hex(const std::string& data);
/// UTC, second resolution, e.g. 2026-10-16T07:30:00Z.
std::string utc_timestamp();

/// "0.03:0.10:0.01" (inclusive) or "0.04,0.06" or a single rate.
std::vector<double> parse_rates(const std::string& text);
/// Whitespace-separated integers.
std::vector<std::size_t> parse_index_list(const std::string& text);

}  // namespace qldpc::cli
