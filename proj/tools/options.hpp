#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "qldpc/codes/css_code.hpp"
#include "qldpc/sim/decoders.hpp"

namespace qldpc::cli {

/// Decoder config file plus per-field overrides.
struct DecoderFlags {
  std::string config;
  std::optional<std::string> type;
  std::optional<std::string> variant;
  std::optional<double> beta;
  std::optional<std::string> zero_beta;
  std::optional<std::string> schedule;
  std::optional<std::size_t> i_max;
  std::optional<double> llr_clip;
  std::optional<double> tau;
  std::optional<std::string> rule;
  std::optional<std::uint64_t> pi_seed;
  std::optional<std::size_t> threads;
  std::optional<std::string> label;

  /// Registers the flags; `option_name` is the flag naming the config file.
  void add(CLI::App& sub, const std::string& option_name = "--config", bool mbbp_flags = true);
  /// File contents with the given flags laid over them.
  nlohmann::json merged(nlohmann::json base = nlohmann::json::object()) const;
  sim::DecoderSpec spec() const;
};

/// Reads a code file, keeping the JSON for manifests.
struct LoadedCode {
  nlohmann::json source;
  codes::CssCode code;
};

LoadedCode load_code_file(const std::string& path);
codes::CssCode code_from_source(const nlohmann::json& source);

/// "hz" (syndromes of X errors, the default) or "hx".
const gf2::BinaryMatrix& pick_check(const codes::CssCode& code, const std::string& which);

}  // namespace qldpc::cli
