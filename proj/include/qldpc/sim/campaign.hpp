#pragma once

#include <atomic>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "qldpc/codes/css_code.hpp"
#include "qldpc/sim/decoders.hpp"
#include "qldpc/sim/noise.hpp"

namespace qldpc::sim {

inline constexpr double kWilsonZ = 1.959963984540054;

/// 95% Wilson score interval for k failures in n trials; [0, 1] when n = 0.
std::pair<double, double> wilson_interval(std::size_t k, std::size_t n, double z = kWilsonZ);

struct StopRule {
  std::size_t max_trials = 0;
  /// Stop at the trial that brings the failure count here; 0 runs max_trials.
  std::size_t target_failures = 0;
};

struct TrialRecord {
  std::uint64_t trial = 0;
  PauliError error;
  /// Estimates for the decoded sides; empty for a side not decoded.
  gf2::BitVector estimate_x;
  gf2::BitVector estimate_z;
  Outcome outcome = Outcome::success;
  bool converged = false;
  std::size_t iterations = 0;
  double time_ms = 0.0;
};

nlohmann::json to_json(const TrialRecord& record);

struct LerRow {
  std::string code;
  std::string decoder;
  double rate = 0.0;
  std::size_t trials = 0;
  std::size_t failures = 0;
  std::size_t convergence_failures = 0;
  double ler = 0.0;
  double ci_lo = 0.0;
  double ci_hi = 1.0;
  double mean_ms = 0.0;
  double max_ms = 0.0;
};

struct CampaignConfig {
  ErrorModel model;
  Side side = Side::x;
  StopRule stop;
  std::uint64_t seed = 0;
  std::size_t threads = 1;
  std::string code_label;
  /// Called in trial order, from the calling thread.
  std::function<void(const TrialRecord&)> on_record;
  /// Polled between chunks; a set flag ends the campaign with partial counts.
  const std::atomic<bool>* cancel = nullptr;
};

struct CampaignResult {
  LerRow row;
  bool reached_target = false;
  bool cancelled = false;
};

/// Trial t draws its error from the Philox stream (seed, t) alone, and results
/// are folded in trial order, so counts do not depend on the thread count.
/// Failures are logical and convergence failures together.
CampaignResult run_campaign(const codes::CssCode& code, const DecoderSpec& decoder,
                            const CampaignConfig& cfg);

struct PairedReport {
  std::size_t trials = 0;
  std::size_t failures_a = 0;
  std::size_t failures_b = 0;
  /// Trials that only a (only b) failed.
  std::size_t only_a = 0;
  std::size_t only_b = 0;
  /// failures_a / failures_b; 1 when both are zero.
  double ratio = 1.0;
};

/// Both decoders see the same errors for `trials` trials.
PairedReport paired_comparison(const codes::CssCode& code, const DecoderSpec& a,
                               const DecoderSpec& b, const ErrorModel& model, Side side,
                               std::size_t trials, std::uint64_t seed, std::size_t threads = 1);

/// Header plus one line per row. Rates use six fixed decimals; the timing
/// columns are omitted when include_timing is false.
std::string ler_csv(const std::vector<LerRow>& rows, bool include_timing = true);

}  // namespace qldpc::sim
