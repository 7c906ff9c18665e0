#include "qldpc/sim/campaign.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <limits>
#include <memory>
#include <thread>

#include "qldpc/error.hpp"
#include "qldpc/random/philox.hpp"

namespace qldpc::sim {

using gf2::BitVector;

std::pair<double, double> wilson_interval(std::size_t k, std::size_t n, double z) {
  if (k > n) fail(Errc::invalid_argument, "more failures than trials");
  if (n == 0) return {0.0, 1.0};
  const double nn = static_cast<double>(n);
  const double phat = static_cast<double>(k) / nn;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / nn;
  const double center = (phat + z2 / (2.0 * nn)) / denom;
  const double half = z / denom * std::sqrt(phat * (1.0 - phat) / nn + z2 / (4.0 * nn * nn));
  const double lo = k == 0 ? 0.0 : std::max(0.0, center - half);
  const double hi = k == n ? 1.0 : std::min(1.0, center + half);
  return {lo, hi};
}

nlohmann::json to_json(const TrialRecord& r) {
  nlohmann::json j{
      {"trial", r.trial},
      {"error_x", r.error.x.support()},
      {"error_z", r.error.z.support()},
      {"outcome", to_string(r.outcome)},
      {"converged", r.converged},
      {"iterations", r.iterations},
      {"time_ms", r.time_ms},
  };
  if (!r.estimate_x.empty()) j["estimate_x"] = r.estimate_x.support();
  if (!r.estimate_z.empty()) j["estimate_z"] = r.estimate_z.support();
  return j;
}

namespace {

struct SideDecoder {
  const gf2::BinaryMatrix* check;
  std::unique_ptr<SyndromeDecoder> decoder;
  Classifier classifier;
};

Outcome worse(Outcome a, Outcome b) {
  if (a == Outcome::convergence_failure || b == Outcome::convergence_failure) {
    return Outcome::convergence_failure;
  }
  if (a == Outcome::logical_failure || b == Outcome::logical_failure) return Outcome::logical_failure;
  return Outcome::success;
}

class TrialRunner {
 public:
  TrialRunner(const codes::CssCode& code, const DecoderSpec& spec, const CampaignConfig& cfg)
      : n_(code.n()), cfg_(cfg) {
    if (cfg.side != Side::z) {
      x_.emplace(SideDecoder{&code.h_z(), make_decoder(spec, code.h_z()), Classifier(code, Side::x)});
    }
    if (cfg.side != Side::x) {
      z_.emplace(SideDecoder{&code.h_x(), make_decoder(spec, code.h_x()), Classifier(code, Side::z)});
    }
  }

  TrialRecord run(std::uint64_t trial) const {
    TrialRecord rec;
    rec.trial = trial;
    random::PhiloxStream rng = random::PhiloxStream::for_trial(cfg_.seed, trial);
    rec.error = sample_error(cfg_.model, n_, rng);
    const double p = cfg_.model.marginal();

    rec.outcome = Outcome::success;
    rec.converged = true;
    const auto start = std::chrono::steady_clock::now();
    auto decode_side = [&](const SideDecoder& side, const BitVector& error, BitVector& estimate) {
      const BitVector syndrome = side.check->multiply(error);
      bp::DecodeResult res = side.decoder->decode(syndrome, p);
      rec.outcome = worse(rec.outcome, side.classifier.classify(error, res.error_estimate, res.converged));
      rec.converged = rec.converged && res.converged;
      rec.iterations = std::max(rec.iterations, res.iterations_used);
      estimate = std::move(res.error_estimate);
    };
    if (x_) decode_side(*x_, rec.error.x, rec.estimate_x);
    if (z_) decode_side(*z_, rec.error.z, rec.estimate_z);
    rec.time_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return rec;
  }

 private:
  std::size_t n_;
  const CampaignConfig& cfg_;
  std::optional<SideDecoder> x_;
  std::optional<SideDecoder> z_;
};

void run_chunk(const TrialRunner& runner, std::uint64_t first, std::vector<TrialRecord>& out,
               std::size_t threads) {
  if (threads <= 1 || out.size() == 1) {
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = runner.run(first + i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(threads);
  {
    std::vector<std::jthread> workers;
    for (std::size_t t = 0; t < threads; ++t) {
      workers.emplace_back([&, t] {
        try {
          for (std::size_t i = next++; i < out.size(); i = next++) out[i] = runner.run(first + i);
        } catch (...) {
          errors[t] = std::current_exception();
        }
      });
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace

CampaignResult run_campaign(const codes::CssCode& code, const DecoderSpec& decoder,
                            const CampaignConfig& cfg) {
  cfg.model.validate();
  if (cfg.stop.max_trials == 0) fail(Errc::invalid_argument, "max_trials must be positive");
  const TrialRunner runner(code, decoder, cfg);
  const std::size_t threads = std::max<std::size_t>(1, cfg.threads);
  const std::size_t chunk = std::max<std::size_t>(64, 16 * threads);

  CampaignResult out;
  LerRow& row = out.row;
  row.code = cfg.code_label.empty() ? code.parameters() : cfg.code_label;
  row.decoder = decoder.display_name();
  row.rate = cfg.model.rate;
  double total_ms = 0.0;

  std::vector<TrialRecord> buffer;
  bool done = false;
  while (!done && row.trials < cfg.stop.max_trials) {
    if (cfg.cancel && cfg.cancel->load()) {
      out.cancelled = true;
      break;
    }
    buffer.assign(std::min(chunk, cfg.stop.max_trials - row.trials), TrialRecord{});
    run_chunk(runner, row.trials, buffer, threads);
    for (const TrialRecord& rec : buffer) {
      ++row.trials;
      total_ms += rec.time_ms;
      row.max_ms = std::max(row.max_ms, rec.time_ms);
      if (rec.outcome != Outcome::success) ++row.failures;
      if (rec.outcome == Outcome::convergence_failure) ++row.convergence_failures;
      if (cfg.on_record) cfg.on_record(rec);
      if (cfg.stop.target_failures && row.failures >= cfg.stop.target_failures) {
        out.reached_target = true;
        done = true;
        break;
      }
    }
  }

  row.ler = row.trials ? static_cast<double>(row.failures) / static_cast<double>(row.trials) : 0.0;
  std::tie(row.ci_lo, row.ci_hi) = wilson_interval(row.failures, row.trials);
  row.mean_ms = row.trials ? total_ms / static_cast<double>(row.trials) : 0.0;
  return out;
}

PairedReport paired_comparison(const codes::CssCode& code, const DecoderSpec& a,
                               const DecoderSpec& b, const ErrorModel& model, Side side,
                               std::size_t trials, std::uint64_t seed, std::size_t threads) {
  std::vector<char> failed_a;
  std::vector<char> failed_b;
  CampaignConfig cfg;
  cfg.model = model;
  cfg.side = side;
  cfg.stop.max_trials = trials;
  cfg.seed = seed;
  cfg.threads = threads;
  cfg.on_record = [&](const TrialRecord& r) { failed_a.push_back(r.outcome != Outcome::success); };
  run_campaign(code, a, cfg);
  cfg.on_record = [&](const TrialRecord& r) { failed_b.push_back(r.outcome != Outcome::success); };
  run_campaign(code, b, cfg);

  PairedReport rep;
  rep.trials = trials;
  for (std::size_t t = 0; t < trials; ++t) {
    rep.failures_a += failed_a[t] ? 1 : 0;
    rep.failures_b += failed_b[t] ? 1 : 0;
    if (failed_a[t] && !failed_b[t]) ++rep.only_a;
    if (failed_b[t] && !failed_a[t]) ++rep.only_b;
  }
  if (rep.failures_b > 0) {
    rep.ratio = static_cast<double>(rep.failures_a) / static_cast<double>(rep.failures_b);
  } else if (rep.failures_a > 0) {
    rep.ratio = std::numeric_limits<double>::infinity();
  }
  return rep;
}

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string format(const char* fmt, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, fmt, v);
  return buf;
}

}  // namespace

std::string ler_csv(const std::vector<LerRow>& rows, bool include_timing) {
  std::string out = "code,decoder,rate,trials,failures,ler,ci_lo,ci_hi";
  out += include_timing ? ",mean_ms,max_ms,convergence_failures\n" : ",convergence_failures\n";
  for (const LerRow& r : rows) {
    out += csv_field(r.code) + "," + csv_field(r.decoder) + "," + format("%.6f", r.rate) + "," +
           std::to_string(r.trials) + "," + std::to_string(r.failures) + "," +
           format("%.6e", r.ler) + "," + format("%.6e", r.ci_lo) + "," + format("%.6e", r.ci_hi);
    if (include_timing) out += "," + format("%.6f", r.mean_ms) + "," + format("%.6f", r.max_ms);
    out += "," + std::to_string(r.convergence_failures) + "\n";
  }
  return out;
}

}  // namespace qldpc::sim
