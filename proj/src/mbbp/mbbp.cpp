#include "qldpc/mbbp/mbbp.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <mutex>
#include <thread>
#include <unordered_map>

#include "qldpc/error.hpp"

namespace qldpc::mbbp {

using gf2::BinaryMatrix;
using gf2::BitVector;

const char* to_string(Rule r) noexcept { return r == Rule::lms ? "lms" : "fws"; }

Rule parse_rule(const std::string& text) {
  if (text == "fws") return Rule::fws;
  if (text == "lms") return Rule::lms;
  fail(Errc::parse_error, "unknown decision rule '" + text + "'");
}

std::size_t fws_index(std::span<const Candidate> candidates) {
  if (candidates.empty()) fail(Errc::empty_list, "FWS on an empty candidate list");
  std::unordered_map<BitVector, std::size_t, gf2::BitVectorHash> count;
  for (const auto& c : candidates) ++count[c.estimate];
  std::size_t best = 0;
  std::size_t best_count = count[candidates[0].estimate];
  std::size_t best_weight = candidates[0].estimate.weight();
  for (std::size_t i = 1; i < candidates.size(); ++i) {
    const std::size_t n = count[candidates[i].estimate];
    const std::size_t w = candidates[i].estimate.weight();
    // n / (w + 1) against best_count / (best_weight + 1), exactly.
    const std::size_t lhs = n * (best_weight + 1);
    const std::size_t rhs = best_count * (w + 1);
    if (lhs > rhs || (lhs == rhs && w < best_weight)) {
      best = i;
      best_count = n;
      best_weight = w;
    }
  }
  return best;
}

std::size_t lms_index(std::span<const Candidate> candidates, double p) {
  if (candidates.empty()) fail(Errc::empty_list, "LMS on an empty candidate list");
  if (!(p < 0.5)) fail(Errc::invalid_argument, "LMS needs p < 0.5");
  std::size_t best = 0;
  for (std::size_t i = 1; i < candidates.size(); ++i) {
    if (candidates[i].estimate.weight() < candidates[best].estimate.weight()) best = i;
  }
  return best;
}

BitVector fws_select(std::span<const Candidate> candidates) {
  return candidates[fws_index(candidates)].estimate;
}

BitVector lms_select(std::span<const Candidate> candidates, double p) {
  return candidates[lms_index(candidates, p)].estimate;
}

void MbbpConfig::validate() const {
  decoder.validate();
  if (!(tau > 0.0 && tau <= 1.0)) fail(Errc::invalid_argument, "tau must lie in (0, 1]");
  if (threads == 0) fail(Errc::invalid_argument, "threads must be at least 1");
}

namespace {

tanner::SubtreeCollection default_subtrees(const BinaryMatrix& h, const MbbpConfig& cfg) {
  const tanner::TannerGraph g(h);
  const auto pi = cfg.pi_seed ? tanner::random_permutation(h.rows(), *cfg.pi_seed)
                              : tanner::identity_permutation(h.rows());
  return tanner::maximal_subtrees(g, pi);
}

}  // namespace

MbbpDecoder::MbbpDecoder(const BinaryMatrix& h, MbbpConfig cfg)
    : MbbpDecoder(h, default_subtrees(h, cfg), cfg) {}

MbbpDecoder::MbbpDecoder(const BinaryMatrix& h, tanner::SubtreeCollection subtrees, MbbpConfig cfg)
    : h_(h), subtrees_(std::move(subtrees)), cfg_(cfg) {
  cfg_.validate();
  std::vector<bool> seen(h_.rows(), false);
  for (const auto& t : subtrees_.subtrees) {
    for (std::size_t c : t) {
      if (c >= h_.rows() || seen[c]) {
        fail(Errc::dimension_mismatch, "subtree collection does not partition the checks of H");
      }
      seen[c] = true;
    }
  }
  if (std::find(seen.begin(), seen.end(), false) != seen.end()) {
    fail(Errc::dimension_mismatch, "subtree collection does not cover every check of H");
  }
  instances_.reserve(subtrees_.size());
  for (const auto& t : subtrees_.subtrees) {
    instances_.emplace_back(tanner::redundant_matrix(h_, t), cfg_.decoder);
  }
}

std::size_t MbbpDecoder::required_converged() const noexcept {
  const double want = cfg_.tau * static_cast<double>(instances_.size());
  const auto need = static_cast<std::size_t>(std::ceil(want - 1e-9));
  return std::clamp<std::size_t>(need, 1, instances_.size());
}

std::vector<MbbpDecoder::Outcome> MbbpDecoder::run_lockstep(std::span<const BitVector> syndromes,
                                                            std::span<const double> priors) const {
  const std::size_t count = instances_.size();
  const std::size_t need = required_converged();
  std::vector<bp::BpDecoder::Run> runs;
  runs.reserve(count);
  for (std::size_t i = 0; i < count; ++i) runs.push_back(instances_[i].start(syndromes[i], priors));
  std::vector<Outcome> out(count);
  std::size_t converged = 0;
  for (std::size_t round = 1; round <= cfg_.decoder.i_max; ++round) {
    bool active = false;
    for (std::size_t i = 0; i < count; ++i) {
      if (runs[i].finished()) continue;
      active = true;
      if (runs[i].step() && out[i].converged_at == 0) {
        out[i].converged_at = round;
        ++converged;
      }
    }
    if (!active || converged >= need) break;
  }
  for (std::size_t i = 0; i < count; ++i) {
    out[i].iterations = runs[i].iterations();
    out[i].result = runs[i].result();
  }
  return out;
}

std::vector<MbbpDecoder::Outcome> MbbpDecoder::run_threaded(std::span<const BitVector> syndromes,
                                                            std::span<const double> priors) const {
  const std::size_t count = instances_.size();
  const std::size_t need = required_converged();
  std::vector<Outcome> out(count);
  // Upper bound on the stop round: the need-th smallest convergence round
  // seen so far. Instances never step past it.
  std::atomic<std::size_t> cutoff{cfg_.decoder.i_max};
  std::mutex mu;
  std::vector<std::size_t> rounds;
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(cfg_.threads);
  {
    std::vector<std::jthread> workers;
    for (std::size_t w = 0; w < std::min(cfg_.threads, count); ++w) {
      workers.emplace_back([&, w] {
        try {
          for (std::size_t i = next++; i < count; i = next++) {
            auto run = instances_[i].start(syndromes[i], priors);
            while (!run.finished() && run.iterations() < cutoff.load(std::memory_order_relaxed)) {
              if (run.step()) {
                out[i].converged_at = run.iterations();
                std::lock_guard lock(mu);
                rounds.insert(std::upper_bound(rounds.begin(), rounds.end(), run.iterations()),
                              run.iterations());
                if (rounds.size() >= need) cutoff.store(std::min(cutoff.load(), rounds[need - 1]));
              }
            }
            out[i].iterations = run.iterations();
            out[i].result = run.result();
          }
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

MbbpResult MbbpDecoder::decode(const BitVector& syndrome, double p) const {
  if (syndrome.size() != h_.rows()) {
    fail(Errc::dimension_mismatch, "syndrome length does not match the checks of H");
  }
  const std::vector<double> priors(h_.cols(), bp::prior_llr(p));
  std::vector<BitVector> syndromes;
  syndromes.reserve(instances_.size());
  for (const auto& t : subtrees_.subtrees) syndromes.push_back(tanner::extended_syndrome(syndrome, t));

  const bool lockstep = cfg_.threads == 1 || cfg_.include_nonconverged || instances_.size() == 1;
  std::vector<Outcome> outcomes = lockstep ? run_lockstep(syndromes, priors) : run_threaded(syndromes, priors);

  const std::size_t need = required_converged();
  std::vector<std::size_t> rounds;
  std::size_t last = 0;
  for (const auto& o : outcomes) {
    if (o.converged_at) rounds.push_back(o.converged_at);
    last = std::max(last, o.iterations);
  }
  std::sort(rounds.begin(), rounds.end());
  const std::size_t stop = rounds.size() >= need ? rounds[need - 1] : last;

  MbbpResult out;
  out.stop_round = stop;
  for (std::size_t i = 0; i < outcomes.size(); ++i) {
    const Outcome& o = outcomes[i];
    const bool converged = o.converged_at != 0 && o.converged_at <= stop;
    out.instances.push_back({i, converged, converged ? o.converged_at : std::min(o.iterations, stop)});
    if (converged) {
      if (h_.multiply(o.result.error_estimate) != syndrome) {
        fail(Errc::invariant_violation, "converged instance violates the base syndrome");
      }
      out.candidates.push_back({o.result.error_estimate, i, o.converged_at});
    } else if (cfg_.include_nonconverged) {
      out.candidates.push_back({o.result.error_estimate, i, o.iterations});
    }
  }

  bp::DecodeResult& r = out.result;
  r.iterations_used = stop;
  if (out.candidates.empty()) {
    r.error_estimate = BitVector(h_.cols());
    r.converged = false;
    r.posterior_llrs.assign(h_.cols(), 0.0);
    return out;
  }
  const std::size_t pick =
      cfg_.rule == Rule::fws ? fws_index(out.candidates) : lms_index(out.candidates, p);
  r.error_estimate = out.candidates[pick].estimate;
  r.converged = h_.multiply(r.error_estimate) == syndrome;
  r.posterior_llrs = outcomes[out.candidates[pick].subtree].result.posterior_llrs;
  return out;
}

MbbpResult mbbp_decode(const BinaryMatrix& h, const tanner::SubtreeCollection& subtrees,
                       const BitVector& syndrome, double p, const MbbpConfig& cfg) {
  return MbbpDecoder(h, subtrees, cfg).decode(syndrome, p);
}

}  // namespace qldpc::mbbp
