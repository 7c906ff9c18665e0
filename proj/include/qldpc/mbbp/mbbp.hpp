#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qldpc/bp/decoder.hpp"
#include "qldpc/tanner/subtrees.hpp"

namespace qldpc::mbbp {

enum class Rule { fws, lms };

const char* to_string(Rule r) noexcept;
Rule parse_rule(const std::string& text);

struct Candidate {
  gf2::BitVector estimate;
  std::size_t subtree = 0;
  std::size_t iterations = 0;
};

using CandidateList = std::vector<Candidate>;

/// Index of the entry maximizing multiplicity / (weight + 1); ties go to the
/// lower weight, then the earliest entry. Throws Errc::empty_list.
std::size_t fws_index(std::span<const Candidate> candidates);
/// Index of the first minimum-weight entry. Throws Errc::empty_list, and
/// Errc::invalid_argument unless p < 0.5.
std::size_t lms_index(std::span<const Candidate> candidates, double p);

gf2::BitVector fws_select(std::span<const Candidate> candidates);
gf2::BitVector lms_select(std::span<const Candidate> candidates, double p);

struct MbbpConfig {
  bp::DecoderConfig decoder;
  /// Stop once this fraction of instances has converged.
  double tau = 1.0;
  Rule rule = Rule::fws;
  /// Root order for the subtree partition; identity when unset.
  std::optional<std::uint64_t> pi_seed;
  /// Let non-converged final estimates enter the candidate list.
  bool include_nonconverged = false;
  /// Worker threads per decode; 1 steps the instances in lockstep.
  std::size_t threads = 1;

  void validate() const;
};

struct InstanceReport {
  std::size_t subtree = 0;
  bool converged = false;
  std::size_t iterations = 0;
};

struct MbbpResult {
  bp::DecodeResult result;
  CandidateList candidates;
  std::vector<InstanceReport> instances;
  /// Round at which collection stopped.
  std::size_t stop_round = 0;
};

/// Runs BP on every [H; H_t] with the syndrome extended by copying the bits
/// of the repeated rows, collects converged estimates and picks one.
///
/// The stop round is the first round by which ceil(tau * |T|) instances have
/// converged (or the last round run). Candidates are the instances converged
/// by then, in subtree order, so the result does not depend on threads.
class MbbpDecoder {
 public:
  MbbpDecoder(const gf2::BinaryMatrix& h, tanner::SubtreeCollection subtrees, MbbpConfig cfg);
  /// Builds the subtree partition from cfg.pi_seed.
  MbbpDecoder(const gf2::BinaryMatrix& h, MbbpConfig cfg);

  const MbbpConfig& config() const noexcept { return cfg_; }
  const tanner::SubtreeCollection& subtrees() const noexcept { return subtrees_; }
  std::size_t instance_count() const noexcept { return instances_.size(); }
  /// ceil(tau * instance_count()), at least 1.
  std::size_t required_converged() const noexcept;

  MbbpResult decode(const gf2::BitVector& syndrome, double p) const;

 private:
  struct Outcome {
    std::size_t converged_at = 0;  // 0 when not converged
    std::size_t iterations = 0;
    bp::DecodeResult result;
  };
  std::vector<Outcome> run_lockstep(std::span<const gf2::BitVector> syndromes,
                                    std::span<const double> priors) const;
  std::vector<Outcome> run_threaded(std::span<const gf2::BitVector> syndromes,
                                    std::span<const double> priors) const;

  gf2::BinaryMatrix h_;
  tanner::SubtreeCollection subtrees_;
  MbbpConfig cfg_;
  std::vector<bp::BpDecoder> instances_;
};

MbbpResult mbbp_decode(const gf2::BinaryMatrix& h, const tanner::SubtreeCollection& subtrees,
                       const gf2::BitVector& syndrome, double p, const MbbpConfig& cfg);

}  // namespace qldpc::mbbp
