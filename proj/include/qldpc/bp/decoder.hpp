#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "qldpc/gf2/binary_matrix.hpp"

namespace qldpc::bp {

enum class Variant { sum_product, min_sum };
/// serial sweeps the checks in index order; variable_serial sweeps the
/// variables, recomputing each incoming check message from the freshest
/// variable messages.
enum class Schedule { parallel, serial, variable_serial };

const char* to_string(Variant v) noexcept;
const char* to_string(Schedule s) noexcept;
/// Accepts "sum-product"/"sp" and "min-sum"/"ms".
Variant parse_variant(const std::string& text);
Schedule parse_schedule(const std::string& text);

/// Meaning of beta = 0: plain min-sum, or the iteration-dependent scale
/// 1 - 2^-t (t counted from 1).
enum class ZeroBeta { unscaled, adaptive };

const char* to_string(ZeroBeta z) noexcept;
ZeroBeta parse_zero_beta(const std::string& text);

struct DecoderConfig {
  Variant variant = Variant::min_sum;
  /// Min-sum check magnitude scale; see zero_beta for 0.
  double beta = 0.0;
  ZeroBeta zero_beta = ZeroBeta::unscaled;
  Schedule schedule = Schedule::parallel;
  std::size_t i_max = 100;
  double llr_clip = 30.0;
  /// Stop at the first iteration whose hard decision matches the syndrome.
  /// When false every decode runs i_max iterations and reports the final
  /// decision.
  bool halt_on_syndrome = true;

  /// Throws Errc::invalid_argument for i_max == 0, llr_clip <= 0 or beta
  /// outside [0, 1].
  void validate() const;
};

struct DecodeResult {
  gf2::BitVector error_estimate;
  bool converged = false;
  std::size_t iterations_used = 0;
  std::vector<double> posterior_llrs;
};

/// log((1 - p) / p); throws Errc::invalid_argument unless 0 < p < 1.
double prior_llr(double p);

/// Min-sum magnitude factor in iteration t >= 1.
double min_sum_scale(const DecoderConfig& cfg, std::size_t iteration) noexcept;

/// Check-to-variable messages of one check. outgoing[i] excludes incoming[i];
/// the sign is flipped when syndrome_bit is set, and a degree-one check sends
/// the clip magnitude.
void check_node_update(const DecoderConfig& cfg, std::span<const double> incoming, bool syndrome_bit,
                       std::span<double> outgoing, std::size_t iteration = 1);

/// Syndrome BP on a fixed parity-check matrix. Immutable after construction
/// and shareable between threads; each decode owns its message buffers.
class BpDecoder {
 public:
  BpDecoder(const gf2::BinaryMatrix& h, DecoderConfig cfg);

  const DecoderConfig& config() const noexcept { return cfg_; }
  std::size_t check_count() const noexcept { return check_ptr_.size() - 1; }
  std::size_t var_count() const noexcept { return var_ptr_.size() - 1; }

  /// One in-flight decode that advances an iteration at a time.
  class Run {
   public:
    /// Performs one iteration unless finished; true once converged.
    bool step();
    bool finished() const noexcept {
      return (converged_ && dec_->cfg_.halt_on_syndrome) || iterations_ >= dec_->cfg_.i_max;
    }
    bool converged() const noexcept { return converged_; }
    std::size_t iterations() const noexcept { return iterations_; }
    /// Largest message magnitude produced so far.
    double max_message() const noexcept { return max_message_; }
    DecodeResult result() const;

   private:
    friend class BpDecoder;
    Run(const BpDecoder& dec, const gf2::BitVector& syndrome, std::span<const double> priors);
    void parallel_iteration();
    void serial_iteration();
    void variable_serial_iteration();
    void hard_decision();
    double clip(double x) noexcept;

    const BpDecoder* dec_;
    std::vector<std::uint8_t> syndrome_;
    std::vector<double> priors_;
    std::vector<double> to_var_;    // check -> variable, indexed by edge
    std::vector<double> to_check_;  // variable -> check, indexed by edge
    std::vector<double> posterior_;
    std::vector<std::uint8_t> hard_;
    std::vector<double> scratch_in_;
    std::vector<double> scratch_out_;
    std::size_t iterations_ = 0;
    bool converged_ = false;
    double max_message_ = 0.0;
  };

  Run start(const gf2::BitVector& syndrome, std::span<const double> priors) const;
  Run start(const gf2::BitVector& syndrome, double p) const;

  DecodeResult decode(const gf2::BitVector& syndrome, std::span<const double> priors) const;
  DecodeResult decode(const gf2::BitVector& syndrome, double p) const;

 private:
  DecoderConfig cfg_;
  std::vector<std::size_t> check_ptr_;
  std::vector<std::size_t> edge_var_;
  std::vector<std::size_t> var_ptr_;
  std::vector<std::size_t> var_edges_;
  std::vector<std::size_t> edge_check_;
};

DecodeResult bp_decode(const gf2::BinaryMatrix& h, const gf2::BitVector& syndrome, double p,
                       const DecoderConfig& cfg);

/// Order-0 OSD: columns ranked from most to least likely in error (ascending
/// posterior LLR, ties by index), then the syndrome is solved on the first
/// independent columns in that order.
gf2::BitVector osd0_postprocess(const gf2::BinaryMatrix& h, const gf2::BitVector& syndrome,
                                std::span<const double> posterior_llrs);

/// BP followed by OSD-0 when BP does not converge.
class BpOsdDecoder {
 public:
  BpOsdDecoder(const gf2::BinaryMatrix& h, DecoderConfig cfg);

  /// converged reports syndrome consistency of the final estimate; BP's own
  /// outcome is in bp_converged.
  struct Result {
    DecodeResult decode;
    bool bp_converged = false;
  };
  Result decode(const gf2::BitVector& syndrome, double p) const;

 private:
  gf2::BinaryMatrix h_;
  BpDecoder bp_;
};

}  // namespace qldpc::bp
