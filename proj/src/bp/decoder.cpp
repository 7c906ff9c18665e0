#include "qldpc/bp/decoder.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "qldpc/error.hpp"

namespace qldpc::bp {

using gf2::BinaryMatrix;
using gf2::BitVector;

namespace {

constexpr double kTanhLimit = 1.0 - 1e-12;
// Posteriors this close to zero are ties and decide 0; sums of messages that
// cancel exactly in real arithmetic can leave rounding residue of either sign.
constexpr double kTieTolerance = 1e-9;

}  // namespace

const char* to_string(Variant v) noexcept {
  return v == Variant::sum_product ? "sum-product" : "min-sum";
}

const char* to_string(Schedule s) noexcept {
  switch (s) {
    case Schedule::serial: return "serial";
    case Schedule::variable_serial: return "variable-serial";
    case Schedule::parallel: break;
  }
  return "parallel";
}

Variant parse_variant(const std::string& text) {
  if (text == "sum-product" || text == "sp") return Variant::sum_product;
  if (text == "min-sum" || text == "ms") return Variant::min_sum;
  fail(Errc::parse_error, "unknown BP variant '" + text + "'");
}

Schedule parse_schedule(const std::string& text) {
  if (text == "parallel" || text == "flooding") return Schedule::parallel;
  if (text == "serial" || text == "layered") return Schedule::serial;
  if (text == "variable-serial" || text == "shuffled") return Schedule::variable_serial;
  fail(Errc::parse_error, "unknown BP schedule '" + text + "'");
}

const char* to_string(ZeroBeta z) noexcept { return z == ZeroBeta::adaptive ? "adaptive" : "unscaled"; }

ZeroBeta parse_zero_beta(const std::string& text) {
  if (text == "unscaled") return ZeroBeta::unscaled;
  if (text == "adaptive") return ZeroBeta::adaptive;
  fail(Errc::parse_error, "unknown zero-beta mode '" + text + "'");
}

void DecoderConfig::validate() const {
  if (i_max == 0) fail(Errc::invalid_argument, "i_max must be at least 1");
  if (!(llr_clip > 0.0)) fail(Errc::invalid_argument, "llr_clip must be positive");
  if (!(beta >= 0.0 && beta <= 1.0)) fail(Errc::invalid_argument, "beta must lie in [0, 1]");
}

double prior_llr(double p) {
  if (!(p > 0.0 && p < 1.0)) fail(Errc::invalid_argument, "error probability must lie in (0, 1)");
  return std::log((1.0 - p) / p);
}

double min_sum_scale(const DecoderConfig& cfg, std::size_t iteration) noexcept {
  if (cfg.beta > 0.0) return cfg.beta;
  if (cfg.zero_beta == ZeroBeta::adaptive) return 1.0 - std::ldexp(1.0, -static_cast<int>(std::min<std::size_t>(iteration, 1000)));
  return 1.0;
}

void check_node_update(const DecoderConfig& cfg, std::span<const double> incoming, bool syndrome_bit,
                       std::span<double> outgoing, std::size_t iteration) {
  const std::size_t d = incoming.size();
  const double sign = syndrome_bit ? -1.0 : 1.0;
  if (d == 1) {
    outgoing[0] = sign * cfg.llr_clip;
    return;
  }
  if (cfg.variant == Variant::min_sum) {
    const double scale = min_sum_scale(cfg, iteration);
    double min1 = std::numeric_limits<double>::infinity();
    double min2 = min1;
    std::size_t arg = 0;
    bool negative = syndrome_bit;
    for (std::size_t i = 0; i < d; ++i) {
      const double m = std::fabs(incoming[i]);
      negative ^= incoming[i] < 0.0;
      if (m < min1) {
        min2 = min1;
        min1 = m;
        arg = i;
      } else if (m < min2) {
        min2 = m;
      }
    }
    for (std::size_t i = 0; i < d; ++i) {
      const double mag = std::min(scale * (i == arg ? min2 : min1), cfg.llr_clip);
      const bool neg = negative ^ (incoming[i] < 0.0);
      outgoing[i] = neg ? -mag : mag;
    }
    return;
  }
  // Sum-product: products of tanh(m/2) over all other inputs via a forward
  // pass into outgoing and a backward running product.
  double forward = 1.0;
  for (std::size_t i = 0; i < d; ++i) {
    outgoing[i] = forward;
    forward *= std::tanh(0.5 * incoming[i]);
  }
  double backward = 1.0;
  for (std::size_t i = d; i-- > 0;) {
    const double prod = std::clamp(outgoing[i] * backward, -kTanhLimit, kTanhLimit);
    backward *= std::tanh(0.5 * incoming[i]);
    const double msg = std::clamp(2.0 * std::atanh(prod), -cfg.llr_clip, cfg.llr_clip);
    outgoing[i] = sign * msg;
  }
}

BpDecoder::BpDecoder(const BinaryMatrix& h, DecoderConfig cfg) : cfg_(cfg) {
  cfg_.validate();
  check_ptr_.assign(1, 0);
  for (std::size_t r = 0; r < h.rows(); ++r) {
    for (std::size_t c : h.row_support(r)) edge_var_.push_back(c);
    check_ptr_.push_back(edge_var_.size());
  }
  var_ptr_.assign(h.cols() + 1, 0);
  for (std::size_t v : edge_var_) ++var_ptr_[v + 1];
  for (std::size_t v = 0; v < h.cols(); ++v) var_ptr_[v + 1] += var_ptr_[v];
  var_edges_.resize(edge_var_.size());
  std::vector<std::size_t> fill(var_ptr_.begin(), var_ptr_.end() - 1);
  for (std::size_t e = 0; e < edge_var_.size(); ++e) var_edges_[fill[edge_var_[e]]++] = e;
  edge_check_.resize(edge_var_.size());
  for (std::size_t c = 0; c + 1 < check_ptr_.size(); ++c) {
    for (std::size_t e = check_ptr_[c]; e < check_ptr_[c + 1]; ++e) edge_check_[e] = c;
  }
}

BpDecoder::Run::Run(const BpDecoder& dec, const BitVector& syndrome, std::span<const double> priors)
    : dec_(&dec), priors_(priors.begin(), priors.end()) {
  if (syndrome.size() != dec.check_count()) {
    fail(Errc::dimension_mismatch, "syndrome length " + std::to_string(syndrome.size()) +
                                       " does not match " + std::to_string(dec.check_count()) +
                                       " checks");
  }
  if (priors.size() != dec.var_count()) {
    fail(Errc::dimension_mismatch, "prior count does not match the number of variables");
  }
  syndrome_.assign(dec.check_count(), 0);
  for (std::size_t c : syndrome.support()) syndrome_[c] = 1;
  const std::size_t edges = dec.edge_var_.size();
  to_var_.assign(edges, 0.0);
  to_check_.resize(edges);
  for (std::size_t e = 0; e < edges; ++e) to_check_[e] = clip(priors_[dec.edge_var_[e]]);
  posterior_ = priors_;
  hard_.assign(dec.var_count(), 0);
  std::size_t max_degree = 0;
  for (std::size_t c = 0; c < dec.check_count(); ++c) {
    max_degree = std::max(max_degree, dec.check_ptr_[c + 1] - dec.check_ptr_[c]);
  }
  scratch_in_.resize(max_degree);
  scratch_out_.resize(max_degree);
}

double BpDecoder::Run::clip(double x) noexcept {
  const double lim = dec_->cfg_.llr_clip;
  x = std::clamp(x, -lim, lim);
  max_message_ = std::max(max_message_, std::fabs(x));
  return x;
}

void BpDecoder::Run::parallel_iteration() {
  const BpDecoder& d = *dec_;
  for (std::size_t c = 0; c + 1 < d.check_ptr_.size(); ++c) {
    const std::size_t b = d.check_ptr_[c];
    const std::size_t deg = d.check_ptr_[c + 1] - b;
    if (deg == 0) continue;
    check_node_update(d.cfg_, {to_check_.data() + b, deg}, syndrome_[c], {to_var_.data() + b, deg},
                      iterations_ + 1);
    for (std::size_t e = b; e < b + deg; ++e) max_message_ = std::max(max_message_, std::fabs(to_var_[e]));
  }
  for (std::size_t v = 0; v + 1 < d.var_ptr_.size(); ++v) {
    double sum = priors_[v];
    for (std::size_t k = d.var_ptr_[v]; k < d.var_ptr_[v + 1]; ++k) sum += to_var_[d.var_edges_[k]];
    posterior_[v] = sum;
    for (std::size_t k = d.var_ptr_[v]; k < d.var_ptr_[v + 1]; ++k) {
      const std::size_t e = d.var_edges_[k];
      to_check_[e] = clip(sum - to_var_[e]);
    }
  }
}

void BpDecoder::Run::serial_iteration() {
  const BpDecoder& d = *dec_;
  for (std::size_t c = 0; c + 1 < d.check_ptr_.size(); ++c) {
    const std::size_t b = d.check_ptr_[c];
    const std::size_t deg = d.check_ptr_[c + 1] - b;
    if (deg == 0) continue;
    for (std::size_t i = 0; i < deg; ++i) {
      const std::size_t e = b + i;
      to_check_[e] = clip(posterior_[d.edge_var_[e]] - to_var_[e]);
      scratch_in_[i] = to_check_[e];
    }
    check_node_update(d.cfg_, {scratch_in_.data(), deg}, syndrome_[c], {scratch_out_.data(), deg},
                      iterations_ + 1);
    for (std::size_t i = 0; i < deg; ++i) {
      const std::size_t e = b + i;
      to_var_[e] = scratch_out_[i];
      max_message_ = std::max(max_message_, std::fabs(to_var_[e]));
      posterior_[d.edge_var_[e]] = to_check_[e] + to_var_[e];
    }
  }
}

void BpDecoder::Run::variable_serial_iteration() {
  const BpDecoder& d = *dec_;
  for (std::size_t v = 0; v + 1 < d.var_ptr_.size(); ++v) {
    double sum = priors_[v];
    for (std::size_t k = d.var_ptr_[v]; k < d.var_ptr_[v + 1]; ++k) {
      const std::size_t e = d.var_edges_[k];
      const std::size_t c = d.edge_check_[e];
      const std::size_t b = d.check_ptr_[c];
      const std::size_t deg = d.check_ptr_[c + 1] - b;
      check_node_update(d.cfg_, {to_check_.data() + b, deg}, syndrome_[c], {scratch_out_.data(), deg},
                        iterations_ + 1);
      to_var_[e] = scratch_out_[e - b];
      max_message_ = std::max(max_message_, std::fabs(to_var_[e]));
      sum += to_var_[e];
    }
    posterior_[v] = sum;
    for (std::size_t k = d.var_ptr_[v]; k < d.var_ptr_[v + 1]; ++k) {
      const std::size_t e = d.var_edges_[k];
      to_check_[e] = clip(sum - to_var_[e]);
    }
  }
}

void BpDecoder::Run::hard_decision() {
  const BpDecoder& d = *dec_;
  for (std::size_t v = 0; v < posterior_.size(); ++v) hard_[v] = posterior_[v] < -kTieTolerance;
  for (std::size_t c = 0; c + 1 < d.check_ptr_.size(); ++c) {
    std::uint8_t parity = syndrome_[c];
    for (std::size_t e = d.check_ptr_[c]; e < d.check_ptr_[c + 1]; ++e) parity ^= hard_[d.edge_var_[e]];
    if (parity) {
      converged_ = false;
      return;
    }
  }
  converged_ = true;
}

bool BpDecoder::Run::step() {
  if (finished()) return converged_;
  switch (dec_->cfg_.schedule) {
    case Schedule::serial: serial_iteration(); break;
    case Schedule::variable_serial: variable_serial_iteration(); break;
    case Schedule::parallel: parallel_iteration(); break;
  }
  ++iterations_;
  hard_decision();
  return converged_;
}

DecodeResult BpDecoder::Run::result() const {
  DecodeResult out;
  out.error_estimate = BitVector(hard_.size());
  for (std::size_t v = 0; v < hard_.size(); ++v) {
    if (hard_[v]) out.error_estimate.set(v);
  }
  out.converged = converged_;
  out.iterations_used = iterations_;
  out.posterior_llrs = posterior_;
  return out;
}

BpDecoder::Run BpDecoder::start(const BitVector& syndrome, std::span<const double> priors) const {
  return Run(*this, syndrome, priors);
}

BpDecoder::Run BpDecoder::start(const BitVector& syndrome, double p) const {
  const std::vector<double> priors(var_count(), prior_llr(p));
  return Run(*this, syndrome, priors);
}

DecodeResult BpDecoder::decode(const BitVector& syndrome, std::span<const double> priors) const {
  Run run = start(syndrome, priors);
  while (!run.finished()) run.step();
  return run.result();
}

DecodeResult BpDecoder::decode(const BitVector& syndrome, double p) const {
  Run run = start(syndrome, p);
  while (!run.finished()) run.step();
  return run.result();
}

DecodeResult bp_decode(const BinaryMatrix& h, const BitVector& syndrome, double p,
                       const DecoderConfig& cfg) {
  return BpDecoder(h, cfg).decode(syndrome, p);
}

BitVector osd0_postprocess(const BinaryMatrix& h, const BitVector& syndrome,
                           std::span<const double> posterior_llrs) {
  if (posterior_llrs.size() != h.cols()) {
    fail(Errc::dimension_mismatch, "posterior count does not match the number of columns");
  }
  std::vector<std::size_t> order(h.cols());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return posterior_llrs[a] < posterior_llrs[b];
  });
  return gf2::solve_or_project(h, syndrome, order);
}

BpOsdDecoder::BpOsdDecoder(const BinaryMatrix& h, DecoderConfig cfg) : h_(h), bp_(h, cfg) {}

BpOsdDecoder::Result BpOsdDecoder::decode(const BitVector& syndrome, double p) const {
  Result out;
  out.decode = bp_.decode(syndrome, p);
  out.bp_converged = out.decode.converged;
  if (!out.bp_converged) {
    out.decode.error_estimate = osd0_postprocess(h_, syndrome, out.decode.posterior_llrs);
    out.decode.converged = true;
  }
  return out;
}

}  // namespace qldpc::bp
