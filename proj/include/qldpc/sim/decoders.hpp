#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>

#include <json.hpp>

#include "qldpc/bp/decoder.hpp"
#include "qldpc/gf2/binary_matrix.hpp"
#include "qldpc/mbbp/mbbp.hpp"

namespace qldpc::sim {

enum class DecoderKind { bp, bp_osd0, mbbp };

const char* to_string(DecoderKind k) noexcept;
/// "bp", "bp-osd0" or "mbbp".
DecoderKind parse_decoder_kind(const std::string& text);

/// Serializable description of a decoder; the simulator builds one decoder
/// per (spec, check matrix).
struct DecoderSpec {
  DecoderKind kind = DecoderKind::bp;
  bp::DecoderConfig bp;
  double tau = 1.0;
  mbbp::Rule rule = mbbp::Rule::fws;
  std::optional<std::uint64_t> pi_seed;
  bool include_nonconverged = false;
  std::size_t threads = 1;
  /// Printed in tables; defaults to the kind.
  std::string label;

  void validate() const;
  std::string display_name() const { return label.empty() ? to_string(kind) : label; }
};

nlohmann::json to_json(const DecoderSpec& spec);
/// Missing keys keep their defaults; unknown keys are rejected with
/// Errc::parse_error.
DecoderSpec decoder_spec_from_json(const nlohmann::json& j);

/// Common face of the decoders, safe to call from several threads.
class SyndromeDecoder {
 public:
  virtual ~SyndromeDecoder() = default;
  virtual bp::DecodeResult decode(const gf2::BitVector& syndrome, double p) const = 0;
};

std::unique_ptr<SyndromeDecoder> make_decoder(const DecoderSpec& spec, const gf2::BinaryMatrix& h);

}  // namespace qldpc::sim
