#include "qldpc/sim/decoders.hpp"

#include <set>

#include "qldpc/error.hpp"

namespace qldpc::sim {

using nlohmann::json;

const char* to_string(DecoderKind k) noexcept {
  switch (k) {
    case DecoderKind::bp_osd0: return "bp-osd0";
    case DecoderKind::mbbp: return "mbbp";
    case DecoderKind::bp: break;
  }
  return "bp";
}

DecoderKind parse_decoder_kind(const std::string& text) {
  if (text == "bp") return DecoderKind::bp;
  if (text == "bp-osd0" || text == "bp-osd") return DecoderKind::bp_osd0;
  if (text == "mbbp") return DecoderKind::mbbp;
  fail(Errc::parse_error, "unknown decoder '" + text + "'");
}

void DecoderSpec::validate() const {
  bp.validate();
  if (kind == DecoderKind::mbbp) {
    mbbp::MbbpConfig cfg;
    cfg.decoder = bp;
    cfg.tau = tau;
    cfg.threads = threads;
    cfg.validate();
  }
}

json to_json(const DecoderSpec& spec) {
  json j{
      {"type", to_string(spec.kind)},
      {"variant", bp::to_string(spec.bp.variant)},
      {"beta", spec.bp.beta},
      {"zero_beta", bp::to_string(spec.bp.zero_beta)},
      {"schedule", bp::to_string(spec.bp.schedule)},
      {"i_max", spec.bp.i_max},
      {"llr_clip", spec.bp.llr_clip},
      {"halt_on_syndrome", spec.bp.halt_on_syndrome},
  };
  if (spec.kind == DecoderKind::mbbp) {
    j["tau"] = spec.tau;
    j["rule"] = mbbp::to_string(spec.rule);
    j["pi_seed"] = spec.pi_seed ? json(*spec.pi_seed) : json(nullptr);
    j["include_nonconverged"] = spec.include_nonconverged;
    j["threads"] = spec.threads;
  }
  if (!spec.label.empty()) j["label"] = spec.label;
  return j;
}

DecoderSpec decoder_spec_from_json(const json& j) {
  if (!j.is_object()) fail(Errc::parse_error, "decoder spec must be a JSON object");
  static const std::set<std::string> known{
      "type", "variant", "beta", "zero_beta", "schedule", "i_max", "llr_clip", "halt_on_syndrome",
      "tau", "rule", "pi_seed", "include_nonconverged", "threads", "label"};
  for (const auto& [key, _] : j.items()) {
    if (!known.contains(key)) fail(Errc::parse_error, "unknown decoder key '" + key + "'");
  }
  DecoderSpec spec;
  try {
    if (j.contains("type")) spec.kind = parse_decoder_kind(j.at("type").get<std::string>());
    if (j.contains("variant")) spec.bp.variant = bp::parse_variant(j.at("variant").get<std::string>());
    if (j.contains("beta")) spec.bp.beta = j.at("beta").get<double>();
    if (j.contains("zero_beta")) spec.bp.zero_beta = bp::parse_zero_beta(j.at("zero_beta").get<std::string>());
    if (j.contains("schedule")) {
      spec.bp.schedule = bp::parse_schedule(j.at("schedule").get<std::string>());
    }
    if (j.contains("i_max")) spec.bp.i_max = j.at("i_max").get<std::size_t>();
    if (j.contains("llr_clip")) spec.bp.llr_clip = j.at("llr_clip").get<double>();
    if (j.contains("halt_on_syndrome")) spec.bp.halt_on_syndrome = j.at("halt_on_syndrome").get<bool>();
    if (j.contains("tau")) spec.tau = j.at("tau").get<double>();
    if (j.contains("rule")) spec.rule = mbbp::parse_rule(j.at("rule").get<std::string>());
    if (j.contains("pi_seed") && !j.at("pi_seed").is_null()) {
      spec.pi_seed = j.at("pi_seed").get<std::uint64_t>();
    }
    if (j.contains("include_nonconverged")) {
      spec.include_nonconverged = j.at("include_nonconverged").get<bool>();
    }
    if (j.contains("threads")) spec.threads = j.at("threads").get<std::size_t>();
    if (j.contains("label")) spec.label = j.at("label").get<std::string>();
  } catch (const json::exception& e) {
    fail(Errc::parse_error, std::string("decoder spec: ") + e.what());
  }
  spec.validate();
  return spec;
}

namespace {

class PlainBp final : public SyndromeDecoder {
 public:
  PlainBp(const gf2::BinaryMatrix& h, const bp::DecoderConfig& cfg) : dec_(h, cfg) {}
  bp::DecodeResult decode(const gf2::BitVector& s, double p) const override { return dec_.decode(s, p); }

 private:
  bp::BpDecoder dec_;
};

class BpOsd final : public SyndromeDecoder {
 public:
  BpOsd(const gf2::BinaryMatrix& h, const bp::DecoderConfig& cfg) : dec_(h, cfg) {}
  bp::DecodeResult decode(const gf2::BitVector& s, double p) const override {
    return dec_.decode(s, p).decode;
  }

 private:
  bp::BpOsdDecoder dec_;
};

class Mbbp final : public SyndromeDecoder {
 public:
  Mbbp(const gf2::BinaryMatrix& h, mbbp::MbbpConfig cfg) : dec_(h, std::move(cfg)) {}
  bp::DecodeResult decode(const gf2::BitVector& s, double p) const override {
    return dec_.decode(s, p).result;
  }

 private:
  mbbp::MbbpDecoder dec_;
};

}  // namespace

std::unique_ptr<SyndromeDecoder> make_decoder(const DecoderSpec& spec, const gf2::BinaryMatrix& h) {
  spec.validate();
  switch (spec.kind) {
    case DecoderKind::bp_osd0: return std::make_unique<BpOsd>(h, spec.bp);
    case DecoderKind::mbbp: {
      mbbp::MbbpConfig cfg;
      cfg.decoder = spec.bp;
      cfg.tau = spec.tau;
      cfg.rule = spec.rule;
      cfg.pi_seed = spec.pi_seed;
      cfg.include_nonconverged = spec.include_nonconverged;
      cfg.threads = spec.threads;
      return std::make_unique<Mbbp>(h, std::move(cfg));
    }
    case DecoderKind::bp: break;
  }
  return std::make_unique<PlainBp>(h, spec.bp);
}

}  // namespace qldpc::sim
