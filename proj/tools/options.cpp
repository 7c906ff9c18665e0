#include "options.hpp"

#include "qldpc/io/code_file.hpp"
#include "support.hpp"

namespace qldpc::cli {

using nlohmann::json;

void DecoderFlags::add(CLI::App& sub, const std::string& option_name, bool mbbp_flags) {
  sub.add_option(option_name, config, "Decoder config JSON")->check(CLI::ExistingFile);
  sub.add_option("--type", type, "bp | bp-osd0 | mbbp");
  sub.add_option("--variant", variant, "sum-product | min-sum");
  sub.add_option("--beta", beta, "Min-sum normalization; 0 means no scaling");
  sub.add_option("--zero-beta", zero_beta, "Meaning of beta 0: unscaled | adaptive");
  sub.add_option("--schedule", schedule, "parallel | serial | variable-serial");
  sub.add_option("--i-max", i_max, "Iteration cap");
  sub.add_option("--llr-clip", llr_clip, "Message magnitude clip");
  sub.add_option("--label", label, "Decoder name in outputs");
  if (mbbp_flags) {
    sub.add_option("--tau", tau, "Fraction of instances that must converge");
    sub.add_option("--rule", rule, "fws | lms");
    sub.add_option("--pi-seed", pi_seed, "Seed of the subtree root order");
    sub.add_option("--decoder-threads", threads, "Worker threads inside one MBBP decode");
  }
}

json DecoderFlags::merged(json base) const {
  if (!config.empty()) base = read_json(config);
  if (!base.is_object()) throw UsageError("decoder config must be a JSON object");
  if (type) base["type"] = *type;
  if (variant) base["variant"] = *variant;
  if (beta) base["beta"] = *beta;
  if (zero_beta) base["zero_beta"] = *zero_beta;
  if (schedule) base["schedule"] = *schedule;
  if (i_max) base["i_max"] = *i_max;
  if (llr_clip) base["llr_clip"] = *llr_clip;
  if (tau) base["tau"] = *tau;
  if (rule) base["rule"] = *rule;
  if (pi_seed) base["pi_seed"] = *pi_seed;
  if (threads) base["threads"] = *threads;
  if (label) base["label"] = *label;
  return base;
}

sim::DecoderSpec DecoderFlags::spec() const { return sim::decoder_spec_from_json(merged()); }

LoadedCode load_code_file(const std::string& path) {
  json source = read_json(path);
  codes::CssCode code = io::code_from_json(source);
  return {std::move(source), std::move(code)};
}

codes::CssCode code_from_source(const json& source) { return io::code_from_json(source); }

const gf2::BinaryMatrix& pick_check(const codes::CssCode& code, const std::string& which) {
  if (which == "hz") return code.h_z();
  if (which == "hx") return code.h_x();
  throw UsageError("--check must be hz or hx");
}

}  // namespace qldpc::cli
