#include <iostream>
#include <memory>

#include "commands.hpp"
#include "options.hpp"
#include "qldpc/error.hpp"
#include "qldpc/mbbp/mbbp.hpp"
#include "support.hpp"

namespace qldpc::cli {

using nlohmann::json;

namespace {

struct DecodeOpts {
  std::string code;
  std::string syndrome;
  std::string check = "hz";
  double p = 0.05;
  DecoderFlags decoder;
  bool as_json = false;
  std::string diagnostics;
};

gf2::BitVector read_syndrome(const std::string& hex, const gf2::BinaryMatrix& h) {
  try {
    return gf2::BitVector::from_hex(hex, h.rows());
  } catch (const Error& e) {
    throw UsageError(std::string("syndrome: ") + e.what());
  }
}

void print_result(const bp::DecodeResult& r, bool as_json, json extra = json::object()) {
  if (as_json) {
    extra["estimate"] = r.error_estimate.to_hex();
    extra["weight"] = r.error_estimate.weight();
    extra["converged"] = r.converged;
    extra["iterations"] = r.iterations_used;
    std::cout << extra.dump(2) << "\n";
    return;
  }
  std::cout << "estimate " << r.error_estimate.to_hex() << "\n"
            << "weight " << r.error_estimate.weight() << "\n"
            << "converged " << (r.converged ? "true" : "false") << "\n"
            << "iterations " << r.iterations_used << "\n";
  for (const auto& [key, value] : extra.items()) std::cout << key << " " << value.dump() << "\n";
}

int run_decode(const DecodeOpts& o) {
  const sim::DecoderSpec spec = o.decoder.spec();
  const LoadedCode loaded = load_code_file(o.code);
  const gf2::BinaryMatrix& h = pick_check(loaded.code, o.check);
  const gf2::BitVector s = read_syndrome(o.syndrome, h);
  const auto decoder = sim::make_decoder(spec, h);
  print_result(decoder->decode(s, o.p), o.as_json);
  return kOk;
}

int run_mbbp_decode(const DecodeOpts& o) {
  json merged = o.decoder.merged();
  merged["type"] = "mbbp";
  const sim::DecoderSpec spec = sim::decoder_spec_from_json(merged);
  const LoadedCode loaded = load_code_file(o.code);
  const gf2::BinaryMatrix& h = pick_check(loaded.code, o.check);
  const gf2::BitVector s = read_syndrome(o.syndrome, h);

  mbbp::MbbpConfig cfg;
  cfg.decoder = spec.bp;
  cfg.tau = spec.tau;
  cfg.rule = spec.rule;
  cfg.pi_seed = spec.pi_seed;
  cfg.include_nonconverged = spec.include_nonconverged;
  cfg.threads = spec.threads;
  const mbbp::MbbpDecoder dec(h, cfg);
  const mbbp::MbbpResult res = dec.decode(s, o.p);

  json summary{{"instances", dec.instance_count()},
               {"candidates", res.candidates.size()},
               {"stop_round", res.stop_round}};
  print_result(res.result, o.as_json, summary);

  if (!o.diagnostics.empty()) {
    json diag{{"stop_round", res.stop_round}, {"required_converged", dec.required_converged()}};
    diag["instances"] = json::array();
    for (const auto& inst : res.instances) {
      diag["instances"].push_back(
          {{"subtree", inst.subtree}, {"converged", inst.converged}, {"iterations", inst.iterations}});
    }
    diag["candidates"] = json::array();
    for (const auto& c : res.candidates) {
      diag["candidates"].push_back({{"subtree", c.subtree},
                                    {"iterations", c.iterations},
                                    {"estimate", c.estimate.to_hex()},
                                    {"weight", c.estimate.weight()}});
    }
    if (o.diagnostics == "-") {
      std::cout << diag.dump(2) << "\n";
    } else {
      write_file(o.diagnostics, diag.dump(2) + "\n");
    }
  }
  return kOk;
}

void add_common(CLI::App* sub, DecodeOpts& o, bool mbbp_flags) {
  sub->add_option("--code", o.code, "Code definition JSON")->required()->check(CLI::ExistingFile);
  sub->add_option("--syndrome", o.syndrome, "Syndrome as hex; bit 0 is the high bit of the first digit")->required();
  sub->add_option("--check", o.check, "Check matrix: hz (X errors) or hx")->capture_default_str();
  sub->add_option("--p", o.p, "Channel probability for the priors")->capture_default_str();
  sub->add_flag("--json", o.as_json, "Machine-readable output");
  o.decoder.add(*sub, "--config", mbbp_flags);
}

}  // namespace

void add_decode_commands(CLI::App& app, Action& action) {
  auto plain = std::make_shared<DecodeOpts>();
  CLI::App* d = app.add_subcommand("decode", "Decode one syndrome");
  add_common(d, *plain, false);
  d->callback([&action, plain] { action = [plain] { return run_decode(*plain); }; });

  auto multi = std::make_shared<DecodeOpts>();
  CLI::App* m = app.add_subcommand("mbbp-decode", "Decode one syndrome with MBBP-LD");
  add_common(m, *multi, true);
  m->add_option("--diagnostics", multi->diagnostics, "Per-instance JSON file, or - for stdout");
  m->callback([&action, multi] { action = [multi] { return run_mbbp_decode(*multi); }; });
}

}  // namespace qldpc::cli
