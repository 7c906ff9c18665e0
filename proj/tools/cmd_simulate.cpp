#include <atomic>
#include <cmath>
#include <csignal>
#include <fstream>
#include <iostream>
#include <memory>

#include "commands.hpp"
#include "options.hpp"
#include "qldpc/sim/campaign.hpp"
#include "support.hpp"

namespace qldpc::cli {

using nlohmann::json;

namespace {

std::atomic<bool> g_interrupted{false};

extern "C" void on_sigint(int) { g_interrupted.store(true); }

struct SimOpts {
  std::optional<std::string> code;
  DecoderFlags decoder;
  std::optional<std::string> model;
  std::optional<std::string> side;
  std::optional<std::string> rates;
  std::optional<std::size_t> target;
  std::optional<std::size_t> max_trials;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> threads;
  std::string out;
  std::string records;
  std::string manifest_in;
  std::string manifest_out;

  bool changes_campaign() const {
    return code || !decoder.merged().empty() || model || side || rates || target || max_trials || seed;
  }
};

json rates_json(const std::vector<double>& rates) {
  json out = json::array();
  for (double r : rates) out.push_back(r);
  return out;
}

/// Manifest config with command-line values laid over it.
json resolve_config(const SimOpts& o, const json& manifest) {
  json cfg = manifest.is_object() ? manifest.at("config") : json::object();
  if (o.code) cfg["code"] = read_json(*o.code);
  if (!cfg.contains("code")) throw UsageError("--code is required without --manifest");
  cfg["decoder"] = to_json(sim::decoder_spec_from_json(o.decoder.merged(cfg.value("decoder", json::object()))));
  if (o.model) cfg["model"] = *o.model;
  if (o.side) cfg["side"] = *o.side;
  if (o.rates) cfg["rates"] = rates_json(parse_rates(*o.rates));
  if (o.target) cfg["target_failures"] = *o.target;
  if (o.max_trials) cfg["max_trials"] = *o.max_trials;
  if (o.seed) cfg["seed"] = *o.seed;
  if (o.threads) cfg["threads"] = *o.threads;
  if (!cfg.contains("rates")) throw UsageError("--rates is required without --manifest");
  if (!cfg.contains("seed")) throw UsageError("--seed is required without --manifest");
  cfg.emplace("model", "x");
  cfg.emplace("side", "x");
  cfg.emplace("target_failures", 100);
  cfg.emplace("max_trials", 500000);
  cfg.emplace("threads", 1);
  // Normalize so the manifest holds canonical names.
  cfg["model"] = sim::to_string(sim::parse_noise(cfg.at("model").get<std::string>()));
  cfg["side"] = sim::to_string(sim::parse_side(cfg.at("side").get<std::string>()));
  return cfg;
}

int run_simulate(const SimOpts& o) {
  json manifest_in;
  if (!o.manifest_in.empty()) manifest_in = read_json(o.manifest_in);
  const json cfg = resolve_config(o, manifest_in);

  // Validate everything before the first trial.
  const codes::CssCode code = code_from_source(cfg.at("code"));
  const sim::DecoderSpec spec = sim::decoder_spec_from_json(cfg.at("decoder"));
  const auto rates = cfg.at("rates").get<std::vector<double>>();
  sim::CampaignConfig base;
  base.model.kind = sim::parse_noise(cfg.at("model").get<std::string>());
  base.side = sim::parse_side(cfg.at("side").get<std::string>());
  base.stop.target_failures = cfg.at("target_failures").get<std::size_t>();
  base.stop.max_trials = cfg.at("max_trials").get<std::size_t>();
  base.seed = cfg.at("seed").get<std::uint64_t>();
  base.threads = cfg.at("threads").get<std::size_t>();
  base.cancel = &g_interrupted;
  base.code_label = code.metadata().name.empty() ? code.parameters()
                                                 : code.metadata().name + " " + code.parameters();
  for (double r : rates) sim::ErrorModel{base.model.kind, r}.validate();
  if (base.stop.max_trials == 0) throw UsageError("max_trials must be positive");

  const std::string manifest_path = o.manifest_out.empty() ? o.out + ".manifest.json" : o.manifest_out;
  std::ofstream records;
  if (!o.records.empty()) {
    records.open(o.records, std::ios::trunc);
    if (!records) throw UsageError("cannot write " + o.records);
  }

  const std::string started = utc_timestamp();
  std::signal(SIGINT, on_sigint);
  std::vector<sim::LerRow> rows;
  bool hit_cap = false;
  for (double rate : rates) {
    sim::CampaignConfig c = base;
    c.model.rate = rate;
    if (records.is_open()) {
      c.on_record = [&records, rate](const sim::TrialRecord& r) {
        json line = to_json(r);
        line["rate"] = rate;
        records << line.dump() << "\n";
      };
    }
    const sim::CampaignResult res = sim::run_campaign(code, spec, c);
    rows.push_back(res.row);
    if (records.is_open()) records.flush();
    const auto& r = res.row;
    std::fprintf(stderr, "rate %.6f trials %zu failures %zu (conv %zu) ler %.4e [%.4e, %.4e] %.3f ms/trial\n",
                 r.rate, r.trials, r.failures, r.convergence_failures, r.ler, r.ci_lo, r.ci_hi, r.mean_ms);
    if (res.cancelled) break;
    if (base.stop.target_failures && !res.reached_target) hit_cap = true;
  }
  std::signal(SIGINT, SIG_DFL);
  const bool interrupted = g_interrupted.load();

  const std::string csv = sim::ler_csv(rows);
  const std::string untimed = sim::ler_csv(rows, false);
  write_file(o.out, csv);
  json outputs{{"csv", {{"path", o.out}, {"sha256", sha256_hex(csv)}, {"sha256_untimed", sha256_hex(untimed)}}}};
  if (records.is_open()) {
    records.close();
    outputs["records"] = {{"path", o.records}, {"sha256", sha256_hex(read_file(o.records))}};
  }
  const int status = interrupted ? kInterrupted : hit_cap ? kMaxTrials : kOk;
  const json manifest{{"tool", "qldpc"},
                      {"version", kToolVersion},
                      {"command", "simulate"},
                      {"config", cfg},
                      {"seed", cfg.at("seed")},
                      {"started", started},
                      {"finished", utc_timestamp()},
                      {"interrupted", interrupted},
                      {"exit_status", status},
                      {"outputs", outputs}};
  write_file(manifest_path, manifest.dump(2) + "\n");

  if (manifest_in.is_object() && !o.changes_campaign() && !interrupted) {
    const auto expected = manifest_in.at("outputs").at("csv").value("sha256_untimed", "");
    if (expected != sha256_hex(untimed)) {
      std::cerr << "manifest check: CSV differs from the recorded run\n";
      return kInvariant;
    }
    std::cerr << "manifest check: reproduced\n";
  }
  return status;
}

struct CompareOpts {
  std::string code;
  std::string decoder_a;
  std::string decoder_b;
  std::string model = "x";
  std::string side = "x";
  std::string rates;
  std::size_t trials = 10000;
  std::uint64_t seed = 0;
  std::size_t threads = 1;
  std::string out;
};

int run_compare(const CompareOpts& o) {
  const LoadedCode loaded = load_code_file(o.code);
  const json ja = sim::to_json(sim::decoder_spec_from_json(read_json(o.decoder_a)));
  const json jb = sim::to_json(sim::decoder_spec_from_json(read_json(o.decoder_b)));
  const sim::DecoderSpec a = sim::decoder_spec_from_json(ja);
  const sim::DecoderSpec b = sim::decoder_spec_from_json(jb);
  const sim::NoiseKind kind = sim::parse_noise(o.model);
  const sim::Side side = sim::parse_side(o.side);
  const auto rates = parse_rates(o.rates);
  if (o.trials == 0) throw UsageError("--trials must be positive");

  const std::string started = utc_timestamp();
  json results = json::array();
  for (double rate : rates) {
    const sim::PairedReport rep =
        sim::paired_comparison(loaded.code, a, b, {kind, rate}, side, o.trials, o.seed, o.threads);
    const json row{{"rate", rate},
                   {"trials", rep.trials},
                   {"failures_a", rep.failures_a},
                   {"failures_b", rep.failures_b},
                   {"only_a", rep.only_a},
                   {"only_b", rep.only_b},
                   {"ratio", std::isfinite(rep.ratio) ? json(rep.ratio) : json("inf")}};
    std::cout << row.dump() << "\n";
    results.push_back(row);
  }
  if (!o.out.empty()) {
    const std::string body = results.dump(2) + "\n";
    write_file(o.out, body);
    const json cfg{{"code", loaded.source}, {"decoder_a", ja},   {"decoder_b", jb},
                   {"model", o.model},       {"side", o.side},    {"rates", rates_json(rates)},
                   {"trials", o.trials},     {"seed", o.seed},    {"threads", o.threads}};
    const json manifest{{"tool", "qldpc"},        {"version", kToolVersion},
                        {"command", "compare"},   {"config", cfg},
                        {"seed", o.seed},         {"started", started},
                        {"finished", utc_timestamp()},
                        {"outputs", {{"json", {{"path", o.out}, {"sha256", sha256_hex(body)}}}}}};
    write_file(o.out + ".manifest.json", manifest.dump(2) + "\n");
  }
  return kOk;
}

}  // namespace

void add_simulate_command(CLI::App& app, Action& action) {
  auto o = std::make_shared<SimOpts>();
  CLI::App* s = app.add_subcommand("simulate", "Monte Carlo logical error rate campaign");
  s->add_option("--code", o->code, "Code definition JSON")->check(CLI::ExistingFile);
  o->decoder.add(*s, "--decoder");
  s->add_option("--model", o->model, "x | depol (default x)");
  s->add_option("--side", o->side, "x | z | both (default x)");
  s->add_option("--rates", o->rates, "start:stop:step (inclusive) or a comma list");
  s->add_option("--target-failures", o->target, "Stop each rate at this many failures (default 100)");
  s->add_option("--max-trials", o->max_trials, "Trial cap per rate (default 500000)");
  s->add_option("--seed", o->seed, "Campaign seed");
  s->add_option("--threads", o->threads, "Worker threads (default 1)");
  s->add_option("--out", o->out, "CSV output")->required();
  s->add_option("--records", o->records, "Per-trial JSONL output");
  s->add_option("--manifest", o->manifest_in, "Re-run from a manifest")->check(CLI::ExistingFile);
  s->add_option("--manifest-out", o->manifest_out, "Manifest path (default <out>.manifest.json)");
  s->callback([&action, o] { action = [o] { return run_simulate(*o); }; });
}

void add_compare_command(CLI::App& app, Action& action) {
  auto o = std::make_shared<CompareOpts>();
  CLI::App* c = app.add_subcommand("compare", "Paired comparison of two decoders");
  c->add_option("--code", o->code, "Code definition JSON")->required()->check(CLI::ExistingFile);
  c->add_option("--decoder-a", o->decoder_a, "First decoder config")->required()->check(CLI::ExistingFile);
  c->add_option("--decoder-b", o->decoder_b, "Second decoder config")->required()->check(CLI::ExistingFile);
  c->add_option("--model", o->model, "x | depol")->capture_default_str();
  c->add_option("--side", o->side, "x | z | both")->capture_default_str();
  c->add_option("--rates", o->rates, "Rates as for simulate")->required();
  c->add_option("--trials", o->trials, "Trials per rate")->capture_default_str();
  c->add_option("--seed", o->seed, "Campaign seed")->capture_default_str();
  c->add_option("--threads", o->threads, "Worker threads")->capture_default_str();
  c->add_option("--out", o->out, "JSON output; a manifest is written next to it");
  c->callback([&action, o] { action = [o] { return run_compare(*o); }; });
}

}  // namespace qldpc::cli
