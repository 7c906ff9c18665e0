#include <gtest/gtest.h>

#include <cmath>

#include "qldpc/error.hpp"
#include "qldpc/io/code_file.hpp"
#include "qldpc/sim/campaign.hpp"
#include "reference_codes.hpp"
#include "test_util.hpp"

using namespace qldpc;
using namespace qldpc::sim;
using gf2::BinaryMatrix;
using gf2::BitVector;
using testutil::error_code;

namespace {

codes::CssCode steane() {
  const BinaryMatrix h = BinaryMatrix::from_strings({"0001111", "0110011", "1010101"});
  return codes::CssCode(h, h);
}

DecoderSpec bp_spec(std::size_t i_max = 50) {
  DecoderSpec s;
  s.bp.i_max = i_max;
  s.bp.beta = 0.875;
  return s;
}

CampaignConfig campaign(double rate, std::size_t trials, std::uint64_t seed = 7) {
  CampaignConfig cfg;
  cfg.model = {NoiseKind::x_only, rate};
  cfg.stop.max_trials = trials;
  cfg.seed = seed;
  return cfg;
}

void expect_same_counts(const LerRow& a, const LerRow& b) {
  EXPECT_EQ(a.trials, b.trials);
  EXPECT_EQ(a.failures, b.failures);
  EXPECT_EQ(a.convergence_failures, b.convergence_failures);
  EXPECT_EQ(a.ler, b.ler);
  EXPECT_EQ(a.ci_lo, b.ci_lo);
  EXPECT_EQ(a.ci_hi, b.ci_hi);
}

}  // namespace

TEST(Noise, DepolarizingMarginalsMatchTwoThirdsQ) {
  const ErrorModel model{NoiseKind::depolarizing, 0.09};
  const std::size_t n = 1000;
  const std::size_t trials = 1000;
  std::size_t x = 0;
  std::size_t z = 0;
  std::size_t y = 0;
  for (std::size_t t = 0; t < trials; ++t) {
    auto rng = random::PhiloxStream::for_trial(11, t);
    const PauliError e = sample_error(model, n, rng);
    x += e.x.weight();
    z += e.z.weight();
    for (std::size_t i = 0; i < n; ++i) y += e.x.get(i) && e.z.get(i) ? 1 : 0;
  }
  const double samples = static_cast<double>(n * trials);
  const double p = 2.0 * 0.09 / 3.0;
  const double sigma = std::sqrt(p * (1 - p) / samples);
  EXPECT_NEAR(x / samples, p, 3 * sigma);
  EXPECT_NEAR(z / samples, p, 3 * sigma);
  const double py = 0.03;
  EXPECT_NEAR(y / samples, py, 3 * std::sqrt(py * (1 - py) / samples));
  EXPECT_DOUBLE_EQ(model.marginal(), p);
}

TEST(Noise, XOnlyMarginalAndNoZ) {
  const ErrorModel model{NoiseKind::x_only, 0.05};
  std::size_t x = 0;
  for (std::size_t t = 0; t < 2000; ++t) {
    auto rng = random::PhiloxStream::for_trial(3, t);
    const PauliError e = sample_error(model, 500, rng);
    x += e.x.weight();
    EXPECT_TRUE(e.z.none());
  }
  const double samples = 1e6;
  EXPECT_NEAR(x / samples, 0.05, 3 * std::sqrt(0.05 * 0.95 / samples));
}

TEST(Noise, TrialStreamsAreReproducible) {
  const ErrorModel model{NoiseKind::depolarizing, 0.2};
  auto a = random::PhiloxStream::for_trial(5, 42);
  auto b = random::PhiloxStream::for_trial(5, 42);
  auto c = random::PhiloxStream::for_trial(5, 43);
  const PauliError ea = sample_error(model, 200, a);
  const PauliError eb = sample_error(model, 200, b);
  const PauliError ec = sample_error(model, 200, c);
  EXPECT_EQ(ea.x, eb.x);
  EXPECT_EQ(ea.z, eb.z);
  EXPECT_NE(ea.x, ec.x);
}

TEST(Noise, ModelValidationAndParsing) {
  EXPECT_EQ(error_code([] { ErrorModel{NoiseKind::x_only, 0.0}.validate(); }), Errc::invalid_argument);
  EXPECT_EQ(error_code([] { ErrorModel{NoiseKind::x_only, 1.0}.validate(); }), Errc::invalid_argument);
  EXPECT_EQ(parse_noise("depolarizing"), NoiseKind::depolarizing);
  EXPECT_EQ(parse_noise("x"), NoiseKind::x_only);
  EXPECT_EQ(error_code([] { parse_noise("y"); }), Errc::parse_error);
  EXPECT_EQ(parse_side("both"), Side::both);
  EXPECT_EQ(error_code([] { parse_side("xz"); }), Errc::parse_error);
}

TEST(Classifier, MatchesBruteForceOnSteaneCode) {
  const codes::CssCode code = steane();
  const Classifier cls(code, Side::x);
  // Stabilizer group by enumerating all combinations of H_X rows.
  std::vector<BitVector> group;
  for (unsigned m = 0; m < 8; ++m) {
    BitVector v(7);
    for (unsigned r = 0; r < 3; ++r) {
      if (m >> r & 1U) v ^= code.h_x().row(r);
    }
    group.push_back(v);
  }
  for (unsigned e = 0; e < 128; ++e) {
    for (unsigned f = 0; f < 128; ++f) {
      BitVector err(7);
      BitVector est(7);
      err.words()[0] = e;
      est.words()[0] = f;
      // Only estimates with matching syndrome can be labelled.
      if (code.h_z().multiply(err) != code.h_z().multiply(est)) continue;
      const bool trivial = std::find(group.begin(), group.end(), err ^ est) != group.end();
      EXPECT_EQ(cls.classify(err, est, true), trivial ? Outcome::success : Outcome::logical_failure);
      EXPECT_EQ(cls.classify(err, est, false), Outcome::convergence_failure);
    }
  }
}

TEST(Classifier, RejectsBadLengthsAndBothSide) {
  const codes::CssCode code = steane();
  const Classifier cls(code, Side::z);
  EXPECT_EQ(error_code([&] { cls.classify(BitVector(6), BitVector(7), true); }), Errc::dimension_mismatch);
  EXPECT_EQ(error_code([&] { Classifier(code, Side::both); }), Errc::invalid_argument);
}

TEST(Classifier, ResidualEqualToAStabilizerIsSuccess) {
  const BinaryMatrix hx = BinaryMatrix::from_strings({"11"});
  const BinaryMatrix hz = BinaryMatrix::from_strings({"11"});
  const codes::CssCode code(hx, hz);
  const Classifier cls(code, Side::x);
  EXPECT_EQ(cls.classify(BitVector::from_bits("10"), BitVector::from_bits("01"), true), Outcome::success);
}

TEST(Wilson, KnownValuesAndScoreEquation) {
  auto [lo, hi] = wilson_interval(10, 100);
  EXPECT_NEAR(lo, 0.0552291, 1e-6);
  EXPECT_NEAR(hi, 0.1743657, 1e-6);
  std::tie(lo, hi) = wilson_interval(0, 10);
  EXPECT_EQ(lo, 0.0);
  EXPECT_NEAR(hi, 0.2775328, 1e-6);
  std::tie(lo, hi) = wilson_interval(0, 0);
  EXPECT_EQ(lo, 0.0);
  EXPECT_EQ(hi, 1.0);
  // Endpoints solve (phat - p)^2 = z^2 p (1 - p) / n.
  for (auto [k, n] : {std::pair{3, 50}, {100, 1400}, {49, 50}, {7, 100000}}) {
    std::tie(lo, hi) = wilson_interval(k, n);
    const double phat = static_cast<double>(k) / n;
    for (double p : {lo, hi}) {
      const double lhs = (phat - p) * (phat - p);
      const double rhs = kWilsonZ * kWilsonZ * p * (1 - p) / n;
      EXPECT_NEAR(lhs, rhs, 1e-12);
    }
    EXPECT_LT(lo, phat);
    EXPECT_GT(hi, phat);
  }
  EXPECT_EQ(error_code([] { wilson_interval(3, 2); }), Errc::invalid_argument);
}

TEST(DecoderSpecJson, RoundTripsAndRejectsUnknownKeys) {
  DecoderSpec s;
  s.kind = DecoderKind::mbbp;
  s.bp.schedule = bp::Schedule::serial;
  s.bp.i_max = 1000;
  s.tau = 0.4;
  s.rule = mbbp::Rule::lms;
  s.pi_seed = 99;
  s.label = "MBBP-LD";
  const DecoderSpec back = decoder_spec_from_json(to_json(s));
  EXPECT_EQ(to_json(back), to_json(s));
  EXPECT_EQ(back.display_name(), "MBBP-LD");
  EXPECT_EQ(decoder_spec_from_json(nlohmann::json::object()).display_name(), "bp");
  EXPECT_EQ(error_code([] { decoder_spec_from_json(nlohmann::json{{"tua", 0.4}}); }), Errc::parse_error);
  EXPECT_EQ(error_code([] { decoder_spec_from_json(nlohmann::json{{"i_max", "many"}}); }),
            Errc::parse_error);
  EXPECT_EQ(error_code([] { decoder_spec_from_json(nlohmann::json{{"type", "mbbp"}, {"tau", 1.5}}); }),
            Errc::invalid_argument);
}

TEST(CodeFile, BuildsEachFamily) {
  using nlohmann::json;
  const auto ub = io::code_from_json(json{{"family", "ub"}, {"n", 63}, {"a", {0, 1, 6}}, {"l", 3}});
  EXPECT_EQ(ub.n(), 126u);
  EXPECT_EQ(ub.k(), 12u);
  const auto gb = io::code_from_json(
      json{{"family", "gb"}, {"polynomials", "n=63; a=0,1,6; b=0,8,48"}, {"name", "toy"}});
  EXPECT_EQ(gb.h_x(), ub.h_x());
  EXPECT_EQ(gb.metadata().name, "toy");
  const auto bb = io::code_from_json(json::parse(
      R"({"family":"bb","l":12,"m":6,"a":[[3,0],[0,1],[0,2]],"b":[[0,3],[1,0],[2,0]]})"));
  EXPECT_EQ(bb.h_x(), testutil::gross_code().h_x());
  const auto custom = io::code_from_json(
      json{{"family", "custom"}, {"h_x", {"0001111", "0110011", "1010101"}},
           {"h_z", {"0001111", "0110011", "1010101"}}});
  EXPECT_EQ(custom.k(), 1u);
  EXPECT_EQ(error_code([] { io::code_from_json(json{{"family", "tri"}}); }), Errc::parse_error);
  EXPECT_EQ(error_code([] { io::code_from_json(json{{"family", "ub"}, {"n", 63}}); }), Errc::parse_error);
  EXPECT_EQ(error_code([] { io::load_code("/nonexistent/code.json"); }), Errc::parse_error);
}

TEST(Campaign, CountsDoNotDependOnThreads) {
  const codes::CssCode code = testutil::gross_code();
  for (const DecoderKind kind : {DecoderKind::bp, DecoderKind::mbbp}) {
    DecoderSpec spec = bp_spec(kind == DecoderKind::mbbp ? 30 : 60);
    spec.kind = kind;
    CampaignConfig cfg = campaign(0.05, 300);
    std::vector<std::string> one;
    std::vector<std::string> four;
    cfg.on_record = [&](const TrialRecord& r) {
      auto j = to_json(r);
      j.erase("time_ms");
      one.push_back(j.dump());
    };
    const CampaignResult a = run_campaign(code, spec, cfg);
    cfg.threads = 4;
    cfg.on_record = [&](const TrialRecord& r) {
      auto j = to_json(r);
      j.erase("time_ms");
      four.push_back(j.dump());
    };
    const CampaignResult b = run_campaign(code, spec, cfg);
    expect_same_counts(a.row, b.row);
    EXPECT_EQ(one, four);
    EXPECT_EQ(one.size(), 300u);
    EXPECT_GT(a.row.failures, 0u);
  }
}

TEST(Campaign, StopsExactlyAtTargetFailures) {
  const codes::CssCode code = testutil::gross_code();
  CampaignConfig cfg = campaign(0.07, 100000);
  cfg.stop.target_failures = 25;
  cfg.threads = 3;
  std::vector<TrialRecord> records;
  cfg.on_record = [&](const TrialRecord& r) { records.push_back(r); };
  const CampaignResult res = run_campaign(code, bp_spec(), cfg);
  EXPECT_TRUE(res.reached_target);
  EXPECT_EQ(res.row.failures, 25u);
  ASSERT_EQ(records.size(), res.row.trials);
  EXPECT_NE(records.back().outcome, Outcome::success);
  for (std::size_t i = 0; i < records.size(); ++i) EXPECT_EQ(records[i].trial, i);
  std::size_t conv = 0;
  for (const auto& r : records) conv += r.outcome == Outcome::convergence_failure ? 1 : 0;
  EXPECT_EQ(conv, res.row.convergence_failures);
  const auto [lo, hi] = wilson_interval(25, res.row.trials);
  EXPECT_EQ(res.row.ci_lo, lo);
  EXPECT_EQ(res.row.ci_hi, hi);
}

TEST(Campaign, MaxTrialsCapWithoutTarget) {
  const codes::CssCode code = steane();
  CampaignConfig cfg = campaign(0.001, 200);
  cfg.stop.target_failures = 50;
  const CampaignResult res = run_campaign(code, bp_spec(), cfg);
  EXPECT_FALSE(res.reached_target);
  EXPECT_EQ(res.row.trials, 200u);
}

TEST(Campaign, BothSidesFailIffEitherSideFails) {
  const codes::CssCode code = testutil::gross_code();
  CampaignConfig cfg = campaign(0.1, 200);
  cfg.model.kind = NoiseKind::depolarizing;
  std::vector<Outcome> x;
  std::vector<Outcome> z;
  std::vector<Outcome> both;
  cfg.side = Side::x;
  cfg.on_record = [&](const TrialRecord& r) { x.push_back(r.outcome); };
  run_campaign(code, bp_spec(), cfg);
  cfg.side = Side::z;
  cfg.on_record = [&](const TrialRecord& r) { z.push_back(r.outcome); };
  run_campaign(code, bp_spec(), cfg);
  cfg.side = Side::both;
  cfg.on_record = [&](const TrialRecord& r) {
    both.push_back(r.outcome);
    EXPECT_FALSE(r.estimate_x.empty());
    EXPECT_FALSE(r.estimate_z.empty());
  };
  run_campaign(code, bp_spec(), cfg);
  ASSERT_EQ(both.size(), 200u);
  std::size_t failures = 0;
  for (std::size_t t = 0; t < 200; ++t) {
    const bool either = x[t] != Outcome::success || z[t] != Outcome::success;
    EXPECT_EQ(both[t] != Outcome::success, either);
    failures += either ? 1 : 0;
  }
  EXPECT_GT(failures, 0u);
}

TEST(Campaign, PresetCancelFlagStopsBeforeAnyTrial) {
  std::atomic<bool> stop{true};
  CampaignConfig cfg = campaign(0.05, 1000);
  cfg.cancel = &stop;
  const CampaignResult res = run_campaign(steane(), bp_spec(), cfg);
  EXPECT_TRUE(res.cancelled);
  EXPECT_EQ(res.row.trials, 0u);
  EXPECT_EQ(error_code([&] {
              CampaignConfig bad = campaign(0.05, 0);
              run_campaign(steane(), bp_spec(), bad);
            }),
            Errc::invalid_argument);
}

TEST(Paired, IdenticalDecodersHaveRatioOneAndNoDiscordance) {
  const codes::CssCode code = testutil::gross_code();
  const PairedReport rep = paired_comparison(code, bp_spec(), bp_spec(), {NoiseKind::x_only, 0.07},
                                             Side::x, 400, 5, 2);
  EXPECT_GT(rep.failures_a, 0u);
  EXPECT_EQ(rep.failures_a, rep.failures_b);
  EXPECT_EQ(rep.only_a, 0u);
  EXPECT_EQ(rep.only_b, 0u);
  EXPECT_EQ(rep.ratio, 1.0);
}

TEST(Paired, DiscordantCountsBalance) {
  const codes::CssCode code = testutil::gross_code();
  DecoderSpec osd = bp_spec(20);
  osd.kind = DecoderKind::bp_osd0;
  const PairedReport rep = paired_comparison(code, bp_spec(20), osd, {NoiseKind::x_only, 0.07},
                                             Side::x, 400, 5);
  EXPECT_EQ(static_cast<long>(rep.failures_a) - static_cast<long>(rep.failures_b),
            static_cast<long>(rep.only_a) - static_cast<long>(rep.only_b));
  EXPECT_DOUBLE_EQ(rep.ratio, static_cast<double>(rep.failures_a) / rep.failures_b);
}

TEST(Csv, FixedFormattingAndQuoting) {
  LerRow r;
  r.code = "[[144,12,d≤12]]";
  r.decoder = "bp";
  r.rate = 0.06;
  r.trials = 1000;
  r.failures = 100;
  r.ler = 0.1;
  r.ci_lo = 0.0829;
  r.ci_hi = 0.12;
  r.mean_ms = 0.5;
  r.max_ms = 2.25;
  r.convergence_failures = 7;
  EXPECT_EQ(ler_csv({r}),
            "code,decoder,rate,trials,failures,ler,ci_lo,ci_hi,mean_ms,max_ms,convergence_failures\n"
            "\"[[144,12,d≤12]]\",bp,0.060000,1000,100,1.000000e-01,8.290000e-02,1.200000e-01,"
            "0.500000,2.250000,7\n");
  EXPECT_EQ(ler_csv({r}, false),
            "code,decoder,rate,trials,failures,ler,ci_lo,ci_hi,convergence_failures\n"
            "\"[[144,12,d≤12]]\",bp,0.060000,1000,100,1.000000e-01,8.290000e-02,1.200000e-01,7\n");
}
