#include <gtest/gtest.h>

#include <algorithm>
#include <map>
#include <random>

#include "qldpc/error.hpp"
#include "qldpc/mbbp/mbbp.hpp"
#include "reference_codes.hpp"
#include "test_util.hpp"
#include "tree_codes.hpp"

using namespace qldpc;
using namespace qldpc::mbbp;
using gf2::BinaryMatrix;
using gf2::BitVector;

namespace {

Candidate cand(const std::string& bits, std::size_t id = 0) { return {BitVector::from_bits(bits), id, 1}; }

// Scores as long double ratios; winner is the first entry whose
// (score, -weight) is maximal.
BitVector reference_fws(const CandidateList& list) {
  std::map<std::string, int> count;
  for (const auto& c : list) ++count[c.estimate.to_bits()];
  std::size_t best = 0;
  auto key = [&](std::size_t i) {
    const long double w = static_cast<long double>(list[i].estimate.weight());
    return std::pair<long double, long double>(count[list[i].estimate.to_bits()] / (w + 1), -w);
  };
  for (std::size_t i = 1; i < list.size(); ++i) {
    if (key(i) > key(best)) best = i;
  }
  return list[best].estimate;
}

MbbpConfig gross_config(double tau, std::size_t threads = 1) {
  MbbpConfig cfg;
  cfg.decoder.beta = 0.875;
  cfg.decoder.i_max = 60;
  cfg.tau = tau;
  cfg.threads = threads;
  return cfg;
}

}  // namespace

TEST(Fws, WorkedExamples) {
  const CandidateList a{cand("1100"), cand("1100"), cand("0000")};
  EXPECT_EQ(fws_select(a), BitVector::from_bits("0000"));
  const CandidateList same{cand("0110"), cand("0110"), cand("0110")};
  EXPECT_EQ(fws_select(same), BitVector::from_bits("0110"));
  const CandidateList b{cand("111100"), cand("111100"), cand("111100"), cand("000011"), cand("000011")};
  EXPECT_EQ(fws_select(b), BitVector::from_bits("000011"));
  EXPECT_EQ(testutil::error_code([] { fws_select(CandidateList{}); }), Errc::empty_list);
}

TEST(Fws, TiesPreferLowerWeightThenFirstEntry) {
  // 2/(3+1) == 1/(1+1): equal score, lower weight wins.
  const CandidateList a{cand("11100"), cand("11100"), cand("00010")};
  EXPECT_EQ(fws_select(a), BitVector::from_bits("00010"));
  const CandidateList b{cand("0100"), cand("0010")};
  EXPECT_EQ(fws_index(b), 0U);
}

TEST(Lms, WorkedExamples) {
  const CandidateList a{cand("1110"), cand("0100"), cand("1001")};
  EXPECT_EQ(lms_select(a, 0.1), BitVector::from_bits("0100"));
  const CandidateList one{cand("1011")};
  EXPECT_EQ(lms_select(one, 0.1), BitVector::from_bits("1011"));
  EXPECT_EQ(testutil::error_code([] { lms_select(CandidateList{}, 0.1); }), Errc::empty_list);
  EXPECT_EQ(testutil::error_code([&] { lms_select(one, 0.5); }), Errc::invalid_argument);
}

TEST(Fws, AgreesWithLmsOnDistinctLists) {
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 2000; ++trial) {
    CandidateList list;
    std::set<std::string> seen;
    const std::size_t size = 1 + rng() % 8;
    while (list.size() < size) {
      const BitVector v = testutil::random_vector(10, rng, 0.3);
      if (seen.insert(v.to_bits()).second) list.push_back({v, list.size(), 1});
    }
    EXPECT_EQ(fws_select(list), lms_select(list, 0.1));
  }
}

TEST(Fws, ShuffledListsFollowTheReferenceTieBreak) {
  std::mt19937_64 rng(2);
  const std::vector<std::string> pool{"000000", "100000", "010000", "110000", "001100", "111000", "000111"};
  for (int trial = 0; trial < 10000; ++trial) {
    CandidateList list;
    const std::size_t size = 1 + rng() % 9;
    for (std::size_t i = 0; i < size; ++i) list.push_back(cand(pool[rng() % pool.size()], i));
    std::shuffle(list.begin(), list.end(), rng);
    const BitVector got = fws_select(list);
    ASSERT_EQ(got, reference_fws(list));
    ASSERT_EQ(got, fws_select(list));
  }
}

TEST(Fws, DuplicatingTheListKeepsTheWinner) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 1000; ++trial) {
    CandidateList list;
    for (std::size_t i = 0; i < 1 + rng() % 7; ++i) list.push_back({testutil::random_vector(5, rng, 0.3), i, 1});
    CandidateList doubled = list;
    doubled.insert(doubled.end(), list.begin(), list.end());
    EXPECT_EQ(fws_select(list), fws_select(doubled));
  }
}

TEST(Mbbp, ConfigValidation) {
  MbbpConfig cfg;
  cfg.tau = 0.0;
  EXPECT_EQ(testutil::error_code([&] { cfg.validate(); }), Errc::invalid_argument);
  cfg.tau = 1.2;
  EXPECT_EQ(testutil::error_code([&] { cfg.validate(); }), Errc::invalid_argument);
  EXPECT_EQ(parse_rule("lms"), Rule::lms);
}

TEST(Mbbp, RejectsMismatchedSubtrees) {
  const BinaryMatrix h = BinaryMatrix::from_strings({"110", "011", "101"});
  tanner::SubtreeCollection bad;
  bad.subtrees = {{0, 1}};
  EXPECT_EQ(testutil::error_code([&] { MbbpDecoder(h, bad, MbbpConfig{}); }), Errc::dimension_mismatch);
  bad.subtrees = {{0, 1}, {1, 2}};
  EXPECT_EQ(testutil::error_code([&] { MbbpDecoder(h, bad, MbbpConfig{}); }), Errc::dimension_mismatch);
}

TEST(Mbbp, ZeroSyndrome) {
  const auto code = testutil::gross_code();
  const MbbpDecoder dec(code.h_z(), gross_config(1.0));
  const auto r = dec.decode(BitVector(code.h_z().rows()), 0.06);
  EXPECT_TRUE(r.result.converged);
  EXPECT_TRUE(r.result.error_estimate.none());
  EXPECT_EQ(r.stop_round, 1U);
  EXPECT_EQ(r.candidates.size(), dec.instance_count());
  for (const auto& inst : r.instances) EXPECT_EQ(inst.iterations, 1U);
}

TEST(Mbbp, SingleSubtreeMatchesPlainBp) {
  for (const auto& tc : testutil::unique_leader_tree_codes(10, 7, 12, 4)) {
    MbbpConfig cfg;
    cfg.decoder.variant = bp::Variant::sum_product;
    const MbbpDecoder dec(tc.h, cfg);
    ASSERT_EQ(dec.instance_count(), 1U);
    const auto& t = dec.subtrees().subtrees[0];
    const BinaryMatrix ht = tanner::redundant_matrix(tc.h, t);
    for (std::uint32_t s = 0; s < (1U << tc.h.rows()); ++s) {
      BitVector sv(tc.h.rows());
      for (std::size_t r = 0; r < tc.h.rows(); ++r) sv.set(r, s >> r & 1U);
      const auto m = dec.decode(sv, 0.1);
      const auto b = bp::bp_decode(ht, tanner::extended_syndrome(sv, t), 0.1, cfg.decoder);
      EXPECT_EQ(m.result.converged, b.converged);
      if (b.converged) {
        EXPECT_EQ(m.result.error_estimate, b.error_estimate);
        EXPECT_EQ(m.result.iterations_used, b.iterations_used);
      } else {
        EXPECT_TRUE(m.result.error_estimate.none());
      }
    }
  }
}

TEST(Mbbp, EmptyListFallsBackToZero) {
  // An all-equal prior on h = [1 1] never breaks the tie, so no instance
  // converges.
  const BinaryMatrix h = BinaryMatrix::from_strings({"11"});
  MbbpConfig cfg;
  cfg.decoder.i_max = 5;
  const auto r = MbbpDecoder(h, cfg).decode(BitVector::from_bits("1"), 0.1);
  EXPECT_TRUE(r.candidates.empty());
  EXPECT_FALSE(r.result.converged);
  EXPECT_TRUE(r.result.error_estimate.none());
  EXPECT_EQ(r.stop_round, 5U);

  cfg.include_nonconverged = true;
  const auto with = MbbpDecoder(h, cfg).decode(BitVector::from_bits("1"), 0.1);
  EXPECT_EQ(with.candidates.size(), 1U);
  EXPECT_FALSE(with.result.converged);
}

TEST(Mbbp, CandidatesSatisfyBaseSyndromeAndShrinkWithTau) {
  const auto code = testutil::gross_code();
  const BinaryMatrix& h = code.h_z();
  std::mt19937_64 rng(17);
  const MbbpDecoder full(h, gross_config(1.0));
  const MbbpDecoder early(h, gross_config(0.4));
  for (int trial = 0; trial < 60; ++trial) {
    const BitVector s = h.multiply(testutil::random_vector(h.cols(), rng, 0.07));
    const auto a = full.decode(s, 0.07);
    const auto b = early.decode(s, 0.07);
    std::set<std::size_t> ids;
    for (const auto& c : a.candidates) {
      EXPECT_EQ(h.multiply(c.estimate), s);
      ids.insert(c.subtree);
    }
    for (const auto& c : b.candidates) EXPECT_TRUE(ids.count(c.subtree));
    EXPECT_LE(b.stop_round, a.stop_round);
    if (a.result.converged) EXPECT_EQ(h.multiply(a.result.error_estimate), s);
  }
}

TEST(Mbbp, ThreadedMatchesLockstep) {
  const auto code = testutil::gross_code();
  const BinaryMatrix& h = code.h_z();
  std::mt19937_64 rng(23);
  for (double tau : {0.2, 0.4, 0.75, 1.0}) {
    const MbbpDecoder one(h, gross_config(tau, 1));
    const MbbpDecoder many(h, gross_config(tau, 4));
    for (int trial = 0; trial < 30; ++trial) {
      const BitVector s = h.multiply(testutil::random_vector(h.cols(), rng, 0.08));
      const auto a = one.decode(s, 0.08);
      const auto b = many.decode(s, 0.08);
      EXPECT_EQ(a.result.error_estimate, b.result.error_estimate);
      EXPECT_EQ(a.result.converged, b.result.converged);
      EXPECT_EQ(a.result.posterior_llrs, b.result.posterior_llrs);
      EXPECT_EQ(a.stop_round, b.stop_round);
      ASSERT_EQ(a.candidates.size(), b.candidates.size());
      for (std::size_t i = 0; i < a.candidates.size(); ++i) {
        EXPECT_EQ(a.candidates[i].subtree, b.candidates[i].subtree);
        EXPECT_EQ(a.candidates[i].estimate, b.candidates[i].estimate);
      }
      for (std::size_t i = 0; i < a.instances.size(); ++i) {
        EXPECT_EQ(a.instances[i].converged, b.instances[i].converged);
        EXPECT_EQ(a.instances[i].iterations, b.instances[i].iterations);
      }
    }
  }
}

TEST(Mbbp, StopRoundIsTheRequiredConvergenceRank) {
  const auto code = testutil::gross_code();
  const BinaryMatrix& h = code.h_z();
  std::mt19937_64 rng(29);
  const MbbpDecoder dec(h, gross_config(0.4));
  EXPECT_EQ(dec.required_converged(), (4 * dec.instance_count() + 9) / 10);
  for (int trial = 0; trial < 40; ++trial) {
    const BitVector s = h.multiply(testutil::random_vector(h.cols(), rng, 0.06));
    const auto r = dec.decode(s, 0.06);
    if (r.candidates.size() >= dec.required_converged()) {
      std::vector<std::size_t> rounds;
      for (const auto& c : r.candidates) rounds.push_back(c.iterations);
      std::sort(rounds.begin(), rounds.end());
      EXPECT_EQ(rounds[dec.required_converged() - 1], r.stop_round);
    }
  }
}

TEST(Mbbp, Deterministic) {
  const auto code = testutil::gross_code();
  MbbpConfig cfg = gross_config(1.0);
  cfg.pi_seed = 7;
  const MbbpDecoder a(code.h_z(), cfg);
  const MbbpDecoder b(code.h_z(), cfg);
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 20; ++trial) {
    const BitVector s = code.h_z().multiply(testutil::random_vector(code.n(), rng, 0.07));
    const auto x = a.decode(s, 0.07);
    const auto y = b.decode(s, 0.07);
    EXPECT_EQ(x.result.error_estimate, y.result.error_estimate);
    EXPECT_EQ(x.result.posterior_llrs, y.result.posterior_llrs);
    EXPECT_EQ(x.result.iterations_used, y.result.iterations_used);
  }
}
