#include <gtest/gtest.h>

#include <numeric>
#include <random>

#include "qldpc/error.hpp"
#include "qldpc/gf2/binary_matrix.hpp"
#include "qldpc/gf2/binary_polynomial.hpp"
#include "test_util.hpp"

using qldpc::Errc;
using qldpc::Error;
using namespace qldpc::gf2;

namespace {

BinaryPolynomial poly(std::size_t n, std::vector<std::size_t> exps) {
  return BinaryPolynomial(n, std::move(exps));
}

Errc error_code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected qldpc::Error";
  return Errc::invariant_violation;
}

}  // namespace

TEST(BitVector, hex_round_trip_and_layout) {
  const auto v = BitVector::from_bits("100000011");
  EXPECT_EQ(v.to_hex(), "818");
  EXPECT_EQ(BitVector::from_hex("818", 9), v);
  EXPECT_EQ(error_code_of([] { BitVector::from_hex("819", 9); }), Errc::parse_error);
  EXPECT_EQ(error_code_of([] { BitVector::from_hex("81", 9); }), Errc::parse_error);

  std::mt19937_64 rng(11);
  for (std::size_t n : {1, 63, 64, 65, 200}) {
    const auto r = qldpc::testutil::random_vector(n, rng);
    EXPECT_EQ(BitVector::from_hex(r.to_hex(), n), r);
  }
}

TEST(BitVector, weight_support_dot) {
  const auto v = BitVector::from_support(130, std::vector<std::size_t>{0, 64, 129});
  EXPECT_EQ(v.weight(), 3u);
  EXPECT_EQ(v.support(), (std::vector<std::size_t>{0, 64, 129}));
  EXPECT_TRUE(v.dot(BitVector::from_support(130, std::vector<std::size_t>{64})));
  EXPECT_FALSE(v.dot(BitVector::from_support(130, std::vector<std::size_t>{0, 129})));
  EXPECT_EQ(error_code_of([] { BitVector(3) ^= BitVector(4); }), Errc::dimension_mismatch);
}

TEST(PolyMulMod, examples) {
  EXPECT_EQ(poly_mul_mod(poly(63, {0, 1}), poly(63, {0, 1})), poly(63, {0, 2}));
  EXPECT_EQ(poly_mul_mod(poly(3, {0, 1}), poly(3, {0})), poly(3, {0, 1}));
  EXPECT_EQ(error_code_of([] { poly_mul_mod(poly(3, {0}), poly(4, {0})); }),
            Errc::modulus_mismatch);
}

TEST(PolyMulMod, eighth_power_by_repeated_multiplication) {
  // Oracle: three explicit products a*a, a^2*a^2, a^4*a^4.
  auto a = poly(63, {0, 1, 6});
  auto p = a;
  for (int i = 0; i < 3; ++i) p = poly_mul_mod(p, p);
  EXPECT_EQ(p, poly(63, {0, 8, 48}));
  EXPECT_EQ(poly_pow2k(a, 3), p);
}

TEST(PolyPow2k, matches_repeated_multiplication) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 2 + rng() % 70;
    const auto a = qldpc::testutil::random_polynomial(n, 1 + rng() % 5, rng);
    const std::size_t l = rng() % 5;
    auto slow = a;
    for (std::size_t i = 0; i < l; ++i) slow = poly_mul_mod(slow, slow);
    EXPECT_EQ(poly_pow2k(a, l), slow);
  }
}

TEST(PolyGcd, examples) {
  EXPECT_EQ(poly_gcd(poly(8, {0, 1}), poly(8, {0, 2})), poly(8, {0, 1}));
  EXPECT_EQ(poly_gcd(poly(8, {0, 3, 5}), poly(8, {0})), poly(8, {0}));
  EXPECT_EQ(error_code_of([] { poly_gcd(BinaryPolynomial::zero(5), BinaryPolynomial::zero(5)); }),
            Errc::degenerate_input);

  const auto a = poly(63, {0, 1, 6});
  const auto b = poly_pow2k(a, 3);
  const auto h = poly_gcd_with_modulus(poly_gcd(a, b));
  EXPECT_EQ(h.degree(), 6);
  EXPECT_EQ(gcd_with_modulus_degree(a, b), 6u);
}

TEST(PolyGcd, divides_both_inputs) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 2 + rng() % 60;
    const auto a = qldpc::testutil::random_polynomial(n, 1 + rng() % n, rng);
    const auto b = qldpc::testutil::random_polynomial(n, 1 + rng() % n, rng);
    const auto g = poly_gcd(a, b);
    ASSERT_FALSE(g.is_zero());
    EXPECT_TRUE(poly_rem(a, g).is_zero());
    EXPECT_TRUE(poly_rem(b, g).is_zero());
    const auto h = poly_gcd_with_modulus(a);
    EXPECT_TRUE(poly_rem(a, h).is_zero());
  }
}

TEST(Circulant, examples) {
  EXPECT_EQ(circulant(poly(3, {0, 1})), BinaryMatrix::from_strings({"110", "011", "101"}));
  EXPECT_EQ(circulant(poly(4, {0})), BinaryMatrix::identity(4));
}

TEST(Circulant, product_matches_polynomial_product_and_commutes) {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 1 + rng() % 32;
    const auto a = qldpc::testutil::random_polynomial(n, rng() % (n + 1), rng);
    const auto b = qldpc::testutil::random_polynomial(n, rng() % (n + 1), rng);
    const auto A = circulant(a);
    const auto B = circulant(b);
    const auto AB = qldpc::testutil::dense_product(A, B);
    EXPECT_EQ(AB, qldpc::testutil::to_dense(circulant(poly_mul_mod(a, b))));
    EXPECT_EQ(AB, qldpc::testutil::dense_product(B, A));
    EXPECT_EQ(A * B, B * A);
  }
}

TEST(Rank, examples) {
  EXPECT_EQ(rank(BinaryMatrix::identity(70)), 70u);
  EXPECT_EQ(rank(BinaryMatrix(5, 9)), 0u);
  const auto m = BinaryMatrix::from_strings({"110", "011", "101"});
  EXPECT_EQ(qldpc::testutil::brute_force_rank(m), 2u);
  EXPECT_EQ(rank(m), 2u);
}

TEST(Rank, agrees_with_span_enumeration_and_row_operations) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t rows = 1 + rng() % 9;
    const std::size_t cols = 1 + rng() % 80;
    auto m = qldpc::testutil::random_matrix(rows, cols, rng, 0.3);
    const std::size_t r = rank(m);
    EXPECT_EQ(r, qldpc::testutil::brute_force_rank(m));
    EXPECT_LE(r, std::min(rows, cols));
    std::vector<std::size_t> order(rows);
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);
    auto permuted = m.select_rows(order);
    EXPECT_EQ(rank(permuted), r);
    if (rows > 1) {
      auto row0 = permuted.row(0);
      row0 ^= permuted.row(1);
      permuted.set_row(0, row0);
      EXPECT_EQ(rank(permuted), r);
    }
  }
}

TEST(InRowspace, examples_and_rows) {
  const auto m = BinaryMatrix::from_strings({"110", "011"});
  EXPECT_TRUE(in_rowspace(m, BitVector(3)));
  EXPECT_TRUE(in_rowspace(m, BitVector::from_bits("101")));
  EXPECT_FALSE(in_rowspace(m, BitVector::from_bits("100")));
  EXPECT_TRUE(in_rowspace(BinaryMatrix::identity(5), BitVector::from_bits("10110")));
  EXPECT_EQ(error_code_of([&] { in_rowspace(m, BitVector(4)); }), Errc::dimension_mismatch);

  std::mt19937_64 rng(19);
  for (int trial = 0; trial < 40; ++trial) {
    const auto h = qldpc::testutil::random_matrix(1 + rng() % 20, 1 + rng() % 150, rng, 0.1);
    const RowSpace space(h);
    for (std::size_t r = 0; r < h.rows(); ++r) EXPECT_TRUE(space.contains(h.row(r)));
  }
}

TEST(SolveOrProject, examples) {
  std::mt19937_64 rng(23);
  const auto m = qldpc::testutil::random_matrix(4, 6, rng);
  std::vector<std::size_t> order{5, 4, 3, 2, 1, 0};
  EXPECT_TRUE(solve_or_project(m, BitVector(4), order).none());

  const auto id = BinaryMatrix::identity(6);
  const auto s = BitVector::from_bits("101101");
  EXPECT_EQ(solve_or_project(id, s, std::vector<std::size_t>{2, 0, 1, 5, 4, 3}), s);

  const auto bad = BinaryMatrix::from_strings({"11", "11"});
  EXPECT_EQ(error_code_of([&] {
              solve_or_project(bad, BitVector::from_bits("10"), std::vector<std::size_t>{0, 1});
            }),
            Errc::no_solution);
  EXPECT_EQ(error_code_of([&] {
              solve_or_project(bad, BitVector(2), std::vector<std::size_t>{0, 0});
            }),
            Errc::invalid_permutation);
}

TEST(SolveOrProject, solution_satisfies_system_on_pivots) {
  std::mt19937_64 rng(29);
  int solved = 0;
  while (solved < 200) {
    const auto m = qldpc::testutil::random_matrix(4, 6, rng);
    if (rank(m) != 4) continue;
    const auto s = qldpc::testutil::random_vector(4, rng);
    std::vector<std::size_t> order(6);
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);
    const auto e = solve_or_project(m, s, order);
    EXPECT_EQ(m.multiply(e), s);
    EXPECT_LE(e.weight(), 4u);
    ++solved;
  }
}

TEST(KernelBasis, vectors_are_in_kernel_and_independent) {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 30; ++trial) {
    const auto m = qldpc::testutil::random_matrix(1 + rng() % 12, 2 + rng() % 40, rng, 0.3);
    const auto basis = kernel_basis(m);
    EXPECT_EQ(basis.size(), m.cols() - rank(m));
    for (const auto& v : basis) EXPECT_TRUE(m.multiply(v).none());
    if (!basis.empty()) EXPECT_EQ(rank(BinaryMatrix::from_rows(basis, m.cols())), basis.size());
  }
}

TEST(PolynomialText, parse_and_format) {
  const auto set = parse_polynomial_set("n=63; a=0,1,6");
  EXPECT_EQ(set.n, 63u);
  EXPECT_EQ(set.at("a"), poly(63, {0, 1, 6}));
  EXPECT_EQ(format_polynomial_set(set), "n=63; a=0,1,6");
  EXPECT_EQ(parse_polynomial_set(" a = 6,0 ; n = 7 ; b=").at("b"), BinaryPolynomial::zero(7));
  EXPECT_EQ(error_code_of([] { parse_polynomial_set("a=0,1"); }), Errc::parse_error);
  EXPECT_EQ(error_code_of([] { parse_polynomial_set("n=5; a=0,7"); }), Errc::invalid_argument);
  EXPECT_EQ(error_code_of([] { parse_polynomial_set("n=5; a=0,x"); }), Errc::parse_error);
  EXPECT_EQ(poly(63, {0, 1, 6}).to_string(), "1+x+x^6");
}

TEST(BinaryMatrix, size_cap) {
  EXPECT_EQ(error_code_of([] { BinaryMatrix(1, (std::size_t{1} << 20) + 1); }), Errc::size_limit);
}
