#include "qldpc/codes/constructions.hpp"

#include <algorithm>
#include <atomic>
#include <thread>

#include "qldpc/error.hpp"

namespace qldpc::codes {

using gf2::BinaryMatrix;
using gf2::BinaryPolynomial;

BivariatePolynomial::BivariatePolynomial(std::size_t l, std::size_t m, std::vector<Term> terms)
    : l_(l), m_(m), terms_(std::move(terms)) {
  if (l_ == 0 || m_ == 0) fail(Errc::invalid_argument, "bivariate block sizes must be positive");
  std::sort(terms_.begin(), terms_.end());
  if (std::adjacent_find(terms_.begin(), terms_.end()) != terms_.end()) {
    fail(Errc::invalid_argument, "duplicate bivariate term");
  }
  for (const auto& [i, j] : terms_) {
    if (i >= l_ || j >= m_) {
      fail(Errc::invalid_argument, "term x^" + std::to_string(i) + " y^" + std::to_string(j) +
                                       " outside l=" + std::to_string(l_) +
                                       ", m=" + std::to_string(m_));
    }
  }
}

BinaryMatrix BivariatePolynomial::matrix() const {
  const std::size_t size = l_ * m_;
  BinaryMatrix out(size, size);
  // Row (r1, r2) of S_l^i ⊗ S_m^j has its one at column (r1 + i, r2 + j).
  for (std::size_t r1 = 0; r1 < l_; ++r1) {
    for (std::size_t r2 = 0; r2 < m_; ++r2) {
      for (const auto& [i, j] : terms_) {
        out.flip(r1 * m_ + r2, ((r1 + i) % l_) * m_ + (r2 + j) % m_);
      }
    }
  }
  return out;
}

std::string BivariatePolynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::string s;
  for (const auto& [i, j] : terms_) {
    if (!s.empty()) s += "+";
    std::string term;
    if (i > 0) term += i == 1 ? "x" : "x^" + std::to_string(i);
    if (j > 0) term += j == 1 ? "y" : "y^" + std::to_string(j);
    s += term.empty() ? "1" : term;
  }
  return s;
}

namespace {

CssCode bicycle_code(const BinaryMatrix& a, const BinaryMatrix& b, CodeMetadata metadata) {
  BinaryMatrix h_x = gf2::hstack(a, b);
  BinaryMatrix h_z = gf2::hstack(b.transpose(), a.transpose());
  return CssCode(std::move(h_x), std::move(h_z), std::move(metadata));
}

void require_same_modulus(const BinaryPolynomial& a, const BinaryPolynomial& b) {
  if (a.modulus() != b.modulus()) {
    fail(Errc::modulus_mismatch, "GB generators must share n");
  }
}

}  // namespace

CssCode build_gb(const BinaryPolynomial& a, const BinaryPolynomial& b) {
  require_same_modulus(a, b);
  CodeMetadata meta;
  meta.family = CodeFamily::gb;
  meta.generators = {{"a", a.to_string()}, {"b", b.to_string()}};
  meta.stabilizer_weight = a.weight() + b.weight();
  return bicycle_code(gf2::circulant(a), gf2::circulant(b), std::move(meta));
}

std::size_t gb_dimension_prop1(const BinaryPolynomial& a, const BinaryPolynomial& b) {
  require_same_modulus(a, b);
  return 2 * gf2::gcd_with_modulus_degree(a, b);
}

CssCode build_ub(const BinaryPolynomial& a, std::size_t l_exp) {
  if (l_exp < 1) fail(Errc::invalid_argument, "UB power exponent must be at least 1");
  const BinaryPolynomial b = gf2::poly_pow2k(a, l_exp);
  if (b.weight() != a.weight()) {
    fail(Errc::invalid_argument, "a^(2^" + std::to_string(l_exp) + ") mod x^" +
                                     std::to_string(a.modulus()) +
                                     "-1 loses terms; weight is not preserved");
  }
  CodeMetadata meta;
  meta.family = CodeFamily::ub;
  meta.generators = {{"a", a.to_string()}, {"b", b.to_string()}};
  meta.l_exp = l_exp;
  meta.stabilizer_weight = 2 * a.weight();
  return bicycle_code(gf2::circulant(a), gf2::circulant(b), std::move(meta));
}

CssCode build_bb(const BivariatePolynomial& a, const BivariatePolynomial& b) {
  if (a.l() != b.l() || a.m() != b.m()) {
    fail(Errc::dimension_mismatch, "BB generators must share (l, m)");
  }
  CodeMetadata meta;
  meta.family = CodeFamily::bb;
  meta.generators = {{"a", a.to_string()}, {"b", b.to_string()}};
  meta.stabilizer_weight = a.terms().size() + b.terms().size();
  return bicycle_code(a.matrix(), b.matrix(), std::move(meta));
}

BinaryPolynomial canonical_shift(const BinaryPolynomial& a) {
  const std::size_t n = a.modulus();
  std::vector<std::size_t> best;
  std::vector<std::size_t> shifted;
  for (std::size_t e : a.exponents()) {
    shifted.clear();
    for (std::size_t f : a.exponents()) shifted.push_back((f + n - e) % n);
    std::sort(shifted.begin(), shifted.end());
    const bool better = best.empty() || shifted.back() < best.back() ||
                        (shifted.back() == best.back() && shifted < best);
    if (better) best = shifted;
  }
  return BinaryPolynomial(n, best);
}

namespace {

std::vector<UbSearchResult> evaluate_candidate(const BinaryPolynomial& a, std::size_t l_max) {
  std::vector<UbSearchResult> out;
  for (std::size_t l = 1; l <= l_max; ++l) {
    const BinaryPolynomial b = gf2::poly_pow2k(a, l);
    if (b.weight() != a.weight()) continue;
    const std::size_t k = gb_dimension_prop1(a, b);
    if (k <= 2) continue;
    CssCode code = build_ub(a, l);
    if (code.k() != k) {
      fail(Errc::invariant_violation, "rank dimension " + std::to_string(code.k()) +
                                          " disagrees with gcd dimension " + std::to_string(k) +
                                          " for a=" + a.to_string());
    }
    const double rate = code.rate();
    out.push_back(UbSearchResult{a, l, std::move(code), rate});
  }
  return out;
}

// Advances an increasing index combination drawn from [1, n); false when done.
bool next_combination(std::vector<std::size_t>& c, std::size_t n) {
  const std::size_t r = c.size();
  for (std::size_t i = r; i-- > 0;) {
    if (c[i] < n - (r - i)) {
      ++c[i];
      for (std::size_t j = i + 1; j < r; ++j) c[j] = c[j - 1] + 1;
      return true;
    }
  }
  return false;
}

}  // namespace

void ub_search(const UbSearchParams& params,
               const std::function<bool(const UbSearchResult&)>& visit) {
  if (params.weight < 4 || params.weight % 2 != 0) {
    fail(Errc::invalid_argument, "UB search needs an even target weight of at least 4");
  }
  if (params.l_max < 1) fail(Errc::invalid_argument, "l_max must be at least 1");
  const std::size_t n = params.n;
  const std::size_t half = params.weight / 2;
  if (n < half) return;

  // Constant term fixed; the remaining half - 1 exponents range over [1, n).
  std::vector<std::size_t> comb(half - 1);
  for (std::size_t i = 0; i < comb.size(); ++i) comb[i] = i + 1;
  bool more = true;

  const std::size_t threads = std::max<std::size_t>(1, params.threads);
  const std::size_t batch_size = 64 * threads;
  std::size_t emitted = 0;
  std::vector<BinaryPolynomial> batch;

  while (more) {
    batch.clear();
    while (more && batch.size() < batch_size) {
      std::vector<std::size_t> exps{0};
      exps.insert(exps.end(), comb.begin(), comb.end());
      BinaryPolynomial a(n, std::move(exps));
      if (canonical_shift(a) == a) batch.push_back(std::move(a));
      more = next_combination(comb, n);
    }

    std::vector<std::vector<UbSearchResult>> slots(batch.size());
    if (threads == 1) {
      for (std::size_t i = 0; i < batch.size(); ++i) slots[i] = evaluate_candidate(batch[i], params.l_max);
    } else {
      std::atomic<std::size_t> next{0};
      std::vector<std::exception_ptr> errors(threads);
      {
        std::vector<std::jthread> workers;
        for (std::size_t t = 0; t < threads; ++t) {
          workers.emplace_back([&, t] {
            try {
              for (std::size_t i = next++; i < batch.size(); i = next++) {
                slots[i] = evaluate_candidate(batch[i], params.l_max);
              }
            } catch (...) {
              errors[t] = std::current_exception();
            }
          });
        }
      }
      for (const auto& e : errors) {
        if (e) std::rethrow_exception(e);
      }
    }

    for (const auto& slot : slots) {
      for (const auto& result : slot) {
        if (!visit(result)) return;
        if (params.limit && ++emitted >= params.limit) return;
      }
    }
  }
}

std::vector<UbSearchResult> ub_search(const UbSearchParams& params) {
  std::vector<UbSearchResult> out;
  ub_search(params, [&](const UbSearchResult& r) {
    out.push_back(r);
    return true;
  });
  return out;
}

}  // namespace qldpc::codes
