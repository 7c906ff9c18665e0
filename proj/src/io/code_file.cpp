#include "qldpc/io/code_file.hpp"

#include <fstream>

#include "qldpc/codes/constructions.hpp"
#include "qldpc/error.hpp"

namespace qldpc::io {

using nlohmann::json;

namespace {

gf2::BinaryPolynomial univariate(const json& j, const char* key, std::size_t n) {
  if (!j.contains(key)) fail(Errc::parse_error, std::string("code file lacks '") + key + "'");
  return gf2::BinaryPolynomial(n, j.at(key).get<std::vector<std::size_t>>());
}

codes::BivariatePolynomial bivariate(const json& j, const char* key, std::size_t l, std::size_t m) {
  if (!j.contains(key)) fail(Errc::parse_error, std::string("code file lacks '") + key + "'");
  std::vector<codes::BivariatePolynomial::Term> terms;
  for (const auto& t : j.at(key)) {
    const auto pair = t.get<std::vector<std::size_t>>();
    if (pair.size() != 2) fail(Errc::parse_error, "bivariate terms are [i, j] pairs");
    terms.emplace_back(pair[0], pair[1]);
  }
  return codes::BivariatePolynomial(l, m, std::move(terms));
}

codes::CssCode build(const json& j) {
  const std::string family = j.value("family", "");
  if (family == "ub" || family == "gb") {
    gf2::BinaryPolynomial a;
    gf2::BinaryPolynomial b;
    bool have_b = false;
    if (j.contains("polynomials")) {
      const auto set = gf2::parse_polynomial_set(j.at("polynomials").get<std::string>());
      a = set.at("a");
      have_b = set.polynomials.contains("b");
      if (have_b) b = set.at("b");
    } else {
      const std::size_t n = j.at("n").get<std::size_t>();
      a = univariate(j, "a", n);
      have_b = j.contains("b");
      if (have_b) b = univariate(j, "b", n);
    }
    if (family == "gb") {
      if (!have_b) fail(Errc::parse_error, "gb code needs 'b'");
      return codes::build_gb(a, b);
    }
    return codes::build_ub(a, j.at("l").get<std::size_t>());
  }
  if (family == "bb") {
    const std::size_t l = j.at("l").get<std::size_t>();
    const std::size_t m = j.at("m").get<std::size_t>();
    return codes::build_bb(bivariate(j, "a", l, m), bivariate(j, "b", l, m));
  }
  if (family == "custom") {
    const auto hx = j.at("h_x").get<std::vector<std::string>>();
    const auto hz = j.at("h_z").get<std::vector<std::string>>();
    return codes::CssCode(gf2::BinaryMatrix::from_strings(hx), gf2::BinaryMatrix::from_strings(hz));
  }
  fail(Errc::parse_error, "unknown code family '" + family + "'");
}

}  // namespace

codes::CssCode code_from_json(const json& j) {
  if (!j.is_object()) fail(Errc::parse_error, "code description must be a JSON object");
  try {
    codes::CssCode code = build(j);
    if (j.contains("name")) {
      codes::CodeMetadata meta = code.metadata();
      meta.name = j.at("name").get<std::string>();
      codes::CssCode named(code.h_x(), code.h_z(), std::move(meta));
      return named;
    }
    return code;
  } catch (const json::exception& e) {
    fail(Errc::parse_error, std::string("code description: ") + e.what());
  }
}

codes::CssCode load_code(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(Errc::parse_error, "cannot open code file " + path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    fail(Errc::parse_error, path + ": " + e.what());
  }
  return code_from_json(j);
}

}  // namespace qldpc::io
