#include "doctest.h"

#include <algorithm>

#include "fptdet/frobenius.hpp"
#include "fptdet/witness.hpp"

using namespace fptdet;

namespace {

MinorSpec ms(std::vector<int> rows, std::vector<int> cols) {
  return {std::move(rows), std::move(cols)};
}

long long oracle_degree(const std::vector<MinorFactor>& fs) {
  long long d = 0;
  for (const auto& f : fs) d += f.mult * f.spec.size();
  return d;
}

long long oracle_count(const std::vector<MinorFactor>& fs) {
  long long c = 0;
  for (const auto& f : fs) c += f.mult;
  return c;
}

// expands the product over F_5 (leading coefficients are +1 throughout, so
// any characteristic works for the initial-form cross-check)
Polynomial expand_product(const ProductOfMinors& prod) {
  Polynomial acc = Polynomial::constant(prod.shape, 5, 1);
  for (const auto& f : prod.factors) {
    Polynomial minor = expand_minor(prod.shape, 5, f.spec);
    for (long long i = 0; i < f.mult; ++i) acc = acc * minor;
  }
  return acc;
}

}  // namespace

TEST_CASE("delta_k on the worked 4x5 example") {
  auto d2 = build_delta_k({4, 5, 2}, 2);
  std::vector<MinorFactor> expected = {
      {ms({1, 2, 3}, {3, 4, 5}), 1},
      {ms({1, 2, 3, 4}, {1, 2, 3, 4}), 1},
      {ms({1, 2, 3, 4}, {2, 3, 4, 5}), 1},
      {ms({2, 3, 4}, {1, 2, 3}), 1},
  };
  CHECK(d2.factors == expected);
  CHECK(d2.degree() == 14);
  CHECK(d2.minor_count() == 4);
}

TEST_CASE("delta_k edge ranges") {
  // square shape, k = m-1: the single full determinant
  auto d = build_delta_k({3, 3, 1}, 2);
  REQUIRE(d.factors.size() == 1);
  CHECK(d.factors[0].spec == ms({1, 2, 3}, {1, 2, 3}));
  CHECK(d.minor_count() == 1);

  // k = 0: degree mn, count m+n-1
  for (int m = 1; m <= 5; ++m)
    for (int n = m; n <= 6; ++n) {
      auto d0 = build_delta_k({m, n, 1}, 0);
      CHECK(d0.degree() == m * n);
      CHECK(d0.minor_count() == m + n - 1);
    }

  CHECK_THROWS_AS(build_delta_k({3, 4, 2}, -1), std::invalid_argument);
  CHECK_THROWS_AS(build_delta_k({3, 4, 2}, 4), std::invalid_argument);
}

TEST_CASE("delta_k_prime basics") {
  // the worked example: one extra 2x2 factor on delta_2
  auto d2p = build_delta_k_prime({4, 5, 2}, 2);
  CHECK(d2p.degree() == 16);
  CHECK(d2p.minor_count() == 5);
  bool has_extra = false;
  for (const auto& f : d2p.factors) has_extra |= f.spec == ms({3, 4}, {1, 2});
  CHECK(has_extra);

  // (2,2,1): delta_1 * [2|1]; the second product of delta_1 is empty
  auto d1p = build_delta_k_prime({2, 2, 1}, 1);
  std::vector<MinorFactor> expected = {{ms({1, 2}, {1, 2}), 1}, {ms({2}, {1}), 1}};
  CHECK(d1p.factors == expected);
  CHECK(d1p.degree() == 3);
  CHECK(d1p.minor_count() == 2);

  CHECK_THROWS_AS(build_delta_k_prime({4, 5, 2}, 0), std::invalid_argument);
}

TEST_CASE("golden leading monomial of delta_2' on 4x5") {
  auto d2p = build_delta_k_prime({4, 5, 2}, 2);
  auto lead = leading_monomial_of_product(d2p.shape, d2p.factors);
  CHECK(monomial_to_string(lead, 5) ==
        "x[1,1]*x[1,2]*x[1,3]*x[2,1]*x[2,2]*x[2,3]*x[2,4]*"
        "x[3,1]*x[3,2]*x[3,3]*x[3,4]*x[3,5]*x[4,2]*x[4,3]*x[4,4]*x[4,5]");
  CHECK(lead.max_exponent() == 1);
  CHECK(lead.total_degree() == 16);
}

TEST_CASE("degree and count identities for delta_k and delta_k'") {
  for (int n = 1; n <= 7; ++n)
    for (int m = 1; m <= n; ++m) {
      MatrixShape shape{m, n, 1};
      for (int k = 0; k <= m - 1; ++k) {
        auto d = build_delta_k(shape, k);
        CHECK(d.degree() == m * n - k * k - k);
        CHECK(d.minor_count() == m + n - 2 * k - 1);
        CHECK(leading_monomial_of_product(shape, d.factors).max_exponent() == 1);
        if (k >= 1) {
          auto dp = build_delta_k_prime(shape, k);
          CHECK(dp.degree() == m * n - k * k);
          CHECK(dp.minor_count() == m + n - 2 * k);
          CHECK(leading_monomial_of_product(shape, dp.factors).max_exponent() == 1);
        }
      }
    }
}

TEST_CASE("capital delta on pinned shapes") {
  // (4,5,3): k=1, u=2, t-k-u = 0, so delta = delta_1^2
  auto cert = build_capital_delta({4, 5, 3});
  CHECK(cert.k == 1);
  CHECK(cert.u == 2);
  CHECK(cert.case_tag == DeltaCase::UNonneg);
  CHECK(cert.claimed_degree == 36);
  CHECK(oracle_degree(cert.factors) == 36);
  CHECK(cert.claimed_minor_count == 12);
  CHECK(oracle_count(cert.factors) == 12);
  CHECK(cert.claimed_max_initial_exponent == 2);
  CHECK(cert.bruns_s == 12);
  for (const auto& f : cert.factors) CHECK(f.mult == 2);

  // (4,5,2): k=0, delta = delta_0^2
  cert = build_capital_delta({4, 5, 2});
  CHECK(cert.k == 0);
  CHECK(cert.case_tag == DeltaCase::KZero);
  CHECK(cert.claimed_degree == 40);
  CHECK(cert.claimed_minor_count == 16);
  CHECK(cert.claimed_max_initial_exponent == 2);
  CHECK(cert.bruns_s == 20);

  // (2,2,2): k=1, u=1, delta = delta_1^1
  cert = build_capital_delta({2, 2, 2});
  CHECK(cert.claimed_degree == 2);
  CHECK(cert.claimed_minor_count == 1);
  CHECK(cert.bruns_s == 1);
  CHECK(cert.factors == std::vector<MinorFactor>{{ms({1, 2}, {1, 2}), 1}});
}

TEST_CASE("capital delta covers the negative-u case") {
  // least k = 1 with u = -1 on these shapes
  for (MatrixShape shape : {MatrixShape{4, 8, 3}, MatrixShape{6, 9, 4}}) {
    auto res = minimizing_k_and_u(shape);
    REQUIRE(res.k == 1);
    REQUIRE(res.u == -1);
    auto cert = build_capital_delta(shape);
    CHECK(cert.case_tag == DeltaCase::UNeg);
    const long long s = static_cast<long long>(shape.m - 1) * (shape.n - 1);
    CHECK(cert.claimed_degree == shape.t * s);
    CHECK(cert.claimed_minor_count == s);
    CHECK(cert.claimed_max_initial_exponent == shape.t - 1);
    CHECK(verify_certificate(cert).all_pass());
  }
}

TEST_CASE("capital delta with an explicit k") {
  // (4,5,3) at k=2: u=-1, delta = delta_1 (the prime power is empty)
  auto cert = build_capital_delta({4, 5, 3}, 2);
  CHECK(cert.case_tag == DeltaCase::UNeg);
  CHECK(cert.u == -1);
  CHECK(cert.claimed_degree == 18);
  CHECK(cert.claimed_minor_count == 6);
  CHECK(verify_certificate(cert).all_pass());

  // expansion cross-check of the leading monomial at this small degree
  ProductOfMinors prod{cert.shape, cert.factors};
  CHECK(leading_monomial_of_product(cert.shape, cert.factors) ==
        initial_form(expand_product(prod)).first);

  CHECK_THROWS_AS(build_capital_delta({4, 5, 3}, 7), std::invalid_argument);
  CHECK_THROWS_AS(build_capital_delta({4, 5, 3}, -1), std::invalid_argument);

  // a non-minimizing k can fail verification without being malformed:
  // (4,5,3) at k=0 gives delta_0^3 with 24 > 20 minors
  auto loose = build_capital_delta({4, 5, 3}, 0);
  auto rep = verify_certificate(loose);
  CHECK(rep.structure_ok);
  CHECK_FALSE(rep.all_pass());
}

TEST_CASE("bruns hypothesis check") {
  MatrixShape shape{4, 5, 3};
  auto cert = build_capital_delta(shape);
  ProductOfMinors delta{shape, cert.factors};
  CHECK(bruns_hypothesis_check(delta, cert.bruns_s));

  ProductOfMinors single{shape, {{ms({1, 2, 3}, {1, 2, 3}), 1}}};
  CHECK(bruns_hypothesis_check(single, 1));

  ProductOfMinors two{shape, {{ms({1, 2, 3}, {1, 2, 3}), 2}}};
  CHECK_FALSE(bruns_hypothesis_check(two, 1));

  CHECK_THROWS_AS(bruns_hypothesis_check(single, 0), std::invalid_argument);
}

TEST_CASE("bracket power non-membership check") {
  MatrixShape shape{4, 5, 3};
  auto cert = build_capital_delta(shape);
  ProductOfMinors delta{shape, cert.factors};
  CHECK(check_not_in_bracket_power(delta, 3));  // max exponent 2

  auto d0 = build_delta_k({4, 5, 2}, 0);
  CHECK_FALSE(check_not_in_bracket_power(d0, 1));

  ProductOfMinors single{shape, {{ms({1, 2, 3}, {2, 3, 4}), 1}}};
  CHECK(check_not_in_bracket_power(single, 2));
}

TEST_CASE("witness identities across shapes up to 7") {
  for (int n = 1; n <= 7; ++n)
    for (int m = 1; m <= n; ++m)
      for (int t = 1; t <= m; ++t) {
        MatrixShape shape{m, n, t};
        auto cert = build_capital_delta(shape);
        const long long k = cert.k;
        const long long s = (m - k) * (n - k);
        ProductOfMinors delta{shape, cert.factors};
        CHECK(delta.degree() == t * s);
        if (k >= 1)
          CHECK(delta.minor_count() == s);
        else
          CHECK(delta.minor_count() <= m * n);
        // equality (not just <=) has held on every tested shape
        CHECK(leading_monomial_of_product(shape, cert.factors).max_exponent() == t - k);
        CHECK(bruns_hypothesis_check(delta, s));
        CHECK(check_not_in_bracket_power(delta, t - k + 1));
        CHECK(verify_certificate(cert).all_pass());
      }
}

TEST_CASE("combinatorial leading monomial matches full expansion at desk scale") {
  for (int n = 1; n <= 12; ++n)
    for (int m = 1; m <= n && m * n <= 12; ++m) {
      MatrixShape shape{m, n, 1};
      for (int k = 0; k <= m; ++k) {
        auto d = build_delta_k(shape, k);
        CHECK(leading_monomial_of_product(shape, d.factors) ==
              initial_form(expand_product(d)).first);
        if (k >= 1) {
          auto dp = build_delta_k_prime(shape, k);
          CHECK(leading_monomial_of_product(shape, dp.factors) ==
                initial_form(expand_product(dp)).first);
        }
      }
      for (int t = 1; t <= m; ++t) {
        auto cert = build_capital_delta({m, n, t});
        ProductOfMinors delta{{m, n, t}, cert.factors};
        CHECK(leading_monomial_of_product(delta.shape, delta.factors) ==
              initial_form(expand_product(delta)).first);
      }
    }
}

TEST_CASE("certificate verification catches single-field tampering") {
  auto cert = build_capital_delta({4, 5, 3});
  REQUIRE(verify_certificate(cert).all_pass());

  auto failing_claims = [](const VerificationReport& rep) {
    std::vector<std::string> out;
    for (const auto& c : rep.claims)
      if (!c.pass) out.push_back(c.name);
    return out;
  };

  SUBCASE("degree") {
    auto bad = cert;
    bad.claimed_degree += 1;
    auto fails = failing_claims(verify_certificate(bad));
    CHECK(fails == std::vector<std::string>{"degree"});
  }
  SUBCASE("count") {
    auto bad = cert;
    bad.claimed_minor_count -= 1;
    auto fails = failing_claims(verify_certificate(bad));
    CHECK(fails == std::vector<std::string>{"count"});
  }
  SUBCASE("max exponent") {
    auto bad = cert;
    bad.claimed_max_initial_exponent = 5;
    auto fails = failing_claims(verify_certificate(bad));
    CHECK(fails == std::vector<std::string>{"maxInitialExponent"});
  }
  SUBCASE("bruns s") {
    auto bad = cert;
    bad.bruns_s += 2;
    auto fails = failing_claims(verify_certificate(bad));
    CHECK(fails == std::vector<std::string>{"brunsS"});
  }
  SUBCASE("u") {
    auto bad = cert;
    bad.u += 1;
    auto rep = verify_certificate(bad);
    CHECK_FALSE(rep.all_pass());
    CHECK(failing_claims(rep).front() == "case");
  }
  SUBCASE("factor index") {
    auto bad = cert;
    bad.factors[0].spec.cols.front() -= 1;  // [1,2|4,5] becomes [1,2|3,5]
    auto rep = verify_certificate(bad);
    CHECK(rep.structure_ok);
    CHECK_FALSE(rep.all_pass());
    auto fails = failing_claims(rep);
    CHECK(std::find(fails.begin(), fails.end(), "factors") != fails.end());
  }
}

TEST_CASE("structural defects are distinguished from claim failures") {
  auto cert = build_capital_delta({4, 5, 3});

  auto bad = cert;
  bad.factors[0].spec.cols = {2, 1, 3, 4};
  auto rep = verify_certificate(bad);
  CHECK_FALSE(rep.structure_ok);
  CHECK(rep.claims.empty());
  CHECK_FALSE(rep.all_pass());

  bad = cert;
  bad.factors[0].spec.rows = {1, 9};  // out of range for m = 4
  CHECK_FALSE(verify_certificate(bad).structure_ok);

  bad = cert;
  bad.k = 99;
  CHECK_FALSE(verify_certificate(bad).structure_ok);

  bad = cert;
  bad.factors.clear();
  CHECK_FALSE(verify_certificate(bad).structure_ok);
}

TEST_CASE("certificate JSON round-trip and schema") {
  auto cert = build_capital_delta({2, 2, 2});
  CHECK(certificate_to_json(cert).dump() ==
        R"({"shape":{"m":2,"n":2,"t":2},"k":1,"u":1,"case":"u-nonneg",)"
        R"("factors":[{"rows":[1,2],"cols":[1,2],"mult":1}],)"
        R"("claims":{"degree":2,"count":1,"maxInitialExponent":1,"brunsS":1}})");

  std::string text = render_certificate(cert);
  CHECK(text.back() == '\n');
  auto parsed = parse_certificate(text);
  CHECK(render_certificate(parsed) == text);
  CHECK(verify_certificate(parsed).all_pass());

  auto bigger = build_capital_delta({4, 5, 3});
  auto round = parse_certificate(render_certificate(bigger));
  CHECK(round.factors == bigger.factors);
  CHECK(round.case_tag == bigger.case_tag);
  CHECK(round.claimed_degree == bigger.claimed_degree);
}

TEST_CASE("certificate parsing rejects malformed input") {
  CHECK_THROWS_AS(parse_certificate("not json"), CertificateError);
  CHECK_THROWS_AS(parse_certificate("{}"), CertificateError);
  CHECK_THROWS_AS(parse_certificate(R"({"shape":{"m":2,"n":2,"t":2},"k":1,"u":1,)"
                                    R"("case":"bogus","factors":[],)"
                                    R"("claims":{"degree":2,"count":1,"maxInitialExponent":1,"brunsS":1}})"),
                  CertificateError);
  CHECK_THROWS_AS(parse_certificate(R"({"shape":{"m":2,"n":2,"t":2},"k":1,"u":1,)"
                                    R"("case":"u-nonneg","factors":[{"rows":[1],"cols":"x","mult":1}],)"
                                    R"("claims":{"degree":2,"count":1,"maxInitialExponent":1,"brunsS":1}})"),
                  CertificateError);
  // truncated file
  auto text = render_certificate(build_capital_delta({2, 2, 2}));
  CHECK_THROWS_AS(parse_certificate(text.substr(0, text.size() / 2)), CertificateError);
}

TEST_CASE("canonical product sorts and merges factors") {
  MatrixShape shape{3, 3, 2};
  std::vector<MinorFactor> fs = {{ms({2, 3}, {1, 2}), 1},
                                 {ms({1, 2}, {1, 2}), 2},
                                 {ms({2, 3}, {1, 2}), 3},
                                 {ms({1, 2}, {1, 2}), 1}};
  auto prod = canonical_product(shape, fs);
  std::vector<MinorFactor> expected = {{ms({1, 2}, {1, 2}), 3}, {ms({2, 3}, {1, 2}), 4}};
  CHECK(prod.factors == expected);
  CHECK(prod.degree() == 14);
  CHECK(prod.minor_count() == 7);
  CHECK(product_to_string(prod) == "[1,2|1,2]^3*[2,3|1,2]^4");

  CHECK_THROWS_AS(canonical_product(shape, {{ms({1, 2}, {1, 2}), 0}}), std::invalid_argument);
}
