#include "fptdet/witness.hpp"

#include <algorithm>
#include <numeric>

namespace fptdet {

long long ProductOfMinors::degree() const {
  long long d = 0;
  for (const auto& f : factors) d += f.mult * f.spec.size();
  return d;
}

long long ProductOfMinors::minor_count() const {
  long long c = 0;
  for (const auto& f : factors) c += f.mult;
  return c;
}

ProductOfMinors canonical_product(const MatrixShape& shape, std::vector<MinorFactor> factors) {
  require_valid(shape);
  for (const auto& f : factors) {
    validate_minor_spec(shape, f.spec);
    if (f.mult < 1) throw std::invalid_argument("factor multiplicity must be positive");
  }
  std::sort(factors.begin(), factors.end(),
            [](const MinorFactor& a, const MinorFactor& b) { return a.spec < b.spec; });
  std::vector<MinorFactor> merged;
  for (auto& f : factors) {
    if (!merged.empty() && merged.back().spec == f.spec)
      merged.back().mult += f.mult;
    else
      merged.push_back(std::move(f));
  }
  return {shape, std::move(merged)};
}

namespace {

std::vector<int> range(int lo, int hi) {  // inclusive
  std::vector<int> v(hi - lo + 1);
  std::iota(v.begin(), v.end(), lo);
  return v;
}

std::vector<MinorFactor> delta_k_factors(const MatrixShape& shape, int k) {
  const int m = shape.m, n = shape.n;
  std::vector<MinorFactor> fs;
  for (int i = 1; i <= n - m + 1; ++i)
    fs.push_back({MinorSpec{range(1, m), range(i, i + m - 1)}, 1});
  for (int j = 2; j <= m - k; ++j) {
    fs.push_back({MinorSpec{range(j, m), range(1, m - j + 1)}, 1});
    fs.push_back({MinorSpec{range(1, m - j + 1), range(n - m + j, n)}, 1});
  }
  return fs;
}

}  // namespace

ProductOfMinors build_delta_k(const MatrixShape& shape, int k) {
  require_valid(shape);
  if (k < 0 || k > shape.m)
    throw std::invalid_argument("delta_k requires 0 <= k <= m");
  return canonical_product(shape, delta_k_factors(shape, k));
}

ProductOfMinors build_delta_k_prime(const MatrixShape& shape, int k) {
  require_valid(shape);
  if (k < 1 || k > shape.m)
    throw std::invalid_argument("delta_k' requires 1 <= k <= m");
  auto fs = delta_k_factors(shape, k);
  fs.push_back({MinorSpec{range(shape.m - k + 1, shape.m), range(1, k)}, 1});
  return canonical_product(shape, fs);
}

std::string to_string(DeltaCase c) {
  switch (c) {
    case DeltaCase::KZero: return "k-zero";
    case DeltaCase::UNonneg: return "u-nonneg";
    case DeltaCase::UNeg: return "u-neg";
  }
  return "?";
}

std::optional<DeltaCase> delta_case_from_string(const std::string& s) {
  if (s == "k-zero") return DeltaCase::KZero;
  if (s == "u-nonneg") return DeltaCase::UNonneg;
  if (s == "u-neg") return DeltaCase::UNeg;
  return std::nullopt;
}

namespace {

void append_power(std::vector<MinorFactor>& out, const ProductOfMinors& base, long long exp) {
  if (exp == 0) return;
  for (const auto& f : base.factors) out.push_back({f.spec, f.mult * exp});
}

WitnessCertificate assemble_delta(const MatrixShape& shape, long long k) {
  const long long m = shape.m, n = shape.n, t = shape.t;
  const long long u = t * (m + n - 2 * k) - m * n + k * k;

  WitnessCertificate cert;
  cert.shape = shape;
  cert.k = k;
  cert.u = u;

  std::vector<MinorFactor> fs;
  if (k == 0) {
    cert.case_tag = DeltaCase::KZero;
    append_power(fs, build_delta_k(shape, 0), t);
  } else if (u >= 0) {
    cert.case_tag = DeltaCase::UNonneg;
    if (t - k - u < 0)
      throw std::invalid_argument("k does not admit the witness construction: t-k-u < 0");
    append_power(fs, build_delta_k(shape, static_cast<int>(k)), u);
    append_power(fs, build_delta_k_prime(shape, static_cast<int>(k)), t - k - u);
  } else {
    cert.case_tag = DeltaCase::UNeg;
    if (t - k + u < 0)
      throw std::invalid_argument("k does not admit the witness construction: t-k+u < 0");
    append_power(fs, build_delta_k_prime(shape, static_cast<int>(k)), t - k + u);
    append_power(fs, build_delta_k(shape, static_cast<int>(k) - 1), -u);
  }
  ProductOfMinors prod = canonical_product(shape, std::move(fs));
  cert.factors = prod.factors;
  cert.claimed_degree = prod.degree();
  cert.claimed_minor_count = prod.minor_count();
  cert.claimed_max_initial_exponent =
      leading_monomial_of_product(shape, prod.factors).max_exponent();
  cert.bruns_s = (m - k) * (n - k);
  return cert;
}

}  // namespace

WitnessCertificate build_capital_delta(const MatrixShape& shape) {
  return assemble_delta(shape, minimizing_k_and_u(shape).k);
}

WitnessCertificate build_capital_delta(const MatrixShape& shape, int k) {
  require_valid(shape);
  if (k < 0 || k > shape.t - 1)
    throw std::invalid_argument("k must lie in [0, t-1]");
  return assemble_delta(shape, k);
}

bool bruns_hypothesis_check(const ProductOfMinors& prod, long long s) {
  if (s < 1) throw std::invalid_argument("bruns_hypothesis_check requires s >= 1");
  return prod.minor_count() <= s && prod.degree() == static_cast<long long>(prod.shape.t) * s;
}

bool check_not_in_bracket_power(const ProductOfMinors& prod, long long s) {
  return leading_monomial_of_product(prod.shape, prod.factors).max_exponent() < s;
}

bool VerificationReport::all_pass() const {
  if (!structure_ok) return false;
  return std::all_of(claims.begin(), claims.end(), [](const ClaimResult& c) { return c.pass; });
}

namespace {

std::string ll_str(long long v) { return std::to_string(v); }

void add_claim(VerificationReport& rep, std::string name, bool pass, std::string detail) {
  rep.claims.push_back({std::move(name), pass, std::move(detail)});
}

}  // namespace

VerificationReport verify_certificate(const WitnessCertificate& cert) {
  VerificationReport rep;

  // Structural validation first; claims are only evaluated on well-formed input.
  try {
    require_valid(cert.shape);
    if (cert.k < 0 || cert.k > cert.shape.t - 1)
      throw std::invalid_argument("k must lie in [0, t-1]");
    if (cert.factors.empty()) throw std::invalid_argument("empty factor list");
    for (const auto& f : cert.factors) {
      validate_minor_spec(cert.shape, f.spec);
      if (f.mult < 1) throw std::invalid_argument("factor multiplicity must be positive");
    }
  } catch (const std::invalid_argument& e) {
    rep.structure_ok = false;
    rep.structure_error = e.what();
    return rep;
  }
  rep.structure_ok = true;

  const long long m = cert.shape.m, n = cert.shape.n, t = cert.shape.t, k = cert.k;
  const long long expected_u = t * (m + n - 2 * k) - m * n + k * k;
  const DeltaCase expected_case = k == 0          ? DeltaCase::KZero
                                  : expected_u >= 0 ? DeltaCase::UNonneg
                                                    : DeltaCase::UNeg;
  add_claim(rep, "case", cert.u == expected_u && cert.case_tag == expected_case,
            "tag " + to_string(cert.case_tag) + ", u = " + ll_str(cert.u) + " (expected " +
                to_string(expected_case) + ", u = " + ll_str(expected_u) + ")");

  ProductOfMinors prod = canonical_product(cert.shape, cert.factors);

  bool factors_ok = false;
  std::string factors_detail;
  try {
    WitnessCertificate rebuilt = build_capital_delta(cert.shape, static_cast<int>(k));
    factors_ok = rebuilt.factors == prod.factors;
    factors_detail = factors_ok ? "factor multiset matches the canonical construction"
                                : "factor multiset differs from the canonical construction";
  } catch (const std::invalid_argument& e) {
    factors_detail = std::string("canonical construction unavailable: ") + e.what();
  }
  add_claim(rep, "factors", factors_ok, factors_detail);

  const long long degree = prod.degree();
  const long long count = prod.minor_count();
  const long long s = (m - k) * (n - k);
  const long long max_exp = leading_monomial_of_product(cert.shape, prod.factors).max_exponent();

  add_claim(rep, "degree", degree == cert.claimed_degree && degree == t * s,
            "recomputed " + ll_str(degree) + ", claimed " + ll_str(cert.claimed_degree) +
                ", t(m-k)(n-k) = " + ll_str(t * s));
  add_claim(rep, "count",
            count == cert.claimed_minor_count && count <= s && (k == 0 || count == s),
            "recomputed " + ll_str(count) + ", claimed " + ll_str(cert.claimed_minor_count) +
                ", bound " + ll_str(s));
  add_claim(rep, "maxInitialExponent",
            max_exp == cert.claimed_max_initial_exponent && max_exp <= t - k,
            "recomputed " + ll_str(max_exp) + ", claimed " +
                ll_str(cert.claimed_max_initial_exponent) + ", bound " + ll_str(t - k));
  add_claim(rep, "brunsS", cert.bruns_s == s,
            "claimed " + ll_str(cert.bruns_s) + ", (m-k)(n-k) = " + ll_str(s));
  add_claim(rep, "brunsHypothesis", bruns_hypothesis_check(prod, s),
            "count " + ll_str(count) + " <= " + ll_str(s) + " and degree " + ll_str(degree) +
                " == t*s = " + ll_str(t * s));
  add_claim(rep, "notInBracketPower", check_not_in_bracket_power(prod, t - k + 1),
            "max initial exponent " + ll_str(max_exp) + " < " + ll_str(t - k + 1));
  return rep;
}

nlohmann::ordered_json factors_to_json(const std::vector<MinorFactor>& factors) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& f : factors) {
    nlohmann::ordered_json jf;
    jf["rows"] = f.spec.rows;
    jf["cols"] = f.spec.cols;
    jf["mult"] = f.mult;
    arr.push_back(std::move(jf));
  }
  return arr;
}

namespace {

long long require_int(const nlohmann::json& j, const std::string& key) {
  if (!j.contains(key) || !j[key].is_number_integer())
    throw CertificateError("missing or non-integer field: " + key);
  return j[key].get<long long>();
}

std::vector<int> require_int_array(const nlohmann::json& j, const std::string& key) {
  if (!j.contains(key) || !j[key].is_array())
    throw CertificateError("missing or non-array field: " + key);
  std::vector<int> out;
  for (const auto& v : j[key]) {
    if (!v.is_number_integer()) throw CertificateError("non-integer entry in field: " + key);
    out.push_back(v.get<int>());
  }
  return out;
}

}  // namespace

std::vector<MinorFactor> factors_from_json(const nlohmann::json& j) {
  if (!j.is_array()) throw CertificateError("factors must be an array");
  std::vector<MinorFactor> out;
  for (const auto& jf : j) {
    if (!jf.is_object()) throw CertificateError("factor entries must be objects");
    MinorFactor f;
    f.spec.rows = require_int_array(jf, "rows");
    f.spec.cols = require_int_array(jf, "cols");
    f.mult = require_int(jf, "mult");
    out.push_back(std::move(f));
  }
  return out;
}

nlohmann::ordered_json certificate_to_json(const WitnessCertificate& cert) {
  nlohmann::ordered_json j;
  j["shape"] = {{"m", cert.shape.m}, {"n", cert.shape.n}, {"t", cert.shape.t}};
  j["k"] = cert.k;
  j["u"] = cert.u;
  j["case"] = to_string(cert.case_tag);
  j["factors"] = factors_to_json(cert.factors);
  j["claims"] = {{"degree", cert.claimed_degree},
                 {"count", cert.claimed_minor_count},
                 {"maxInitialExponent", cert.claimed_max_initial_exponent},
                 {"brunsS", cert.bruns_s}};
  return j;
}

WitnessCertificate certificate_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw CertificateError("certificate must be a JSON object");
  if (!j.contains("shape") || !j["shape"].is_object())
    throw CertificateError("missing or non-object field: shape");
  WitnessCertificate cert;
  cert.shape.m = static_cast<int>(require_int(j["shape"], "m"));
  cert.shape.n = static_cast<int>(require_int(j["shape"], "n"));
  cert.shape.t = static_cast<int>(require_int(j["shape"], "t"));
  cert.k = require_int(j, "k");
  cert.u = require_int(j, "u");
  if (!j.contains("case") || !j["case"].is_string())
    throw CertificateError("missing or non-string field: case");
  auto tag = delta_case_from_string(j["case"].get<std::string>());
  if (!tag) throw CertificateError("unknown case tag: " + j["case"].get<std::string>());
  cert.case_tag = *tag;
  if (!j.contains("factors")) throw CertificateError("missing field: factors");
  cert.factors = factors_from_json(j["factors"]);
  if (!j.contains("claims") || !j["claims"].is_object())
    throw CertificateError("missing or non-object field: claims");
  cert.claimed_degree = require_int(j["claims"], "degree");
  cert.claimed_minor_count = require_int(j["claims"], "count");
  cert.claimed_max_initial_exponent = require_int(j["claims"], "maxInitialExponent");
  cert.bruns_s = require_int(j["claims"], "brunsS");
  return cert;
}

std::string render_certificate(const WitnessCertificate& cert) {
  return certificate_to_json(cert).dump(2) + "\n";
}

WitnessCertificate parse_certificate(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text, nullptr, false);
  if (j.is_discarded()) throw CertificateError("malformed JSON");
  return certificate_from_json(j);
}

std::string product_to_string(const ProductOfMinors& prod) {
  std::string out;
  for (const auto& f : prod.factors) {
    if (!out.empty()) out += "*";
    out += minor_to_string(f.spec);
    if (f.mult > 1) out += "^" + std::to_string(f.mult);
  }
  return out.empty() ? "1" : out;
}

}  // namespace fptdet
