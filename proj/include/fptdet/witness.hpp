#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "fptdet/formula.hpp"
#include "fptdet/polyfp.hpp"

namespace fptdet {

/// Formal product of minors with multiplicities. Canonical form keeps the
/// factors sorted by (rows, cols) with equal specs merged.
struct ProductOfMinors {
  MatrixShape shape;
  std::vector<MinorFactor> factors;

  long long degree() const;       // sum of mult * size
  long long minor_count() const;  // sum of mult

  friend bool operator==(const ProductOfMinors&, const ProductOfMinors&) = default;
};

/// Sorts by (rows, cols) and merges duplicate specs. Factor validity is
/// checked against the shape.
ProductOfMinors canonical_product(const MatrixShape& shape, std::vector<MinorFactor> factors);

/// The product, over i = 1..n-m+1, of [1..m | i..i+m-1], times the
/// product over j = 2..m-k of [j..m | 1..m-j+1] * [1..m-j+1 | n-m+j..n].
/// Requires 0 <= k <= m.
ProductOfMinors build_delta_k(const MatrixShape& shape, int k);

/// build_delta_k(shape, k) times the extra factor [m-k+1..m | 1..k].
/// Requires 1 <= k <= m.
ProductOfMinors build_delta_k_prime(const MatrixShape& shape, int k);

enum class DeltaCase { KZero, UNonneg, UNeg };

std::string to_string(DeltaCase c);
std::optional<DeltaCase> delta_case_from_string(const std::string& s);

/// Self-describing certificate for the composite witness product: the
/// factor multiset together with the combinatorial claims a verifier
/// recomputes from scratch.
struct WitnessCertificate {
  MatrixShape shape;
  long long k = 0;
  long long u = 0;
  DeltaCase case_tag = DeltaCase::KZero;
  std::vector<MinorFactor> factors;  // canonical order
  long long claimed_degree = 0;
  long long claimed_minor_count = 0;
  long long claimed_max_initial_exponent = 0;
  long long bruns_s = 0;
};

/// Assembles the composite witness for the least k of minimizing_k_and_u:
///   k = 0            -> delta_0 ^ t
///   k >= 1, u >= 0   -> delta_k ^ u * delta_k' ^ (t-k-u)
///   k >= 1, u < 0    -> delta_k' ^ (t-k+u) * delta_{k-1} ^ (-u)
WitnessCertificate build_capital_delta(const MatrixShape& shape);

/// Same construction at an explicit k in [0, t-1]. Throws if a case
/// exponent comes out negative for that k.
WitnessCertificate build_capital_delta(const MatrixShape& shape, int k);

/// True iff minor count <= s and total degree == t*s; a true result
/// certifies membership of the product in the integral closure of the
/// s-th power of the size-t minor ideal.
bool bruns_hypothesis_check(const ProductOfMinors& prod, long long s);

/// True iff every exponent of the product's leading monomial is < s, so
/// the product survives outside the ideal generated by the s-th powers of
/// the variables.
bool check_not_in_bracket_power(const ProductOfMinors& prod, long long s);

struct ClaimResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct VerificationReport {
  bool structure_ok = false;
  std::string structure_error;
  std::vector<ClaimResult> claims;

  bool all_pass() const;
};

/// Recomputes every claim from the certificate's own factor list and from
/// the shape; structural defects (bad indices, non-increasing lists, k out
/// of range) are reported as structure failures, distinct from claim
/// failures.
VerificationReport verify_certificate(const WitnessCertificate& cert);

struct CertificateError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

nlohmann::ordered_json certificate_to_json(const WitnessCertificate& cert);
WitnessCertificate certificate_from_json(const nlohmann::json& j);  // throws CertificateError

/// Canonical file bytes: two-space-indented JSON with fixed field order
/// and a trailing newline.
std::string render_certificate(const WitnessCertificate& cert);
WitnessCertificate parse_certificate(const std::string& text);  // throws CertificateError

std::string product_to_string(const ProductOfMinors& prod);

nlohmann::ordered_json factors_to_json(const std::vector<MinorFactor>& factors);
std::vector<MinorFactor> factors_from_json(const nlohmann::json& j);  // throws CertificateError

}  // namespace fptdet
