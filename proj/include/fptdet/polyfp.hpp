#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "fptdet/shape.hpp"

namespace fptdet {

using Exponent = std::uint32_t;

/// Position of the indeterminate x[i,j], 1-based.
struct VariableIndex {
  int i = 1;
  int j = 1;
};

/// Flattened ordinal (i-1)*cols + (j-1). Ordinal 0 is the greatest
/// variable x[1,1]; the variable order decreases along rows, then down.
inline int variable_ordinal(VariableIndex v, int cols) {
  return (v.i - 1) * cols + (v.j - 1);
}

inline VariableIndex variable_at(int ordinal, int cols) {
  return {ordinal / cols + 1, ordinal % cols + 1};
}

/// Dense exponent vector over the mn variables, indexed by ordinal.
/// Because ordinal 0 carries the greatest variable, plain lexicographic
/// comparison of the vectors realizes the term order: the monomial with
/// the larger exponent on the earliest differing ordinal is the larger.
struct Monomial {
  std::vector<Exponent> exps;

  long long total_degree() const;
  Exponent max_exponent() const;
  bool is_constant() const { return max_exponent() == 0; }

  friend bool operator==(const Monomial&, const Monomial&) = default;
  friend auto operator<=>(const Monomial& a, const Monomial& b) {
    return a.exps <=> b.exps;
  }
};

/// A minor [a_1,...,a_r | b_1,...,b_r]: strictly increasing row and
/// column index lists of equal length r >= 1.
struct MinorSpec {
  std::vector<int> rows;
  std::vector<int> cols;

  int size() const { return static_cast<int>(rows.size()); }

  friend bool operator==(const MinorSpec&, const MinorSpec&) = default;
  friend auto operator<=>(const MinorSpec&, const MinorSpec&) = default;
};

void validate_minor_spec(const MatrixShape& shape, const MinorSpec& spec);

/// One minor together with a positive multiplicity.
struct MinorFactor {
  MinorSpec spec;
  long long mult = 1;

  friend bool operator==(const MinorFactor&, const MinorFactor&) = default;
};

bool is_prime(std::uint64_t n);

/// Sparse multivariate polynomial over F_p in the mn variables of a fixed
/// shape. Terms are stored in descending lex order with coefficients in
/// [1, p-1]; the zero polynomial has no terms. Values are immutable after
/// construction.
class Polynomial {
 public:
  struct Term {
    Monomial mono;
    std::uint32_t coeff;

    friend bool operator==(const Term&, const Term&) = default;
  };

  /// The zero polynomial. p must be a prime < 2^31.
  Polynomial(MatrixShape shape, std::uint32_t p);

  static Polynomial constant(MatrixShape shape, std::uint32_t p, long long c);
  static Polynomial variable(MatrixShape shape, std::uint32_t p, int i, int j);
  /// Builds from arbitrary (monomial, coefficient) pairs; repeated
  /// monomials are accumulated mod p.
  static Polynomial from_terms(MatrixShape shape, std::uint32_t p,
                               const std::vector<std::pair<Monomial, long long>>& terms);

  const MatrixShape& shape() const { return shape_; }
  std::uint32_t characteristic() const { return p_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t term_count() const { return terms_.size(); }
  const std::vector<Term>& terms() const { return terms_; }

  friend bool operator==(const Polynomial&, const Polynomial&);

 private:
  friend Polynomial poly_add(const Polynomial&, const Polynomial&);
  friend Polynomial poly_mul(const Polynomial&, const Polynomial&);
  friend Polynomial reduce_mod_bracket(const Polynomial&, std::uint64_t);

  MatrixShape shape_;
  std::uint32_t p_;
  std::vector<Term> terms_;  // descending lex, no zero coefficients
};

/// Coefficient-wise sum mod p. The operands must share shape and
/// characteristic.
Polynomial poly_add(const Polynomial& a, const Polynomial& b);

/// Distributive product with coefficients reduced mod p.
Polynomial poly_mul(const Polynomial& a, const Polynomial& b);

inline Polynomial operator+(const Polynomial& a, const Polynomial& b) { return poly_add(a, b); }
inline Polynomial operator*(const Polynomial& a, const Polynomial& b) { return poly_mul(a, b); }

/// Determinant of the r x r submatrix picked by spec, as a polynomial
/// with r! signed squarefree terms. Permutation expansion for r <= 5,
/// first-column cofactor recursion above that.
Polynomial expand_minor(const MatrixShape& shape, std::uint32_t p, const MinorSpec& spec);

/// Lex-greatest monomial of f and its coefficient. f must be nonzero.
std::pair<Monomial, std::uint32_t> initial_form(const Polynomial& f);

/// Exponent vector obtained by summing, with multiplicity, the leading
/// diagonal supports x[a_i,b_i] of each minor. Equals the initial form of
/// the fully expanded product, without expanding it.
Monomial leading_monomial_of_product(const MatrixShape& shape,
                                     const std::vector<MinorFactor>& factors);

std::string minor_to_string(const MinorSpec& spec);
std::string monomial_to_string(const Monomial& mono, int cols);
std::string polynomial_to_string(const Polynomial& f);

}  // namespace fptdet
