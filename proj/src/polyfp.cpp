#include "fptdet/polyfp.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>

namespace fptdet {

long long Monomial::total_degree() const {
  long long d = 0;
  for (Exponent e : exps) d += e;
  return d;
}

Exponent Monomial::max_exponent() const {
  Exponent m = 0;
  for (Exponent e : exps) m = std::max(m, e);
  return m;
}

void validate_minor_spec(const MatrixShape& shape, const MinorSpec& spec) {
  require_valid(shape);
  if (spec.rows.size() != spec.cols.size() || spec.rows.empty())
    throw std::invalid_argument("minor: row and column lists must be nonempty and of equal length");
  auto check = [](const std::vector<int>& idx, int bound, const char* what) {
    for (std::size_t i = 0; i < idx.size(); ++i) {
      if (idx[i] < 1 || idx[i] > bound)
        throw std::invalid_argument(std::string("minor: ") + what + " index out of range");
      if (i > 0 && idx[i] <= idx[i - 1])
        throw std::invalid_argument(std::string("minor: ") + what +
                                    " indices must be strictly increasing");
    }
  };
  check(spec.rows, shape.m, "row");
  check(spec.cols, shape.n, "column");
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::uint64_t d = 3; d * d <= n; d += 2)
    if (n % d == 0) return false;
  return true;
}

namespace {

void validate_characteristic(std::uint32_t p) {
  if (p < 2 || p >= (1u << 31) || !is_prime(p))
    throw std::invalid_argument("characteristic must be a prime < 2^31");
}

std::uint32_t normalize_coeff(long long c, std::uint32_t p) {
  long long r = c % static_cast<long long>(p);
  if (r < 0) r += p;
  return static_cast<std::uint32_t>(r);
}

void require_same_ring(const Polynomial& a, const Polynomial& b) {
  if (a.characteristic() != b.characteristic())
    throw std::invalid_argument("characteristic mismatch");
  if (!(a.shape() == b.shape())) throw std::invalid_argument("variable set mismatch");
}

}  // namespace

Polynomial::Polynomial(MatrixShape shape, std::uint32_t p) : shape_(shape), p_(p) {
  require_valid(shape_);
  validate_characteristic(p_);
}

Polynomial Polynomial::constant(MatrixShape shape, std::uint32_t p, long long c) {
  Polynomial f(shape, p);
  std::uint32_t r = normalize_coeff(c, p);
  if (r != 0)
    f.terms_.push_back({Monomial{std::vector<Exponent>(shape.variable_count(), 0)}, r});
  return f;
}

Polynomial Polynomial::variable(MatrixShape shape, std::uint32_t p, int i, int j) {
  if (i < 1 || i > shape.m || j < 1 || j > shape.n)
    throw std::invalid_argument("variable index out of range");
  Polynomial f(shape, p);
  Monomial mono{std::vector<Exponent>(shape.variable_count(), 0)};
  mono.exps[variable_ordinal({i, j}, shape.n)] = 1;
  f.terms_.push_back({std::move(mono), 1});
  return f;
}

Polynomial Polynomial::from_terms(MatrixShape shape, std::uint32_t p,
                                  const std::vector<std::pair<Monomial, long long>>& terms) {
  Polynomial f(shape, p);
  std::map<Monomial, std::uint32_t, std::greater<Monomial>> acc;
  for (const auto& [mono, c] : terms) {
    if (static_cast<int>(mono.exps.size()) != shape.variable_count())
      throw std::invalid_argument("monomial length does not match shape");
    std::uint32_t r = normalize_coeff(c, p);
    auto [it, fresh] = acc.try_emplace(mono, r);
    if (!fresh) it->second = static_cast<std::uint32_t>((static_cast<std::uint64_t>(it->second) + r) % p);
  }
  for (auto& [mono, c] : acc)
    if (c != 0) f.terms_.push_back({mono, c});
  return f;
}

bool operator==(const Polynomial& a, const Polynomial& b) {
  return a.shape_ == b.shape_ && a.p_ == b.p_ && a.terms_ == b.terms_;
}

Polynomial poly_add(const Polynomial& a, const Polynomial& b) {
  require_same_ring(a, b);
  Polynomial out(a.shape_, a.p_);
  out.terms_.reserve(a.terms_.size() + b.terms_.size());
  std::size_t i = 0, j = 0;
  const std::uint64_t p = a.p_;
  while (i < a.terms_.size() && j < b.terms_.size()) {
    const auto& ta = a.terms_[i];
    const auto& tb = b.terms_[j];
    if (ta.mono == tb.mono) {
      std::uint32_t c = static_cast<std::uint32_t>((ta.coeff + static_cast<std::uint64_t>(tb.coeff)) % p);
      if (c != 0) out.terms_.push_back({ta.mono, c});
      ++i, ++j;
    } else if (ta.mono > tb.mono) {
      out.terms_.push_back(ta);
      ++i;
    } else {
      out.terms_.push_back(tb);
      ++j;
    }
  }
  for (; i < a.terms_.size(); ++i) out.terms_.push_back(a.terms_[i]);
  for (; j < b.terms_.size(); ++j) out.terms_.push_back(b.terms_[j]);
  return out;
}

Polynomial poly_mul(const Polynomial& a, const Polynomial& b) {
  require_same_ring(a, b);
  Polynomial out(a.shape_, a.p_);
  const std::uint64_t p = a.p_;
  const std::size_t nv = static_cast<std::size_t>(a.shape_.variable_count());
  std::map<Monomial, std::uint32_t, std::greater<Monomial>> acc;
  Monomial prod{std::vector<Exponent>(nv, 0)};
  for (const auto& ta : a.terms_) {
    for (const auto& tb : b.terms_) {
      for (std::size_t v = 0; v < nv; ++v) prod.exps[v] = ta.mono.exps[v] + tb.mono.exps[v];
      std::uint32_t c =
          static_cast<std::uint32_t>(static_cast<std::uint64_t>(ta.coeff) * tb.coeff % p);
      auto [it, fresh] = acc.try_emplace(prod, c);
      if (!fresh) it->second = static_cast<std::uint32_t>((it->second + static_cast<std::uint64_t>(c)) % p);
    }
  }
  for (auto& [mono, c] : acc)
    if (c != 0) out.terms_.push_back({mono, c});
  return out;
}

namespace {

// Signed permutation expansion; fine up to r = 5 (120 terms).
Polynomial expand_by_permutations(const MatrixShape& shape, std::uint32_t p,
                                  const MinorSpec& spec) {
  const int r = spec.size();
  std::vector<int> perm(r);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<std::pair<Monomial, long long>> terms;
  do {
    int inversions = 0;
    for (int i = 0; i < r; ++i)
      for (int j = i + 1; j < r; ++j)
        if (perm[i] > perm[j]) ++inversions;
    Monomial mono{std::vector<Exponent>(shape.variable_count(), 0)};
    for (int i = 0; i < r; ++i)
      mono.exps[variable_ordinal({spec.rows[i], spec.cols[perm[i]]}, shape.n)] += 1;
    terms.emplace_back(std::move(mono), inversions % 2 == 0 ? 1 : -1);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return Polynomial::from_terms(shape, p, terms);
}

// Cofactor recursion along the first column.
Polynomial expand_by_cofactors(const MatrixShape& shape, std::uint32_t p, const MinorSpec& spec) {
  const int r = spec.size();
  if (r <= 5) return expand_by_permutations(shape, p, spec);
  Polynomial acc(shape, p);
  for (int i = 0; i < r; ++i) {
    MinorSpec sub;
    sub.rows.reserve(r - 1);
    for (int i2 = 0; i2 < r; ++i2)
      if (i2 != i) sub.rows.push_back(spec.rows[i2]);
    sub.cols.assign(spec.cols.begin() + 1, spec.cols.end());
    Polynomial entry = Polynomial::variable(shape, p, spec.rows[i], spec.cols[0]);
    if (i % 2 == 1) entry = poly_mul(entry, Polynomial::constant(shape, p, -1));
    acc = poly_add(acc, poly_mul(entry, expand_by_cofactors(shape, p, sub)));
  }
  return acc;
}

}  // namespace

Polynomial expand_minor(const MatrixShape& shape, std::uint32_t p, const MinorSpec& spec) {
  validate_minor_spec(shape, spec);
  return expand_by_cofactors(shape, p, spec);
}

std::pair<Monomial, std::uint32_t> initial_form(const Polynomial& f) {
  if (f.is_zero()) throw std::invalid_argument("initial_form: zero polynomial");
  const auto& t = f.terms().front();
  return {t.mono, t.coeff};
}

Monomial leading_monomial_of_product(const MatrixShape& shape,
                                     const std::vector<MinorFactor>& factors) {
  require_valid(shape);
  Monomial mono{std::vector<Exponent>(shape.variable_count(), 0)};
  for (const auto& f : factors) {
    validate_minor_spec(shape, f.spec);
    if (f.mult < 1) throw std::invalid_argument("factor multiplicity must be positive");
    for (int i = 0; i < f.spec.size(); ++i)
      mono.exps[variable_ordinal({f.spec.rows[i], f.spec.cols[i]}, shape.n)] +=
          static_cast<Exponent>(f.mult);
  }
  return mono;
}

std::string minor_to_string(const MinorSpec& spec) {
  std::string out = "[";
  for (std::size_t i = 0; i < spec.rows.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(spec.rows[i]);
  }
  out += "|";
  for (std::size_t i = 0; i < spec.cols.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(spec.cols[i]);
  }
  out += "]";
  return out;
}

std::string monomial_to_string(const Monomial& mono, int cols) {
  std::string out;
  for (std::size_t o = 0; o < mono.exps.size(); ++o) {
    if (mono.exps[o] == 0) continue;
    VariableIndex v = variable_at(static_cast<int>(o), cols);
    if (!out.empty()) out += "*";
    out += "x[" + std::to_string(v.i) + "," + std::to_string(v.j) + "]";
    if (mono.exps[o] > 1) out += "^" + std::to_string(mono.exps[o]);
  }
  return out.empty() ? "1" : out;
}

std::string polynomial_to_string(const Polynomial& f) {
  if (f.is_zero()) return "0";
  std::string out;
  for (const auto& t : f.terms()) {
    if (!out.empty()) out += " + ";
    out += std::to_string(t.coeff);
    if (!t.mono.is_constant()) out += "*" + monomial_to_string(t.mono, f.shape().n);
  }
  return out;
}

}  // namespace fptdet
