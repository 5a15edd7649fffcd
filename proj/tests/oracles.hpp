// Test-only reference implementations. These deliberately avoid the code
// paths they are used to check: naive containers for polynomial products,
// first-row cofactor recursion for minors, exhaustive multiset expansion
// for the Frobenius invariant.
#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <random>
#include <utility>
#include <vector>

#include "fptdet/polyfp.hpp"

namespace oracles {

using ExpVec = std::vector<fptdet::Exponent>;

// plain map-based polynomial: exponent vector -> coefficient in [0, p)
using NaivePoly = std::map<ExpVec, std::uint64_t>;

inline NaivePoly to_naive(const fptdet::Polynomial& f) {
  NaivePoly out;
  for (const auto& t : f.terms()) out[t.mono.exps] = t.coeff;
  return out;
}

inline NaivePoly naive_mul(const NaivePoly& a, const NaivePoly& b, std::uint64_t p,
                           std::size_t nvars) {
  NaivePoly out;
  for (const auto& [ea, ca] : a) {
    for (const auto& [eb, cb] : b) {
      ExpVec e(nvars);
      for (std::size_t v = 0; v < nvars; ++v) e[v] = ea[v] + eb[v];
      out[e] = (out[e] + ca * cb) % p;
    }
  }
  for (auto it = out.begin(); it != out.end();)
    it = it->second == 0 ? out.erase(it) : std::next(it);
  return out;
}

inline bool naive_equal(const NaivePoly& a, const fptdet::Polynomial& f) {
  return a == to_naive(f);
}

// Laplace expansion along the first row; recursion shape differs from the
// library's first-column cofactor path and from permutation expansion.
inline fptdet::Polynomial laplace_first_row(const fptdet::MatrixShape& shape, std::uint32_t p,
                                            const fptdet::MinorSpec& spec) {
  using namespace fptdet;
  const int r = spec.size();
  if (r == 1) return Polynomial::variable(shape, p, spec.rows[0], spec.cols[0]);
  Polynomial acc(shape, p);
  for (int j = 0; j < r; ++j) {
    MinorSpec sub;
    sub.rows.assign(spec.rows.begin() + 1, spec.rows.end());
    for (int j2 = 0; j2 < r; ++j2)
      if (j2 != j) sub.cols.push_back(spec.cols[j2]);
    Polynomial entry = Polynomial::variable(shape, p, spec.rows[0], spec.cols[j]);
    if (j % 2 == 1) entry = entry * Polynomial::constant(shape, p, -1);
    acc = acc + entry * laplace_first_row(shape, p, sub);
  }
  return acc;
}

// Random data helpers (deterministic given the caller's engine).

inline fptdet::MinorSpec random_minor(std::mt19937& rng, const fptdet::MatrixShape& shape,
                                      int max_size) {
  auto pick = [&](int bound, int r) {
    std::vector<int> all(bound);
    for (int i = 0; i < bound; ++i) all[i] = i + 1;
    std::shuffle(all.begin(), all.end(), rng);
    std::vector<int> out(all.begin(), all.begin() + r);
    std::sort(out.begin(), out.end());
    return out;
  };
  int cap = std::min({max_size, shape.m, shape.n});
  int r = std::uniform_int_distribution<int>(1, cap)(rng);
  return {pick(shape.m, r), pick(shape.n, r)};
}

inline fptdet::Monomial random_monomial(std::mt19937& rng, const fptdet::MatrixShape& shape,
                                        fptdet::Exponent max_exp) {
  fptdet::Monomial mono{ExpVec(shape.variable_count(), 0)};
  std::uniform_int_distribution<fptdet::Exponent> dist(0, max_exp);
  for (auto& e : mono.exps) e = dist(rng);
  return mono;
}

inline fptdet::Polynomial random_polynomial(std::mt19937& rng, const fptdet::MatrixShape& shape,
                                            std::uint32_t p, int max_terms,
                                            fptdet::Exponent max_exp) {
  std::vector<std::pair<fptdet::Monomial, long long>> terms;
  int count = std::uniform_int_distribution<int>(1, max_terms)(rng);
  std::uniform_int_distribution<long long> coeff(1, p - 1);
  for (int i = 0; i < count; ++i) terms.emplace_back(random_monomial(rng, shape, max_exp), coeff(rng));
  return fptdet::Polynomial::from_terms(shape, p, terms);
}

}  // namespace oracles
