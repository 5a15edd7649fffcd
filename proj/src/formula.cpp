#include "fptdet/formula.hpp"

namespace fptdet {

namespace {

// (m-k)(n-k)/(t-k) as an unreduced 128-bit pair, denominator > 0 for k < t.
struct Candidate {
  __int128 num;
  __int128 den;
};

Candidate candidate_at(const MatrixShape& s, long long k) {
  return {static_cast<__int128>(s.m - k) * (s.n - k), static_cast<__int128>(s.t - k)};
}

// a/b <= c/d with b, d > 0.
bool leq(const Candidate& a, const Candidate& b) {
  return a.num * b.den <= b.num * a.den;
}

}  // namespace

Rational fpt_closed_form(const MatrixShape& shape) {
  require_valid(shape);
  Candidate best = candidate_at(shape, 0);
  for (long long k = 1; k < shape.t; ++k) {
    Candidate c = candidate_at(shape, k);
    if (leq(c, best)) best = c;
  }
  return Rational::make(best.num, best.den);
}

FptResult minimizing_k_and_u(const MatrixShape& shape) {
  require_valid(shape);
  long long k = shape.t - 1;  // comparison against the empty k = t-1 minor size is +infinity
  for (long long c = 0; c < shape.t - 1; ++c) {
    if (leq(candidate_at(shape, c), candidate_at(shape, c + 1))) {
      k = c;
      break;
    }
  }
  const long long m = shape.m, n = shape.n, t = shape.t;
  FptResult res;
  res.k = k;
  res.u = t * (m + n - 2 * k) - m * n + k * k;
  res.value = Rational::make(candidate_at(shape, k).num, candidate_at(shape, k).den);
  return res;
}

}  // namespace fptdet
