#pragma once

#include "fptdet/rational.hpp"
#include "fptdet/shape.hpp"

namespace fptdet {

/// Outcome of the least-k minimization: the threshold value
/// (m-k)(n-k)/(t-k) together with the minimizing index k and the
/// auxiliary integer u = t(m+n-2k) - mn + k^2.
struct FptResult {
  Rational value;
  long long k = 0;
  long long u = 0;
};

/// min over k in {0,...,t-1} of (m-k)(n-k)/(t-k), exact.
Rational fpt_closed_form(const MatrixShape& shape);

/// Least k in [0, t-1] with (m-k)(n-k)/(t-k) <= (m-k-1)(n-k-1)/(t-k-1),
/// where the right side at k = t-1 counts as +infinity, so the comparison
/// at k = t-1 always succeeds. The returned value equals fpt_closed_form.
FptResult minimizing_k_and_u(const MatrixShape& shape);

}  // namespace fptdet
