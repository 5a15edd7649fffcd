#include "doctest.h"

#include <numeric>
#include <utility>

#include "fptdet/formula.hpp"

using namespace fptdet;

namespace {

// Independent oracle: enumerate every candidate (m-k)(n-k)/(t-k) as a raw
// fraction pair and take the minimum by cross multiplication, without
// touching Rational or the library's comparison path.
std::pair<long long, long long> oracle_min_candidate(int m, int n, int t) {
  long long best_num = 0, best_den = 0;
  for (int k = 0; k < t; ++k) {
    long long num = static_cast<long long>(m - k) * (n - k);
    long long den = t - k;
    if (best_den == 0 ||
        static_cast<__int128>(num) * best_den < static_cast<__int128>(best_num) * den) {
      best_num = num;
      best_den = den;
    }
  }
  long long g = std::gcd(best_num, best_den);
  return {best_num / g, best_den / g};
}

}  // namespace

TEST_CASE("closed form on pinned shapes") {
  // (2,2,2): candidates 4/2 and 1/1
  CHECK(fpt_closed_form({2, 2, 2}) == Rational(1));
  // t = 1 leaves only k = 0
  for (int m = 1; m <= 6; ++m)
    for (int n = m; n <= 6; ++n) CHECK(fpt_closed_form({m, n, 1}) == Rational(m * n));
  // enumerations frozen from the oracle: 20/3, 12/2, 6/1 and 20/2, 12/1
  CHECK(oracle_min_candidate(4, 5, 3) == std::pair<long long, long long>{6, 1});
  CHECK(fpt_closed_form({4, 5, 3}) == Rational(6));
  CHECK(oracle_min_candidate(4, 5, 2) == std::pair<long long, long long>{10, 1});
  CHECK(fpt_closed_form({4, 5, 2}) == Rational(10));
}

TEST_CASE("closed form rejects invalid shapes") {
  CHECK_THROWS_AS(fpt_closed_form({2, 3, 4}), std::invalid_argument);
  CHECK_THROWS_AS(fpt_closed_form({3, 2, 1}), std::invalid_argument);
  CHECK_THROWS_AS(fpt_closed_form({0, 1, 0}), std::invalid_argument);
  CHECK_THROWS_AS(minimizing_k_and_u({5, 4, 2}), std::invalid_argument);
}

TEST_CASE("least k and u on pinned shapes") {
  // (4,5,3): k=0 fails 20/3 <= 12/2, k=1 passes 12/2 <= 6/1
  auto r = minimizing_k_and_u({4, 5, 3});
  CHECK(r.value == Rational(6));
  CHECK(r.k == 1);
  CHECK(r.u == 2);

  // (2,2,2): k=0 fails 2 <= 1, k=1 passes via the k = t-1 convention
  r = minimizing_k_and_u({2, 2, 2});
  CHECK(r.value == Rational(1));
  CHECK(r.k == 1);
  CHECK(r.u == 1);

  // (4,5,2): k=0 passes 10 <= 12
  r = minimizing_k_and_u({4, 5, 2});
  CHECK(r.value == Rational(10));
  CHECK(r.k == 0);
  CHECK(r.u == -2);
}

TEST_CASE("least k attains the oracle minimum and satisfies the u inequalities") {
  for (int n = 1; n <= 12; ++n) {
    for (int m = 1; m <= n; ++m) {
      for (int t = 1; t <= m; ++t) {
        MatrixShape shape{m, n, t};
        auto res = minimizing_k_and_u(shape);
        auto [num, den] = oracle_min_candidate(m, n, t);
        CHECK(res.value == Rational::make(num, den));
        CHECK(fpt_closed_form(shape) == res.value);
        CHECK(res.k >= 0);
        CHECK(res.k <= t - 1);
        CHECK(t - res.k - res.u >= 0);
        if (res.k >= 1) CHECK(t - res.k + res.u > 0);
        if (res.k == 0) CHECK(static_cast<long long>(t) * (m + n - 1) <= static_cast<long long>(m) * n);
        // the k=0 and k=t-1 candidates bound the minimum
        CHECK(res.value <= Rational::make(static_cast<__int128>(m) * n, t));
        CHECK(res.value <= Rational(static_cast<long long>(m - t + 1) * (n - t + 1)));
      }
    }
  }
}

TEST_CASE("formula arithmetic is exact on large shapes") {
  // quadratic growth must not overflow: m, n up to 10^4
  CHECK(fpt_closed_form({10000, 10000, 10000}) == Rational(1));
  auto res = minimizing_k_and_u({9999, 10000, 137});
  CHECK(res.value == fpt_closed_form({9999, 10000, 137}));
  CHECK(137 - res.k - res.u >= 0);
  CHECK(fpt_closed_form({10000, 10000, 1}) == Rational(100000000));
}
