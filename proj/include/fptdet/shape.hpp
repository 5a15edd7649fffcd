#pragma once

#include <stdexcept>
#include <string>

namespace fptdet {

/// Dimensions of the generic matrix of indeterminates together with the
/// minor size t that generates the ideal under study.
struct MatrixShape {
  int m = 1;  ///< rows
  int n = 1;  ///< columns
  int t = 1;  ///< minor size, 1 <= t <= m <= n

  bool valid() const { return 1 <= t && t <= m && m <= n; }
  int variable_count() const { return m * n; }

  friend bool operator==(const MatrixShape&, const MatrixShape&) = default;
};

inline void require_valid(const MatrixShape& s) {
  if (!s.valid())
    throw std::invalid_argument("invalid shape (m=" + std::to_string(s.m) +
                                ", n=" + std::to_string(s.n) +
                                ", t=" + std::to_string(s.t) +
                                "): require t <= m <= n and all >= 1");
}

}  // namespace fptdet
