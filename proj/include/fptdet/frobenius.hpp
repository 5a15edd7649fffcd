#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "fptdet/formula.hpp"
#include "fptdet/polyfp.hpp"
#include "fptdet/witness.hpp"

namespace fptdet {

/// f with every monomial having some exponent >= s deleted. The result is
/// zero iff f lies in the ideal generated by the s-th variable powers.
/// Interleaving this reduction with multiplication is sound: a deleted
/// monomial can never multiply back out of that ideal.
Polynomial reduce_mod_bracket(const Polynomial& f, std::uint64_t s);

bool in_bracket_power(const Polynomial& f, std::uint64_t s);

struct SearchBudget {
  std::uint64_t max_nodes = 10'000'000;
  double max_seconds = 60.0;
};

struct NuRecord {
  MatrixShape shape;
  std::uint32_t p = 2;
  int e = 1;
  std::uint64_t q = 2;  // p^e
  std::uint64_t nu = 0;
  ProductOfMinors witness;  // multiset of size-t minors attaining nu
  double elapsed_seconds = 0.0;
};

enum class NuStatus { Exact, BudgetExceeded };

struct NuOutcome {
  NuStatus status = NuStatus::BudgetExceeded;
  std::optional<NuRecord> record;  // set iff status == Exact
  std::uint64_t nodes = 0;
};

/// All size-t minors of the shape, sorted by (rows, cols).
std::vector<MinorSpec> size_t_minors(const MatrixShape& shape);

/// Exact largest r such that some multiset of r size-t minors has product
/// outside the q-th bracket power, q = p^e. Depth-first over non-decreasing
/// generator indices with the partial product reduced after every factor;
/// identical reduced products are merged keeping the lexicographically
/// least witness multiset. Exceeding the budget yields BudgetExceeded,
/// never an approximate value.
NuOutcome nu_determinantal(const MatrixShape& shape, std::uint32_t p, int e,
                           const SearchBudget& budget = {});

/// Largest r with f^r outside the q-th bracket power, by repeated squaring
/// with interleaved reduction and binary search over r in [0, q-1]. f must
/// be nonzero with zero constant term (otherwise no such maximum exists).
std::uint64_t nu_principal(const Polynomial& f, std::uint64_t q);

struct CacheKey {
  int m = 0, n = 0, t = 0;
  std::uint32_t p = 0;
  int e = 0;

  friend auto operator<=>(const CacheKey&, const CacheKey&) = default;
};

struct CacheRecord {
  CacheKey key;
  std::uint64_t nu = 0;
  std::vector<MinorFactor> witness;
};

/// JSON-lines result store, one record per line. Append-only; duplicate
/// keys resolve last-writer-wins on load. Appends take an exclusive file
/// lock for the duration of the write.
class NuCache {
 public:
  static NuCache load(const std::string& path);  // missing file -> empty cache
  static void append(const std::string& path, const CacheRecord& rec);

  const CacheRecord* find(const CacheKey& key) const;
  void put(const CacheRecord& rec);
  std::size_t size() const { return records_.size(); }

 private:
  std::map<CacheKey, CacheRecord> records_;
};

nlohmann::ordered_json cache_record_to_json(const CacheRecord& rec);
CacheRecord cache_record_from_json(const nlohmann::json& j);

struct ConvergenceTable {
  MatrixShape shape;
  std::uint32_t p = 2;
  Rational target;            // closed-form threshold
  std::vector<NuRecord> rows;  // e = 1.. in order
  bool complete = false;      // false when the budget stopped the table
  std::vector<std::string> violations;  // internal-consistency failures
};

/// Records for e = 1..e_max, stopping early on budget exhaustion. Checks
/// nu(p^{e+1}) >= p*nu(p^e), non-decreasing nu/q, and nu/q <= target as
/// exact rationals; any violation indicates a bug and lands in
/// `violations`. When a cache is given, hits skip recomputation and fresh
/// results are appended to cache_path (if nonempty).
ConvergenceTable convergence_table(const MatrixShape& shape, std::uint32_t p, int e_max,
                                   const SearchBudget& budget = {}, NuCache* cache = nullptr,
                                   const std::string& cache_path = {});

}  // namespace fptdet
