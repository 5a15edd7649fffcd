#include "fptdet/frobenius.hpp"

#include <fcntl.h>
#include <sys/file.h>
#include <unistd.h>

#include <algorithm>
#include <chrono>
#include <cstring>
#include <fstream>
#include <stdexcept>
#include <unordered_map>

namespace fptdet {

Polynomial reduce_mod_bracket(const Polynomial& f, std::uint64_t s) {
  if (s < 1) throw std::invalid_argument("bracket power exponent must be >= 1");
  Polynomial out(f.shape(), f.characteristic());
  out.terms_.reserve(f.terms().size());
  for (const auto& t : f.terms()) {
    bool survives = true;
    for (Exponent e : t.mono.exps) {
      if (e >= s) {
        survives = false;
        break;
      }
    }
    if (survives) out.terms_.push_back(t);
  }
  return out;
}

bool in_bracket_power(const Polynomial& f, std::uint64_t s) {
  return reduce_mod_bracket(f, s).is_zero();
}

std::vector<MinorSpec> size_t_minors(const MatrixShape& shape) {
  require_valid(shape);
  auto subsets = [](int bound, int r) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur(r);
    auto rec = [&](auto&& self, int start, int depth) -> void {
      if (depth == r) {
        out.push_back(cur);
        return;
      }
      for (int v = start; v <= bound - (r - depth - 1); ++v) {
        cur[depth] = v;
        self(self, v + 1, depth + 1);
      }
    };
    rec(rec, 1, 0);
    return out;
  };
  std::vector<MinorSpec> gens;
  for (const auto& rows : subsets(shape.m, shape.t))
    for (const auto& cols : subsets(shape.n, shape.t)) gens.push_back({rows, cols});
  // subset enumeration is already lexicographic, so gens is sorted
  return gens;
}

namespace {

std::uint64_t checked_prime_power(std::uint32_t p, int e) {
  if (!is_prime(p)) throw std::invalid_argument("p must be prime");
  if (e < 1) throw std::invalid_argument("e must be >= 1");
  std::uint64_t q = 1;
  for (int i = 0; i < e; ++i) {
    q *= p;
    if (q > (1ull << 31)) throw std::invalid_argument("q = p^e out of supported range (<= 2^31)");
  }
  return q;
}

std::string canonical_key(const Polynomial& f) {
  std::string key;
  key.reserve(f.terms().size() * (f.shape().variable_count() + 1) * sizeof(Exponent));
  for (const auto& t : f.terms()) {
    key.append(reinterpret_cast<const char*>(t.mono.exps.data()),
               t.mono.exps.size() * sizeof(Exponent));
    key.append(reinterpret_cast<const char*>(&t.coeff), sizeof t.coeff);
  }
  return key;
}

struct BudgetClock {
  const SearchBudget& budget;
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
  std::uint64_t nodes = 0;

  // Returns false once either limit is hit.
  bool tick() {
    ++nodes;
    if (nodes > budget.max_nodes) return false;
    if ((nodes & 0xfff) == 0) {
      double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      if (secs > budget.max_seconds) return false;
    }
    return true;
  }

  double elapsed() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  }
};

ProductOfMinors witness_product(const MatrixShape& shape, const std::vector<MinorSpec>& gens,
                                const std::vector<int>& multiset) {
  std::vector<MinorFactor> fs;
  for (int idx : multiset) {
    if (!fs.empty() && gens[idx] == fs.back().spec)
      ++fs.back().mult;
    else
      fs.push_back({gens[idx], 1});
  }
  return canonical_product(shape, fs);
}

}  // namespace

NuOutcome nu_determinantal(const MatrixShape& shape, std::uint32_t p, int e,
                           const SearchBudget& budget) {
  require_valid(shape);
  const std::uint64_t q = checked_prime_power(p, e);

  const std::vector<MinorSpec> gens = size_t_minors(shape);
  std::vector<Polynomial> gen_polys;
  gen_polys.reserve(gens.size());
  for (const auto& g : gens)
    gen_polys.push_back(reduce_mod_bracket(expand_minor(shape, p, g), q));

  struct Node {
    Polynomial poly;
    std::vector<int> multiset;  // non-decreasing generator indices
  };

  BudgetClock clock{budget};
  std::vector<Node> frontier;
  frontier.push_back({Polynomial::constant(shape, p, 1), {}});
  std::vector<int> best_witness;  // of the last nonempty frontier
  std::uint64_t nu = 0;

  while (!frontier.empty()) {
    // Nodes are visited in lex order of their witness multisets, so the
    // first witness recorded for a reduced product is the least one.
    std::unordered_map<std::string, std::size_t> seen;
    std::vector<Node> next;
    for (const auto& node : frontier) {
      const int lo = node.multiset.empty() ? 0 : node.multiset.back();
      for (int j = lo; j < static_cast<int>(gens.size()); ++j) {
        if (!clock.tick()) return {NuStatus::BudgetExceeded, std::nullopt, clock.nodes};
        Polynomial prod = reduce_mod_bracket(poly_mul(node.poly, gen_polys[j]), q);
        if (prod.is_zero()) continue;
        std::string key = canonical_key(prod);
        if (seen.contains(key)) continue;
        std::vector<int> ms = node.multiset;
        ms.push_back(j);
        seen.emplace(std::move(key), next.size());
        next.push_back({std::move(prod), std::move(ms)});
      }
    }
    if (next.empty()) break;
    std::sort(next.begin(), next.end(),
              [](const Node& a, const Node& b) { return a.multiset < b.multiset; });
    best_witness = next.front().multiset;
    ++nu;
    frontier = std::move(next);
  }

  NuRecord rec;
  rec.shape = shape;
  rec.p = p;
  rec.e = e;
  rec.q = q;
  rec.nu = nu;
  rec.witness = nu == 0 ? ProductOfMinors{shape, {}} : witness_product(shape, gens, best_witness);
  rec.elapsed_seconds = clock.elapsed();
  return {NuStatus::Exact, rec, clock.nodes};
}

std::uint64_t nu_principal(const Polynomial& f, std::uint64_t q) {
  if (q < 2) throw std::invalid_argument("q must be >= 2");
  if (f.is_zero()) throw std::invalid_argument("nu_principal: zero polynomial");
  for (const auto& t : f.terms())
    if (t.mono.is_constant())
      throw std::invalid_argument("nu_principal: f must have zero constant term");

  // reduced f^r via square-and-multiply, reducing after every product
  auto power_survives = [&](std::uint64_t r) {
    Polynomial acc = Polynomial::constant(f.shape(), f.characteristic(), 1);
    Polynomial base = reduce_mod_bracket(f, q);
    while (r > 0) {
      if (r & 1) acc = reduce_mod_bracket(poly_mul(acc, base), q);
      r >>= 1;
      if (r > 0) base = reduce_mod_bracket(poly_mul(base, base), q);
      if (acc.is_zero()) return false;
      if (base.is_zero() && r > 0) return false;
    }
    return !acc.is_zero();
  };

  std::uint64_t lo = 0, hi = q - 1;  // f^q lies in the bracket power, so nu <= q-1
  while (lo < hi) {
    std::uint64_t mid = lo + (hi - lo + 1) / 2;
    if (power_survives(mid))
      lo = mid;
    else
      hi = mid - 1;
  }
  return lo;
}

nlohmann::ordered_json cache_record_to_json(const CacheRecord& rec) {
  nlohmann::ordered_json j;
  j["m"] = rec.key.m;
  j["n"] = rec.key.n;
  j["t"] = rec.key.t;
  j["p"] = rec.key.p;
  j["e"] = rec.key.e;
  j["nu"] = rec.nu;
  j["witness"] = factors_to_json(rec.witness);
  return j;
}

CacheRecord cache_record_from_json(const nlohmann::json& j) {
  auto geti = [&](const char* key) {
    if (!j.contains(key) || !j[key].is_number_integer())
      throw CertificateError(std::string("cache record: missing or non-integer field: ") + key);
    return j[key].get<long long>();
  };
  CacheRecord rec;
  rec.key.m = static_cast<int>(geti("m"));
  rec.key.n = static_cast<int>(geti("n"));
  rec.key.t = static_cast<int>(geti("t"));
  rec.key.p = static_cast<std::uint32_t>(geti("p"));
  rec.key.e = static_cast<int>(geti("e"));
  rec.nu = static_cast<std::uint64_t>(geti("nu"));
  if (!j.contains("witness")) throw CertificateError("cache record: missing field: witness");
  rec.witness = factors_from_json(j["witness"]);
  return rec;
}

NuCache NuCache::load(const std::string& path) {
  NuCache cache;
  std::ifstream in(path);
  if (!in) return cache;
  std::string line;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    nlohmann::json j = nlohmann::json::parse(line, nullptr, false);
    if (j.is_discarded()) continue;  // tolerate torn trailing writes
    try {
      CacheRecord rec = cache_record_from_json(j);
      cache.records_[rec.key] = std::move(rec);  // last writer wins
    } catch (const CertificateError&) {
      continue;
    }
  }
  return cache;
}

void NuCache::append(const std::string& path, const CacheRecord& rec) {
  std::string line = cache_record_to_json(rec).dump() + "\n";
  int fd = ::open(path.c_str(), O_WRONLY | O_CREAT | O_APPEND, 0644);
  if (fd < 0) throw std::runtime_error("cannot open cache file for append: " + path);
  ::flock(fd, LOCK_EX);
  ssize_t written = ::write(fd, line.data(), line.size());
  ::flock(fd, LOCK_UN);
  ::close(fd);
  if (written != static_cast<ssize_t>(line.size()))
    throw std::runtime_error("short write to cache file: " + path);
}

const CacheRecord* NuCache::find(const CacheKey& key) const {
  auto it = records_.find(key);
  return it == records_.end() ? nullptr : &it->second;
}

void NuCache::put(const CacheRecord& rec) { records_[rec.key] = rec; }

ConvergenceTable convergence_table(const MatrixShape& shape, std::uint32_t p, int e_max,
                                   const SearchBudget& budget, NuCache* cache,
                                   const std::string& cache_path) {
  require_valid(shape);
  if (e_max < 1) throw std::invalid_argument("e_max must be >= 1");

  ConvergenceTable table;
  table.shape = shape;
  table.p = p;
  table.target = fpt_closed_form(shape);
  table.complete = true;

  for (int e = 1; e <= e_max; ++e) {
    const CacheKey key{shape.m, shape.n, shape.t, p, e};
    NuRecord rec;
    const CacheRecord* hit = cache ? cache->find(key) : nullptr;
    if (hit) {
      rec.shape = shape;
      rec.p = p;
      rec.e = e;
      rec.q = checked_prime_power(p, e);
      rec.nu = hit->nu;
      rec.witness = canonical_product(shape, hit->witness);
      rec.elapsed_seconds = 0.0;
    } else {
      NuOutcome outcome = nu_determinantal(shape, p, e, budget);
      if (outcome.status != NuStatus::Exact) {
        table.complete = false;
        break;
      }
      rec = *outcome.record;
      CacheRecord fresh{key, rec.nu, rec.witness.factors};
      if (cache) cache->put(fresh);
      if (!cache_path.empty()) NuCache::append(cache_path, fresh);
    }
    table.rows.push_back(std::move(rec));
  }

  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    const auto& row = table.rows[i];
    Rational ratio = Rational::make(row.nu, row.q);
    if (!(ratio <= table.target))
      table.violations.push_back("e=" + std::to_string(row.e) + ": nu/q = " + ratio.to_string() +
                                 " exceeds the closed-form threshold " + table.target.to_string());
    if (i > 0) {
      const auto& prev = table.rows[i - 1];
      if (row.nu < static_cast<std::uint64_t>(p) * prev.nu)
        table.violations.push_back("e=" + std::to_string(row.e) +
                                   ": nu(pq) >= p*nu(q) violated: " + std::to_string(row.nu) +
                                   " < " + std::to_string(p) + "*" + std::to_string(prev.nu));
      if (ratio < Rational::make(prev.nu, prev.q))
        table.violations.push_back("e=" + std::to_string(row.e) + ": nu/q decreased");
    }
  }
  return table;
}

}  // namespace fptdet
