#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"

#include "fptdet/formula.hpp"
#include "fptdet/frobenius.hpp"
#include "fptdet/witness.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerifyFail = 1;
constexpr int kExitBadInput = 2;
constexpr int kExitBudget = 3;

struct ShapeArgs {
  int rows = 0, cols = 0, size = 0;

  fptdet::MatrixShape shape() const {
    fptdet::MatrixShape s{rows, cols, size};
    fptdet::require_valid(s);
    return s;
  }
};

void add_shape_options(CLI::App* cmd, ShapeArgs& args) {
  cmd->add_option("--rows", args.rows, "row count m")->required();
  cmd->add_option("--cols", args.cols, "column count n")->required();
  cmd->add_option("--size", args.size, "minor size t")->required();
}

std::string default_cache_path() {
  const char* env = std::getenv("FPTDET_CACHE");
  return env ? env : "";
}

std::string ratio_line(const fptdet::Rational& r) {
  return r.to_string() + " (~ " + r.decimal_string() + ")";
}

nlohmann::ordered_json rational_json(const fptdet::Rational& r) {
  return {{"num", r.num()}, {"den", r.den()}};
}

nlohmann::ordered_json nu_record_json(const fptdet::NuRecord& rec) {
  nlohmann::ordered_json j;
  j["m"] = rec.shape.m;
  j["n"] = rec.shape.n;
  j["t"] = rec.shape.t;
  j["p"] = rec.p;
  j["e"] = rec.e;
  j["q"] = rec.q;
  j["nu"] = rec.nu;
  j["ratio"] = rational_json(fptdet::Rational::make(rec.nu, rec.q));
  j["witness"] = fptdet::factors_to_json(rec.witness.factors);
  return j;
}

int run_fpt(const ShapeArgs& args, bool json) {
  auto res = fptdet::minimizing_k_and_u(args.shape());
  if (json) {
    nlohmann::ordered_json j;
    j["fpt"] = rational_json(res.value);
    j["k"] = res.k;
    j["u"] = res.u;
    std::cout << j.dump() << "\n";
  } else {
    std::cout << "fpt = " << res.value.to_string() << ", k = " << res.k << ", u = " << res.u
              << "\n";
    std::cout << "decimal ~ " << res.value.decimal_string() << " (display only)\n";
  }
  return kExitOk;
}

void print_report(std::ostream& os, const fptdet::VerificationReport& rep) {
  for (const auto& c : rep.claims)
    os << "claim " << c.name << ": " << (c.pass ? "PASS" : "FAIL") << " (" << c.detail << ")\n";
}

int run_delta(const ShapeArgs& args, std::optional<int> k_override, const std::string& out_path,
              bool json) {
  fptdet::MatrixShape shape = args.shape();
  fptdet::WitnessCertificate cert = k_override ? fptdet::build_capital_delta(shape, *k_override)
                                               : fptdet::build_capital_delta(shape);
  fptdet::VerificationReport rep = fptdet::verify_certificate(cert);

  if (!out_path.empty()) {
    std::ofstream out(out_path, std::ios::binary);
    if (!out) {
      std::cerr << "error: cannot write " << out_path << "\n";
      return kExitBadInput;
    }
    out << fptdet::render_certificate(cert);
  }

  if (json) {
    std::cout << fptdet::certificate_to_json(cert).dump() << "\n";
  } else {
    std::cout << "shape " << shape.m << " x " << shape.n << ", t = " << shape.t << "\n";
    std::cout << "k = " << cert.k << ", u = " << cert.u << ", case = "
              << fptdet::to_string(cert.case_tag) << "\n";
    std::cout << "factors:\n";
    for (const auto& f : cert.factors) {
      std::cout << "  " << fptdet::minor_to_string(f.spec);
      if (f.mult > 1) std::cout << "^" << f.mult;
      std::cout << "\n";
    }
    print_report(std::cout, rep);
    if (!out_path.empty()) std::cout << "certificate written to " << out_path << "\n";
  }
  if (!rep.all_pass()) {
    std::cerr << "error: self-verification failed\n";
    return kExitVerifyFail;
  }
  return kExitOk;
}

int run_verify(const std::string& path, bool json) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    std::cerr << "error: cannot read " << path << "\n";
    return kExitBadInput;
  }
  std::stringstream buf;
  buf << in.rdbuf();

  fptdet::WitnessCertificate cert = fptdet::parse_certificate(buf.str());
  fptdet::VerificationReport rep = fptdet::verify_certificate(cert);
  if (!rep.structure_ok) {
    std::cerr << "error: malformed certificate: " << rep.structure_error << "\n";
    return kExitBadInput;
  }
  if (json) {
    nlohmann::ordered_json j;
    j["pass"] = rep.all_pass();
    nlohmann::ordered_json claims = nlohmann::ordered_json::array();
    for (const auto& c : rep.claims)
      claims.push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
    j["claims"] = std::move(claims);
    std::cout << j.dump() << "\n";
  } else {
    print_report(std::cout, rep);
    std::cout << (rep.all_pass() ? "certificate OK\n" : "certificate INVALID\n");
  }
  return rep.all_pass() ? kExitOk : kExitVerifyFail;
}

int run_nu(const ShapeArgs& args, std::uint32_t p, int e, const std::string& cache_path,
           const fptdet::SearchBudget& budget, bool json) {
  fptdet::MatrixShape shape = args.shape();
  fptdet::CacheKey key{shape.m, shape.n, shape.t, p, e};

  fptdet::NuRecord rec;
  bool from_cache = false;
  if (!cache_path.empty()) {
    fptdet::NuCache cache = fptdet::NuCache::load(cache_path);
    if (const fptdet::CacheRecord* hit = cache.find(key)) {
      rec.shape = shape;
      rec.p = p;
      rec.e = e;
      rec.q = 1;
      for (int i = 0; i < e; ++i) rec.q *= p;
      rec.nu = hit->nu;
      rec.witness = fptdet::canonical_product(shape, hit->witness);
      from_cache = true;
    }
  }
  if (!from_cache) {
    fptdet::NuOutcome outcome = fptdet::nu_determinantal(shape, p, e, budget);
    if (outcome.status != fptdet::NuStatus::Exact) {
      if (json)
        std::cout << nlohmann::ordered_json{{"status", "unknown"}}.dump() << "\n";
      else
        std::cout << "unknown\n";
      std::cerr << "budget exceeded after " << outcome.nodes << " nodes\n";
      return kExitBudget;
    }
    rec = *outcome.record;
    if (!cache_path.empty())
      fptdet::NuCache::append(cache_path, {key, rec.nu, rec.witness.factors});
    std::cerr << "computed in " << rec.elapsed_seconds << " s (" << outcome.nodes << " nodes)\n";
  }

  fptdet::Rational ratio = fptdet::Rational::make(rec.nu, rec.q);
  if (json) {
    std::cout << nu_record_json(rec).dump() << "\n";
  } else {
    std::cout << "nu = " << rec.nu << ", q = " << rec.q << ", nu/q = " << ratio.to_string()
              << "\n";
    std::cout << "decimal ~ " << ratio.decimal_string() << " (display only)\n";
    std::cout << "witness: " << fptdet::product_to_string(rec.witness) << "\n";
  }
  return kExitOk;
}

int run_table(const ShapeArgs& args, std::uint32_t p, int e_max, const std::string& cache_path,
              const fptdet::SearchBudget& budget, bool json) {
  fptdet::MatrixShape shape = args.shape();
  fptdet::NuCache cache;
  if (!cache_path.empty()) cache = fptdet::NuCache::load(cache_path);
  fptdet::ConvergenceTable table = fptdet::convergence_table(
      shape, p, e_max, budget, cache_path.empty() ? nullptr : &cache, cache_path);

  if (json) {
    nlohmann::ordered_json j;
    j["shape"] = {{"m", shape.m}, {"n", shape.n}, {"t", shape.t}};
    j["p"] = p;
    j["target"] = rational_json(table.target);
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const auto& rec : table.rows) {
      nlohmann::ordered_json row;
      row["e"] = rec.e;
      row["q"] = rec.q;
      row["nu"] = rec.nu;
      row["ratio"] = rational_json(fptdet::Rational::make(rec.nu, rec.q));
      row["witness"] = fptdet::factors_to_json(rec.witness.factors);
      rows.push_back(std::move(row));
    }
    j["rows"] = std::move(rows);
    j["complete"] = table.complete;
    j["violations"] = table.violations;
    std::cout << j.dump() << "\n";
  } else {
    std::cout << "target fpt = " << ratio_line(table.target) << "\n";
    for (const auto& rec : table.rows) {
      fptdet::Rational ratio = fptdet::Rational::make(rec.nu, rec.q);
      std::cout << "e=" << rec.e << " q=" << rec.q << " nu=" << rec.nu
                << " nu/q=" << ratio.to_string() << " (~ " << ratio.decimal_string() << ")\n";
    }
    for (const auto& v : table.violations) std::cout << "VIOLATION: " << v << "\n";
  }
  if (!table.violations.empty()) {
    std::cerr << "error: internal-consistency violation detected\n";
    return kExitVerifyFail;
  }
  if (!table.complete) {
    std::cerr << "budget exceeded: table truncated after " << table.rows.size() << " rows\n";
    return kExitBudget;
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact F-pure thresholds of determinantal ideals"};
  app.require_subcommand(1);

  ShapeArgs fpt_args;
  bool fpt_json = false;
  CLI::App* fpt_cmd = app.add_subcommand("fpt", "closed-form threshold with k and u");
  add_shape_options(fpt_cmd, fpt_args);
  fpt_cmd->add_flag("--json", fpt_json, "machine output");

  ShapeArgs delta_args;
  bool delta_json = false;
  int delta_k = -1;
  std::string delta_out;
  CLI::App* delta_cmd = app.add_subcommand("delta", "build and self-verify a witness certificate");
  add_shape_options(delta_cmd, delta_args);
  delta_cmd->add_option("--k", delta_k, "override the minimizing index k");
  delta_cmd->add_option("--out", delta_out, "certificate output path");
  delta_cmd->add_flag("--json", delta_json, "machine output");
  bool delta_k_given = false;
  delta_cmd->callback([&] { delta_k_given = delta_cmd->count("--k") > 0; });

  std::string verify_path;
  bool verify_json = false;
  CLI::App* verify_cmd = app.add_subcommand("verify", "verify a certificate file");
  verify_cmd->add_option("path", verify_path, "certificate file")->required();
  verify_cmd->add_flag("--json", verify_json, "machine output");

  ShapeArgs nu_args;
  bool nu_json = false;
  std::uint32_t nu_p = 0;
  int nu_e = 0;
  std::string nu_cache = default_cache_path();
  fptdet::SearchBudget nu_budget;
  CLI::App* nu_cmd = app.add_subcommand("nu", "exact Frobenius invariant nu(q)");
  add_shape_options(nu_cmd, nu_args);
  nu_cmd->add_option("--prime", nu_p, "characteristic p")->required();
  nu_cmd->add_option("--exp", nu_e, "exponent e, q = p^e")->required();
  nu_cmd->add_option("--cache", nu_cache, "JSON-lines cache path (default $FPTDET_CACHE)");
  nu_cmd->add_option("--budget-nodes", nu_budget.max_nodes, "search node limit");
  nu_cmd->add_option("--budget-secs", nu_budget.max_seconds, "search time limit");
  nu_cmd->add_flag("--json", nu_json, "machine output");

  ShapeArgs table_args;
  bool table_json = false;
  std::uint32_t table_p = 0;
  int table_e_max = 0;
  std::string table_cache = default_cache_path();
  fptdet::SearchBudget table_budget;
  CLI::App* table_cmd = app.add_subcommand("table", "convergence table nu(p^e)/p^e");
  add_shape_options(table_cmd, table_args);
  table_cmd->add_option("--prime", table_p, "characteristic p")->required();
  table_cmd->add_option("--max-exp", table_e_max, "largest exponent e")->required();
  table_cmd->add_option("--cache", table_cache, "JSON-lines cache path (default $FPTDET_CACHE)");
  table_cmd->add_option("--budget-nodes", table_budget.max_nodes, "search node limit");
  table_cmd->add_option("--budget-secs", table_budget.max_seconds, "search time limit");
  table_cmd->add_flag("--json", table_json, "machine output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitBadInput;
  }

  try {
    if (fpt_cmd->parsed()) return run_fpt(fpt_args, fpt_json);
    if (delta_cmd->parsed())
      return run_delta(delta_args, delta_k_given ? std::optional<int>(delta_k) : std::nullopt,
                       delta_out, delta_json);
    if (verify_cmd->parsed()) return run_verify(verify_path, verify_json);
    if (nu_cmd->parsed()) return run_nu(nu_args, nu_p, nu_e, nu_cache, nu_budget, nu_json);
    if (table_cmd->parsed())
      return run_table(table_args, table_p, table_e_max, table_cache, table_budget, table_json);
  } catch (const fptdet::CertificateError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBadInput;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBadInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBadInput;
  }
  return kExitBadInput;
}
