// Command-line front end: build and export count tables, multiply algebra
// elements, and run the verification suites with machine-readable verdicts.
//
// Exit codes: 0 success, 1 computation or verification failure, 2 usage or
// grammar errors.

#include <CLI11.hpp>
#include <algorithm>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <sstream>

#include "hall/parse.hpp"
#include "hall/verify.hpp"

using namespace hall;
using ojson = nlohmann::ordered_json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

DimVec parse_dim_list(const std::string& text) {
  DimVec out;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) out.push_back(std::stoi(tok));
  if (out.empty()) throw DomainError("empty dimension list");
  return out;
}

std::vector<uint32_t> parse_prime_list(const std::string& text) {
  std::vector<uint32_t> out;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) out.push_back(static_cast<uint32_t>(std::stoul(tok)));
  if (out.size() < 2) throw DomainError("need at least two primes");
  return out;
}

int cmd_hall_table(const std::string& quiver_path, const std::string& max_dim,
                   int sum_bound, const std::string& primes, uint32_t check_prime,
                   bool serial, bool no_flags, const std::string& out_path) {
  Quiver q = Quiver::parse(read_file(quiver_path));
  HallTableOptions opt;
  opt.max_dim = parse_dim_list(max_dim);
  opt.sum_bound = sum_bound;
  opt.primes = parse_prime_list(primes);
  opt.check_prime = check_prime;
  opt.parallel = !serial;
  opt.build_flags = !no_flags;
  HallTable t = build_hall_table(q, opt);
  std::ofstream out(out_path);
  if (!out) throw std::runtime_error("cannot write " + out_path);
  out << t.to_json() << "\n";
  std::cerr << "wrote table with " << t.classes.size() << " classes to " << out_path << "\n";
  return kExitOk;
}

int cmd_mult(const std::string& algebra, const std::string& table_path,
             const std::string& chi_text, const std::string& lhs, const std::string& rhs,
             const std::string& mode) {
  if (algebra == "CF" || algebra == "SF") {
    if (table_path.empty()) throw DomainError("--table is required for CF and SF");
    HallTable t = HallTable::from_json(read_file(table_path));
    if (algebra == "CF") {
      CFElem a = parse_cf_elem(lhs, t), b = parse_cf_elem(rhs, t);
      std::cout << print_cf_elem(cf_mult(a, b, t), t) << "\n";
    } else {
      SFElem a = parse_sf_elem(lhs, t), b = parse_sf_elem(rhs, t);
      std::cout << print_sf_elem(sf_mult(a, b, t), t) << "\n";
    }
    return kExitOk;
  }
  if (chi_text.empty()) throw DomainError("--chi is required for A, B and C");
  EulerForm chi = parse_chi_matrix(chi_text);
  if (algebra == "A") {
    AElem a = parse_a_elem(lhs, chi.rank()), b = parse_a_elem(rhs, chi.rank());
    std::cout << print_a_elem(a_mult(a, b, chi)) << "\n";
  } else if (algebra == "B") {
    BElem a = parse_b_elem(lhs, chi.rank()), b = parse_b_elem(rhs, chi.rank());
    BMode m = mode == "sum" ? BMode::Sum : BMode::Graph;
    std::cout << print_b_elem(b_mult(a, b, chi, m)) << "\n";
  } else if (algebra == "C") {
    CElem a = parse_c_elem(lhs, chi.rank()), b = parse_c_elem(rhs, chi.rank());
    std::cout << print_c_elem(c_mult(a, b, chi)) << "\n";
  } else {
    throw DomainError("unknown algebra '" + algebra + "'");
  }
  return kExitOk;
}

int cmd_verify(const std::string& suite, const std::string& quiver_path,
               const std::string& table_path, uint64_t seed, int trials, bool serial) {
  SuiteOptions opt;
  if (!quiver_path.empty()) opt.quiver = Quiver::parse(read_file(quiver_path));
  if (!table_path.empty()) opt.table_json = read_file(table_path);
  opt.seed = seed;
  opt.trials = trials;
  opt.parallel = !serial;
  SuiteReport rep = run_suite(suite, opt);
  int failures = 0;
  for (const auto& c : rep.checks) {
    ojson line;
    line["suite"] = rep.suite;
    line["check"] = c.name;
    line["status"] = c.pass ? "pass" : "fail";
    if (!c.detail.empty()) line["detail"] = c.detail;
    line["seed"] = seed;
    std::cout << line.dump() << "\n";
    if (!c.pass) ++failures;
  }
  ojson summary;
  summary["suite"] = rep.suite;
  summary["checks"] = rep.checks.size();
  summary["failures"] = failures;
  std::cout << summary.dump() << "\n";
  return failures == 0 ? kExitOk : kExitFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact Hall-algebra calculator for quiver representations"};
  app.require_subcommand(1);

  auto* tablecmd = app.add_subcommand("hall-table", "enumerate and export a count table");
  std::string quiver_path, max_dim, out_path;
  std::string primes = "2,3,5,7,11";
  uint32_t check_prime = 13;
  int sum_bound = -1;
  bool serial = false, no_flags = false;
  tablecmd->add_option("--quiver", quiver_path, "quiver file")->required();
  tablecmd->add_option("--max-dim", max_dim, "per-vertex dimension bound a,b,...")->required();
  tablecmd->add_option("--sum-bound", sum_bound, "bound on the total dimension");
  tablecmd->add_option("--primes", primes, "sample primes");
  tablecmd->add_option("--check-prime", check_prime, "held-out verification prime");
  tablecmd->add_flag("--serial", serial, "use the serial reference kernels");
  tablecmd->add_flag("--no-flags", no_flags, "skip flag tables");
  tablecmd->add_option("--out", out_path, "output JSON path")->required();

  auto* multcmd = app.add_subcommand("mult", "multiply two algebra elements");
  std::string algebra, table_path, chi_text, lhs, rhs, mode = "graph";
  multcmd->add_option("--algebra", algebra, "CF|SF|A|B|C")->required();
  multcmd->add_option("--table", table_path, "table JSON (CF and SF)");
  multcmd->add_option("--chi", chi_text, "form matrix rows 'a,b;c,d' (A, B, C)");
  multcmd->add_option("--lhs", lhs, "left element")->required();
  multcmd->add_option("--rhs", rhs, "right element")->required();
  multcmd->add_option("--mode", mode, "B multiplication mode: sum|graph");

  auto* verifycmd = app.add_subcommand("verify", "run a verification suite");
  std::string suite, vquiver, vtable;
  uint64_t seed = 0;
  int trials = 20;
  bool vserial = false;
  verifycmd->add_option("--suite", suite, "serre|qserre|bialgebra|pbw|assoc|thm61|thm65|pi|cy")
      ->required();
  verifycmd->add_option("--quiver", vquiver, "quiver file overriding the fixtures");
  verifycmd->add_option("--table", vtable, "table JSON to check and reuse");
  verifycmd->add_option("--seed", seed, "random seed");
  verifycmd->add_option("--trials", trials, "randomized trial count");
  verifycmd->add_flag("--serial", vserial, "disable parallel evaluation");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (tablecmd->parsed())
      return cmd_hall_table(quiver_path, max_dim, sum_bound, primes, check_prime, serial,
                            no_flags, out_path);
    if (multcmd->parsed()) {
      if (mode != "sum" && mode != "graph") throw DomainError("mode must be sum or graph");
      try {
        return cmd_mult(algebra, table_path, chi_text, lhs, rhs, mode);
      } catch (const DomainError& e) {
        // grammar and matrix shape problems are usage errors for mult
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
      }
    }
    if (verifycmd->parsed()) {
      const auto& names = suite_names();
      if (std::find(names.begin(), names.end(), suite) == names.end()) {
        std::cerr << "error: unknown suite '" << suite << "'\n";
        return kExitUsage;
      }
      if (trials < 1) throw DomainError("trials must be positive");
      return cmd_verify(suite, vquiver, vtable, seed, trials, vserial);
    }
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFailure;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitUsage;
}
