// prat: command-line driver for the flanked-prime search, triquadratic
// certificates, quadratic field queries and the analytic harness.

#include <charconv>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

#include <CLI11.hpp>

#include "prat/analytic.hpp"
#include "prat/cache.hpp"
#include "prat/certify.hpp"
#include "prat/kernels.hpp"
#include "prat/search.hpp"

namespace {

using namespace prat;

constexpr int kExitOk = 0;
constexpr int kExitNotCertified = 1;
constexpr int kExitUsage = 2;

std::string shortest(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return ec == std::errc{} ? std::string(buf, end) : std::to_string(v);
}

std::unique_ptr<ClassNumberCache> open_cache(bool disabled) {
  if (disabled) return std::make_unique<ClassNumberCache>();
  try {
    return std::make_unique<ClassNumberCache>(ClassNumberCache::default_path());
  } catch (const std::exception& e) {
    std::cerr << "warning: cache unavailable (" << e.what() << "), continuing without it\n";
    return std::make_unique<ClassNumberCache>();
  }
}

std::vector<u64> parse_grid(const std::string& text) {
  std::vector<u64> grid;
  std::istringstream is(text);
  std::string item;
  while (std::getline(is, item, ',')) {
    u64 v = 0;
    auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
    if (ec != std::errc{} || ptr != item.data() + item.size())
      throw Error(Errc::InvalidConfig, "bad grid entry '" + item + "'");
    grid.push_back(v);
  }
  return grid;
}

std::vector<PairCandidate> parse_forced(const std::string& text) {
  std::vector<PairCandidate> pairs;
  std::istringstream is(text);
  std::string item;
  while (std::getline(is, item, ',')) {
    const auto colon = item.find(':');
    if (colon == std::string::npos) throw Error(Errc::InvalidConfig, "forced pair '" + item + "' is not m:n");
    const u64 m = std::stoull(item.substr(0, colon));
    const u64 n = std::stoull(item.substr(colon + 1));
    pairs.push_back(make_pair_candidate(m, n));
  }
  return pairs;
}

struct SearchArgs {
  u64 limit = 0;
  double A = 0.5;
  double B = 0.0;
  bool direct = false;
  bool crt = false;
};

int run_search(const SearchArgs& a, CLI::App* cmd) {
  if (a.direct == a.crt) {
    std::cerr << "search: choose exactly one of --direct or --crt\n" << cmd->help();
    return kExitUsage;
  }
  if (a.crt && cmd->count("--B") == 0) {
    std::cerr << "search: --crt requires --B\n" << cmd->help();
    return kExitUsage;
  }
  std::vector<SquareFlankedPrime> found;
  if (a.direct) {
    found = direct_scan(a.limit, a.A);
  } else {
    const auto window = SearchWindow::at(a.limit, a.A, a.B);
    std::cerr << window_diagnostic(window) << "\n";
    found = find_flanked_primes(window);
  }
  const std::string A = shortest(a.A);
  for (const auto& r : found) std::cout << r.p << "," << r.m_witness << "," << r.n_witness << "," << A << "\n";
  return kExitOk;
}

struct CertifyArgs {
  u64 p = 0;
  std::string out;
  u64 m = 0, n = 0;
  double A = 0.5;
  bool no_cache = false;
};

int run_certify(const CertifyArgs& a, CLI::App* cmd) {
  if (a.p < 5 || !is_prime(a.p)) {
    std::cerr << "certify: --p must be a prime >= 5\n";
    return kExitUsage;
  }
  if ((cmd->count("--m") > 0) != (cmd->count("--n") > 0)) {
    std::cerr << "certify: --m and --n go together\n";
    return kExitUsage;
  }
  auto cache = open_cache(a.no_cache);
  auto cert = certify_triquadratic(a.p, cache.get());
  if (cmd->count("--m") > 0) attach_discriminant_checks(cert, FlankWitness{a.m, a.n, a.A});
  const std::string text = serialize(cert);
  if (a.out.empty()) {
    std::cout << text;
  } else {
    std::ofstream f(a.out, std::ios::trunc);
    if (!f) {
      std::cerr << "certify: cannot write " << a.out << "\n";
      return kExitUsage;
    }
    f << text;
  }
  std::cerr << "p = " << a.p << ": " << conclusion_name(cert.conclusion) << "\n";
  return cert.conclusion == Conclusion::Certified ? kExitOk : kExitNotCertified;
}

int run_verify(const std::string& path) {
  std::ifstream f(path);
  if (!f) {
    std::cerr << "verify: cannot read " << path << "\n";
    return kExitUsage;
  }
  std::stringstream buf;
  buf << f.rdbuf();
  const auto cert = parse_certificate(buf.str());
  const std::string defect = certificate_defect(cert);
  if (defect.empty()) {
    std::cout << "valid (" << conclusion_name(cert.conclusion) << ")\n";
    return kExitOk;
  }
  std::cout << "invalid: " << defect << "\n";
  return kExitNotCertified;
}

int run_field(i64 d, u64 p, bool no_cache) {
  const auto f = descriptor(d);
  std::cout << "d_input: " << f.d_input << "\nkernel: " << f.kernel << "\ndiscriminant: " << f.discriminant
            << "\nsignature: " << signature_name(f.signature) << "\n";
  if (p == 0) {
    if (f.signature == Signature::Imaginary) {
      std::cout << "class_number: " << class_number_imaginary(f.discriminant) << "\n";
      std::cout << "louboutin_bound: " << shortest(louboutin_bound(f.discriminant)) << "\n";
    } else {
      const auto eps = fundamental_unit(f.kernel);
      std::cout << "unit: (" << eps.u << " + " << eps.v << " sqrt(" << f.kernel << "))/" << eps.denom
                << "\nunit_norm: " << eps.norm << "\nclass_number: " << class_number_real(f.discriminant, eps)
                << "\n";
    }
    return kExitOk;
  }
  auto cache = open_cache(no_cache);
  const auto v = p_rationality(f, p, cache.get());
  std::cout << "p: " << p << "\nstatus: " << status_name(v.status) << "\nmethod: " << method_name(v.method) << "\n";
  if (v.class_number) std::cout << "class_number: " << *v.class_number << "\n";
  if (v.bound) std::cout << "louboutin_bound: " << shortest(*v.bound) << "\n";
  if (v.unit)
    std::cout << "unit: (" << v.unit->u << " + " << v.unit->v << " sqrt(" << f.kernel << "))/" << v.unit->denom
              << "\nunit_norm: " << v.unit->norm << "\n";
  if (v.local) {
    std::cout << "splitting: " << splitting_name(v.local->splitting) << "\npth_power:";
    for (bool b : v.local->is_pth_power) std::cout << " " << (b ? "yes" : "no");
    std::cout << "\n";
  }
  return v.status == Status::Proved ? kExitOk : kExitNotCertified;
}

struct AnalyticArgs {
  double A = 0.0, B = 0.0, C = 0.0;
  std::string grid;
  bool grh = false;
  double epsilon = 0.0, alpha = 0.0;
  std::string forced;
  std::string out;
};

int run_analytic(const AnalyticArgs& a, CLI::App* cmd) {
  std::vector<TermBreakdown> rows;
  const auto grid = a.grid.empty() ? std::vector<u64>{} : parse_grid(a.grid);
  std::optional<std::vector<PairCandidate>> forced;
  if (!a.forced.empty()) forced = parse_forced(a.forced);
  if (a.grh) {
    if (cmd->count("--epsilon") == 0 || cmd->count("--alpha") == 0) {
      std::cerr << "analytic: --grh needs --epsilon and --alpha\n";
      return kExitUsage;
    }
    GrhConfig cfg{a.epsilon, a.alpha, grid, forced};
    cfg.validate();
    rows = grh_chain_report(cfg);
  } else {
    if (cmd->count("--A") == 0) {
      std::cerr << "analytic: --A is required\n" << cmd->help();
      return kExitUsage;
    }
    auto cfg = HarnessConfig::with_defaults(a.A, grid);
    if (cmd->count("--B")) cfg.B = a.B;
    cfg.C = cmd->count("--C") ? a.C : 5.0 * cfg.A * 1.5 + 1.0;
    cfg.forced_pairs = forced;
    cfg.validate();
    rows = chain_report(cfg);
  }
  for (const auto& r : rows)
    if (r.window_too_large) std::cerr << "x = " << r.x << ": WindowTooLarge, row skipped\n";
  if (a.out.empty()) {
    write_csv(std::cout, rows);
  } else {
    std::ofstream f(a.out, std::ios::trunc);
    write_csv(f, rows);
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"p-rational triquadratic fields: flanked-prime search, certificates, analytic harness"};
  app.require_subcommand(1);

  SearchArgs sa;
  auto* search = app.add_subcommand("search", "find primes p with large square factors in p+2 and p-2");
  search->add_option("--limit", sa.limit, "search bound")->required();
  search->add_option("--A", sa.A, "threshold exponent, witnesses exceed (log p)^A");
  search->add_option("--B", sa.B, "upper window exponent (--crt)");
  search->add_flag("--direct", sa.direct, "brute-force scan over all primes");
  search->add_flag("--crt", sa.crt, "walk the CRT progressions of the (log x)^A..(log x)^B window");

  CertifyArgs ca;
  auto* certify = app.add_subcommand("certify", "certify p-rationality of Q(sqrt(p(p+2)), sqrt(p(p-2)), i)");
  certify->add_option("--p", ca.p, "prime >= 5")->required();
  certify->add_option("--out", ca.out, "certificate path (stdout when omitted)");
  certify->add_option("--m", ca.m, "witness with m^2 | p+2");
  certify->add_option("--n", ca.n, "witness with n^2 | p-2");
  certify->add_option("--A", ca.A, "threshold exponent for the discriminant checks");
  certify->add_flag("--no-cache", ca.no_cache, "do not read or write the class number cache");

  std::string verify_path;
  auto* verify = app.add_subcommand("verify", "re-check a cert-v1 certificate from scratch");
  verify->add_option("--in", verify_path, "certificate path")->required();

  i64 field_d = 0;
  u64 field_p = 0;
  bool field_no_cache = false;
  auto* field = app.add_subcommand("field", "quadratic field data for Q(sqrt(d))");
  field->add_option("--d", field_d, "radicand")->required();
  field->add_option("--p", field_p, "prime >= 5 for a p-rationality verdict");
  field->add_flag("--no-cache", field_no_cache, "do not read or write the class number cache");

  AnalyticArgs aa;
  auto* analytic = app.add_subcommand("analytic", "finite-x sum chain as CSV");
  analytic->add_option("--A", aa.A);
  analytic->add_option("--B", aa.B);
  analytic->add_option("--C", aa.C);
  analytic->add_option("--grid", aa.grid, "comma-separated x values");
  analytic->add_flag("--grh", aa.grh, "x^eps < m, n < x^alpha windows");
  analytic->add_option("--epsilon", aa.epsilon);
  analytic->add_option("--alpha", aa.alpha);
  analytic->add_option("--force-window", aa.forced, "fixed pairs m1:n1,m2:n2,...");
  analytic->add_option("--out", aa.out, "CSV path (stdout when omitted)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n" << app.help();
    return kExitUsage;
  }

  try {
    if (*search) return run_search(sa, search);
    if (*certify) return run_certify(ca, certify);
    if (*verify) return run_verify(verify_path);
    if (*field) return run_field(field_d, field_p, field_no_cache);
    if (*analytic) return run_analytic(aa, analytic);
  } catch (const Error& e) {
    std::cerr << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
