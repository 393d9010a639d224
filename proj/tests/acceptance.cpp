// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numeric>
#include <random>
#include <sstream>
#include <string>

#include "prat/analytic.hpp"
#include "prat/certify.hpp"
#include "prat/quadfield.hpp"
#include "prat/search.hpp"

using namespace prat;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;
};

int failures = 0;

void criterion(int id, const char* title, double budget_s, const std::function<Outcome()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome out;
  try {
    out = body();
  } catch (const std::exception& e) {
    out = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (budget_s > 0 && secs >= budget_s) {
    out.ok = false;
    out.detail += " (over time budget)";
  }
  if (!out.ok) ++failures;
  std::printf("[%s] criterion %d: %s | %.2fs | %s\n", out.ok ? "PASS" : "FAIL", id, title, secs, out.detail.c_str());
  std::fflush(stdout);
}

bool naive_prime(u64 n) {
  if (n < 2) return false;
  for (u64 d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

long double scan_theta(u64 x, u64 q, u64 a) {
  long double t = 0.0L;
  for (u64 n = a % q; n < x; n += q)
    if (naive_prime(n)) t += std::log(static_cast<long double>(n));
  return t;
}

}  // namespace

int main() {
  criterion(1, "p-rationality triple 2, 19, 38 at p = 5", 1.0, [] {
    const Status s2 = p_rationality(descriptor(2), 5).status;
    const Status s19 = p_rationality(descriptor(19), 5).status;
    const Status s38 = p_rationality(descriptor(38), 5).status;
    std::ostringstream os;
    os << status_name(s2) << ", " << status_name(s19) << ", " << status_name(s38);
    return Outcome{s2 == Status::Proved && s19 == Status::Proved && s38 == Status::Refuted, os.str()};
  });

  criterion(2, "flanked-prime search", 10.0, [] {
    const auto scan = direct_scan(1000, 0.5);
    auto has = [&](u64 p, u64 m, u64 n) {
      return std::any_of(scan.begin(), scan.end(),
                         [&](const auto& r) { return r.p == p && r.m_witness == m && r.n_witness == n; });
    };
    const auto crt = find_flanked_primes(SearchWindow::at(500, 0.5, 1.2));
    const bool crt_has = std::any_of(crt.begin(), crt.end(), [](const auto& r) { return r.p == 277; });
    const auto c3 = direct_scan(1000, 0.5).size(), c4 = direct_scan(10000, 0.5).size(),
               c5 = direct_scan(100000, 0.5).size();
    std::ostringstream os;
    os << "277(3,5) " << has(277, 3, 5) << ", 727(27,5) " << has(727, 27, 5) << ", crt 277 " << crt_has
       << ", counts " << c3 << " < " << c4 << " < " << c5;
    return Outcome{has(277, 3, 5) && has(727, 27, 5) && crt_has && c3 < c4 && c4 < c5, os.str()};
  });

  criterion(3, "forms = character sum for fundamental D in (-10^4, 0)", 60.0, [] {
    int checked = 0, mismatches = 0;
    for (i64 D = -3; D > -10000; --D) {
      if (!is_fundamental_discriminant(D)) continue;
      ++checked;
      mismatches += class_number_imaginary(D) != class_number_imaginary_oracle(D);
    }
    return Outcome{mismatches == 0 && checked > 0,
                   std::to_string(checked) + " discriminants, " + std::to_string(mismatches) + " mismatches"};
  });

  criterion(4, "louboutin bound dominates h on (-10^5, 0)", 0, [] {
    int checked = 0, violations = 0;
    double tightest = 1e300;
    for (i64 D = -3; D > -100000; --D) {
      if (!is_fundamental_discriminant(D)) continue;
      ++checked;
      const double b = louboutin_bound(D);
      const auto h = static_cast<double>(class_number_imaginary(D));
      violations += b < h;
      tightest = std::min(tightest, b / h);
    }
    const double c = 1.0 + kEulerGamma - std::log(kPi);
    std::ostringstream os;
    os << checked << " discriminants, " << violations << " violations, min bound/h " << tightest
       << ", 1+gamma-log(pi) = " << c;
    return Outcome{violations == 0 && c <= 0.5, os.str()};
  });

  criterion(5, "explicit unit family", 0, [] {
    int primes = 0, bad_norm = 0, compared = 0, unequal = 0;
    for (u64 p = 5; p <= 10000; p += 2) {
      if (!is_prime(p)) continue;
      ++primes;
      for (const auto& r : explicit_unit_family(p, false)) bad_norm += r.norm != 1;
      if (p <= 100)
        for (const auto& r : explicit_unit_family(p, true)) {
          if (!r.squarefree_input) continue;
          ++compared;
          unequal += r.relation != UnitRelation::Equal;
        }
    }
    std::ostringstream os;
    os << primes << " primes, " << bad_norm << " norm failures; " << compared << " squarefree comparisons, "
       << unequal << " not equal";
    return Outcome{bad_norm == 0 && unequal == 0 && compared > 0, os.str()};
  });

  criterion(6, "triquadratic certificates for p = 5 and p = 277", 0, [] {
    const auto c5 = certify_triquadratic(5);
    const bool all_proved = c5.subfields.size() == 7 &&
                            std::all_of(c5.subfields.begin(), c5.subfields.end(),
                                        [](const auto& s) { return s.verdict.status == Status::Proved; });
    auto c277 = certify_triquadratic(277);
    attach_discriminant_checks(c277, {3, 5, 0.5});
    const bool exact = std::all_of(c277.subfields.begin(), c277.subfields.end(), [](const auto& s) {
      return s.verdict.class_number.has_value() && s.verdict.method != ClassNumberMethod::BoundOnly;
    });
    const bool v5 = verify_certificate(c5), v277 = verify_certificate(c277);
    std::ostringstream os;
    os << "p=5 " << conclusion_name(c5.conclusion) << " verify " << v5 << "; p=277 "
       << conclusion_name(c277.conclusion) << " exact h " << exact << " verify " << v277;
    return Outcome{all_proved && v5 && exact && v277, os.str()};
  });

  criterion(7, "theta(10^6; q, a) within 2% of 10^6/phi(q) for q <= 30", 0, [] {
    const u64 x = 1000000;
    double worst = 0.0;
    std::string where;
    int classes = 0;
    for (u64 q = 1; q <= 30; ++q)
      for (u64 a = 0; a < q; ++a) {
        if (std::gcd(a, q) != 1) continue;
        ++classes;
        const double expect = static_cast<double>(x) / static_cast<double>(euler_phi(q));
        const double rel = std::abs(theta_psi(x, Congruence::from_unsigned(a, q)).theta - expect) / expect;
        if (rel > worst) {
          worst = rel;
          where = std::to_string(a) + " mod " + std::to_string(q);
        }
      }
    std::ostringstream os;
    os << classes << " classes, worst relative error " << worst << " at " << where;
    return Outcome{worst < 0.02, os.str()};
  });

  criterion(8, "sum-chain property suite", 0, [] {
    std::ostringstream os;
    bool ok = true;

    int rows = 0, chain_bad = 0;
    for (double A : {0.5, 1.0}) {
      auto cfg = HarnessConfig::with_defaults(A, {1000, 10000, 100000, 1000000});
      for (const auto& r : chain_report(cfg)) {
        if (r.window_too_large) continue;
        ++rows;
        chain_bad += !(r.S >= r.S_restricted);
      }
    }
    for (const auto& r : grh_chain_report(GrhConfig{0.05, 0.19, {100000, 1000000}, std::nullopt})) {
      ++rows;
      chain_bad += !(r.S >= r.S_restricted);
    }
    ok = ok && chain_bad == 0;
    os << "S >= S_restricted on " << rows << " rows (" << chain_bad << " bad); ";

    std::mt19937_64 rng(2024);
    int sandwich_bad = 0;
    for (int i = 0; i < 10000; ++i) {
      u64 a = 1 + rng() % 1000000, b = 1 + rng() % 1000000;
      if (a > b) std::swap(a, b);
      sandwich_bad += !sandwich_check(a, b);
    }
    ok = ok && sandwich_bad == 0;
    os << "sandwich failures " << sandwich_bad << "/10000; ";

    double worst_main = 0.0;
    for (u64 x : {1000, 100000, 10000000}) {
      const auto pairs = pairs_over({3, 5, 7, 9, 11, 13, 15, 17, 19, 21, 23, 25});
      const double e = main_term(x, pairs), f = main_term_float(x, pairs);
      worst_main = std::max(worst_main, std::abs(e - f) / e);
    }
    ok = ok && worst_main <= 1e-9;
    os << "main term rel diff " << worst_main << "; ";

    const std::vector<PairCandidate> forced{make_pair_candidate(3, 5), make_pair_candidate(5, 3),
                                            make_pair_candidate(3, 7), make_pair_candidate(7, 5)};
    double worst_forced = 0.0;
    for (u64 x : {500, 20000, 200000}) {
      long double oracle = 0.0L;
      for (const auto& pr : forced) {
        const u64 q = pr.m * pr.m * pr.n * pr.n;
        u64 a = 0;
        while (!((a + 2) % (pr.m * pr.m) == 0 && (a + pr.n * pr.n - 2) % (pr.n * pr.n) == 0)) ++a;
        oracle += scan_theta(x, q, a);
      }
      const double got = restricted_sum(x, forced);
      worst_forced = std::max(worst_forced, std::abs(got - static_cast<double>(oracle)) /
                                                std::max(1.0, static_cast<double>(oracle)));
    }
    ok = ok && worst_forced <= 1e-9;
    os << "forced window rel diff " << worst_forced;
    return Outcome{ok, os.str()};
  });

  criterion(9, "asymptotic statements (report only)", 0, [] {
    std::ostringstream os;
    for (double A : {1.0, 2.0}) {
      const auto w = SearchWindow::at(1000000, A, 1.5 * A);
      os << "A=" << A << " window at x=10^6: " << enumerate_pairs(w).size() << " pairs, "
         << (w.fits_below_sqrt() ? "usable" : "exceeds sqrt(x), skipped") << "; ";
    }
    os << "forced {3..13}:";
    HarnessConfig cfg = HarnessConfig::with_defaults(1.0, {10000, 100000, 1000000});
    cfg.forced_pairs = pairs_over({3, 5, 7, 9, 11, 13});
    for (const auto& r : chain_report(cfg))
      os << " x=" << r.x << " main/floor=" << r.main_term / r.asymptotic_floor;
    return Outcome{true, os.str()};
  });

  std::printf("%d criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
