#pragma once

// Finite-x evaluation of the lower-bound chain for the weighted count of
// square-flanked primes: the full sum S, the restricted CRT sum, the main
// term sum x/phi(m^2 n^2), the error budgets and the asymptotic floor.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "prat/arith.hpp"
#include "prat/search.hpp"

namespace prat {

/// (2 - zeta(2)) / 4 with zeta(2) = pi^2 / 6.
double floor_constant() noexcept;

struct HarnessConfig {
  double A = 1.0;
  double B = 1.5;
  double C = 8.5;
  std::vector<u64> x_grid;
  /// Testing hook: replaces the (log x)^A..(log x)^B window by fixed pairs.
  std::optional<std::vector<PairCandidate>> forced_pairs;

  /// B = 1.5 A, C = 7.5 A + 1.
  static HarnessConfig with_defaults(double A, std::vector<u64> grid);
  /// Throws InvalidConfig naming the violated inequality.
  void validate() const;
};

struct GrhConfig {
  double epsilon = 0.05;
  double alpha = 0.19;
  std::vector<u64> x_grid;
  std::optional<std::vector<PairCandidate>> forced_pairs;

  void validate() const;
};

struct TermBreakdown {
  u64 x = 0;
  double S = 0.0;
  double S_restricted = 0.0;
  double main_term = 0.0;
  double asymptotic_floor = 0.0;
  double error_budget = 0.0;
  double log2_budget = 0.0;
  u64 pair_count = 0;
  /// S_restricted - main_term, the measured aggregate deviation.
  double measured_error = 0.0;
  /// main_term - log2_budget.
  double lower_bound_proxy = 0.0;
  bool chain_holds = true;
  bool window_too_large = false;
};

/// Sum over primes 3 <= p < x of log p * #{m : m^2 | p+2, m > (log p)^A} * #{n : n^2 | p-2, n > (log p)^A}.
double weighted_sum(u64 x, double A);

/// Same sum with thresholds p^epsilon in place of (log p)^A.
double weighted_sum_grh(u64 x, double epsilon);

/// Sum over the window pairs of theta(x; m^2 n^2, a_{m,n}).
double restricted_sum(u64 x, double A, double B);
double restricted_sum(u64 x, const std::vector<PairCandidate>& pairs);

/// Sum of x / phi(m^2 n^2) over the pairs, accumulated exactly.
BigRational main_term_exact(u64 x, const std::vector<PairCandidate>& pairs);
/// Floating accumulation of the same sum.
double main_term_float(u64 x, const std::vector<PairCandidate>& pairs);
double main_term(u64 x, const std::vector<PairCandidate>& pairs);
double main_term(u64 x, double A, double B);

/// ((2 - zeta(2))/4) x / (log x)^(2A) for real x > 1.
double asymptotic_floor(double x, double A);
/// ((2 - zeta(2))/4) x^(1 - 2 eps).
double grh_floor(double x, double epsilon);

/// Integral comparison around sum_{n=a}^{b} 1/(2n+1)^2.
bool sandwich_check(u64 a, u64 b);

std::vector<TermBreakdown> chain_report(const HarnessConfig& cfg);
std::vector<TermBreakdown> grh_chain_report(const GrhConfig& cfg);

inline constexpr const char* kCsvHeader =
    "x,S,S_restricted,main_term,floor,error_budget,log2_budget,pair_count";

/// Header plus one row per in-range grid point; rows hit by WindowTooLarge are skipped.
void write_csv(std::ostream& os, const std::vector<TermBreakdown>& rows);

}  // namespace prat
