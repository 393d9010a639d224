#pragma once

// Square-flanked primes: p prime with m^2 | p+2, n^2 | p-2 and both
// witnesses above (log p)^A.  Two routes: a CRT walk over odd coprime
// (m, n) windows and a brute-force scan over all primes.

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "prat/arith.hpp"

namespace prat {

/// Guard band for threshold comparisons done in log space; ties are excluded.
inline constexpr double kThresholdGuard = 1e-9;

/// True iff base^exponent < m strictly, evaluated as exponent*log(base) < log(m).
bool power_below(double log_base, double exponent, u64 m) noexcept;
/// True iff m < base^exponent strictly.
bool power_above(double log_base, double exponent, u64 m) noexcept;

/// Window (log x)^A < m, n < (log x)^B over primes p < x.
class SearchWindow {
 public:
  /// Window at integer bound x (primes p < x).
  static SearchWindow at(u64 x, double A, double B);
  /// Window at a real bound x = e^log_x; the prime bound becomes p <= floor(x).
  static SearchWindow from_log(double log_x, double A, double B);

  double A() const noexcept { return A_; }
  double B() const noexcept { return B_; }
  double log_x() const noexcept { return log_x_; }
  /// Exclusive integer bound on p.
  u64 limit() const noexcept { return limit_; }

  /// B < 2A, the main-term condition of the analytic argument.
  bool main_term_condition() const noexcept { return B_ < 2 * A_; }
  /// (log x)^B < sqrt(x - 2).
  bool fits_below_sqrt() const noexcept;

  /// Candidate witness values: odd integers strictly inside the window.
  std::vector<u64> odd_values() const;

 private:
  SearchWindow(double log_x, u64 limit, double A, double B);
  double log_x_;
  u64 limit_;
  double A_, B_;
};

struct PairCandidate {
  u64 m = 0;
  u64 n = 0;
  /// a = -2 mod m^2, +2 mod n^2, modulus m^2 n^2.
  Congruence a;
};

struct SquareFlankedPrime {
  u64 p = 0;
  u64 m_witness = 0;
  u64 n_witness = 0;
  double A = 0.0;

  friend bool operator==(const SquareFlankedPrime&, const SquareFlankedPrime&) = default;
};

/// CRT residue class for an odd coprime pair.
PairCandidate make_pair_candidate(u64 m, u64 n);

/// Odd coprime pairs over a value set, lexicographic in (m, n).
std::vector<PairCandidate> pairs_over(const std::vector<u64>& values);

/// Pairs of the window; an empty result is legitimate (see window_diagnostic).
std::vector<PairCandidate> enumerate_pairs(const SearchWindow& window);

/// Human-readable note about how many pairs a window holds.
std::string window_diagnostic(const SearchWindow& window);

/// Every prime p < x in some pair's progression, with full square-part witnesses.
/// Sorted by p, one entry per p.
std::vector<SquareFlankedPrime> find_flanked_primes(const SearchWindow& window);

/// Same walk over an explicit pair list (primes p < limit).
std::vector<SquareFlankedPrime> flanked_primes_for_pairs(const std::vector<PairCandidate>& pairs,
                                                         u64 limit, double A);

/// Brute force: every prime 3 <= p <= limit whose p+2 and p-2 square parts both exceed (log p)^A.
std::vector<SquareFlankedPrime> direct_scan(u64 limit, double A);

/// Pairs with x^eps < m, n < x^alpha (GRH variant).
std::vector<PairCandidate> grh_window_pairs(u64 x, double epsilon, double alpha);

/// Validates 0 < eps < 1/8 and eps < alpha < 1/4 - eps.
void check_grh_exponents(double epsilon, double alpha);

/// Independent recomputation of every defining condition.
bool verify_flanked(const SquareFlankedPrime& r);

}  // namespace prat
