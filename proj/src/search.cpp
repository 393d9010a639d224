#include "prat/search.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <sstream>

namespace prat {

bool power_below(double log_base, double exponent, u64 m) noexcept {
  if (m == 0) return false;
  return exponent * log_base < std::log(static_cast<double>(m)) - kThresholdGuard;
}

bool power_above(double log_base, double exponent, u64 m) noexcept {
  if (m == 0) return true;
  return std::log(static_cast<double>(m)) < exponent * log_base - kThresholdGuard;
}

SearchWindow::SearchWindow(double log_x, u64 limit, double A, double B)
    : log_x_(log_x), limit_(limit), A_(A), B_(B) {
  if (!(A > 0.0) || !std::isfinite(A)) throw Error(Errc::InvalidWindow, "A must be positive");
  if (!(B > A) || !std::isfinite(B)) throw Error(Errc::InvalidWindow, "A < B violated");
  if (!(log_x > 1.0)) throw Error(Errc::InvalidWindow, "x must exceed e");
}

SearchWindow SearchWindow::at(u64 x, double A, double B) {
  return SearchWindow(std::log(static_cast<double>(x)), x, A, B);
}

SearchWindow SearchWindow::from_log(double log_x, double A, double B) {
  const double x = std::exp(log_x);
  return SearchWindow(log_x, static_cast<u64>(std::floor(x)) + 1, A, B);
}

bool SearchWindow::fits_below_sqrt() const noexcept {
  const double x = std::exp(log_x_);
  if (x <= 3.0) return false;
  return B_ * std::log(log_x_) < 0.5 * std::log(x - 2.0);
}

namespace {

std::vector<u64> odd_values_between(double log_lo, double log_hi) {
  // log_lo < log m < log_hi, each side with the guard band
  std::vector<u64> out;
  const double hi = std::exp(log_hi);
  const u64 top = static_cast<u64>(std::ceil(hi)) + 1;
  for (u64 m = 1; m <= top; m += 2) {
    const double lm = std::log(static_cast<double>(m));
    if (log_lo < lm - kThresholdGuard && lm < log_hi - kThresholdGuard) out.push_back(m);
  }
  return out;
}

}  // namespace

std::vector<u64> SearchWindow::odd_values() const {
  const double ll = std::log(log_x_);
  return odd_values_between(A_ * ll, B_ * ll);
}

PairCandidate make_pair_candidate(u64 m, u64 n) {
  if (m % 2 == 0 || n % 2 == 0 || m == 0 || n == 0)
    throw Error(Errc::InvalidWindow, "pair members must be odd and positive");
  const Congruence plus = Congruence(-2, m * m);
  const Congruence minus = Congruence(2, n * n);
  return {m, n, crt_pair(plus, minus)};
}

std::vector<PairCandidate> pairs_over(const std::vector<u64>& values) {
  std::vector<u64> sorted = values;
  std::sort(sorted.begin(), sorted.end());
  std::vector<PairCandidate> out;
  for (u64 m : sorted)
    for (u64 n : sorted)
      if (std::gcd(m, n) == 1) out.push_back(make_pair_candidate(m, n));
  return out;
}

std::vector<PairCandidate> enumerate_pairs(const SearchWindow& window) {
  return pairs_over(window.odd_values());
}

std::string window_diagnostic(const SearchWindow& window) {
  const auto values = window.odd_values();
  const auto pairs = pairs_over(values);
  std::ostringstream os;
  const double ll = window.log_x();
  os << "window (" << std::pow(ll, window.A()) << ", " << std::pow(ll, window.B())
     << "): " << values.size() << " odd values, " << pairs.size() << " coprime pairs";
  if (pairs.empty()) os << " [EmptyWindow]";
  if (!window.main_term_condition()) os << "; B < 2A does not hold";
  return os.str();
}

std::vector<SquareFlankedPrime> flanked_primes_for_pairs(const std::vector<PairCandidate>& pairs,
                                                         u64 limit, double A) {
  std::map<u64, SquareFlankedPrime> found;
  for (const auto& pair : pairs) {
    for_each_prime_in_ap(limit, pair.a, [&](u64 p) {
      if (p < 3) return;
      const u64 m = square_part(p + 2).square_root_part;
      const u64 n = square_part(p - 2).square_root_part;
      const double ll = std::log(std::log(static_cast<double>(p)));
      if (!power_below(ll, A, m) || !power_below(ll, A, n)) return;
      SquareFlankedPrime rec{p, m, n, A};
      auto [it, inserted] = found.emplace(p, rec);
      if (!inserted && std::pair(m, n) > std::pair(it->second.m_witness, it->second.n_witness))
        it->second = rec;
    });
  }
  std::vector<SquareFlankedPrime> out;
  out.reserve(found.size());
  for (auto& [p, rec] : found) out.push_back(rec);
  return out;
}

std::vector<SquareFlankedPrime> find_flanked_primes(const SearchWindow& window) {
  if (!window.fits_below_sqrt())
    throw Error(Errc::WindowTooLarge, "(log x)^B >= sqrt(x - 2)");
  return flanked_primes_for_pairs(enumerate_pairs(window), window.limit(), window.A());
}

std::vector<SquareFlankedPrime> direct_scan(u64 limit, double A) {
  if (limit < 5) throw Error(Errc::InvalidWindow, "direct_scan requires limit >= 5");
  const auto roots = square_root_part_table(limit + 3);
  std::vector<SquareFlankedPrime> out;
  for (u64 p : primes_below(limit + 1)) {
    if (p < 3) continue;
    const u64 m = roots[p + 2];
    const u64 n = roots[p - 2];
    const double ll = std::log(std::log(static_cast<double>(p)));
    if (power_below(ll, A, m) && power_below(ll, A, n)) out.push_back({p, m, n, A});
  }
  return out;
}

void check_grh_exponents(double epsilon, double alpha) {
  if (!(epsilon > 0.0)) throw Error(Errc::InvalidGrhExponents, "epsilon > 0 violated");
  if (!(epsilon < 0.125)) throw Error(Errc::InvalidGrhExponents, "epsilon < 1/8 violated");
  if (!(alpha > epsilon && alpha < 0.25 - epsilon))
    throw Error(Errc::InvalidGrhExponents, "epsilon < alpha < 1/4 - epsilon violated");
}

std::vector<PairCandidate> grh_window_pairs(u64 x, double epsilon, double alpha) {
  check_grh_exponents(epsilon, alpha);
  const double lx = std::log(static_cast<double>(x));
  return pairs_over(odd_values_between(epsilon * lx, alpha * lx));
}

bool verify_flanked(const SquareFlankedPrime& r) {
  if (r.p < 3 || !is_prime(r.p) || r.m_witness == 0 || r.n_witness == 0) return false;
  if ((r.p + 2) % (r.m_witness * r.m_witness) != 0) return false;
  if ((r.p - 2) % (r.n_witness * r.n_witness) != 0) return false;
  const double ll = std::log(std::log(static_cast<double>(r.p)));
  return power_below(ll, r.A, r.m_witness) && power_below(ll, r.A, r.n_witness);
}

}  // namespace prat
