#include "prat/analytic.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <ostream>

namespace prat {

double floor_constant() noexcept {
  constexpr long double zeta2 = std::numbers::pi_v<long double> * std::numbers::pi_v<long double> / 6.0L;
  return static_cast<double>((2.0L - zeta2) / 4.0L);
}

HarnessConfig HarnessConfig::with_defaults(double A, std::vector<u64> grid) {
  HarnessConfig cfg;
  cfg.A = A;
  cfg.B = 1.5 * A;
  cfg.C = 5.0 * A * 1.5 + 1.0;
  cfg.x_grid = std::move(grid);
  return cfg;
}

namespace {

void validate_grid(const std::vector<u64>& grid) {
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (grid[i] < 7) throw Error(Errc::InvalidConfig, "grid points must be >= 7");
    if (i > 0 && grid[i] <= grid[i - 1]) throw Error(Errc::InvalidConfig, "x_grid must be increasing");
  }
}

}  // namespace

void HarnessConfig::validate() const {
  if (!(A > 0.0)) throw Error(Errc::InvalidConfig, "A > 0 violated");
  if (!(A < B)) throw Error(Errc::InvalidConfig, "A < B violated");
  if (!(B < 2.0 * A)) throw Error(Errc::InvalidConfig, "B < 2A violated");
  if (!(C > 4.0 * B)) throw Error(Errc::InvalidConfig, "C > 4B violated");
  validate_grid(x_grid);
}

void GrhConfig::validate() const {
  check_grh_exponents(epsilon, alpha);
  validate_grid(x_grid);
}

namespace {

/// Number of divisors m of `root` with exceeds(m).
template <class Exceeds>
u64 count_large_divisors(u64 root, Exceeds&& exceeds) {
  if (root == 1) return exceeds(1) ? 1 : 0;
  std::vector<u64> divisors{1};
  for (const auto& [p, e] : factorize(root)) {
    const std::size_t base = divisors.size();
    u64 pk = 1;
    for (unsigned k = 1; k <= e; ++k) {
      pk *= p;
      for (std::size_t i = 0; i < base; ++i) divisors.push_back(divisors[i] * pk);
    }
  }
  u64 count = 0;
  for (u64 d : divisors)
    if (exceeds(d)) ++count;
  return count;
}

template <class Threshold>
double weighted_sum_with(u64 x, Threshold&& log_threshold) {
  if (x < 7) throw Error(Errc::InvalidConfig, "weighted sum needs x >= 7");
  const auto roots = square_root_part_table(x + 2);
  KahanSum sum;
  for (u64 p : primes_below(x)) {
    if (p < 3) continue;
    const double lt = log_threshold(p);
    auto exceeds = [lt](u64 m) { return lt < std::log(static_cast<double>(m)) - kThresholdGuard; };
    const u64 cm = count_large_divisors(roots[p + 2], exceeds);
    if (cm == 0) continue;
    const u64 cn = count_large_divisors(roots[p - 2], exceeds);
    if (cn == 0) continue;
    sum.add(std::log(static_cast<long double>(p)) * static_cast<long double>(cm * cn));
  }
  return static_cast<double>(sum.value());
}

}  // namespace

double weighted_sum(u64 x, double A) {
  return weighted_sum_with(x, [A](u64 p) { return A * std::log(std::log(static_cast<double>(p))); });
}

double weighted_sum_grh(u64 x, double epsilon) {
  return weighted_sum_with(x, [epsilon](u64 p) { return epsilon * std::log(static_cast<double>(p)); });
}

double restricted_sum(u64 x, const std::vector<PairCandidate>& pairs) {
  KahanSum sum;
  for (const auto& pair : pairs) sum.add(theta_psi(x, pair.a).theta);
  return static_cast<double>(sum.value());
}

double restricted_sum(u64 x, double A, double B) {
  const auto window = SearchWindow::at(x, A, B);
  if (!window.fits_below_sqrt()) throw Error(Errc::WindowTooLarge, "(log x)^B >= sqrt(x - 2)");
  return restricted_sum(x, enumerate_pairs(window));
}

BigRational main_term_exact(u64 x, const std::vector<PairCandidate>& pairs) {
  BigRational sum = 0;
  for (const auto& pair : pairs) sum += BigRational(BigInt(x), BigInt(euler_phi(pair.a.modulus())));
  return sum;
}

double main_term_float(u64 x, const std::vector<PairCandidate>& pairs) {
  KahanSum sum;
  for (const auto& pair : pairs)
    sum.add(static_cast<long double>(x) / static_cast<long double>(euler_phi(pair.a.modulus())));
  return static_cast<double>(sum.value());
}

double main_term(u64 x, const std::vector<PairCandidate>& pairs) {
  return main_term_exact(x, pairs).convert_to<double>();
}

double main_term(u64 x, double A, double B) { return main_term(x, enumerate_pairs(SearchWindow::at(x, A, B))); }

double asymptotic_floor(double x, double A) {
  if (!(x > 1.0)) throw Error(Errc::InvalidConfig, "asymptotic floor needs x > 1");
  return floor_constant() * x / std::pow(std::log(x), 2.0 * A);
}

double grh_floor(double x, double epsilon) { return floor_constant() * std::pow(x, 1.0 - 2.0 * epsilon); }

bool sandwich_check(u64 a, u64 b) {
  if (a < 1 || a > b) throw Error(Errc::InvalidConfig, "sandwich_check needs 1 <= a <= b");
  // antiderivative of 1/(2t+1)^2 is -1/(2(2t+1))
  auto F = [](long double t) { return -1.0L / (2.0L * (2.0L * t + 1.0L)); };
  auto term = [](u64 n) {
    const long double t = 2.0L * static_cast<long double>(n) + 1.0L;
    return 1.0L / (t * t);
  };
  KahanSum sum;
  for (u64 n = a; n <= b; ++n) sum.add(term(n));
  const long double s = sum.value();
  const auto la = static_cast<long double>(a), lb = static_cast<long double>(b);
  const long double lower = F(lb + 1.0L) - F(la);
  const long double upper = (F(lb) - F(la)) + term(a);
  return lower <= s && s <= upper;
}

namespace {

void fill_common(TermBreakdown& row, const std::vector<PairCandidate>& pairs) {
  row.pair_count = pairs.size();
  row.S_restricted = restricted_sum(row.x, pairs);
  row.main_term = main_term(row.x, pairs);
  row.log2_budget = static_cast<double>(row.pair_count) * std::log(2.0);
  row.measured_error = row.S_restricted - row.main_term;
  row.lower_bound_proxy = row.main_term - row.log2_budget;
  row.chain_holds = row.S + 1e-9 * std::max(1.0, row.S) >= row.S_restricted;
}

}  // namespace

std::vector<TermBreakdown> chain_report(const HarnessConfig& cfg) {
  cfg.validate();
  std::vector<TermBreakdown> rows;
  for (u64 x : cfg.x_grid) {
    TermBreakdown row;
    row.x = x;
    const double lx = std::log(static_cast<double>(x));
    row.asymptotic_floor = asymptotic_floor(static_cast<double>(x), cfg.A);
    std::vector<PairCandidate> pairs;
    if (cfg.forced_pairs) {
      pairs = *cfg.forced_pairs;
    } else {
      const auto window = SearchWindow::at(x, cfg.A, cfg.B);
      if (!window.fits_below_sqrt()) {
        row.window_too_large = true;
        rows.push_back(row);
        continue;
      }
      pairs = enumerate_pairs(window);
    }
    row.S = weighted_sum(x, cfg.A);
    fill_common(row, pairs);
    row.error_budget = static_cast<double>(row.pair_count) * static_cast<double>(x) / std::pow(lx, cfg.C);
    rows.push_back(row);
  }
  return rows;
}

std::vector<TermBreakdown> grh_chain_report(const GrhConfig& cfg) {
  cfg.validate();
  std::vector<TermBreakdown> rows;
  for (u64 x : cfg.x_grid) {
    TermBreakdown row;
    row.x = x;
    const double lx = std::log(static_cast<double>(x));
    row.asymptotic_floor = grh_floor(static_cast<double>(x), cfg.epsilon);
    std::vector<PairCandidate> pairs;
    if (cfg.forced_pairs) {
      pairs = *cfg.forced_pairs;
    } else {
      if (!(cfg.alpha * lx < 0.5 * std::log(static_cast<double>(x) - 2.0))) {
        row.window_too_large = true;
        rows.push_back(row);
        continue;
      }
      pairs = grh_window_pairs(x, cfg.epsilon, cfg.alpha);
    }
    row.S = weighted_sum_grh(x, cfg.epsilon);
    fill_common(row, pairs);
    row.error_budget = static_cast<double>(row.pair_count) * std::sqrt(static_cast<double>(x)) * lx * lx;
    rows.push_back(row);
  }
  return rows;
}

void write_csv(std::ostream& os, const std::vector<TermBreakdown>& rows) {
  os << kCsvHeader << "\n";
  char buf[512];
  for (const auto& r : rows) {
    if (r.window_too_large) continue;
    std::snprintf(buf, sizeof buf, "%llu,%.12g,%.12g,%.12g,%.12g,%.12g,%.12g,%llu\n",
                  static_cast<unsigned long long>(r.x), r.S, r.S_restricted, r.main_term, r.asymptotic_floor,
                  r.error_budget, r.log2_budget, static_cast<unsigned long long>(r.pair_count));
    os << buf;
  }
}

}  // namespace prat
