#pragma once

// Exact integer primitives shared by the search, field and harness code.
// All inputs are 64-bit; products go through unsigned __int128.

#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include "prat/bigint.hpp"
#include "prat/error.hpp"

namespace prat {

using u64 = std::uint64_t;
using i64 = std::int64_t;
using u128 = unsigned __int128;

/// A residue class `residue mod modulus`, kept in canonical form 0 <= residue < modulus.
class Congruence {
 public:
  /// Accepts any signed residue and reduces it; the modulus must be >= 1.
  Congruence(i64 residue, u64 modulus);

  static Congruence from_unsigned(u64 residue, u64 modulus);

  u64 residue() const noexcept { return residue_; }
  u64 modulus() const noexcept { return modulus_; }

  bool contains(u64 n) const noexcept { return n % modulus_ == residue_; }

  friend bool operator==(const Congruence&, const Congruence&) = default;

 private:
  Congruence() = default;
  u64 residue_ = 0;
  u64 modulus_ = 1;
};

/// n = square_root_part^2 * squarefree_part with squarefree_part squarefree.
struct SquareDecomposition {
  u64 square_root_part = 1;
  u64 squarefree_part = 1;

  friend bool operator==(const SquareDecomposition&, const SquareDecomposition&) = default;
};

/// Chebyshev sums restricted to a progression.
struct ThetaTally {
  u64 x = 0;
  u64 modulus = 1;
  u64 residue = 0;
  double theta = 0.0;
  double psi = 0.0;
  u64 count = 0;
};

/// Compensated (Kahan-Babuska) accumulator in extended precision.
class KahanSum {
 public:
  void add(long double value) noexcept {
    const long double t = sum_ + value;
    if (fabsl_(sum_) >= fabsl_(value))
      comp_ += (sum_ - t) + value;
    else
      comp_ += (value - t) + sum_;
    sum_ = t;
  }
  long double value() const noexcept { return sum_ + comp_; }

 private:
  static long double fabsl_(long double v) noexcept { return v < 0 ? -v : v; }
  long double sum_ = 0.0L;
  long double comp_ = 0.0L;
};

u64 mul_mod(u64 a, u64 b, u64 m) noexcept;
u64 pow_mod(u64 base, u64 exp, u64 m) noexcept;
/// Inverse of a modulo m; requires gcd(a, m) == 1.
u64 inv_mod(u64 a, u64 m);
/// Floor of the square root.
u64 isqrt(u64 n) noexcept;
bool is_perfect_square(u64 n) noexcept;
/// Legendre symbol (a / p) for an odd prime p.
int legendre(u64 a, u64 p) noexcept;
/// Square root of a quadratic residue a modulo an odd prime p (Tonelli-Shanks).
u64 sqrt_mod_prime(u64 a, u64 p);

/// Combines two congruences with coprime moduli.
Congruence crt_pair(const Congruence& c1, const Congruence& c2);

/// Deterministic Miller-Rabin over all 64-bit inputs.
bool is_prime(u64 n) noexcept;

enum class PrimalityMode { Deterministic, Probabilistic };

struct PrimalityResult {
  bool prime = false;
  PrimalityMode mode = PrimalityMode::Deterministic;
};

/// Arbitrary-size variant: exact below 2^64, otherwise 64 random Miller-Rabin
/// rounds (error < 2^-128) with the mode reported.
PrimalityResult is_prime(const BigInt& n);

/// Prime factorisation by trial division, ascending primes.
std::vector<std::pair<u64, unsigned>> factorize(u64 n);

SquareDecomposition square_part(u64 n);

/// Trial-division test used as an independent check of square_part.
bool is_squarefree(u64 n);

u64 euler_phi(u64 n);

/// Primes in [0, limit), plain sieve of Eratosthenes.
std::vector<u64> primes_below(u64 limit);

/// Largest m with m^2 | n for every n in [0, limit); entry 0 is 0.
std::vector<u64> square_root_part_table(u64 limit);

/// Calls `visit` for each prime p < limit with p in `c`, increasing order.
void for_each_prime_in_ap(u64 limit, const Congruence& c, const std::function<void(u64)>& visit);

std::vector<u64> primes_in_ap(u64 limit, const Congruence& c);

/// theta and psi of (x; q, a): sums over p < x and n < x, natural logs.
ThetaTally theta_psi(u64 x, const Congruence& c);

}  // namespace prat
