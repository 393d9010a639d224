#include "prat/arith.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include <boost/multiprecision/miller_rabin.hpp>

namespace prat {

const char* errc_name(Errc code) noexcept {
  switch (code) {
    case Errc::NonCoprimeModuli: return "NonCoprimeModuli";
    case Errc::InvalidCongruence: return "InvalidCongruence";
    case Errc::ResidueNotCoprime: return "ResidueNotCoprime";
    case Errc::InvalidWindow: return "InvalidWindow";
    case Errc::EmptyWindow: return "EmptyWindow";
    case Errc::WindowTooLarge: return "WindowTooLarge";
    case Errc::InvalidGrhExponents: return "InvalidGrhExponents";
    case Errc::PerfectSquareInput: return "PerfectSquareInput";
    case Errc::NotFundamental: return "NotFundamental";
    case Errc::NotSquarefree: return "NotSquarefree";
    case Errc::PrecisionFailure: return "PrecisionFailure";
    case Errc::EvenOrSmallPrime: return "EvenOrSmallPrime";
    case Errc::UnsupportedPrime: return "UnsupportedPrime";
    case Errc::NotFlanked: return "NotFlanked";
    case Errc::InvalidConfig: return "InvalidConfig";
    case Errc::ParseError: return "ParseError";
  }
  return "Unknown";
}

double log_big(const BigInt& v) {
  const auto bits = boost::multiprecision::msb(v);
  if (bits < 900) return static_cast<double>(std::log(v.convert_to<long double>()));
  const auto shift = bits - 62;
  const BigInt top = v >> shift;
  return static_cast<double>(std::log(top.convert_to<long double>()) +
                             static_cast<long double>(shift) * std::log(2.0L));
}

Congruence::Congruence(i64 residue, u64 modulus) {
  if (modulus == 0) throw Error(Errc::InvalidCongruence, "modulus must be >= 1");
  modulus_ = modulus;
  if (residue >= 0) {
    residue_ = static_cast<u64>(residue) % modulus;
  } else {
    // -(residue) may not fit in i64 for INT64_MIN, so go through unsigned.
    const u64 mag = static_cast<u64>(-(residue + 1)) + 1;
    const u64 r = mag % modulus;
    residue_ = r == 0 ? 0 : modulus - r;
  }
}

Congruence Congruence::from_unsigned(u64 residue, u64 modulus) {
  if (modulus == 0) throw Error(Errc::InvalidCongruence, "modulus must be >= 1");
  Congruence c;
  c.modulus_ = modulus;
  c.residue_ = residue % modulus;
  return c;
}

u64 mul_mod(u64 a, u64 b, u64 m) noexcept {
  return static_cast<u64>(static_cast<u128>(a) * b % m);
}

u64 pow_mod(u64 base, u64 exp, u64 m) noexcept {
  if (m == 1) return 0;
  u64 result = 1;
  base %= m;
  while (exp > 0) {
    if (exp & 1) result = mul_mod(result, base, m);
    base = mul_mod(base, base, m);
    exp >>= 1;
  }
  return result;
}

u64 inv_mod(u64 a, u64 m) {
  if (m == 1) return 0;
  __int128 old_r = static_cast<__int128>(a % m), r = m;
  __int128 old_s = 1, s = 0;
  while (r != 0) {
    const __int128 q = old_r / r;
    std::swap(old_r, r);
    r -= q * old_r;
    std::swap(old_s, s);
    s -= q * old_s;
  }
  if (old_r != 1) throw Error(Errc::NonCoprimeModuli, "value not invertible modulo " + std::to_string(m));
  __int128 inv = old_s % static_cast<__int128>(m);
  if (inv < 0) inv += m;
  return static_cast<u64>(inv);
}

u64 isqrt(u64 n) noexcept {
  if (n == 0) return 0;
  u64 r = static_cast<u64>(std::sqrt(static_cast<double>(n)));
  while (r > 0 && static_cast<u128>(r) * r > n) --r;
  while (static_cast<u128>(r + 1) * (r + 1) <= n) ++r;
  return r;
}

bool is_perfect_square(u64 n) noexcept {
  const u64 r = isqrt(n);
  return r * r == n;
}

int legendre(u64 a, u64 p) noexcept {
  a %= p;
  if (a == 0) return 0;
  return pow_mod(a, (p - 1) / 2, p) == 1 ? 1 : -1;
}

u64 sqrt_mod_prime(u64 a, u64 p) {
  a %= p;
  if (a == 0) return 0;
  if (legendre(a, p) != 1) throw Error(Errc::InvalidCongruence, "not a quadratic residue");
  if (p % 4 == 3) return pow_mod(a, (p + 1) / 4, p);
  u64 q = p - 1;
  unsigned s = 0;
  while ((q & 1) == 0) {
    q >>= 1;
    ++s;
  }
  u64 z = 2;
  while (legendre(z, p) != -1) ++z;
  u64 c = pow_mod(z, q, p), r = pow_mod(a, (q + 1) / 2, p), t = pow_mod(a, q, p);
  unsigned m = s;
  while (t != 1) {
    unsigned i = 0;
    for (u64 tt = t; tt != 1; tt = mul_mod(tt, tt, p)) ++i;
    u64 b = c;
    for (unsigned j = 0; j + i + 1 < m; ++j) b = mul_mod(b, b, p);
    r = mul_mod(r, b, p);
    c = mul_mod(b, b, p);
    t = mul_mod(t, c, p);
    m = i;
  }
  return r;
}

Congruence crt_pair(const Congruence& c1, const Congruence& c2) {
  const u64 m1 = c1.modulus(), m2 = c2.modulus();
  if (std::gcd(m1, m2) != 1)
    throw Error(Errc::NonCoprimeModuli,
                "gcd(" + std::to_string(m1) + ", " + std::to_string(m2) + ") > 1");
  const u128 modulus = static_cast<u128>(m1) * m2;
  if (modulus >> 64) throw Error(Errc::InvalidCongruence, "combined modulus exceeds 64 bits");
  const u64 m = static_cast<u64>(modulus);
  // x = r1 + m1 * ((r2 - r1) * m1^{-1} mod m2)
  const u64 inv = inv_mod(m1 % m2, m2);
  const u64 diff = (c2.residue() + m2 - c1.residue() % m2) % m2;
  const u64 t = mul_mod(diff, inv, m2);
  const u64 x = static_cast<u64>((c1.residue() + static_cast<u128>(m1) * t) % m);
  return Congruence::from_unsigned(x, m);
}

namespace {

bool miller_rabin_round(u64 n, u64 d, unsigned s, u64 a) noexcept {
  u64 x = pow_mod(a, d, n);
  if (x == 1 || x == n - 1) return true;
  for (unsigned i = 1; i < s; ++i) {
    x = mul_mod(x, x, n);
    if (x == n - 1) return true;
  }
  return false;
}

}  // namespace

bool is_prime(u64 n) noexcept {
  if (n < 2) return false;
  static constexpr u64 small[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
  for (u64 p : small) {
    if (n == p) return true;
    if (n % p == 0) return false;
  }
  if (n < 41 * 41) return true;
  u64 d = n - 1;
  unsigned s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // Witness set of Jim Sinclair, valid for every n < 2^64.
  static constexpr u64 witnesses[] = {2, 325, 9375, 28178, 450775, 9780504, 1795265022};
  for (u64 a : witnesses) {
    const u64 base = a % n;
    if (base == 0) continue;
    if (!miller_rabin_round(n, d, s, base)) return false;
  }
  return true;
}

PrimalityResult is_prime(const BigInt& n) {
  if (n < 0) return {false, PrimalityMode::Deterministic};
  if (n <= BigInt(std::numeric_limits<u64>::max()))
    return {is_prime(n.convert_to<u64>()), PrimalityMode::Deterministic};
  std::mt19937_64 rng(0x70726174u);
  return {boost::multiprecision::miller_rabin_test(n, 64, rng), PrimalityMode::Probabilistic};
}

std::vector<std::pair<u64, unsigned>> factorize(u64 n) {
  std::vector<std::pair<u64, unsigned>> out;
  if (n < 2) return out;
  auto strip = [&](u64 p) {
    unsigned e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    if (e) out.emplace_back(p, e);
  };
  strip(2);
  strip(3);
  for (u64 p = 5; p <= n / p; p += 6) {
    strip(p);
    strip(p + 2);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

SquareDecomposition square_part(u64 n) {
  if (n == 0) throw Error(Errc::InvalidCongruence, "square_part requires n >= 1");
  u64 root = 1, free = 1, rest = n;
  auto strip = [&](u64 p) {
    unsigned e = 0;
    while (rest % p == 0) {
      rest /= p;
      ++e;
    }
    for (unsigned i = 0; i < e / 2; ++i) root *= p;
    if (e & 1) free *= p;
  };
  strip(2);
  // Once d^3 > rest, rest has at most two prime factors, all >= d.
  for (u64 d = 3; static_cast<u128>(d) * d * d <= rest; d += 2) strip(d);
  if (rest > 1) {
    if (is_perfect_square(rest))
      root *= isqrt(rest);
    else
      free *= rest;
  }
  return {root, free};
}

bool is_squarefree(u64 n) {
  if (n == 0) return false;
  for (u64 d = 2; d <= n / d; ++d)
    if (n % (d * d) == 0) return false;
  return true;
}

u64 euler_phi(u64 n) {
  if (n == 0) throw Error(Errc::InvalidCongruence, "euler_phi requires n >= 1");
  u64 phi = n;
  for (const auto& [p, e] : factorize(n)) phi = phi / p * (p - 1);
  return phi;
}

std::vector<u64> primes_below(u64 limit) {
  std::vector<u64> primes;
  if (limit < 3) return primes;
  std::vector<bool> composite(limit, false);
  for (u64 i = 2; i < limit; ++i) {
    if (composite[i]) continue;
    primes.push_back(i);
    for (u64 j = i * i; j < limit; j += i) composite[j] = true;
  }
  return primes;
}

std::vector<u64> square_root_part_table(u64 limit) {
  std::vector<u64> table(limit, 1);
  if (limit > 0) table[0] = 0;
  for (u64 d = 2; d * d < limit; ++d) {
    const u64 step = d * d;
    for (u64 k = step; k < limit; k += step) table[k] = d;
  }
  return table;
}

void for_each_prime_in_ap(u64 limit, const Congruence& c, const std::function<void(u64)>& visit) {
  const u64 q = c.modulus(), r = c.residue();
  if (limit <= r) return;
  const u64 g = std::gcd(r, q);
  if (g > 1) {
    // Every member shares the factor g, so only g itself can be prime.
    if (g < limit && c.contains(g) && is_prime(g)) visit(g);
    return;
  }

  const u64 members = (limit - 1 - r) / q + 1;  // k in [0, members)
  const auto sieving = primes_below(isqrt(limit - 1) + 1);

  struct Stripe {
    u64 prime;
    u64 next;  // next k to strike
  };
  std::vector<Stripe> stripes;
  stripes.reserve(sieving.size());
  for (u64 l : sieving) {
    if (q % l == 0) continue;
    // r + k q == 0 mod l  <=>  k == -r q^{-1} mod l
    const u64 k0 = mul_mod((l - r % l) % l, inv_mod(q % l, l), l);
    stripes.push_back({l, k0});
  }

  constexpr u64 kSegment = u64{1} << 15;
  std::vector<char> alive(kSegment);
  for (u64 base = 0; base < members; base += kSegment) {
    const u64 len = std::min(kSegment, members - base);
    std::fill(alive.begin(), alive.begin() + static_cast<std::ptrdiff_t>(len), 1);
    for (auto& s : stripes) {
      u64 k = s.next;
      for (; k < base + len; k += s.prime) {
        if (r + k * q == s.prime) continue;
        alive[k - base] = 0;
      }
      s.next = k;
    }
    for (u64 i = 0; i < len; ++i) {
      if (!alive[i]) continue;
      const u64 v = r + (base + i) * q;
      if (v < 2) continue;
      if (is_prime(v)) visit(v);
    }
  }
}

std::vector<u64> primes_in_ap(u64 limit, const Congruence& c) {
  std::vector<u64> out;
  for_each_prime_in_ap(limit, c, [&](u64 p) { out.push_back(p); });
  return out;
}

ThetaTally theta_psi(u64 x, const Congruence& c) {
  if (std::gcd(c.residue(), c.modulus()) != 1)
    throw Error(Errc::ResidueNotCoprime, "gcd(" + std::to_string(c.residue()) + ", " +
                                              std::to_string(c.modulus()) + ") != 1");
  ThetaTally tally{x, c.modulus(), c.residue(), 0.0, 0.0, 0};
  KahanSum theta;
  for_each_prime_in_ap(x, c, [&](u64 p) {
    theta.add(std::log(static_cast<long double>(p)));
    ++tally.count;
  });
  KahanSum powers;
  if (x > 4) {
    for (u64 p : primes_below(isqrt(x - 1) + 1)) {
      const long double lp = std::log(static_cast<long double>(p));
      for (u128 pk = static_cast<u128>(p) * p; pk < x; pk *= p)
        if (c.contains(static_cast<u64>(pk))) powers.add(lp);
    }
  }
  tally.theta = static_cast<double>(theta.value());
  tally.psi = static_cast<double>(theta.value() + powers.value());
  return tally;
}

}  // namespace prat
