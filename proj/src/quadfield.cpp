#include "prat/quadfield.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "prat/kernels.hpp"

namespace prat {

namespace {

i64 mod_pos(i64 a, i64 m) noexcept {
  const i64 r = a % m;
  return r < 0 ? r + m : r;
}

u64 abs_u64(i64 v) noexcept { return v < 0 ? static_cast<u64>(-(v + 1)) + 1 : static_cast<u64>(v); }

bool squarefree_abs(i64 v) { return v != 0 && square_part(abs_u64(v)).square_root_part == 1; }

u64 big_mod(const BigInt& v, u64 m) {
  BigInt r = v % m;
  if (r < 0) r += m;
  return r.convert_to<u64>();
}

}  // namespace

const char* signature_name(Signature s) noexcept { return s == Signature::Real ? "real" : "imaginary"; }

const char* status_name(Status s) noexcept {
  switch (s) {
    case Status::Proved: return "proved";
    case Status::Refuted: return "refuted";
    case Status::Inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

const char* method_name(ClassNumberMethod m) noexcept {
  switch (m) {
    case ClassNumberMethod::Forms: return "forms";
    case ClassNumberMethod::Dirichlet: return "dirichlet";
    case ClassNumberMethod::BoundOnly: return "bound-only";
    case ClassNumberMethod::None: return "none";
  }
  return "none";
}

ClassNumberMethod method_from_name(const std::string& name) {
  if (name == "forms") return ClassNumberMethod::Forms;
  if (name == "dirichlet") return ClassNumberMethod::Dirichlet;
  if (name == "bound-only") return ClassNumberMethod::BoundOnly;
  if (name == "none") return ClassNumberMethod::None;
  throw Error(Errc::ParseError, "unknown class number method '" + name + "'");
}

const char* splitting_name(Splitting s) noexcept {
  switch (s) {
    case Splitting::Split: return "split";
    case Splitting::Inert: return "inert";
    case Splitting::Ramified: return "ramified";
  }
  return "split";
}

const char* unit_relation_name(UnitRelation r) noexcept {
  switch (r) {
    case UnitRelation::Equal: return "equal";
    case UnitRelation::Power: return "power";
    case UnitRelation::Mismatch: return "mismatch";
    case UnitRelation::NotCompared: return "not-compared";
  }
  return "not-compared";
}

i64 squarefree_kernel(i64 d) {
  if (d == 0) throw Error(Errc::PerfectSquareInput, "zero has no squarefree kernel");
  const auto free = static_cast<i64>(square_part(abs_u64(d)).squarefree_part);
  return d < 0 ? -free : free;
}

QuadFieldDescriptor descriptor(i64 d) {
  if (d == 0) throw Error(Errc::PerfectSquareInput, "d = 0");
  const i64 kernel = squarefree_kernel(d);
  if (kernel == 1) throw Error(Errc::PerfectSquareInput, std::to_string(d) + " is a perfect square");
  QuadFieldDescriptor f;
  f.d_input = d;
  f.kernel = kernel;
  f.discriminant = mod_pos(kernel, 4) == 1 ? kernel : 4 * kernel;
  f.signature = kernel < 0 ? Signature::Imaginary : Signature::Real;
  return f;
}

bool is_fundamental_discriminant(i64 D) {
  if (D == 0 || D == 1) return false;
  const i64 r = mod_pos(D, 4);
  if (r == 1) return squarefree_abs(D);
  if (r != 0) return false;
  const i64 k = D / 4;
  const i64 rk = mod_pos(k, 4);
  return (rk == 2 || rk == 3) && squarefree_abs(k);
}

int kronecker_chi(i64 D, i64 a) {
  if (a == 0) return (D == 1 || D == -1) ? 1 : 0;
  if (D % 2 == 0 && a % 2 == 0) return 0;
  int t = 1;
  u64 n = abs_u64(a);
  if (a < 0 && D < 0) t = -t;
  unsigned twos = 0;
  while (n % 2 == 0) {
    n /= 2;
    ++twos;
  }
  if (twos & 1) {
    const i64 r8 = mod_pos(D, 8);
    if (r8 == 3 || r8 == 5) t = -t;
  }
  // Jacobi symbol (D mod n / n), n odd positive.
  u64 b = static_cast<u64>(mod_pos(D, static_cast<i64>(n)));
  while (b != 0) {
    while (b % 2 == 0) {
      b /= 2;
      const u64 r = n % 8;
      if (r == 3 || r == 5) t = -t;
    }
    std::swap(b, n);
    if (b % 4 == 3 && n % 4 == 3) t = -t;
    b %= n;
  }
  return n == 1 ? t : 0;
}

std::vector<std::int8_t> character_table(i64 D) {
  const u64 size = abs_u64(D);
  std::vector<std::int8_t> table(size);
  for (u64 a = 0; a < size; ++a) table[a] = static_cast<std::int8_t>(kronecker_chi(D, static_cast<i64>(a)));
  return table;
}

namespace {

template <class Visit>
void visit_reduced_forms(i64 D, Visit&& visit) {
  const i64 absD = -D;
  for (i64 b = absD & 1; 3 * b * b <= absD; b += 2) {
    const i64 q = (b * b + absD) / 4;
    for (i64 a = std::max<i64>(b, 1); a * a <= q; ++a) {
      if (q % a != 0) continue;
      const i64 c = q / a;
      if (std::gcd(std::gcd(a, b), c) != 1) continue;
      visit(ReducedForm{a, b, c});
      if (b != 0 && a != b && a != c) visit(ReducedForm{a, -b, c});
    }
  }
}

void require_negative_fundamental(i64 D) {
  if (D >= 0 || !is_fundamental_discriminant(D))
    throw Error(Errc::NotFundamental, std::to_string(D) + " is not a negative fundamental discriminant");
}

}  // namespace

std::vector<ReducedForm> reduced_forms(i64 D) {
  if (D >= 0 || mod_pos(D, 4) > 1)
    throw Error(Errc::NotFundamental, "reduced forms need D < 0, D = 0 or 1 mod 4");
  std::vector<ReducedForm> forms;
  visit_reduced_forms(D, [&](const ReducedForm& f) { forms.push_back(f); });
  return forms;
}

i64 class_number_imaginary(i64 D) {
  require_negative_fundamental(D);
  i64 h = 0;
  visit_reduced_forms(D, [&](const ReducedForm&) { ++h; });
  return h;
}

int units_in_imaginary_order(i64 D) noexcept {
  if (D == -3) return 6;
  if (D == -4) return 4;
  return 2;
}

i64 class_number_imaginary_oracle(i64 D) {
  require_negative_fundamental(D);
  const auto table = character_table(D);
  const i64 sum = kernels::chi_weighted_sum(table);
  const i64 num = units_in_imaginary_order(D) * (sum < 0 ? -sum : sum);
  const i64 den = 2 * (-D);
  if (num % den != 0)
    throw Error(Errc::PrecisionFailure, "character sum not divisible for D = " + std::to_string(D));
  return num / den;
}

double louboutin_bound(i64 D) {
  if (D >= 0) throw Error(Errc::NotFundamental, "louboutin_bound needs D < 0");
  const double d = static_cast<double>(-D);
  const double w = -D == 3 ? 6.0 : (-D == 4 ? 4.0 : 2.0);
  return w * std::sqrt(d) / (4.0 * kPi) * (std::log(d) + 1.0 + kEulerGamma - std::log(kPi));
}

double class_number_upper_bound(i64 D) {
  if (D >= 0) throw Error(Errc::NotFundamental, "class_number_upper_bound needs D < 0");
  const double d = static_cast<double>(-D);
  const double w = -D == 3 ? 6.0 : (-D == 4 ? 4.0 : 2.0);
  // |L(1, chi)| <= 1 + log d from n <= d, plus < 2 from the tail by partial summation
  return w * std::sqrt(d) / (2.0 * kPi) * (std::log(d) + 3.0);
}

double FundamentalUnit::log_value() const {
  if (boost::multiprecision::msb(u) < 60) {
    const long double val =
        (u.convert_to<long double>() + v.convert_to<long double>() * std::sqrt(static_cast<long double>(kernel))) /
        denom;
    return static_cast<double>(std::log(val));
  }
  // u + v sqrt(k) = 2u - (u - v sqrt(k)), the correction is below 2^-59 relative
  return log_big(u) + std::log(2.0) - std::log(static_cast<double>(denom));
}

bool satisfies_norm_equation(const FundamentalUnit& eps) {
  const BigInt lhs = eps.u * eps.u - BigInt(eps.kernel) * eps.v * eps.v;
  return lhs == BigInt(eps.denom * eps.denom * eps.norm);
}

FundamentalUnit fundamental_unit(i64 kernel) {
  if (kernel <= 1 || !squarefree_abs(kernel))
    throw Error(Errc::NotSquarefree, std::to_string(kernel) + " is not a squarefree integer > 1");
  const bool half = mod_pos(kernel, 4) == 1;
  const i64 s = static_cast<i64>(isqrt(static_cast<u64>(kernel)));
  i64 P = half ? 1 : 0;
  i64 Q = half ? 2 : 1;
  BigInt p2 = 0, p1 = 1, q2 = 1, q1 = 0;
  i64 firstP = 0, firstQ = 0;
  std::size_t period = 0;
  for (std::size_t i = 0;; ++i) {
    const i64 a = (P + s) / Q;
    BigInt pn = p1 * a + p2;
    BigInt qn = q1 * a + q2;
    P = a * Q - P;
    Q = (kernel - P * P) / Q;
    if (i == 0) {
      firstP = P;
      firstQ = Q;
    } else if (P == firstP && Q == firstQ) {
      period = i;
      break;
    }
    p2 = std::move(p1);
    p1 = std::move(pn);
    q2 = std::move(q1);
    q1 = std::move(qn);
  }
  // eps = p - q * conj(omega) for the convergent closing the period
  FundamentalUnit eps;
  eps.kernel = kernel;
  eps.period = period;
  if (half) {
    eps.u = 2 * p1 - q1;
    eps.v = q1;
    eps.denom = 2;
    if (eps.u % 2 == 0 && eps.v % 2 == 0) {
      eps.u /= 2;
      eps.v /= 2;
      eps.denom = 1;
    }
  } else {
    eps.u = p1;
    eps.v = q1;
  }
  const BigInt n = eps.u * eps.u - BigInt(kernel) * eps.v * eps.v;
  const BigInt d2 = eps.denom * eps.denom;
  if (n == d2)
    eps.norm = 1;
  else if (n == -d2)
    eps.norm = -1;
  else
    throw Error(Errc::PrecisionFailure, "continued fraction did not close on a unit for " + std::to_string(kernel));
  return eps;
}

double class_number_real_raw(i64 D, const FundamentalUnit& eps, bool extended_precision) {
  const auto table = character_table(D);
  const auto size = static_cast<std::size_t>(D);
  double sum = 0.0;
  if (!extended_precision) {
    std::vector<double> logs(size, 0.0);
    for (std::size_t a = 1; a < size; ++a) {
      if (table[a] == 0) continue;
      const std::size_t near = std::min(a, size - a);
      logs[a] = std::log(std::sin(kPi * static_cast<double>(near) / static_cast<double>(D)));
    }
    sum = kernels::chi_dot(table, logs);
  } else {
    KahanSum acc;
    const long double pi = 3.141592653589793238462643383279502884L;
    for (std::size_t a = 1; a < size; ++a) {
      if (table[a] == 0) continue;
      const std::size_t near = std::min(a, size - a);
      acc.add(table[a] * std::log(std::sin(pi * static_cast<long double>(near) / static_cast<long double>(D))));
    }
    sum = static_cast<double>(acc.value());
  }
  return -sum / (2.0 * eps.log_value());
}

i64 class_number_real(i64 D, const FundamentalUnit& eps) {
  if (D <= 0 || !is_fundamental_discriminant(D))
    throw Error(Errc::NotFundamental, std::to_string(D) + " is not a positive fundamental discriminant");
  if (squarefree_kernel(D) != eps.kernel)
    throw Error(Errc::NotFundamental, "unit kernel does not match discriminant " + std::to_string(D));
  for (bool extended : {false, true}) {
    const double raw = class_number_real_raw(D, eps, extended);
    const double rounded = std::round(raw);
    if (std::abs(raw - rounded) < 1e-3 && rounded >= 1.0) return static_cast<i64>(rounded);
  }
  throw Error(Errc::PrecisionFailure, "log-sin sum not near an integer for D = " + std::to_string(D));
}

namespace {

// (U + V sqrt(k)) / 2 with U, V integers.
struct HalfForm {
  BigInt U, V;
};

HalfForm to_half(const BigInt& u, const BigInt& v, int denom) {
  return {u * (2 / denom), v * (2 / denom)};
}

HalfForm multiply(const HalfForm& a, const HalfForm& b, i64 k) {
  return {(a.U * b.U + BigInt(k) * a.V * b.V) / 2, (a.U * b.V + a.V * b.U) / 2};
}

}  // namespace

std::array<ExplicitUnitRecord, 3> explicit_unit_family(u64 p, bool compare_with_fundamental) {
  if (p < 5 || !is_prime(p)) throw Error(Errc::UnsupportedPrime, "explicit unit family needs a prime p >= 5");
  const i64 q = static_cast<i64>(p);
  std::array<ExplicitUnitRecord, 3> out;
  const i64 inputs[3] = {q * (q + 2), q * (q - 2), q * q - 4};
  const i64 us[3] = {q + 1, q - 1, q};
  const int denoms[3] = {1, 1, 2};
  for (int i = 0; i < 3; ++i) {
    auto& r = out[i];
    r.d_input = inputs[i];
    const auto parts = square_part(static_cast<u64>(inputs[i]));
    r.kernel = static_cast<i64>(parts.squarefree_part);
    r.square_root = parts.square_root_part;
    r.squarefree_input = parts.square_root_part == 1;
    r.u = us[i];
    r.v = 1;
    r.denom = denoms[i];
    const BigInt raw = r.u * r.u - BigInt(r.d_input) * r.v * r.v;
    r.norm = raw / (r.denom * r.denom);
    if (raw % (r.denom * r.denom) != 0) r.norm = 0;
    if (!compare_with_fundamental) continue;

    const FundamentalUnit eps = fundamental_unit(r.kernel);
    const HalfForm claimed = to_half(r.u, r.v * r.square_root, r.denom);
    const HalfForm base = to_half(eps.u, eps.v, eps.denom);
    HalfForm cur = base;
    unsigned j = 1;
    while (cur.U < claimed.U && j < 4096) {
      cur = multiply(cur, base, r.kernel);
      ++j;
    }
    if (cur.U == claimed.U && cur.V == claimed.V) {
      r.relation = j == 1 ? UnitRelation::Equal : UnitRelation::Power;
      r.exponent = j;
    } else {
      r.relation = UnitRelation::Mismatch;
    }
  }
  return out;
}

bool LocalPowerTest::some_place_not_power() const {
  return std::any_of(is_pth_power.begin(), is_pth_power.end(), [](bool b) { return !b; });
}

namespace {

struct RingElem {
  u64 a, b;  // a + b t, t^2 = k
};

RingElem ring_mul(RingElem x, RingElem y, u64 k, u64 M) {
  const u64 a = (mul_mod(x.a, y.a, M) + mul_mod(mul_mod(x.b, y.b, M), k, M)) % M;
  const u64 b = (mul_mod(x.a, y.b, M) + mul_mod(x.b, y.a, M)) % M;
  return {a, b};
}

RingElem ring_pow(RingElem x, u64 e, u64 k, u64 M) {
  RingElem r{1 % M, 0};
  while (e > 0) {
    if (e & 1) r = ring_mul(r, x, k, M);
    x = ring_mul(x, x, k, M);
    e >>= 1;
  }
  return r;
}

}  // namespace

LocalPowerTest unit_is_pth_power_locally(i64 kernel, const FundamentalUnit& eps, u64 p) {
  if (p < 5 || p % 2 == 0) throw Error(Errc::EvenOrSmallPrime, "local test needs an odd prime p >= 5");
  if (!is_prime(p) || p > (u64{1} << 31)) throw Error(Errc::UnsupportedPrime, std::to_string(p));
  const u64 M = p * p;
  const u64 k = static_cast<u64>(mod_pos(kernel, static_cast<i64>(M)));
  const u64 inv_denom = inv_mod(static_cast<u64>(eps.denom), M);
  const RingElem z{mul_mod(big_mod(eps.u, M), inv_denom, M), mul_mod(big_mod(eps.v, M), inv_denom, M)};

  const i64 D = mod_pos(kernel, 4) == 1 ? kernel : 4 * kernel;
  LocalPowerTest out;
  switch (kronecker_chi(D, static_cast<i64>(p))) {
    case 1: {
      out.splitting = Splitting::Split;
      const u64 r = sqrt_mod_prime(k % p, p);
      // Hensel: r - (r^2 - k) / (2r) modulo p^2
      const u64 f = (mul_mod(r, r, M) + M - k) % M;
      const u64 lifted = (r + M - mul_mod(f, inv_mod((2 * r) % M, M), M)) % M;
      for (const u64 root : {lifted, (M - lifted) % M}) {
        const u64 image = (z.a + mul_mod(z.b, root, M)) % M;
        out.is_pth_power.push_back(pow_mod(image, p - 1, M) == 1);
      }
      break;
    }
    case -1: {
      out.splitting = Splitting::Inert;
      const RingElem w = ring_pow(z, M - 1, k, M);
      out.is_pth_power.push_back(w.a == 1 && w.b == 0);
      break;
    }
    default: {
      out.splitting = Splitting::Ramified;
      // With t a uniformiser, eps^(p-1) is a p-th power iff it lies in 1 + t^3 O.
      const RingElem w = ring_pow(z, p - 1, k, M);
      out.is_pth_power.push_back(w.a == 1 && w.b % p == 0);
      break;
    }
  }
  return out;
}

PRationalityVerdict p_rationality(const QuadFieldDescriptor& field, u64 p, ClassNumberStore* store) {
  if (p < 5 || !is_prime(p)) throw Error(Errc::UnsupportedPrime, "p must be a prime >= 5, got " + std::to_string(p));
  PRationalityVerdict v;
  v.field = field;
  v.p = p;
  const i64 D = field.discriminant;

  auto cached = [&](ClassNumberMethod method, auto compute) -> i64 {
    if (store) {
      if (auto h = store->lookup(D, method)) return *h;
    }
    const i64 h = compute();
    if (store) store->record(D, h, method);
    return h;
  };

  if (field.signature == Signature::Imaginary) {
    v.bound = louboutin_bound(D);
    if (-D <= kExactDiscriminantLimit) {
      v.method = ClassNumberMethod::Forms;
      v.class_number = cached(ClassNumberMethod::Forms, [&] { return class_number_imaginary(D); });
      v.status = *v.class_number % static_cast<i64>(p) != 0 ? Status::Proved : Status::Inconclusive;
    } else {
      v.method = ClassNumberMethod::BoundOnly;
      v.status = class_number_upper_bound(D) < static_cast<double>(p) ? Status::Proved : Status::Inconclusive;
    }
    return v;
  }

  if (D > kExactDiscriminantLimit) {
    v.status = Status::Inconclusive;
    return v;
  }
  v.unit = fundamental_unit(field.kernel);
  v.method = ClassNumberMethod::Dirichlet;
  v.class_number = cached(ClassNumberMethod::Dirichlet, [&] { return class_number_real(D, *v.unit); });
  if (*v.class_number % static_cast<i64>(p) == 0) {
    v.status = Status::Refuted;
    return v;
  }
  v.local = unit_is_pth_power_locally(field.kernel, *v.unit, p);
  v.status = v.local->some_place_not_power() ? Status::Proved : Status::Refuted;
  return v;
}

}  // namespace prat
