#pragma once

// Quadratic field arithmetic: discriminants, class numbers, fundamental
// units and the quadratic p-rationality criteria.

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "prat/arith.hpp"
#include "prat/bigint.hpp"

namespace prat {

/// Above this |D| class numbers are not computed exactly; imaginary fields fall
/// back to the Louboutin bound and real fields report inconclusive.
inline constexpr i64 kExactDiscriminantLimit = 10'000'000;

enum class Signature { Real, Imaginary };

const char* signature_name(Signature s) noexcept;

struct QuadFieldDescriptor {
  i64 d_input = 0;
  i64 kernel = 0;
  i64 discriminant = 0;
  Signature signature = Signature::Real;

  friend bool operator==(const QuadFieldDescriptor&, const QuadFieldDescriptor&) = default;
};

/// Field Q(sqrt(d)); d must not be a perfect square (0 and 1 included).
QuadFieldDescriptor descriptor(i64 d);

/// Signed squarefree kernel of d != 0.
i64 squarefree_kernel(i64 d);

bool is_fundamental_discriminant(i64 D);

/// Kronecker symbol (D / a).
int kronecker_chi(i64 D, i64 a);

/// Table chi_D(a) for a in [0, |D|).
std::vector<std::int8_t> character_table(i64 D);

struct ReducedForm {
  i64 a = 0, b = 0, c = 0;

  friend bool operator==(const ReducedForm&, const ReducedForm&) = default;
};

/// Reduced primitive forms of negative discriminant D, ordered by (b >= 0 first pass, a).
std::vector<ReducedForm> reduced_forms(i64 D);

/// h(D) for fundamental D < 0 by counting reduced forms.
i64 class_number_imaginary(i64 D);

/// h(D) for fundamental D < 0 from w/(2|D|) * |sum chi(a) a|.
i64 class_number_imaginary_oracle(i64 D);

/// Roots of unity count: 6, 4 or 2.
int units_in_imaginary_order(i64 D) noexcept;

inline constexpr double kEulerGamma = 0.57721566490153286060651209008240243;
inline constexpr double kPi = 3.14159265358979323846264338327950288;

/// (w sqrt(d) / 4 pi)(log d + 1 + gamma - log pi) with d = |D|.
double louboutin_bound(i64 D);

/// (w sqrt(d) / 2 pi)(log d + 3), from the elementary |L(1, chi)| <= log d + 3.
/// The formula above undershoots h for some D = 1 mod 8 (h(-23) = 3 > 2.72),
/// so only this one is used to prove p does not divide h.
double class_number_upper_bound(i64 D);

/// eps0 = (u + v sqrt(kernel)) / denom.
struct FundamentalUnit {
  i64 kernel = 0;
  BigInt u = 0;
  BigInt v = 0;
  int denom = 1;
  int norm = 1;
  /// Length of the continued fraction period that produced the unit.
  std::size_t period = 0;

  double log_value() const;

  friend bool operator==(const FundamentalUnit& a, const FundamentalUnit& b) {
    return a.kernel == b.kernel && a.u == b.u && a.v == b.v && a.denom == b.denom &&
           a.norm == b.norm;
  }
};

/// Exact u^2 - kernel v^2 == denom^2 * norm.
bool satisfies_norm_equation(const FundamentalUnit& eps);

/// Continued fraction of sqrt(k) or (1 + sqrt(k))/2 over one period.
FundamentalUnit fundamental_unit(i64 kernel);

/// h(D) for fundamental D > 0 from the finite log-sin character sum.
i64 class_number_real(i64 D, const FundamentalUnit& eps);

/// Unscaled value before rounding, exposed for the integrality margin.
double class_number_real_raw(i64 D, const FundamentalUnit& eps, bool extended_precision = false);

enum class UnitRelation { Equal, Power, Mismatch, NotCompared };

const char* unit_relation_name(UnitRelation r) noexcept;

/// One of (p+1)+sqrt(p(p+2)), (p-1)+sqrt(p(p-2)), (p+sqrt(p^2-4))/2.
struct ExplicitUnitRecord {
  i64 d_input = 0;
  i64 kernel = 0;
  /// d_input = square_root^2 * kernel.
  u64 square_root = 1;
  /// Claimed unit (u + v sqrt(d_input)) / denom.
  BigInt u = 0;
  BigInt v = 0;
  int denom = 1;
  /// (u^2 - d_input v^2) / denom^2, exact.
  BigInt norm = 0;
  bool squarefree_input = false;
  UnitRelation relation = UnitRelation::NotCompared;
  unsigned exponent = 0;
};

std::array<ExplicitUnitRecord, 3> explicit_unit_family(u64 p, bool compare_with_fundamental = true);

enum class Splitting { Split, Inert, Ramified };

const char* splitting_name(Splitting s) noexcept;

struct LocalPowerTest {
  Splitting splitting = Splitting::Split;
  /// One entry per place above p.
  std::vector<bool> is_pth_power;

  bool some_place_not_power() const;

  friend bool operator==(const LocalPowerTest&, const LocalPowerTest&) = default;
};

/// Whether eps is a p-th power in each completion above p.
LocalPowerTest unit_is_pth_power_locally(i64 kernel, const FundamentalUnit& eps, u64 p);

enum class Status { Proved, Refuted, Inconclusive };

const char* status_name(Status s) noexcept;

enum class ClassNumberMethod { Forms, Dirichlet, BoundOnly, None };

const char* method_name(ClassNumberMethod m) noexcept;
ClassNumberMethod method_from_name(const std::string& name);

struct PRationalityVerdict {
  QuadFieldDescriptor field;
  u64 p = 0;
  Status status = Status::Inconclusive;
  std::optional<i64> class_number;
  ClassNumberMethod method = ClassNumberMethod::None;
  /// Louboutin bound; imaginary fields only.
  std::optional<double> bound;
  std::optional<FundamentalUnit> unit;
  std::optional<LocalPowerTest> local;
};

/// Source of previously computed class numbers, keyed by (D, method).
class ClassNumberStore {
 public:
  virtual ~ClassNumberStore() = default;
  virtual std::optional<i64> lookup(i64 D, ClassNumberMethod method) = 0;
  virtual void record(i64 D, i64 h, ClassNumberMethod method) = 0;
};

/// Quadratic criteria for p >= 5.  Imaginary fields with p | h are inconclusive.
PRationalityVerdict p_rationality(const QuadFieldDescriptor& field, u64 p,
                                  ClassNumberStore* store = nullptr);

}  // namespace prat
