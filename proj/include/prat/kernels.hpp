#pragma once

// Character-sum inner loops behind the class number formulas.  Each kernel
// has a scalar reference and an AVX2 variant; the variant is picked once at
// runtime from CPUID, and PRAT_SIMD=scalar forces the reference path.

#include <cstdint>
#include <span>

namespace prat::kernels {

enum class Isa { Scalar, Avx2 };

const char* isa_name(Isa isa) noexcept;

/// ISA used by the dispatching entry points.
Isa active_isa() noexcept;
/// True when the CPU (and build) can run the AVX2 variants.
bool avx2_available() noexcept;
/// Override the dispatch choice; requesting Avx2 on an unsupported CPU falls back to Scalar.
void force_isa(Isa isa) noexcept;

/// sum_i chi[i] * i, indices taken from 0.  chi entries are in {-1, 0, 1};
/// the span length must stay below 2^31.
std::int64_t chi_weighted_sum(std::span<const std::int8_t> chi);

/// sum_i chi[i] * values[i] with compensated accumulation.  Spans have equal length.
double chi_dot(std::span<const std::int8_t> chi, std::span<const double> values);

namespace scalar {
std::int64_t chi_weighted_sum(std::span<const std::int8_t> chi);
double chi_dot(std::span<const std::int8_t> chi, std::span<const double> values);
}  // namespace scalar

namespace avx2 {
std::int64_t chi_weighted_sum(std::span<const std::int8_t> chi);
double chi_dot(std::span<const std::int8_t> chi, std::span<const double> values);
}  // namespace avx2

}  // namespace prat::kernels
