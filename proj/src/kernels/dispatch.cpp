#include <atomic>
#include <cstdlib>
#include <string_view>

#include "prat/kernels.hpp"

namespace prat::kernels {

namespace {

Isa detect() noexcept {
  if (const char* env = std::getenv("PRAT_SIMD"); env && std::string_view(env) == "scalar")
    return Isa::Scalar;
  return avx2_available() ? Isa::Avx2 : Isa::Scalar;
}

std::atomic<Isa>& current() noexcept {
  static std::atomic<Isa> isa{detect()};
  return isa;
}

}  // namespace

const char* isa_name(Isa isa) noexcept { return isa == Isa::Avx2 ? "avx2" : "scalar"; }

Isa active_isa() noexcept { return current().load(std::memory_order_relaxed); }

void force_isa(Isa isa) noexcept {
  if (isa == Isa::Avx2 && !avx2_available()) isa = Isa::Scalar;
  current().store(isa, std::memory_order_relaxed);
}

std::int64_t chi_weighted_sum(std::span<const std::int8_t> chi) {
  return active_isa() == Isa::Avx2 ? avx2::chi_weighted_sum(chi) : scalar::chi_weighted_sum(chi);
}

double chi_dot(std::span<const std::int8_t> chi, std::span<const double> values) {
  return active_isa() == Isa::Avx2 ? avx2::chi_dot(chi, values) : scalar::chi_dot(chi, values);
}

}  // namespace prat::kernels
