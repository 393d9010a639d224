#include "prat/kernels.hpp"

#include "prat/arith.hpp"

namespace prat::kernels::scalar {

std::int64_t chi_weighted_sum(std::span<const std::int8_t> chi) {
  std::int64_t sum = 0;
  for (std::size_t i = 0; i < chi.size(); ++i) sum += chi[i] * static_cast<std::int64_t>(i);
  return sum;
}

double chi_dot(std::span<const std::int8_t> chi, std::span<const double> values) {
  KahanSum sum;
  for (std::size_t i = 0; i < chi.size(); ++i)
    if (chi[i] != 0) sum.add(chi[i] * static_cast<long double>(values[i]));
  return static_cast<double>(sum.value());
}

}  // namespace prat::kernels::scalar
