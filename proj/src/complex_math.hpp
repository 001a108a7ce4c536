#pragma once

#include <cmath>
#include <complex>

namespace qzeros::detail {

/// e^w - 1 without cancellation for small |w|.
inline std::complex<double> expm1(std::complex<double> w) {
  const double x = w.real();
  const double y = w.imag();
  const double half_sin = std::sin(0.5 * y);
  return {std::expm1(x) * std::cos(y) - 2.0 * half_sin * half_sin, std::exp(x) * std::sin(y)};
}

inline std::complex<double> one_minus_exp(std::complex<double> w) { return -expm1(w); }

inline bool is_finite(std::complex<double> z) {
  return std::isfinite(z.real()) && std::isfinite(z.imag());
}

}  // namespace qzeros::detail
