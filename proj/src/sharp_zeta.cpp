#include "qzeros/sharp_zeta.hpp"

#include <cmath>
#include <numbers>

#include "complex_math.hpp"
#include "qzeros/error.hpp"

namespace qzeros {

namespace {

constexpr double kGaussianOverflowGuard = 700.0;
constexpr double kDegenerate = 1e-300;

int terms_for(double a, double d, int b) {
  return static_cast<int>(std::floor(b * std::sqrt(a / d)));
}

}  // namespace

SharpParams SharpParams::make(double a, double d, int b) {
  if (!(a > 0.0) || !(d > 0.0) || !std::isfinite(a) || !std::isfinite(d)) {
    throw Error(ErrorKind::RangeUnsupported, "a and d must be positive and finite");
  }
  if (b < 1) throw Error(ErrorKind::RangeUnsupported, "truncation multiplier b must be >= 1");
  SharpParams p;
  p.a_ = a;
  p.d_ = d;
  p.q_ = std::exp(-1.0 / a);
  p.b_ = b;
  p.terms_ = std::max(1, terms_for(a, d, b));
  p.epsilon_ = std::sqrt(std::numbers::pi * a / (2.0 * d));
  return p;
}

SharpParams SharpParams::with_terms(int terms) const {
  if (terms < 1) throw Error(ErrorKind::RangeUnsupported, "series needs at least one term");
  SharpParams p = *this;
  p.terms_ = terms;
  return p;
}

Complex term_ratio(const SharpParams& params, Complex k, int j) {
  if (j < 1) throw Error(ErrorKind::RangeUnsupported, "term_ratio needs j >= 1");
  const double a = params.a();
  const double d = params.d();
  const double jd = j;

  // (1 - e^{-(j+2k-1)/a}) / (1 - e^{-(j+k-1)/a}); for j = 1 this is
  // (1 - x^2) / (1 - x) with x = e^{-k/a}, taken in cancelled form so k = 0 is regular.
  Complex shifted;
  if (j == 1) {
    shifted = 1.0 + std::exp(-k / a);
  } else {
    const Complex den = detail::one_minus_exp(-(jd + k - 1.0) / a);
    if (std::abs(den) < kDegenerate) {
      throw Error(ErrorKind::DegenerateDenominator, "1 - exp(-(j+k-1)/a) vanishes");
    }
    shifted = detail::one_minus_exp(-(jd + 2.0 * k - 1.0) / a) / den;
  }

  const Complex plain_den = detail::one_minus_exp(Complex{jd / a, 0.0});
  if (std::abs(plain_den) < kDegenerate) {
    throw Error(ErrorKind::DegenerateDenominator, "1 - exp(j/a) vanishes");
  }
  const Complex plain = detail::one_minus_exp((jd + k) / a) / plain_den;

  const Complex x_prev = d * (k + jd - 1.0) * (k + jd - 1.0) / (4.0 * a);
  const Complex x_next = d * (k + jd) * (k + jd) / (4.0 * a);
  Complex gaussian;
  if (x_prev.real() > kGaussianOverflowGuard || x_next.real() > kGaussianOverflowGuard) {
    gaussian = std::exp(x_prev - x_next);
  } else {
    gaussian = (std::exp(x_prev) + 1.0) / (std::exp(x_next) + 1.0);
  }
  return shifted * plain * gaussian;
}

Complex evaluate(const SharpParams& params, Complex k) {
  const double eps = params.epsilon();
  if (!detail::is_finite(k) || k.imag() < -eps || k.imag() > 3.0 * eps) {
    throw Error(ErrorKind::RangeUnsupported, "Im k outside [-epsilon, 3 epsilon]");
  }
  Complex term{1.0, 0.0};
  Complex sum = term;
  for (int j = 1; j < params.terms(); ++j) {
    term *= term_ratio(params, k, j);
    sum += term;
  }
  if (!detail::is_finite(sum)) {
    throw Error(ErrorKind::NonFiniteResult, "series overflowed");
  }
  return sum;
}

double truncation_estimate_log10(double a, double d, int b, double region_top) {
  const int terms = terms_for(a, d, b);
  const Complex k{0.0, region_top};
  // Gaussian decay of the last term times the growth of the q-Pochhammer quotient.
  double log_mag = -d * static_cast<double>(terms) * terms / (4.0 * a);
  for (int l = 1; l <= terms; ++l) {
    const double num = std::abs(detail::one_minus_exp((static_cast<double>(l) + k) / a));
    const double den = std::abs(detail::one_minus_exp(Complex{static_cast<double>(l) / a, 0.0}));
    log_mag += std::log(num / den);
  }
  return log_mag / std::numbers::ln10;
}

int select_truncation(double a, double d, double region_top) {
  const double threshold = std::log10(kTruncationThreshold);
  int b = 5;
  while (b < 1000 && truncation_estimate_log10(a, d, b, region_top) >= threshold) b += 5;
  return b;
}

Complex linear_approximation(double y, double a, double d, const EtaConfig& cfg) {
  if (!(y > 0.0)) throw Error(ErrorKind::RangeUnsupported, "linear_approximation needs y > 0");
  if (!(a > 0.0) || !(d > 0.0)) throw Error(ErrorKind::RangeUnsupported, "a and d must be positive");
  const Complex iy{0.0, y};
  const Complex slope = zeta_plus_derivative(0.5 + iy, cfg);
  if (std::abs(slope) < 1e-10) {
    throw Error(ErrorKind::DerivativeNearZero, "zeta_plus' vanishes at 1/2 + iy");
  }
  const Complex numerator = (4.0 / d) * (0.5 + iy) * zeta_plus(1.5 + iy, cfg) -
                            d * (-1.0 + iy) * zeta_plus(-0.5 + iy, cfg);
  return iy * (1.0 - numerator / (12.0 * a * slope));
}

}  // namespace qzeros
