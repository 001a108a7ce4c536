#include "qzeros/special_functions.hpp"

#include <cmath>
#include <numbers>

#include "complex_math.hpp"
#include "qzeros/error.hpp"

namespace qzeros {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kLn2 = std::numbers::ln2;

// B_{2k} / (2k)!, k = 1..8, from the exact rationals
// 1/6, -1/30, 1/42, -1/30, 5/66, -691/2730, 7/6, -3617/510.
constexpr std::array<double, 8> kBernoulliOverFactorial = {
    (1.0 / 6.0) / 2.0,
    (-1.0 / 30.0) / 24.0,
    (1.0 / 42.0) / 720.0,
    (-1.0 / 30.0) / 40320.0,
    (5.0 / 66.0) / 3628800.0,
    (-691.0 / 2730.0) / 479001600.0,
    (7.0 / 6.0) / 87178291200.0,
    (-3617.0 / 510.0) / 20922789888000.0,
};

// Taylor coefficients eta^{(n)}(1) / n!, n = 0..5. Used within 1e-3 of s = 1,
// where the factor (1 - 2^{1-s}) cancels the pole and the product form loses digits.
constexpr std::array<double, 6> kEtaTaylorAtOne = {
    0.69314718055994530942,  0.15986890374243097176,    -0.032686296279449299573,
    0.0015689917054155149559, 0.00074987242112047532481, -0.0002042908971367481909,
};
constexpr double kNearOneRadius = 1e-3;

struct ZetaParts {
  Complex value;
  Complex derivative;
};

void check_region(Complex s) {
  if (!detail::is_finite(s)) {
    throw Error(ErrorKind::RangeUnsupported, "non-finite argument");
  }
  if (s.real() < -2.0 || std::abs(s.imag()) > 200.0) {
    throw Error(ErrorKind::RangeUnsupported, "argument outside Re s >= -2, |Im s| <= 200");
  }
}

// |next omitted Euler-Maclaurin term| for cutoff n, using |B_2k|/(2k)! ~ 2/(2 pi)^{2k}.
double remainder_estimate(Complex s, int order, double n) {
  double poch = 1.0;
  for (int i = 0; i <= order; ++i) poch *= std::abs(s + static_cast<double>(i));
  const double scale = 2.0 / std::pow(2.0 * kPi, order + 2);
  return scale * poch * std::pow(n, -s.real() - order - 1.0) * (1.0 + std::log(n));
}

int choose_cutoff(Complex s, const EtaConfig& cfg) {
  double n = std::max(20.0, std::ceil(std::abs(s.imag())));
  while (remainder_estimate(s, cfg.euler_maclaurin_order, n) > 0.1 * cfg.target_abs_error) {
    n = std::ceil(n * 1.15);
    if (n > cfg.max_terms) {
      throw Error(ErrorKind::RangeUnsupported, "target accuracy needs more than max_terms terms");
    }
  }
  return static_cast<int>(n);
}

ZetaParts euler_maclaurin(Complex s, const EtaConfig& cfg) {
  const int cutoff = choose_cutoff(s, cfg);
  Complex sum{0.0, 0.0};
  Complex dsum{0.0, 0.0};
  for (int n = 1; n < cutoff; ++n) {
    const double ln = std::log(static_cast<double>(n));
    const Complex term = std::exp(-s * ln);
    sum += term;
    dsum -= ln * term;
  }
  const double big_n = cutoff;
  const double ln_n = std::log(big_n);
  const Complex n_pow = std::exp(-s * ln_n);  // N^{-s}
  const Complex sm1 = s - 1.0;

  sum += 0.5 * n_pow + big_n * n_pow / sm1;
  dsum += -0.5 * ln_n * n_pow - big_n * n_pow * (ln_n / sm1 + 1.0 / (sm1 * sm1));

  // Corrections C_k * P_k(s) * N^{-s-2k+1}, P_k(s) = s (s+1) ... (s+2k-2).
  Complex poch{1.0, 0.0};
  Complex dpoch{0.0, 0.0};
  Complex n_term = n_pow * big_n;  // N^{-s+1}, lowered by N^2 per k
  const int terms = cfg.euler_maclaurin_order / 2;
  for (int k = 1; k <= terms; ++k) {
    if (k == 1) {
      dpoch = 1.0;
      poch = s;
    } else {
      for (int i : {2 * k - 3, 2 * k - 2}) {
        const Complex factor = s + static_cast<double>(i);
        dpoch = dpoch * factor + poch;
        poch *= factor;
      }
    }
    n_term /= big_n * big_n;
    const double c = kBernoulliOverFactorial[k - 1];
    // n_term is now N^{-s-2k+1}.
    sum += c * poch * n_term;
    dsum += c * (dpoch - ln_n * poch) * n_term;
  }
  return {sum, dsum};
}

Complex eta_taylor(Complex s, int derivative_order) {
  const Complex e = s - 1.0;
  Complex acc{0.0, 0.0};
  for (int n = static_cast<int>(kEtaTaylorAtOne.size()) - 1; n >= derivative_order; --n) {
    double coeff = kEtaTaylorAtOne[n];
    if (derivative_order == 1) coeff *= n;
    acc = acc * e + coeff;
  }
  return acc;
}

// 1 - 2^{1-s}, accurate when s is near 1.
Complex one_minus_pow2(Complex s) { return detail::one_minus_exp((1.0 - s) * kLn2); }

}  // namespace

void EtaConfig::validate() const {
  if (!(target_abs_error > 0.0)) {
    throw Error(ErrorKind::RangeUnsupported, "target_abs_error must be positive");
  }
  if (max_terms <= 0) throw Error(ErrorKind::RangeUnsupported, "max_terms must be positive");
  if (euler_maclaurin_order < 2 || euler_maclaurin_order > 16 || euler_maclaurin_order % 2 != 0) {
    throw Error(ErrorKind::RangeUnsupported, "euler_maclaurin_order must be even, 2..16");
  }
}

Complex riemann_zeta(Complex s, const EtaConfig& cfg) {
  cfg.validate();
  if (std::abs(s - 1.0) < 1e-12) throw Error(ErrorKind::PoleAtOne, "zeta has a pole at s = 1");
  check_region(s);
  return euler_maclaurin(s, cfg).value;
}

Complex zeta_plus(Complex s, const EtaConfig& cfg) {
  cfg.validate();
  check_region(s);
  if (std::abs(s - 1.0) < kNearOneRadius) return eta_taylor(s, 0);
  return one_minus_pow2(s) * euler_maclaurin(s, cfg).value;
}

Complex zeta_plus_derivative(Complex s, const EtaConfig& cfg) {
  cfg.validate();
  check_region(s);
  if (std::abs(s - 1.0) < kNearOneRadius) return eta_taylor(s, 1);
  const ZetaParts z = euler_maclaurin(s, cfg);
  const Complex pow2 = std::exp((1.0 - s) * kLn2);
  return kLn2 * pow2 * z.value + one_minus_pow2(s) * z.derivative;
}

double riemann_siegel_theta(double t) {
  const double t2 = t * t;
  return 0.5 * t * std::log(t / (2.0 * kPi)) - 0.5 * t - kPi / 8.0 + 1.0 / (48.0 * t) +
         7.0 / (5760.0 * t * t2) + 31.0 / (80640.0 * t * t2 * t2);
}

double hardy_z(double t, const EtaConfig& cfg) {
  const Complex z = riemann_zeta({0.5, t}, cfg);
  return (std::polar(1.0, riemann_siegel_theta(t)) * z).real();
}

std::vector<double> classical_zeros(double y_max, const EtaConfig& cfg) {
  if (!(y_max > 0.0) || y_max > 100.0) {
    throw Error(ErrorKind::RangeUnsupported, "classical_zeros supports 0 < y_max <= 100");
  }
  constexpr double kStep = 0.05;
  constexpr int kFirstGridIndex = 20;  // t = 1; no zeros below t = 14
  std::vector<double> zeros;
  double t_lo = kFirstGridIndex * kStep;
  double z_lo = hardy_z(t_lo, cfg);
  for (int i = kFirstGridIndex + 1; i * kStep <= y_max + kStep; ++i) {
    const double t_hi = i * kStep;
    const double z_hi = hardy_z(t_hi, cfg);
    if ((z_lo < 0.0) != (z_hi < 0.0)) {
      double lo = t_lo;
      double hi = t_hi;
      double f_lo = z_lo;
      while (hi - lo > 1e-11) {
        const double mid = 0.5 * (lo + hi);
        const double f_mid = hardy_z(mid, cfg);
        if ((f_mid < 0.0) == (f_lo < 0.0)) {
          lo = mid;
          f_lo = f_mid;
        } else {
          hi = mid;
        }
      }
      const double root = 0.5 * (lo + hi);
      if (root <= y_max) zeros.push_back(root);
    }
    t_lo = t_hi;
    z_lo = z_hi;
  }
  return zeros;
}

}  // namespace qzeros
