#pragma once

#include <array>
#include <complex>
#include <vector>

namespace qzeros {

using Complex = std::complex<double>;

/// Accuracy controls for the zeta / eta evaluators.
struct EtaConfig {
  double target_abs_error = 1e-12;
  int max_terms = 10000;
  /// Highest Bernoulli index used in the Euler-Maclaurin corrections.
  int euler_maclaurin_order = 8;

  void validate() const;
};

/// Ordinates of the first nine nontrivial zeta zeros, rounded to 4 decimals.
inline constexpr std::array<double, 9> kReferenceOrdinates = {
    14.1347, 21.0220, 25.0109, 30.4249, 32.9351, 37.5862, 40.9187, 43.3271, 48.0052};

// Supported region for all evaluators below: Re s >= -2, |Im s| <= 200.

Complex riemann_zeta(Complex s, const EtaConfig& cfg = {});

/// (1 - 2^{1-s}) zeta(s), i.e. the Dirichlet eta function. Entire; equals ln 2 at s = 1.
Complex zeta_plus(Complex s, const EtaConfig& cfg = {});

/// d/ds of zeta_plus, from the differentiated Euler-Maclaurin expansion.
Complex zeta_plus_derivative(Complex s, const EtaConfig& cfg = {});

double riemann_siegel_theta(double t);

/// Hardy's Z(t) = e^{i theta(t)} zeta(1/2 + i t), real for real t.
double hardy_z(double t, const EtaConfig& cfg = {});

/// All ordinates 0 < y <= y_max of zeta zeros on the critical line, ascending.
std::vector<double> classical_zeros(double y_max, const EtaConfig& cfg = {});

}  // namespace qzeros
