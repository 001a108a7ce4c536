#pragma once

#include "qzeros/special_functions.hpp"

namespace qzeros {

struct StripBounds {
  double lower = 0.0;
  double upper = 0.0;
};

/// Configuration of the plus-sharp q-zeta series. Immutable once made.
class SharpParams {
 public:
  /// Throws RangeUnsupported unless a, d > 0 and b >= 1.
  static SharpParams make(double a, double d, int b);

  double a() const noexcept { return a_; }
  double d() const noexcept { return d_; }
  double q() const noexcept { return q_; }
  int b() const noexcept { return b_; }
  /// Number of series terms, floor(b * sqrt(a / d)).
  int terms() const noexcept { return terms_; }
  /// sqrt(pi a / (2 d)); the search strip is 0 < Im k < 2 epsilon.
  double epsilon() const noexcept { return epsilon_; }
  StripBounds strip() const noexcept { return {0.0, 2.0 * epsilon_}; }

  /// Copy with a different number of terms (used by tail checks).
  SharpParams with_terms(int terms) const;

 private:
  SharpParams() = default;

  double a_ = 0.0;
  double d_ = 0.0;
  double q_ = 0.0;
  int b_ = 0;
  int terms_ = 0;
  double epsilon_ = 0.0;
};

/// term_j / term_{j-1} of the series, j >= 1.
Complex term_ratio(const SharpParams& params, Complex k, int j);

/// Truncated series sum over j = 0 .. terms()-1.
Complex evaluate(const SharpParams& params, Complex k);

/// Smallest b in {5, 10, 15, ...} whose estimated last-term magnitude is
/// below kTruncationThreshold for arguments up to i * region_top.
int select_truncation(double a, double d, double region_top);

/// log10 of the last-term magnitude estimate used by select_truncation.
double truncation_estimate_log10(double a, double d, int b, double region_top);

inline constexpr double kTruncationThreshold = 1e-3;

/// First-order prediction of the zero that deforms the classical zero i*y.
Complex linear_approximation(double y, double a, double d, const EtaConfig& cfg = {});

/// Callable wrapper so the series can be passed wherever an analytic function is expected.
class SharpZeta {
 public:
  explicit SharpZeta(SharpParams params) : params_(params) {}
  Complex operator()(Complex k) const { return evaluate(params_, k); }
  const SharpParams& params() const noexcept { return params_; }

 private:
  SharpParams params_;
};

}  // namespace qzeros
