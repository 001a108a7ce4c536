#pragma once

#include <array>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "qzeros/special_functions.hpp"

namespace qzeros {

/// Any function analytic on and near the contours it is probed on. Must be
/// deterministic: equal arguments give bit-equal results.
using AnalyticFunction = std::function<Complex(Complex)>;

/// Axis-aligned rectangle center +- half_width +- i half_height.
struct Rectangle {
  Complex center;
  double half_width = 0.0;
  double half_height = 0.0;

  /// Throws RangeUnsupported unless both half-sizes are positive and finite.
  static Rectangle make(Complex center, double half_width, double half_height);

  /// Strict interior test.
  bool contains(Complex z) const noexcept;

  /// Corners counterclockwise, starting at bottom-left.
  std::array<Complex, 4> corners() const noexcept;
};

/// Position of a boundary sample within the per-side parameter grid.
///
/// `main` is the 1-based index of the coarse grid node at or left of the
/// sample; `offset` counts units of 2^-kMaxLevel of one coarse step past it;
/// `level` is the refinement level that created the sample (0 for coarse
/// nodes, 1 for quarter points, 2 for eighths, ...).
struct SampleLabel {
  static constexpr int kMaxLevel = 20;

  int main = 1;
  int offset = 0;
  int level = 0;

  bool is_main() const noexcept { return level == 0; }
  friend bool operator==(const SampleLabel&, const SampleLabel&) = default;
};

struct BoundarySample {
  SampleLabel label;
  int side = 0;  // 0 bottom, 1 right, 2 top, 3 left
  Complex point;
  Complex value;
  double angle = 0.0;  // continuous argument of value
};

/// Sampled rectangle boundary with a continuous argument sequence.
///
/// Every side carries the same parameter grid, so sample j of each side sits
/// at the same relative position. The full sequence runs counterclockwise from
/// the bottom-left corner and ends on that corner again.
class BoundaryTrace {
 public:
  const Rectangle& rect() const noexcept { return rect_; }
  int points_per_side() const noexcept { return points_per_side_; }

  std::span<const BoundarySample> samples() const noexcept { return samples_; }
  std::span<const SampleLabel> grid() const noexcept { return grid_; }

  /// (angle_last - angle_first) / 2 pi.
  double winding() const;

  /// Paper-compatible view: entry i is the sum over the four sides of the
  /// angle at grid node i. Its first-to-last change equals the full winding.
  std::vector<double> side_sum_angles() const;

  /// Largest |difference| between consecutive side-sum angles.
  double max_side_sum_gap() const;

  /// Number of equal parts the coarse interval starting at node `main` is
  /// currently divided into (1, 4, 8, 16, ...).
  int parts_of(int main) const;

  /// Index of a grid label within its coarse interval's current subdivision.
  int sub_index(const SampleLabel& label) const;

 private:
  friend BoundaryTrace sample_boundary(const AnalyticFunction&, const Rectangle&, int);
  friend BoundaryTrace refine_trace(const AnalyticFunction&, const BoundaryTrace&, double, int);

  Complex point_at(int side, double t) const;
  double param_of(const SampleLabel& label) const;
  void rebuild_samples();

  Rectangle rect_;
  int points_per_side_ = 0;
  std::vector<SampleLabel> grid_;
  // node_values_[i][s]: f at grid node i on side s.
  std::vector<std::array<Complex, 4>> node_values_;
  // Refinement level of each coarse interval.
  std::vector<int> levels_;
  std::vector<BoundarySample> samples_;
};

/// c equally spaced points per side (4c + 1 samples including the closing point).
BoundaryTrace sample_boundary(const AnalyticFunction& f, const Rectangle& rect, int c);

/// Refines every coarse interval in which some side-sum angle step exceeds
/// gap_threshold (or a single side's step exceeds pi/2): level 1 splits it into
/// 4 equal parts, each further level doubles the parts. The coarse sampling
/// counts as depth 1, so max_depth = 3 allows two refinement levels.
BoundaryTrace refine_trace(const AnalyticFunction& f, const BoundaryTrace& trace,
                           double gap_threshold = 1.0, int max_depth = 3);

/// max{1 + floor(2 (|gap| - 1))} over consecutive angles with |gap| > 1; 0 if none.
int fo_from_angles(std::span<const double> angles);

/// fo of the side-sum angle view.
int compute_fo(const BoundaryTrace& trace);

/// 1 - winding. Zero means one simple zero enclosed; not rounded.
double compute_char(const BoundaryTrace& trace);

/// Quadrature for the moment (1 / 2 pi i) \oint (k - center) f'/f dk.
enum class MomentRule {
  /// A secant estimate r (exact when f is linear along every boundary step),
  /// then the moment of the smooth, winding-free f / (k - r) integrated by
  /// parts with local cubic interpolation, plus r. Exact for linear f and
  /// fourth order otherwise. Falls back to the secant estimate when the
  /// winding is not 1 or the estimate leaves the rectangle.
  Deflated,
  /// center + (1 / 2 pi i) sum_j (mid_j - center) Log(f_{j+1} / f_j).
  Midpoint,
  /// center + (1 / 2 pi i) sum_j (k_j - center) Log(f_{j+1} / f_j) with k_j the
  /// start of each counterclockwise step. First order: its error is
  /// proportional to the zero's offset from the center, so repeated
  /// integrations around the latest estimate contract geometrically.
  StartPoint,
};

/// Estimate of the enclosed zero from the sampled trace. With N > 1 zeros
/// inside, Midpoint and StartPoint return their sum minus (N - 1) center.
Complex moment_zero_estimate(const BoundaryTrace& trace, MomentRule rule = MomentRule::Deflated);

struct IntegrationOptions {
  double gap_threshold = 1.0;
  int max_depth = 3;
  MomentRule rule = MomentRule::Deflated;
};

struct IntegrationResult {
  Rectangle rect;
  int c = 0;
  double char_value = 0.0;
  int fo = 0;
  Complex z_estimate;
  Complex center_value;
  Complex estimate_value;
  double vv = 0.0;  // |f(z_estimate)| / |f(center)|
  bool inside = false;
  BoundaryTrace trace;
};

/// sample -> refine -> char, fo, moment estimate, vv, containment.
IntegrationResult integrate(const AnalyticFunction& f, const Rectangle& rect, int c,
                            const IntegrationOptions& options = {});

}  // namespace qzeros
