#include "qzeros/winding_engine.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "complex_math.hpp"
#include "qzeros/error.hpp"

namespace qzeros {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kZeroOnContour = 1e-280;
constexpr double kSideGapLimit = 0.5 * std::numbers::pi;
constexpr int kUnitsPerStep = 1 << SampleLabel::kMaxLevel;

Complex checked_eval(const AnalyticFunction& f, Complex k) {
  const Complex v = f(k);
  if (!detail::is_finite(v)) throw Error(ErrorKind::NonFiniteResult, "function value not finite");
  if (std::abs(v) < kZeroOnContour) {
    throw Error(ErrorKind::ZeroOnContour, "function vanishes on the contour");
  }
  return v;
}

double ratio_or_inf(double num, double den) {
  if (den == 0.0) return num == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
  return num / den;
}

}  // namespace

Rectangle Rectangle::make(Complex center, double half_width, double half_height) {
  if (!detail::is_finite(center) || !(half_width > 0.0) || !(half_height > 0.0) ||
      !std::isfinite(half_width) || !std::isfinite(half_height)) {
    throw Error(ErrorKind::RangeUnsupported, "rectangle needs finite center and positive sizes");
  }
  return Rectangle{center, half_width, half_height};
}

bool Rectangle::contains(Complex z) const noexcept {
  return std::abs(z.real() - center.real()) < half_width &&
         std::abs(z.imag() - center.imag()) < half_height;
}

std::array<Complex, 4> Rectangle::corners() const noexcept {
  const Complex dx{half_width, 0.0};
  const Complex dy{0.0, half_height};
  return {center - dx - dy, center + dx - dy, center + dx + dy, center - dx + dy};
}

Complex BoundaryTrace::point_at(int side, double t) const {
  const auto c = rect_.corners();
  const Complex from = c[side];
  const Complex to = c[(side + 1) % 4];
  if (t == 0.0) return from;
  if (t == 1.0) return to;
  return from + t * (to - from);
}

double BoundaryTrace::param_of(const SampleLabel& label) const {
  const double steps = (label.main - 1) + static_cast<double>(label.offset) / kUnitsPerStep;
  return steps / points_per_side_;
}

void BoundaryTrace::rebuild_samples() {
  const auto n = grid_.size();
  samples_.clear();
  samples_.reserve(4 * (n - 1) + 1);
  for (int side = 0; side < 4; ++side) {
    for (std::size_t i = 0; i + 1 < n; ++i) {
      samples_.push_back({grid_[i], side, point_at(side, param_of(grid_[i])),
                          node_values_[i][side], 0.0});
    }
  }
  samples_.push_back({grid_[n - 1], 3, point_at(3, 1.0), node_values_[n - 1][3], 0.0});

  double prev_arg = std::arg(samples_.front().value);
  samples_.front().angle = prev_arg;
  for (std::size_t j = 1; j < samples_.size(); ++j) {
    const double arg = std::arg(samples_[j].value);
    samples_[j].angle = samples_[j - 1].angle + std::remainder(arg - prev_arg, kTwoPi);
    prev_arg = arg;
  }
}

double BoundaryTrace::winding() const {
  return (samples_.back().angle - samples_.front().angle) / kTwoPi;
}

std::vector<double> BoundaryTrace::side_sum_angles() const {
  const auto n = grid_.size();
  std::vector<double> sums(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t side = 0; side < 4; ++side) sums[i] += samples_[side * (n - 1) + i].angle;
  }
  return sums;
}

double BoundaryTrace::max_side_sum_gap() const {
  const auto sums = side_sum_angles();
  double gap = 0.0;
  for (std::size_t i = 1; i < sums.size(); ++i) gap = std::max(gap, std::abs(sums[i] - sums[i - 1]));
  return gap;
}

BoundaryTrace sample_boundary(const AnalyticFunction& f, const Rectangle& rect, int c) {
  if (c < 3) throw Error(ErrorKind::RangeUnsupported, "need at least 3 points per side");
  BoundaryTrace trace;
  trace.rect_ = rect;
  trace.points_per_side_ = c;
  trace.grid_.resize(c + 1);
  for (int i = 0; i <= c; ++i) trace.grid_[i] = SampleLabel{i + 1, 0, 0};
  trace.node_values_.resize(c + 1);
  trace.levels_.assign(c, 0);
  for (int i = 0; i < c; ++i) {
    for (int side = 0; side < 4; ++side) {
      trace.node_values_[i][side] =
          checked_eval(f, trace.point_at(side, trace.param_of(trace.grid_[i])));
    }
  }
  for (int side = 0; side < 4; ++side) {
    trace.node_values_[c][side] = trace.node_values_[0][(side + 1) % 4];
  }
  trace.rebuild_samples();
  return trace;
}

BoundaryTrace refine_trace(const AnalyticFunction& f, const BoundaryTrace& input,
                           double gap_threshold, int max_depth) {
  BoundaryTrace trace = input;
  // The coarse sampling is depth 1, so at most max_depth - 1 refinement levels.
  const int max_level = std::clamp(max_depth - 1, 0, SampleLabel::kMaxLevel - 1);
  const int coarse = trace.points_per_side_;
  for (;;) {
    // A coarse interval is refined as a whole: 4 equal parts at level 1, and
    // each further level doubles the count.
    const auto n = trace.grid_.size();
    const auto sums = trace.side_sum_angles();
    std::vector<int> raise(coarse, 0);
    bool any = false;
    for (std::size_t i = 0; i + 1 < n; ++i) {
      const int main = trace.grid_[i].main;
      const int level = trace.levels_[main - 1];
      if (level >= max_level || raise[main - 1]) continue;
      bool wide = std::abs(sums[i + 1] - sums[i]) > gap_threshold;
      for (std::size_t side = 0; side < 4 && !wide; ++side) {
        const auto j = side * (n - 1) + i;
        wide = std::abs(trace.samples_[j + 1].angle - trace.samples_[j].angle) > kSideGapLimit;
      }
      if (wide) {
        raise[main - 1] = 1;
        any = true;
      }
    }
    if (!any) break;

    std::vector<SampleLabel> grid;
    std::vector<std::array<Complex, 4>> values;
    std::size_t i = 0;
    for (int main = 1; main <= coarse; ++main) {
      const int old_level = trace.levels_[main - 1];
      const int level = raise[main - 1] ? old_level + 1 : old_level;
      trace.levels_[main - 1] = level;
      const int parts = level == 0 ? 1 : 2 << level;
      const int unit = kUnitsPerStep / parts;
      for (int part = 0; part < parts; ++part) {
        const int offset = part * unit;
        if (i < n && trace.grid_[i].main == main && trace.grid_[i].offset == offset) {
          grid.push_back(trace.grid_[i]);
          values.push_back(trace.node_values_[i]);
          ++i;
          continue;
        }
        const SampleLabel label{main, offset, level};
        std::array<Complex, 4> v{};
        const double t = trace.param_of(label);
        for (int side = 0; side < 4; ++side) v[side] = checked_eval(f, trace.point_at(side, t));
        grid.push_back(label);
        values.push_back(v);
      }
      while (i < n && trace.grid_[i].main == main) ++i;
    }
    grid.push_back(trace.grid_[n - 1]);
    values.push_back(trace.node_values_[n - 1]);
    trace.grid_ = std::move(grid);
    trace.node_values_ = std::move(values);
    trace.rebuild_samples();
  }
  return trace;
}

int BoundaryTrace::parts_of(int main) const {
  const int level = levels_.at(static_cast<std::size_t>(main - 1));
  return level == 0 ? 1 : 2 << level;
}

int BoundaryTrace::sub_index(const SampleLabel& label) const {
  if (label.main > points_per_side_) return 0;
  return label.offset / (kUnitsPerStep / parts_of(label.main));
}

int fo_from_angles(std::span<const double> angles) {
  int fo = 0;
  for (std::size_t i = 1; i < angles.size(); ++i) {
    const double gap = std::abs(angles[i] - angles[i - 1]);
    if (gap > 1.0) fo = std::max(fo, 1 + static_cast<int>(std::floor(2.0 * (gap - 1.0))));
  }
  return fo;
}

int compute_fo(const BoundaryTrace& trace) {
  const auto sums = trace.side_sum_angles();
  return fo_from_angles(sums);
}

double compute_char(const BoundaryTrace& trace) { return 1.0 - trace.winding(); }

namespace {

// \int_{x[i]}^{x[i+1]} of the cubic through the four stencil nodes lo..lo+3.
Complex cubic_segment_integral(std::span<const double> x, std::span<const Complex> y,
                               std::size_t i, std::size_t lo) {
  // Three-point Gauss-Legendre is exact for cubics.
  static constexpr std::array<double, 3> nodes{-0.7745966692414834, 0.0, 0.7745966692414834};
  static constexpr std::array<double, 3> weights{5.0 / 9.0, 8.0 / 9.0, 5.0 / 9.0};
  const double half = 0.5 * (x[i + 1] - x[i]);
  const double mid = 0.5 * (x[i + 1] + x[i]);
  Complex sum{0.0, 0.0};
  for (std::size_t g = 0; g < 3; ++g) {
    const double t = mid + half * nodes[g];
    Complex value{0.0, 0.0};
    for (std::size_t a = lo; a < lo + 4; ++a) {
      double basis = 1.0;
      for (std::size_t b = lo; b < lo + 4; ++b) {
        if (b != a) basis *= (t - x[b]) / (x[a] - x[b]);
      }
      value += basis * y[a];
    }
    sum += weights[g] * value;
  }
  return half * sum;
}

// \oint L dk for values L_j given at the trace samples (continuous along the
// contour), side by side with local cubic interpolation.
Complex contour_integral(const BoundaryTrace& trace, std::span<const Complex> values) {
  const auto samples = trace.samples();
  const auto corners = trace.rect().corners();
  const std::size_t per_side = (samples.size() - 1) / 4;
  Complex total{0.0, 0.0};
  std::vector<double> x(per_side + 1);
  std::vector<Complex> y(per_side + 1);
  for (std::size_t side = 0; side < 4; ++side) {
    const Complex from = corners[side];
    const Complex edge = corners[(side + 1) % 4] - from;
    for (std::size_t j = 0; j <= per_side; ++j) {
      const std::size_t idx = side * per_side + j;
      x[j] = j == per_side ? 1.0 : (j == 0 ? 0.0 : std::real((samples[idx].point - from) / edge));
      y[j] = values[idx];
    }
    Complex side_integral{0.0, 0.0};
    for (std::size_t i = 0; i < per_side; ++i) {
      const std::size_t lo = std::min(i > 0 ? i - 1 : 0, per_side - 3);
      side_integral += cubic_segment_integral(x, y, i, lo);
    }
    total += edge * side_integral;
  }
  return total;
}

// (1 / 2 pi i) \oint (k - center) f'/f dk with f'/f treated as exact for f
// linear on each boundary step.
Complex secant_moment(std::span<const BoundarySample> samples, Complex center) {
  Complex acc{0.0, 0.0};
  for (std::size_t j = 0; j + 1 < samples.size(); ++j) {
    const Complex from = samples[j].point;
    const Complex h = samples[j + 1].point - from;
    const Complex log_step{std::log(std::abs(samples[j + 1].value) / std::abs(samples[j].value)),
                           samples[j + 1].angle - samples[j].angle};
    // f linear on the step with root r: h + (r - center) L, written without r.
    const Complex ratio = std::abs(log_step) < 1e-8 ? 1.0 - 0.5 * log_step
                                                    : log_step / detail::expm1(log_step);
    acc += h + (from - center) * log_step - h * ratio;
  }
  return acc / Complex{0.0, kTwoPi};
}

// Moment of g = f / (k - root) plus root, the moment of g taken by parts:
// \oint (k - c) dL = (k_0 - c) (L_end - L_0) - \oint L dk with L = log g.
Complex deflated_moment(const BoundaryTrace& trace, Complex root) {
  const auto samples = trace.samples();
  const Complex center = trace.rect().center;
  std::vector<Complex> logs(samples.size());
  double angle = 0.0;
  Complex prev{1.0, 0.0};
  for (std::size_t j = 0; j < samples.size(); ++j) {
    const Complex g = samples[j].value / (samples[j].point - root);
    angle = j == 0 ? std::arg(g) : angle + std::arg(g / prev);
    prev = g;
    logs[j] = Complex{std::log(std::abs(g)), angle};
  }
  const Complex start = samples.front().point;
  const Complex moment = (start - center) * (logs.back() - logs.front()) - contour_integral(trace, logs);
  return root + moment / Complex{0.0, kTwoPi};
}

}  // namespace

Complex moment_zero_estimate(const BoundaryTrace& trace, MomentRule rule) {
  const auto samples = trace.samples();
  const Complex center = trace.rect().center;
  if (rule == MomentRule::Deflated) {
    const Complex first = center + secant_moment(samples, center);
    const bool single = std::abs(trace.winding() - 1.0) < 0.5;
    if (!single || !detail::is_finite(first) || !trace.rect().contains(first)) return first;
    return deflated_moment(trace, first);
  }
  Complex acc{0.0, 0.0};
  for (std::size_t j = 0; j + 1 < samples.size(); ++j) {
    const Complex log_step{std::log(std::abs(samples[j + 1].value) / std::abs(samples[j].value)),
                           samples[j + 1].angle - samples[j].angle};
    const Complex node = rule == MomentRule::Midpoint
                             ? 0.5 * (samples[j].point + samples[j + 1].point)
                             : samples[j].point;
    acc += (node - center) * log_step;
  }
  return center + acc / Complex{0.0, kTwoPi};
}

IntegrationResult integrate(const AnalyticFunction& f, const Rectangle& rect, int c,
                            const IntegrationOptions& options) {
  IntegrationResult r;
  r.rect = rect;
  r.c = c;
  r.trace = refine_trace(f, sample_boundary(f, rect, c), options.gap_threshold, options.max_depth);
  r.char_value = compute_char(r.trace);
  r.fo = compute_fo(r.trace);
  r.z_estimate = moment_zero_estimate(r.trace, options.rule);
  r.center_value = f(rect.center);
  r.inside = detail::is_finite(r.z_estimate) && rect.contains(r.z_estimate);
  try {
    r.estimate_value = detail::is_finite(r.z_estimate)
                           ? f(r.z_estimate)
                           : Complex{std::numeric_limits<double>::infinity(), 0.0};
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::RangeUnsupported) throw;
    r.estimate_value = Complex{std::numeric_limits<double>::infinity(), 0.0};
  }
  r.vv = ratio_or_inf(std::abs(r.estimate_value), std::abs(r.center_value));
  return r;
}

}  // namespace qzeros
