#include "qzeros/zero_locator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "complex_math.hpp"
#include "qzeros/error.hpp"

namespace qzeros {

namespace {

constexpr double kDeFloor = 1e-6;
constexpr double kMissRecenter = 0.25;
constexpr double kShrinkOnFailure = 0.75;
constexpr double kContourPerturbation = 1.01;
constexpr int kContourRetries = 3;

bool is_miss(const IntegrationResult& r, const SearchConfig& cfg) {
  return std::abs(r.char_value - 1.0) <= cfg.char_tol;
}

std::optional<int> next_c(const SearchConfig& cfg, int c) {
  for (int v : cfg.c_schedule) {
    if (v > c) return v;
  }
  return std::nullopt;
}

int variant_start_c(const SearchConfig& cfg, int variant) {
  if (variant == 1) return cfg.c_initial;
  return cfg.c_schedule[static_cast<std::size_t>(variant - 1)];
}

IntegrationResult integrate_with_retries(const AnalyticFunction& f, SearchState& state,
                                         const SearchConfig& cfg) {
  for (int attempt = 0;; ++attempt) {
    try {
      return integrate(f, Rectangle::make(state.zn, state.rd, state.rad), state.c,
                       cfg.integration);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::ZeroOnContour || attempt + 1 >= kContourRetries) throw;
      state.rd *= kContourPerturbation;
      state.rad *= kContourPerturbation;
    }
  }
}

double safe_abs(const AnalyticFunction& f, Complex z) {
  try {
    return std::abs(f(z));
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::RangeUnsupported && e.kind() != ErrorKind::NonFiniteResult) throw;
    return std::numeric_limits<double>::infinity();
  }
}

}  // namespace

void SearchConfig::validate() const {
  auto fail = [](const char* what) { throw Error(ErrorKind::RangeUnsupported, what); };
  if (c_initial < 3) fail("c_initial must be >= 3");
  if (c_schedule.empty()) fail("c_schedule must not be empty");
  for (std::size_t i = 1; i < c_schedule.size(); ++i) {
    if (c_schedule[i] <= c_schedule[i - 1]) fail("c_schedule must be strictly increasing");
  }
  if (c_schedule.front() < 3) fail("c_schedule entries must be >= 3");
  if (!(kappa > 0.0) || !(rd_floor > 0.0) || !(rd_cap >= rd_floor)) fail("bad rectangle sizing");
  if (!(initial_rd >= 0.0) || !std::isfinite(initial_rd)) fail("initial_rd must be >= 0");
  if (!(vv_max > 0.0 && vv_max < 1.0)) fail("vv_max must lie in (0, 1)");
  if (!(char_tol > 0.0 && char_tol < 0.5)) fail("char_tol must lie in (0, 0.5)");
  if (fo_good_max < 0 || fo_verygood_max < 0) fail("fo limits must be >= 0");
  if (!(de_admissible > 0.0) || !(residual_admissible > 0.0)) fail("admissibility must be > 0");
  if (max_integrations_per_variant < 1 || max_integrations_per_zero < 1) {
    fail("integration budgets must be >= 1");
  }
  if (newton_max_iters < 0) fail("newton_max_iters must be >= 0");
  if (!(newton_tolerance > 0.0)) fail("newton_tolerance must be > 0");
}

std::string_view to_string(StepVerdict v) {
  switch (v) {
    case StepVerdict::NotGood: return "not good";
    case StepVerdict::Good: return "good";
    case StepVerdict::VeryGood: return "very good";
  }
  return "unknown";
}

std::string_view to_string(ZeroVerdict v) {
  switch (v) {
    case ZeroVerdict::VeryGood: return "very_good";
    case ZeroVerdict::GoodOnly: return "good_only";
    case ZeroVerdict::Failed: return "failed";
  }
  return "unknown";
}

std::vector<Complex> SearchState::good_estimates() const {
  std::vector<Complex> out;
  for (const auto& s : history) {
    if (s.verdict != StepVerdict::NotGood) out.push_back(s.result.z_estimate);
  }
  return out;
}

Rectangle initial_rectangle(Complex za, double y, const SearchConfig& cfg) {
  if (cfg.initial_rd > 0.0) return Rectangle::make(za, cfg.initial_rd, cfg.initial_rd / 2.0);
  if (!(y > 0.0)) throw Error(ErrorKind::RangeUnsupported, "initial_rectangle needs y > 0");
  const double rd =
      std::clamp(cfg.kappa * std::abs(za - Complex{0.0, y}), cfg.rd_floor, cfg.rd_cap);
  return Rectangle::make(za, rd, rd / 2.0);
}

StepVerdict assess(const IntegrationResult& r, const SearchState& state, const SearchConfig& cfg) {
  const double value = std::abs(r.estimate_value);
  const bool good = std::abs(r.char_value) <= cfg.char_tol && r.fo <= cfg.fo_good_max &&
                    r.vv < cfg.vv_max && r.inside && value <= state.best_abs_value;
  if (!good) return StepVerdict::NotGood;
  if (state.consecutive_good < 1 || r.fo > cfg.fo_verygood_max || r.vv > cfg.vv_max) {
    return StepVerdict::Good;
  }
  const auto goods = state.good_estimates();
  const double de = std::max(kDeFloor, 0.1 * std::abs(r.z_estimate - goods.back()));
  const double residual = value / state.za_abs_value;
  if (de <= cfg.de_admissible && residual <= cfg.residual_admissible) return StepVerdict::VeryGood;
  return StepVerdict::Good;
}

double estimate_de(const SearchState& state) {
  const auto goods = state.good_estimates();
  if (goods.size() < 2) {
    throw Error(ErrorKind::InsufficientHistory, "de needs two accepted estimates");
  }
  return std::max(kDeFloor, 0.1 * std::abs(goods.back() - goods[goods.size() - 2]));
}

NewtonOutcome newton_refine(const AnalyticFunction& f, Complex z0, double de,
                            const SearchConfig& cfg) {
  NewtonOutcome out{z0, false, {}, 0.0};
  Complex z = z0;
  double value = safe_abs(f, z);
  const double tolerance = cfg.newton_tolerance * de;
  bool converged = false;
  for (int it = 0; it <= cfg.newton_max_iters; ++it) {
    const double h = 1e-6 * (1.0 + std::abs(z));
    const Complex fz = f(z);
    const Complex slope = (f(z + h) - f(z - h)) / (2.0 * h);
    if (!detail::is_finite(slope) || std::abs(slope) == 0.0) break;
    const Complex step = fz / slope;
    out.last_step = std::abs(step);
    if (out.last_step <= tolerance) {
      converged = true;
      break;
    }
    if (it == cfg.newton_max_iters) break;
    const Complex next = z - step;
    const double next_value = safe_abs(f, next);
    out.iterates.push_back(next);
    if (!(next_value < value)) break;
    z = next;
    value = next_value;
  }
  if (converged && std::abs(z - z0) <= 10.0 * de) {
    out.z = z;
    out.accepted = true;
  }
  return out;
}

SearchState start_search(const AnalyticFunction& f, double y, Complex za, const SearchConfig& cfg) {
  cfg.validate();
  const Rectangle rect = initial_rectangle(za, y, cfg);
  SearchState s;
  s.y = y;
  s.za = za;
  s.zna = za;
  s.zn = rect.center;
  s.rd = rect.half_width;
  s.rad = rect.half_height;
  s.c = cfg.c_initial;
  s.za_abs_value = std::abs(f(za));
  s.best_abs_value = s.za_abs_value;
  return s;
}

VariantOutcome run_variant(const AnalyticFunction& f, SearchState& state, int variant,
                           const SearchConfig& cfg) {
  state.c = variant_start_c(cfg, variant);
  state.consecutive_good = 0;
  state.goods_at_c = 0;
  bool escalated = false;
  bool second_try = false;

  for (int n = 0; n < cfg.max_integrations_per_variant; ++n) {
    if (static_cast<int>(state.history.size()) >= cfg.max_integrations_per_zero) {
      return VariantOutcome::Exhausted;
    }
    SearchStep step;
    step.variant = variant;
    step.second_try = second_try;
    step.zna = state.zna;
    second_try = false;
    step.result = integrate_with_retries(f, state, cfg);
    step.verdict = assess(step.result, state, cfg);
    const IntegrationResult& r = step.result;
    state.history.push_back(step);

    if (step.verdict != StepVerdict::NotGood) {
      state.zna = r.z_estimate;
      state.best_abs_value = std::abs(r.estimate_value);
      if (step.verdict == StepVerdict::VeryGood) return VariantOutcome::VeryGood;
      ++state.consecutive_good;
      ++state.goods_at_c;
      state.rd /= 2.0;
      state.rad /= 2.0;
      const auto up = next_c(cfg, state.c);
      if (state.goods_at_c >= 2 && !escalated && up) {
        // Second try: denser sampling around the latest estimate.
        state.c = *up;
        state.zn = r.z_estimate;
        state.goods_at_c = 0;
        state.consecutive_good = 0;
        escalated = true;
        second_try = true;
      } else {
        state.zn = state.zn + (r.z_estimate - state.zn) / (1.0 + r.vv);
      }
      continue;
    }

    state.consecutive_good = 0;
    state.goods_at_c = 0;
    if (is_miss(r, cfg)) {
      state.zn = state.zn + kMissRecenter * (r.z_estimate - state.zn);
      state.rd *= 2.0;
      state.rad *= 2.0;
      continue;
    }
    const auto up = next_c(cfg, state.c);
    if (!escalated && up) {
      state.c = *up;
      state.zn = state.zna;
      escalated = true;
      second_try = true;
    } else {
      if (detail::is_finite(r.z_estimate) && r.inside) {
        state.zn = state.zn + (r.z_estimate - state.zn) / (1.0 + std::min(r.vv, 1.0));
      }
      state.rd *= kShrinkOnFailure;
      state.rad *= kShrinkOnFailure;
    }
  }
  return VariantOutcome::Deferred;
}

ZeroRecord finish_record(const AnalyticFunction& f, const SearchState& state, int index,
                         VariantOutcome outcome, const SearchConfig& cfg) {
  ZeroRecord rec;
  rec.index = index;
  rec.y = state.y;
  rec.za = state.za;
  rec.trace_log = state.history;
  if (state.za_abs_value == 0.0) {
    // The seed is itself an exact zero; nothing to search.
    rec.z = state.za;
    rec.verdict = ZeroVerdict::VeryGood;
    rec.de = kDeFloor;
    rec.vv_final = 0.0;
    return rec;
  }
  const auto goods = state.good_estimates();
  if (goods.empty()) {
    rec.z = state.za;
    rec.verdict = ZeroVerdict::Failed;
    rec.de = std::numeric_limits<double>::infinity();
  } else {
    rec.z = goods.back();
    rec.verdict = outcome == VariantOutcome::VeryGood ? ZeroVerdict::VeryGood : ZeroVerdict::GoodOnly;
    rec.de = goods.size() >= 2 ? estimate_de(state) : std::numeric_limits<double>::infinity();
  }
  if (rec.verdict == ZeroVerdict::VeryGood) {
    NewtonOutcome newton = newton_refine(f, rec.z, rec.de, cfg);
    if (newton.accepted) {
      rec.z = newton.z;
      rec.newton_applied = true;
      rec.de = std::max(kDeFloor, 0.1 * newton.last_step);
    }
    rec.newton = std::move(newton);
  }
  rec.vv_final = safe_abs(f, rec.z) / state.za_abs_value;
  return rec;
}

namespace {

void resume(SearchState& state, const SearchConfig& cfg) {
  state.zn = state.zna;
  if (state.good_estimates().size() >= 2) {
    state.rd = std::max(10.0 * estimate_de(state), 1e-4);
    state.rad = state.rd / 2.0;
  }
  (void)cfg;
}

}  // namespace

ZeroRecord locate_zero(const AnalyticFunction& f, double y, Complex za, const SearchConfig& cfg) {
  SearchState state = start_search(f, y, za, cfg);
  if (state.za_abs_value == 0.0) return finish_record(f, state, 1, VariantOutcome::VeryGood, cfg);
  VariantOutcome outcome = VariantOutcome::Deferred;
  for (int v = 1; v <= static_cast<int>(cfg.c_schedule.size()); ++v) {
    if (v > 1) resume(state, cfg);
    outcome = run_variant(f, state, v, cfg);
    if (outcome != VariantOutcome::Deferred) break;
  }
  if (outcome != VariantOutcome::VeryGood) {
    throw Error(ErrorKind::SearchFailed, "no variant reached a very good integration");
  }
  return finish_record(f, state, 1, outcome, cfg);
}

std::vector<ZeroRecord> run_variants(const std::vector<ZeroSeed>& seeds, const SearchConfig& cfg) {
  cfg.validate();
  struct Slot {
    SearchState state;
    VariantOutcome outcome = VariantOutcome::Deferred;
  };
  std::vector<Slot> slots(seeds.size());
  for (std::size_t i = 0; i < seeds.size(); ++i) {
    slots[i].state = start_search(seeds[i].f, seeds[i].y, seeds[i].za, cfg);
    if (slots[i].state.za_abs_value == 0.0) slots[i].outcome = VariantOutcome::VeryGood;
  }
  const int variants = static_cast<int>(cfg.c_schedule.size());
  for (int v = 1; v <= variants; ++v) {
    for (std::size_t i = 0; i < seeds.size(); ++i) {
      Slot& slot = slots[i];
      if (slot.outcome != VariantOutcome::Deferred) continue;
      if (v > 1) resume(slot.state, cfg);
      try {
        slot.outcome = run_variant(seeds[i].f, slot.state, v, cfg);
      } catch (const Error& e) {
        if (e.kind() == ErrorKind::UsageError) throw;
        slot.outcome = VariantOutcome::Exhausted;
      }
    }
  }
  std::vector<ZeroRecord> records;
  records.reserve(seeds.size());
  for (std::size_t i = 0; i < seeds.size(); ++i) {
    records.push_back(finish_record(seeds[i].f, slots[i].state, static_cast<int>(i) + 1,
                                    slots[i].outcome, cfg));
  }
  return records;
}

}  // namespace qzeros
