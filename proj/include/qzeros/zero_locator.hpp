#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "qzeros/winding_engine.hpp"

namespace qzeros {

/// Knobs of the per-zero search. Defaults reproduce the a=750, d=2 run.
struct SearchConfig {
  int c_initial = 4;
  std::vector<int> c_schedule{4, 6, 9};
  /// Initial rectangle: rd = clamp(kappa |za - iy|, rd_floor, rd_cap).
  double kappa = 0.365;
  double rd_cap = 0.5;
  double rd_floor = 1e-3;
  /// When positive, the initial half-width is this value instead of the
  /// kappa rule (used when seeds carry no meaningful ordinate).
  double initial_rd = 0.0;
  double vv_max = 0.8;
  int fo_good_max = 2;
  int fo_verygood_max = 1;
  double char_tol = 0.05;
  /// "Very good" also needs de <= de_admissible and a cumulative residual
  /// |f(z)| / |f(za)| <= residual_admissible.
  double de_admissible = 3e-4;
  double residual_admissible = 1.6e-2;
  int max_integrations_per_variant = 4;
  int max_integrations_per_zero = 12;
  int newton_max_iters = 5;
  /// Newton has converged once its step is at most newton_tolerance * de.
  double newton_tolerance = 3e-2;
  /// The search integrates with the first-order start-point rule: its
  /// per-step contraction is what the residual/de admissibility is tuned to.
  IntegrationOptions integration{1.0, 3, MomentRule::StartPoint};

  /// Throws RangeUnsupported when an invariant is violated.
  void validate() const;
};

enum class StepVerdict { NotGood, Good, VeryGood };
enum class ZeroVerdict { VeryGood, GoodOnly, Failed };

std::string_view to_string(StepVerdict v);
std::string_view to_string(ZeroVerdict v);

/// One integration of a search together with the decisions taken on it.
struct SearchStep {
  int variant = 1;
  bool second_try = false;  // c was escalated right before this integration
  Complex zna;
  IntegrationResult result;
  StepVerdict verdict = StepVerdict::NotGood;
};

struct NewtonOutcome {
  Complex z;
  bool accepted = false;
  /// Iterates after each applied step.
  std::vector<Complex> iterates;
  double last_step = 0.0;
};

/// Mutable state of one zero's search; persists across variants.
struct SearchState {
  double y = 0.0;
  Complex za;
  Complex zna;
  Complex zn;
  double rd = 0.0;
  double rad = 0.0;
  int c = 0;
  int consecutive_good = 0;
  int goods_at_c = 0;
  double za_abs_value = 0.0;
  double best_abs_value = 0.0;
  std::vector<SearchStep> history;

  /// z estimates of the good integrations, oldest first.
  std::vector<Complex> good_estimates() const;
};

struct ZeroRecord {
  int index = 0;
  double y = 0.0;
  Complex za;
  Complex z;
  double de = 0.0;
  double vv_final = 0.0;
  ZeroVerdict verdict = ZeroVerdict::Failed;
  bool newton_applied = false;
  std::optional<NewtonOutcome> newton;
  std::vector<SearchStep> trace_log;
};

/// Rectangle centered at za with rd = clamp(kappa |za - iy|) (or initial_rd
/// when set) and rad = rd/2.
Rectangle initial_rectangle(Complex za, double y, const SearchConfig& cfg);

/// Classification of `step` against the state it was run from.
StepVerdict assess(const IntegrationResult& result, const SearchState& state,
                   const SearchConfig& cfg);

/// de = max(1e-6, 0.1 |z_last - z_prev|) over the good estimates.
/// Throws InsufficientHistory with fewer than two.
double estimate_de(const SearchState& state);

/// Newton polish with central-difference derivative; see ZeroRecord.newton.
NewtonOutcome newton_refine(const AnalyticFunction& f, Complex z0, double de,
                            const SearchConfig& cfg);

/// Fresh search state at the initial rectangle (c = cfg.c_initial).
SearchState start_search(const AnalyticFunction& f, double y, Complex za, const SearchConfig& cfg);

enum class VariantOutcome { VeryGood, Deferred, Exhausted };

/// Runs one variant of the search on `state`: starts at c_schedule[variant-1]
/// and may escalate once to the next entry.
VariantOutcome run_variant(const AnalyticFunction& f, SearchState& state, int variant,
                           const SearchConfig& cfg);

/// Turns a finished state into a record (de, Newton, vv_final).
ZeroRecord finish_record(const AnalyticFunction& f, const SearchState& state, int index,
                         VariantOutcome outcome, const SearchConfig& cfg);

/// Single-zero search through every variant of c_schedule.
/// Throws SearchFailed if no variant reaches VeryGood.
ZeroRecord locate_zero(const AnalyticFunction& f, double y, Complex za,
                       const SearchConfig& cfg = {});

struct ZeroSeed {
  double y = 0.0;
  Complex za;
  AnalyticFunction f;
};

/// All seeds through variant 1, leftovers through variant 2, ... Records come
/// back in seed order; a zero that never reaches VeryGood is reported as
/// GoodOnly or Failed instead of throwing.
std::vector<ZeroRecord> run_variants(const std::vector<ZeroSeed>& seeds,
                                     const SearchConfig& cfg = {});

}  // namespace qzeros
