// Acceptance checks for the a = 750, d = 2 reproduction: one PASS/FAIL line
// per criterion, with the measured numbers underneath. Exit status is the
// number of failed criteria.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "qzeros/report.hpp"
#include "qzeros/sharp_zeta.hpp"

using namespace qzeros;

namespace {

constexpr double kA = 750.0;
constexpr double kD = 2.0;

// Published tables (4 decimals for positions, 6 decimals for de and vv).
const std::vector<Complex> kTableZa = {
    {0.1303, 14.1465}, {0.3504, 21.0771}, {0.5745, 24.9643}, {0.9134, 30.4077}, {1.0998, 33.0854},
    {1.7675, 38.1895}, {1.9141, 40.7816}, {2.4497, 43.3138}, {3.1103, 47.5578}};
const std::vector<int> kTableB = {15, 15, 15, 15, 15, 20, 20, 20, 20};
const std::vector<Complex> kFinalZ = {
    {0.1304, 14.1450}, {0.3514, 21.0702}, {0.5641, 24.9586}, {0.9046, 30.4014}, {1.1051, 33.0341},
    {1.6449, 37.9659}, {1.9080, 40.8119}, {2.2860, 43.2485}, {2.9259, 47.8424}};
const std::vector<double> kFinalDe = {1e-6, 1e-6, 1e-6, 1e-6, 1e-6, 4.0e-5, 3.1e-5, 3.0e-5, 5e-6};
const std::vector<double> kFinalVv = {1e-6,     1e-6,     1e-6,     1.9e-5,  1.16e-4,
                                      1.053e-3, 1.3871e-2, 1.586e-3, 3.049e-3};
// Smallest value the 6-decimal tables can show.
constexpr double kDisplayFloor = 1e-6;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Outcome {
  bool pass = true;
  std::vector<std::string> notes;

  void check(bool ok, const std::string& note) {
    pass = pass && ok;
    notes.push_back(std::string(ok ? "ok   " : "FAIL ") + note);
  }
};

std::string fmt(const char* pattern, double x) {
  char buf[128];
  std::snprintf(buf, sizeof buf, pattern, x);
  return buf;
}

std::string fmt_c(Complex z) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "%.6f%+.6fi", z.real(), z.imag());
  return buf;
}

/// Agreement "within a factor of 10" where a printed 0.000001 reads as
/// "at or below the display floor", matched by anything <= 10 x floor.
bool within_decade(double ours, double published) {
  if (published <= kDisplayFloor) return ours <= 10.0 * kDisplayFloor;
  return ours >= published / 10.0 && ours <= published * 10.0;
}

Outcome criterion1() {
  Outcome o;
  const auto t0 = Clock::now();
  const auto ys = classical_zeros(48.5406);
  o.check(ys.size() == 9, "nine classical ordinates below 48.5406");
  for (std::size_t i = 0; i < ys.size() && i < kTableZa.size(); ++i) {
    const Complex za = linear_approximation(ys[i], kA, kD);
    const double err = std::abs(za - kTableZa[i]);
    o.check(err <= 5e-4, "za" + std::to_string(i + 1) + " = " + fmt_c(za) + "  |dz| = " + fmt("%.2e", err));
  }
  const double t = seconds_since(t0);
  o.check(t < 5.0, "runtime " + fmt("%.3f", t) + " s < 5 s");
  return o;
}

Outcome criterion2(const RunResult& run, double runtime) {
  Outcome o;
  o.check(run.records.size() == 9, "nine records");
  for (std::size_t i = 0; i < run.records.size() && i < kFinalZ.size(); ++i) {
    const auto& r = run.records[i];
    const double err = std::abs(r.z - kFinalZ[i]);
    o.check(r.verdict == ZeroVerdict::VeryGood && err <= 2e-3,
            "z" + std::to_string(i + 1) + " = " + fmt_c(r.z) + " " + std::string(to_string(r.verdict)) +
                "  |dz| = " + fmt("%.2e", err));
  }
  o.check(runtime < 300.0, "runtime " + fmt("%.3f", runtime) + " s < 300 s");
  return o;
}

Outcome criterion3() {
  Outcome o;
  const auto ys = classical_zeros(48.5406);
  for (std::size_t i = 0; i < ys.size() && i < kTableB.size(); ++i) {
    const Complex za = linear_approximation(ys[i], kA, kD);
    const int b = select_truncation(kA, kD, std::max(ys[i], za.imag()) + 0.5);
    o.check(b == kTableB[i], "b" + std::to_string(i + 1) + " = " + std::to_string(b) +
                                 " (table " + std::to_string(kTableB[i]) + ")");
  }
  return o;
}

Outcome criterion4(const RunResult& run) {
  Outcome o;
  const SearchConfig cfg;
  const SharpZeta f(SharpParams::make(kA, kD, 20));
  const auto r = integrate(f, Rectangle::make({3.11028, 47.5578}, 0.5, 0.25), 4, cfg.integration);
  o.check(std::abs(r.char_value - 1.0) <= 0.05, "zero-9 seed rectangle char = " + fmt("%.6f", r.char_value));
  if (run.records.size() == 9) {
    const auto& rec = run.records[8];
    const auto& log = rec.trace_log;
    const bool enlarged = log.size() >= 2 && log[1].result.rect.half_width == 2.0 * log[0].result.rect.half_width;
    o.check(enlarged, "retry enlarged the rectangle to rd = " +
                          fmt("%g", log.size() >= 2 ? log[1].result.rect.half_width : 0.0));
    o.check(rec.verdict == ZeroVerdict::VeryGood, "zero 9 converged: " + fmt_c(rec.z));
  } else {
    o.check(false, "zero 9 missing from the run");
  }
  return o;
}

Outcome criterion5(const RunResult& run) {
  Outcome o;
  std::vector<int> deferred;
  for (const auto& rec : run.records) {
    bool v2 = false;
    for (const auto& st : rec.trace_log) v2 |= st.variant == 2;
    if (v2) deferred.push_back(rec.index);
    if (v2) {
      o.check(rec.trace_log.back().variant == 2 && rec.verdict == ZeroVerdict::VeryGood,
              "zero " + std::to_string(rec.index) + " completed in variant 2");
    }
  }
  std::string list;
  for (int i : deferred) list += std::to_string(i) + " ";
  o.check(deferred == std::vector<int>{4, 9}, "deferred to variant 2: " + list + "(expected 4 9)");
  const int c2 = run.config.search.c_schedule.size() > 1 ? run.config.search.c_schedule[1] : 0;
  o.check(c2 == 6, "variant 2 starts at c = " + std::to_string(c2));
  return o;
}

Outcome criterion6(const RunResult& run) {
  Outcome o;
  for (std::size_t i = 0; i < run.records.size() && i < kFinalVv.size(); ++i) {
    const auto& r = run.records[i];
    o.check(within_decade(r.vv_final, kFinalVv[i]),
            "vv" + std::to_string(i + 1) + " = " + fmt("%.3e", r.vv_final) + " (table " + fmt("%g", kFinalVv[i]) + ")");
    o.check(within_decade(r.de, kFinalDe[i]),
            "de" + std::to_string(i + 1) + " = " + fmt("%.3e", r.de) + " (table " + fmt("%g", kFinalDe[i]) + ")");
  }
  if (run.records.size() == 9) {
    o.check(run.records[0].vv_final <= 1e-5, "vv1 <= 1e-5");
    const double vv7 = run.records[6].vv_final;
    o.check(vv7 >= 1e-3 && vv7 <= 1e-1, "vv7 in [1e-3, 1e-1]");
  }
  return o;
}

/// Relative tail |S_B - S_{B+50}| / |S_{B+50}| at k.
double relative_tail(const SharpParams& p, Complex k) {
  const Complex s_b = evaluate(p, k);
  const Complex s_more = evaluate(p.with_terms(p.terms() + 50), k);
  return std::abs(s_b - s_more) / std::abs(s_more);
}

Outcome criterion7(const RunResult& run) {
  Outcome o;
  const auto t0 = Clock::now();
  std::mt19937_64 rng(424242);
  std::uniform_real_distribution<double> u(-1.0, 1.0);

  // Winding integrality on 200 random polynomials.
  {
    std::uniform_int_distribution<int> degree(1, 6);
    int bad = 0;
    double worst = 0.0;
    for (int n = 0; n < 200; ++n) {
      const double rd = 0.05 + 0.95 * std::abs(u(rng));
      const auto rect = Rectangle::make({u(rng), 10.0 + 5.0 * u(rng)}, rd, rd / 2.0);
      const double margin = 0.2 * std::min(rect.half_width, rect.half_height);
      std::vector<Complex> roots;
      for (int i = degree(rng); i > 0;) {
        const Complex z = rect.center + Complex{2.5 * u(rng) * rect.half_width, 2.5 * u(rng) * rect.half_height};
        const double dx = std::abs(z.real() - rect.center.real()) - rect.half_width;
        const double dy = std::abs(z.imag() - rect.center.imag()) - rect.half_height;
        const double distance = (dx < 0 && dy < 0) ? std::min(-dx, -dy) : std::hypot(std::max(dx, 0.0), std::max(dy, 0.0));
        if (distance < margin) continue;
        roots.push_back(z);
        --i;
      }
      const AnalyticFunction f = [&roots](Complex k) {
        Complex v{1.0, 0.0};
        for (Complex r : roots) v *= k - r;
        return v;
      };
      const double ch = integrate(f, rect, 4).char_value;
      const double off = std::abs(ch - std::round(ch));
      worst = std::max(worst, off);
      bad += off >= 0.02 ? 1 : 0;
    }
    o.check(bad == 0, "winding integrality, 200 polynomials: worst |char - round| = " + fmt("%.2e", worst));
  }

  // Inside root of random cubics.
  {
    const auto rect = Rectangle::make({0.0, 0.0}, 1.0, 0.5);
    const double diam = 2.0 * std::hypot(rect.half_width, rect.half_height);
    double worst = 0.0;
    for (int n = 0; n < 100;) {
      const Complex inside{0.5 * u(rng) * rect.half_width, 0.5 * u(rng) * rect.half_height};
      Complex out[2];
      for (Complex& z : out) {
        do {
          z = Complex{4.0 * u(rng), 4.0 * u(rng)};
        } while (std::abs(z.real()) < rect.half_width + 0.5 * diam && std::abs(z.imag()) < rect.half_height + 0.5 * diam);
      }
      ++n;
      const AnalyticFunction f = [&](Complex k) { return (k - inside) * (k - out[0]) * (k - out[1]); };
      worst = std::max(worst, std::abs(integrate(f, rect, 4).z_estimate - inside) / diam);
    }
    o.check(worst <= 1e-4, "moment estimate on 100 random cubics: worst error " + fmt("%.2e", worst) + " diam");
  }

  // Eta identities.
  {
    const double e1 = std::abs(zeta_plus({1.0, 0.0}) - std::numbers::ln2);
    const double e0 = std::abs(zeta_plus({0.0, 0.0}) - 0.5);
    const double d0 = std::abs(zeta_plus_derivative({0.0, 0.0}) - 0.5 * std::log(std::numbers::pi / 2.0));
    o.check(std::max({e1, e0, d0}) <= 1e-10, "eta(1) = ln 2, eta(0) = 1/2, eta'(0) = ln(pi/2)/2: worst " +
                                                 fmt("%.2e", std::max({e1, e0, d0})));
  }

  // Derivative against central differences.
  {
    double worst = 0.0;
    const double h = 1e-5;
    for (int n = 0; n < 50; ++n) {
      const Complex s{0.75 + 1.75 * u(rng), 50.0 * u(rng)};
      const Complex fd = (zeta_plus(s + h) - zeta_plus(s - h)) / (2.0 * h);
      worst = std::max(worst, std::abs(zeta_plus_derivative(s) - fd));
    }
    o.check(worst <= 1e-6, "zeta_plus_derivative vs central differences, 50 points: worst " + fmt("%.2e", worst));
  }

  // Truncation Cauchy property on every rectangle of the nine searches.
  for (const auto& seed : run.seeds) {
    const auto p = SharpParams::make(kA, kD, seed.b);
    double worst = 0.0;
    const auto& rec = run.records[static_cast<std::size_t>(seed.index - 1)];
    for (const auto& st : rec.trace_log) {
      for (const auto& s : st.result.trace.samples()) worst = std::max(worst, relative_tail(p, s.point));
    }
    o.check(worst < 1e-8, "zero " + std::to_string(seed.index) + " (b = " + std::to_string(seed.b) +
                              "): worst |S_B - S_B+50| / |S_B+50| on its rectangles = " + fmt("%.2e", worst));
  }

  const double t = seconds_since(t0);
  o.check(t < 120.0, "runtime " + fmt("%.2f", t) + " s < 120 s");
  return o;
}

Outcome criterion8(const std::string& first_json) {
  Outcome o;
  const RunResult again = execute(parse_cli({}));
  const bool same = emit_json(again) == first_json;
  o.check(same, std::string("second default run JSON is ") + (same ? "byte-identical" : "different") +
                    " (" + std::to_string(first_json.size()) + " bytes)");
  return o;
}

}  // namespace

int main() {
  const auto t0 = Clock::now();
  const RunResult run = execute(parse_cli({}));
  const double run_time = seconds_since(t0);
  const std::string first_json = emit_json(run);

  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"linear approximations match the table", [] { return criterion1(); }},
      {"nine very good zeros match the final list", [&] { return criterion2(run, run_time); }},
      {"truncation b column", [] { return criterion3(); }},
      {"zero-9 miss detection and recovery", [&] { return criterion4(run); }},
      {"zeros 4 and 9 deferred to variant 2", [&] { return criterion5(run); }},
      {"final vv and de within a factor of 10", [&] { return criterion6(run); }},
      {"property suite", [&] { return criterion7(run); }},
      {"deterministic JSON", [&] { return criterion8(first_json); }},
  };

  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const Outcome o = criteria[i].second();
    std::printf("[%s] criterion %zu: %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str());
    for (const auto& note : o.notes) std::printf("         %s\n", note.c_str());
    failed += o.pass ? 0 : 1;
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed;
}
