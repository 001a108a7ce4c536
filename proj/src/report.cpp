#include "qzeros/report.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <json.hpp>
#include <sstream>

#include "qzeros/error.hpp"
#include "qzeros/sharp_zeta.hpp"

namespace qzeros {

namespace {

using nlohmann::json;

[[noreturn]] void usage(const std::string& what) { throw Error(ErrorKind::UsageError, what); }

std::string fmt(const char* pattern, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, pattern, x);
  return buf;
}

/// 6 significant digits, the report's standard precision.
std::string num(double x) { return fmt("%.6g", x); }

std::string cnum(Complex z, const char* pattern = "%.6g") {
  const char sign = std::signbit(z.imag()) ? '-' : '+';
  return fmt(pattern, z.real()) + " " + sign + " " + fmt(pattern, std::abs(z.imag())) + " I";
}

/// char is 1 - winding; round-off below 1e-6 is printed as 0.
std::string char_text(double c) { return num(std::round(c * 1e6) / 1e6 + 0.0); }

int variant_start_c(const SearchConfig& cfg, int variant) {
  return variant == 1 ? cfg.c_initial : cfg.c_schedule[static_cast<std::size_t>(variant - 1)];
}

/// Parses a real number occupying the whole of `s`.
bool parse_real(const std::string& s, double& out) {
  if (s.empty()) return false;
  std::size_t used = 0;
  try {
    out = std::stod(s, &used);
  } catch (const std::exception&) {
    return false;
  }
  return used == s.size() && std::isfinite(out);
}

std::vector<Complex> parse_coefficients(const std::string& list) {
  std::vector<Complex> out;
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_complex(item));
  if (list.empty() || list.back() == ',') usage("empty polynomial coefficient");
  while (out.size() > 1 && out.front() == Complex{}) out.erase(out.begin());
  if (out.size() < 2) usage("polynomial target needs degree >= 1");
  return out;
}

json complex_json(Complex z) { return json{{"re", z.real()}, {"im", z.imag()}}; }

/// JSON has no infinity; an unknown de is written as null.
json real_json(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

/// Compact complex literal that parse_complex reads back exactly.
std::string complex_literal(Complex z) {
  std::string s = fmt("%.17g", z.real());
  if (z.imag() != 0.0) s += (std::signbit(z.imag()) ? "-" : "+") + fmt("%.17g", std::abs(z.imag())) + "i";
  return s;
}

std::string target_text(const RunConfig& config) {
  if (config.target == TargetKind::Sharp) return "sharp";
  std::string s = "poly:";
  for (std::size_t i = 0; i < config.coefficients.size(); ++i) {
    if (i) s += ',';
    s += complex_literal(config.coefficients[i]);
  }
  return s;
}

void add_search_options(CLI::App& app, SearchConfig& s) {
  app.add_option("--c-schedule", s.c_schedule, "Sampling density c of each variant")
      ->delimiter(',');
  app.add_option("--kappa", s.kappa, "Initial rd = clamp(kappa |za - iy|)");
  app.add_option("--rd-cap", s.rd_cap, "Upper clamp of the initial rd");
  app.add_option("--rd-floor", s.rd_floor, "Lower clamp of the initial rd");
  app.add_option("--initial-rd", s.initial_rd, "Fixed initial rd (0: kappa rule)");
  app.add_option("--vv-max", s.vv_max, "Largest vv of a good integration");
  app.add_option("--fo-good-max", s.fo_good_max, "Largest fo of a good integration");
  app.add_option("--fo-verygood-max", s.fo_verygood_max, "Largest fo of a very good one");
  app.add_option("--char-tol", s.char_tol, "Tolerance on |char|");
  app.add_option("--de-admissible", s.de_admissible, "Admissible de for very good");
  app.add_option("--residual-admissible", s.residual_admissible,
                 "Admissible |f(z)|/|f(za)| for very good");
  app.add_option("--max-integrations-per-variant", s.max_integrations_per_variant,
                 "Integration budget of one variant");
  app.add_option("--max-integrations-per-zero", s.max_integrations_per_zero,
                 "Integration budget of one zero");
  app.add_option("--newton-max-iters", s.newton_max_iters, "Newton iteration cap");
  app.add_option("--newton-tolerance", s.newton_tolerance,
                 "Newton converges once its step is <= this times de");
  app.add_option("--gap-threshold", s.integration.gap_threshold,
                 "Side-sum angle step that triggers refinement");
  app.add_option("--max-depth", s.integration.max_depth, "Refinement depth, the coarse sampling counting as 1");
}

struct CliTargets {
  std::string target = "sharp";
  std::string format = "text";
  std::vector<std::string> seeds;
};

void build_app(CLI::App& app, RunConfig& config, CliTargets& raw, double& y_max) {
  app.add_option("--a", config.a, "Deformation parameter a (q = e^{-1/a})");
  app.add_option("--d", config.d, "Parameter d");
  auto* ymax = app.add_option("--y-max", y_max, "Seed all classical zeros up to this ordinate");
  auto* ys = app.add_option("--y", config.ys, "Seed ordinate (repeatable)")->take_all();
  ymax->excludes(ys);
  app.add_option("--seed", raw.seeds, "Complex seed, polynomial target only (repeatable)");
  app.add_option("--c", config.search.c_initial, "Initial sampling density c");
  app.add_option("--b", config.b_override, "Fixed number of series blocks b");
  app.add_option("--format", raw.format, "Output format")
      ->check(CLI::IsMember({"text", "json", "csv"}));
  app.add_flag("--plot-data", config.plot_data, "Also emit the plot table");
  app.add_option("--target", raw.target, "sharp | poly:<coefficients, highest degree first>");
  app.add_option("--out", config.out_path, "Output path (default: stdout)");
  add_search_options(app, config.search);
}

}  // namespace

Complex parse_complex(const std::string& text) {
  std::string s;
  for (char ch : text) {
    if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
  }
  const auto bad = [&]() -> Complex { usage("cannot parse complex number '" + text + "'"); };
  if (s.empty()) return bad();
  const char last = s.back();
  if (last != 'i' && last != 'I' && last != 'j') {
    double re = 0.0;
    if (!parse_real(s, re)) return bad();
    return {re, 0.0};
  }
  s.pop_back();
  // Split at the last sign that is not part of an exponent.
  std::size_t split = 0;
  for (std::size_t i = s.size(); i-- > 1;) {
    if ((s[i] == '+' || s[i] == '-') && s[i - 1] != 'e' && s[i - 1] != 'E') {
      split = i;
      break;
    }
  }
  const std::string re_text = s.substr(0, split);
  std::string im_text = s.substr(split);
  if (im_text.empty() || im_text == "+") im_text = "1";
  else if (im_text == "-") im_text = "-1";
  else if (im_text.front() == '+') im_text.erase(0, 1);
  double re = 0.0;
  double im = 0.0;
  if (!re_text.empty() && !parse_real(re_text, re)) return bad();
  if (!parse_real(im_text, im)) return bad();
  return {re, im};
}

void RunConfig::validate() const {
  if (!(a > 0.0) || !std::isfinite(a)) usage("--a must be positive");
  if (!(d > 0.0) || !std::isfinite(d)) usage("--d must be positive");
  if (!ys.empty() && y_max) usage("--y-max and --y are mutually exclusive");
  if (ys.empty() && !y_max && seeds.empty()) usage("no seeds: give --y-max or --y");
  if (y_max && !(*y_max > 0.0)) usage("--y-max must be positive");
  if (b_override && *b_override < 1) usage("--b must be >= 1");
  if (target == TargetKind::Polynomial) {
    if (coefficients.size() < 2) usage("polynomial target needs degree >= 1");
    if (y_max) usage("--y-max has no meaning for a polynomial target; use --y or --seed");
    if (ys.empty() && seeds.empty()) usage("polynomial target needs --y or --seed");
  } else {
    if (!seeds.empty()) usage("--seed is only valid with a polynomial target");
    for (double y : ys) {
      if (!(y > 0.0)) usage("--y values must be positive");
    }
  }
  try {
    search.validate();
  } catch (const Error& e) {
    usage(e.what());
  }
}

RunConfig parse_cli(const std::vector<std::string>& args) {
  RunConfig config;
  CliTargets raw;
  double y_max = *config.y_max;
  CLI::App app{"Zeros of the plus-sharp q-zeta function", "qzeros"};
  build_app(app, config, raw, y_max);

  std::vector<const char*> argv{"qzeros"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    config.show_help = true;
    return config;
  } catch (const CLI::ParseError& e) {
    usage(e.what());
  }

  config.y_max = config.ys.empty() ? std::optional<double>(y_max) : std::nullopt;
  config.format = raw.format == "json"  ? OutputFormat::Json
                  : raw.format == "csv" ? OutputFormat::Csv
                                        : OutputFormat::Text;
  if (raw.target == "sharp") {
    config.target = TargetKind::Sharp;
  } else if (raw.target.rfind("poly:", 0) == 0) {
    config.target = TargetKind::Polynomial;
    config.coefficients = parse_coefficients(raw.target.substr(5));
    if (app.count("--y-max") == 0) config.y_max.reset();
    if (config.search.initial_rd == 0.0) config.search.initial_rd = config.search.rd_cap;
  } else {
    usage("--target must be 'sharp' or 'poly:<coefficients>'");
  }
  for (const auto& s : raw.seeds) config.seeds.push_back(parse_complex(s));
  config.validate();
  return config;
}

std::string cli_help() {
  RunConfig config;
  CliTargets raw;
  double y_max = 0.0;
  CLI::App app{"Zeros of the plus-sharp q-zeta function", "qzeros"};
  build_app(app, config, raw, y_max);
  return app.help();
}

Complex evaluate_polynomial(const std::vector<Complex>& coefficients, Complex k) {
  Complex acc{};
  for (const Complex& c : coefficients) acc = acc * k + c;
  return acc;
}

RunResult execute(const RunConfig& config) {
  config.validate();
  RunResult run;
  run.config = config;
  std::vector<ZeroSeed> seeds;
  if (config.target == TargetKind::Sharp) {
    const std::vector<double> ys = config.ys.empty() ? classical_zeros(*config.y_max) : config.ys;
    for (double y : ys) {
      const Complex za = linear_approximation(y, config.a, config.d);
      const int b = config.b_override.value_or(
          select_truncation(config.a, config.d, std::max(y, za.imag()) + 0.5));
      run.seeds.push_back({static_cast<int>(run.seeds.size()) + 1, y, za, b});
      seeds.push_back({y, za, SharpZeta(SharpParams::make(config.a, config.d, b))});
    }
  } else {
    const auto poly = [coefficients = config.coefficients](Complex k) {
      return evaluate_polynomial(coefficients, k);
    };
    std::vector<std::pair<double, Complex>> points;
    for (double y : config.ys) points.emplace_back(y, Complex{y, 0.0});
    for (Complex s : config.seeds) points.emplace_back(s.imag(), s);
    for (const auto& [y, za] : points) {
      run.seeds.push_back({static_cast<int>(run.seeds.size()) + 1, y, za, 0});
      seeds.push_back({y, za, poly});
    }
  }
  run.records = run_variants(seeds, config.search);
  return run;
}

std::string emit_text_report(const RunResult& run) {
  const RunConfig& cfg = run.config;
  const bool sharp = cfg.target == TargetKind::Sharp;
  std::ostringstream out;

  // (i) seeds.
  if (sharp) {
    out << "PROGRAM: Q-ZEROS of SHARP ZETA\n\n";
    out << "CLASSICAL ZEROS AND APPROXIMATIONS:\n\n";
    out << "d= " << num(cfg.d) << "  a= " << num(cfg.a);
    if (cfg.y_max) out << "  ALL ZEROS TILL " << num(*cfg.y_max) << ":\n\n";
    else out << "  SELECTED ZEROS:\n\n";
  } else {
    out << "PROGRAM: ZEROS of POLYNOMIAL " << target_text(cfg).substr(5) << "\n\n";
    out << "SEEDS AND APPROXIMATIONS:\n\n";
  }
  if (run.seeds.empty()) {
    out << "no zeros requested\n";
    return out.str();
  }
  for (const auto& s : run.seeds) {
    out << s.index << "  y= " << num(s.y) << "  za= " << cnum(s.za);
    if (sharp) out << "  b= " << s.b;
    out << "\n";
  }
  out << "\n";

  // (ii) traces, grouped by variant like the original listing.
  int variants = 1;
  for (const auto& r : run.records) {
    for (const auto& st : r.trace_log) variants = std::max(variants, st.variant);
  }
  for (int v = 1; v <= variants; ++v) {
    out << "VARIANT= " << v << "  c= " << variant_start_c(cfg.search, v) << "\n\n";
    for (std::size_t i = 0; i < run.records.size(); ++i) {
      const ZeroRecord& rec = run.records[i];
      const SeedInfo& seed = run.seeds[i];
      bool any = false;
      for (const auto& st : rec.trace_log) {
        if (st.variant != v) continue;
        any = true;
        const IntegrationResult& r = st.result;
        if (st.second_try) out << "second try:\n\n";
        out << " no= " << rec.index << "  y= " << num(rec.y);
        if (sharp) out << " b= " << seed.b;
        out << " c= " << r.c << "\n";
        out << "zna= " << cnum(st.zna) << "\n";
        out << "zn= " << cnum(r.rect.center) << "\n";
        out << "rd= " << num(r.rect.half_width) << " rad= " << num(r.rect.half_height) << "\n";
        out << "angles over the rd*rad rectangle:\n";
        const auto angles = r.trace.side_sum_angles();
        const auto grid = r.trace.grid();
        for (std::size_t j = 0; j < angles.size(); ++j) {
          char label[32];
          if (grid[j].is_main()) std::snprintf(label, sizeof label, "%-6d", grid[j].main);
          else std::snprintf(label, sizeof label, "%-3d%-3d", grid[j].main, r.trace.sub_index(grid[j]));
          out << label << num(angles[j]) << "\n";
        }
        out << "char= " << char_text(r.char_value) << " fo= " << r.fo << "\n";
        out << "z= " << cnum(r.z_estimate) << "\n";
        out << "vv= " << num(r.vv) << "\n";
        switch (st.verdict) {
          case StepVerdict::VeryGood: out << "good\nvery good\n"; break;
          case StepVerdict::Good: out << "good\n"; break;
          case StepVerdict::NotGood: out << "not good\n"; break;
        }
        out << "\n";
      }
      if (!any) continue;
      const bool finished_here = !rec.trace_log.empty() && rec.trace_log.back().variant == v;
      if (finished_here && rec.verdict == ZeroVerdict::VeryGood && rec.newton) {
        if (rec.newton_applied) {
          out << "iterations:\n";
          out << "z= " << cnum(rec.z) << "\n";
          out << "vv= " << num(rec.vv_final) << "\n\n";
        } else {
          out << "iterations do not work\n\n";
        }
      } else if (finished_here && v == variants && rec.verdict != ZeroVerdict::VeryGood) {
        out << "no very good integration\n\n";
      }
    }
  }

  // (iii) final list.
  out << "FINAL LIST OF " << (sharp ? "Q-ZEROS" : "ZEROS") << ":\n\n";
  for (const auto& rec : run.records) {
    const char* verdict = rec.verdict == ZeroVerdict::VeryGood   ? "very good"
                          : rec.verdict == ZeroVerdict::GoodOnly ? "good only"
                                                                 : "failed";
    out << verdict << " " << rec.index << "  " << fmt("%.4f", rec.y) << "  z: "
        << cnum(rec.z, "%.4f") << "\n";
    out << "  za= " << cnum(rec.za) << "  de= " << num(rec.de) << "  vv= " << num(rec.vv_final)
        << "\n\n";
  }
  return out.str();
}

std::string emit_json(const RunResult& run) {
  const RunConfig& cfg = run.config;
  const SearchConfig& s = cfg.search;
  json config{
      {"a", cfg.a},
      {"d", cfg.d},
      {"y_max", cfg.y_max ? json(*cfg.y_max) : json(nullptr)},
      {"ys", cfg.ys},
      {"b_override", cfg.b_override ? json(*cfg.b_override) : json(nullptr)},
      {"target", target_text(cfg)},
      {"c_initial", s.c_initial},
      {"c_schedule", s.c_schedule},
      {"kappa", s.kappa},
      {"rd_cap", s.rd_cap},
      {"rd_floor", s.rd_floor},
      {"initial_rd", s.initial_rd},
      {"vv_max", s.vv_max},
      {"fo_good_max", s.fo_good_max},
      {"fo_verygood_max", s.fo_verygood_max},
      {"char_tol", s.char_tol},
      {"de_admissible", s.de_admissible},
      {"residual_admissible", s.residual_admissible},
      {"max_integrations_per_variant", s.max_integrations_per_variant},
      {"max_integrations_per_zero", s.max_integrations_per_zero},
      {"newton_max_iters", s.newton_max_iters},
      {"newton_tolerance", s.newton_tolerance},
      {"gap_threshold", s.integration.gap_threshold},
      {"max_depth", s.integration.max_depth},
  };
  json seeds = json::array();
  for (const auto& sd : run.seeds) {
    seeds.push_back({{"y", sd.y}, {"za", complex_json(sd.za)}, {"b", sd.b}});
  }
  config["seeds"] = seeds;

  json zeros = json::array();
  for (const auto& rec : run.records) {
    json integrations = json::array();
    for (const auto& st : rec.trace_log) {
      const IntegrationResult& r = st.result;
      integrations.push_back({
          {"zn", complex_json(r.rect.center)},
          {"rd", r.rect.half_width},
          {"rad", r.rect.half_height},
          {"c", r.c},
          {"char", r.char_value},
          {"fo", r.fo},
          {"vv", r.vv},
          {"z_estimate", complex_json(r.z_estimate)},
          {"angles", r.trace.side_sum_angles()},
      });
    }
    zeros.push_back({
        {"index", rec.index},
        {"y", rec.y},
        {"za", complex_json(rec.za)},
        {"z", complex_json(rec.z)},
        {"de", real_json(rec.de)},
        {"vv", real_json(rec.vv_final)},
        {"verdict", std::string(to_string(rec.verdict))},
        {"newton_applied", rec.newton_applied},
        {"integrations", integrations},
    });
  }
  json doc{{"config", config}, {"zeros", zeros}};
  return doc.dump(2) + "\n";
}

std::string emit_csv(const RunResult& run) {
  std::string out = "index,y,re_za,im_za,re_z,im_z,de,vv,verdict,newton_applied,b\r\n";
  for (std::size_t i = 0; i < run.records.size(); ++i) {
    const ZeroRecord& r = run.records[i];
    out += std::to_string(r.index) + "," + fmt("%.17g", r.y) + "," + fmt("%.17g", r.za.real()) +
           "," + fmt("%.17g", r.za.imag()) + "," + fmt("%.17g", r.z.real()) + "," +
           fmt("%.17g", r.z.imag()) + "," + fmt("%.17g", r.de) + "," + fmt("%.17g", r.vv_final) +
           "," + std::string(to_string(r.verdict)) + "," + (r.newton_applied ? "true" : "false") +
           "," + std::to_string(run.seeds[i].b) + "\r\n";
  }
  return out;
}

std::string emit_plot_data(const RunResult& run) {
  std::string out = "y,re_za,im_za,re_z,im_z,de,vv\r\n";
  for (const auto& r : run.records) {
    out += fmt("%.17g", r.y) + "," + fmt("%.17g", r.za.real()) + "," + fmt("%.17g", r.za.imag()) +
           "," + fmt("%.17g", r.z.real()) + "," + fmt("%.17g", r.z.imag()) + "," +
           fmt("%.17g", r.de) + "," + fmt("%.17g", r.vv_final) + "\r\n";
  }
  return out;
}

std::string emit_report(const RunResult& run) {
  switch (run.config.format) {
    case OutputFormat::Json: return emit_json(run);
    case OutputFormat::Csv: return emit_csv(run);
    case OutputFormat::Text: break;
  }
  return emit_text_report(run);
}

int exit_status(const RunResult& run) {
  const bool failed = std::any_of(run.records.begin(), run.records.end(), [](const ZeroRecord& r) {
    return r.verdict == ZeroVerdict::Failed;
  });
  return failed ? 1 : 0;
}

}  // namespace qzeros
