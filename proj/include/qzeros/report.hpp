#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qzeros/zero_locator.hpp"

namespace qzeros {

enum class OutputFormat { Text, Json, Csv };
enum class TargetKind { Sharp, Polynomial };

/// Everything a run needs. Defaults reproduce the a = 750, d = 2 run with
/// initial c = 4 over all classical zeros up to 48.5406.
struct RunConfig {
  double a = 750.0;
  double d = 2.0;
  /// Exactly one of y_max / ys is used: ys when non-empty, otherwise y_max.
  std::optional<double> y_max = 48.5406;
  std::vector<double> ys;
  /// Complex seeds (polynomial target only); appended after the ys seeds.
  std::vector<Complex> seeds;
  std::optional<int> b_override;
  OutputFormat format = OutputFormat::Text;
  bool plot_data = false;
  TargetKind target = TargetKind::Sharp;
  /// Polynomial coefficients, highest degree first.
  std::vector<Complex> coefficients;
  /// Empty: write to stdout.
  std::string out_path;
  SearchConfig search;
  /// Set by parse_cli when -h/--help was given; nothing else is meaningful then.
  bool show_help = false;

  /// Throws UsageError when the fields are inconsistent.
  void validate() const;
};

/// One seed of the run: the classical ordinate (or the seed's coordinate in
/// polynomial mode), its starting point and, for the sharp target, the number
/// of series blocks b (0 otherwise).
struct SeedInfo {
  int index = 0;
  double y = 0.0;
  Complex za;
  int b = 0;
};

struct RunResult {
  RunConfig config;
  std::vector<SeedInfo> seeds;
  std::vector<ZeroRecord> records;
};

/// Parses "1", "-2.5", "3i", "-i", "1+2i", "1.5e-3-2e-1i" (also with 'I' or 'j').
/// Throws UsageError on anything else.
Complex parse_complex(const std::string& text);

/// Parses command-line arguments (without the program name).
/// Throws UsageError on an unknown flag or an unparsable value.
RunConfig parse_cli(const std::vector<std::string>& args);

/// Help text listing every flag.
std::string cli_help();

/// Horner evaluation of the polynomial with coefficients highest degree first.
Complex evaluate_polynomial(const std::vector<Complex>& coefficients, Complex k);

/// Builds the seeds of `config` and runs every search.
RunResult execute(const RunConfig& config);

/// Three sections: seeds and approximations, the per-variant traces, and the
/// final list. General numbers carry 6 significant digits; the final-list z
/// is printed with 4 decimals.
std::string emit_text_report(const RunResult& run);

/// Fixed-schema JSON document (see README).
std::string emit_json(const RunResult& run);

/// One row per zero: index, y, za, z, de, vv, verdict, newton_applied, b.
std::string emit_csv(const RunResult& run);

/// Plot table: header y,re_za,im_za,re_z,im_z,de,vv and one row per zero.
std::string emit_plot_data(const RunResult& run);

/// Output of the configured format.
std::string emit_report(const RunResult& run);

/// Process exit status of a finished run: 1 if any zero ended Failed, else 0.
int exit_status(const RunResult& run);

}  // namespace qzeros
