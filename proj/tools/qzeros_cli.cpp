// Command-line driver: parse flags, run every search, write the report.
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "qzeros/error.hpp"
#include "qzeros/report.hpp"

namespace {

bool write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  out << content;
  return static_cast<bool>(out);
}

}  // namespace

int main(int argc, char** argv) {
  using namespace qzeros;
  RunConfig config;
  try {
    config = parse_cli(std::vector<std::string>(argv + 1, argv + argc));
  } catch (const Error& e) {
    std::cerr << e.what() << "\nRun with --help for the list of flags.\n";
    return 2;
  }
  if (config.show_help) {
    std::cout << cli_help();
    return 0;
  }

  RunResult run;
  try {
    run = execute(config);
  } catch (const Error& e) {
    std::cerr << e.what() << "\n";
    return e.kind() == ErrorKind::UsageError ? 2 : 1;
  }

  std::string report = emit_report(run);
  std::string plot = config.plot_data ? emit_plot_data(run) : std::string{};
  if (config.out_path.empty()) {
    std::cout << report;
    if (!plot.empty()) std::cout << "\n" << plot;
  } else {
    if (!write_file(config.out_path, report) ||
        (!plot.empty() && !write_file(config.out_path + ".plot.csv", plot))) {
      std::cerr << "cannot write " << config.out_path << "\n";
      return 1;
    }
  }
  return exit_status(run);
}
