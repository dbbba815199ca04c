// Command-line front end: simulate one cell, sweep alpha x scheme, or run
// the invariant suite. Results are written as CSV.

#include <cmath>
#include <fstream>
#include <iostream>
#include <iterator>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "swipt/swipt.hpp"

namespace {

enum ExitCode { kOk = 0, kValidation = 1, kIo = 2, kNumerical = 3 };

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw swipt::IoError("cannot open config file '" + path + "'");
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

/// Parses "a:b:step" into a, a+step, ... <= b.
std::vector<double> parse_grid(const std::string& text) {
  double v[3];
  std::size_t pos = 0;
  for (int i = 0; i < 3; ++i) {
    const auto colon = text.find(':', pos);
    if ((i < 2) == (colon == std::string::npos))
      throw swipt::ConfigError("alpha-grid", "expected a:b:step");
    v[i] = swipt::detail::parse_number<double>("alpha-grid",
                                               std::string_view(text).substr(pos, colon - pos));
    pos = colon + 1;
  }
  if (!(v[2] > 0.0) || v[1] < v[0]) throw swipt::ConfigError("alpha-grid", "need step > 0 and b >= a");
  std::vector<double> grid;
  for (std::size_t i = 0;; ++i) {
    const double a = std::round((v[0] + static_cast<double>(i) * v[2]) * 1e12) / 1e12;
    if (a > v[1] + 1e-9) break;
    grid.push_back(a);
  }
  return grid;
}

std::vector<swipt::SchemeId> parse_schemes(const std::string& list) {
  std::vector<swipt::SchemeId> out;
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto id = swipt::scheme_from_name(item);
    if (!id) throw swipt::ConfigError("schemes", "unknown scheme '" + item + "'");
    out.push_back(*id);
  }
  if (out.empty()) throw swipt::ConfigError("schemes", "empty list");
  return out;
}

void write_report(const swipt::ThroughputReport& report, const std::string& output) {
  if (output == "-") {
    swipt::emit_csv(report, std::cout);
    return;
  }
  std::ofstream out(output, std::ios::binary);
  if (!out) throw swipt::IoError("cannot open output '" + output + "'");
  swipt::emit_csv(report, out);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Slotted-time cooperative SWIPT cognitive radio simulator"};
  app.require_subcommand(1);

  std::string config_path;
  std::string output = "-";
  std::string alpha_grid = "0.05:0.95:0.1";
  std::string schemes = "first,second,third,fourth,fifth";
  unsigned threads = 0;
  std::map<std::string, std::string> flag_values;

  app.add_option("--config", config_path, "key = value config file");
  app.add_option("-o,--output", output, "CSV destination, '-' for stdout");
  for (const auto& key : swipt::config_keys())
    app.add_option("--" + key, flag_values[key], "override '" + key + "'");

  auto* simulate = app.add_subcommand("simulate", "run one (alpha, scheme) cell");
  auto* sweep = app.add_subcommand("sweep", "run an alpha grid for several schemes");
  auto* validate = app.add_subcommand("validate", "check numerical invariants at reduced scale");
  sweep->add_option("--alpha-grid", alpha_grid, "a:b:step");
  sweep->add_option("--schemes", schemes, "comma-separated scheme names");
  sweep->add_option("--threads", threads, "worker threads (0 = hardware concurrency)");
  for (auto* sub : {simulate, sweep, validate}) sub->fallthrough();

  CLI11_PARSE(app, argc, argv);

  try {
    swipt::Overrides overrides;
    for (const auto& key : swipt::config_keys())
      if (app.count("--" + key) > 0) overrides.emplace_back(key, flag_values[key]);
    const std::string text = config_path.empty() ? std::string{} : read_file(config_path);
    const swipt::SimConfig cfg = swipt::parse_config(text, overrides);

    if (simulate->parsed()) {
      swipt::ThroughputReport report;
      report.rows.push_back(swipt::run_simulation(cfg));
      write_report(report, output);
    } else if (sweep->parsed()) {
      const auto report = swipt::sweep(cfg, parse_grid(alpha_grid), parse_schemes(schemes), threads);
      write_report(report, output);
    } else {
      const auto report = swipt::run_validate(cfg);
      report.print(std::cout);
      return report.passed() ? kOk : kNumerical;
    }
  } catch (const swipt::IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kIo;
  } catch (const swipt::ParseError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kValidation;
  } catch (const swipt::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kValidation;
  } catch (const swipt::InputError& e) {
    std::cerr << "invalid input: " << e.what() << '\n';
    return kValidation;
  } catch (const swipt::NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return kNumerical;
  }
  return kOk;
}
