// weave: command line driver for the model pipeline.
//
//   weave check MODEL [--report FILE]
//   weave build --geim F [--gecm F[:k=v,...]]... --getm F --gemm F [--germ F]
//               --out DIR [--report FILE] [--strict]
//   weave matrix --geim F --gecm-set F[:k=v,...][+F...]... --getm F... --gemm F
//                [--germ F] --out DIR [--strict]
//
// Exit codes: 0 ok, 1 invalid input or generation failure, 2 GEIM property
// violation, 3 refinement failure, 4 platform conformance failure, 64 usage.

#include <unistd.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "weave/pipeline.hpp"

namespace {

namespace cli = weave::cli;

bool use_color() {
  return std::getenv("WEAVE_NO_COLOR") == nullptr && ::isatty(::fileno(stderr)) != 0;
}

void print_summary(std::string_view command, const cli::RunResult& result) {
  bool ok = result.exit_code == cli::kOk;
  std::string tag = ok ? "ok" : "error";
  if (use_color()) tag = (ok ? "\033[32m" : "\033[31m") + tag + "\033[0m";
  std::cerr << "weave " << command << " [" << tag << "] " << result.summary << '\n';
}

std::vector<cli::PatternSpec> parse_set(const std::string& text) {
  std::vector<cli::PatternSpec> set;
  std::size_t start = 0;
  while (true) {
    auto plus = text.find('+', start);
    set.push_back(cli::parse_pattern_spec(std::string_view(text).substr(start, plus - start)));
    if (plus == std::string::npos) break;
    start = plus + 1;
  }
  return set;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"weave: refine, check and translate architecture models"};
  app.set_version_flag("--version", WEAVE_VERSION);
  app.require_subcommand(1);

  std::string model;
  std::string check_report;
  auto* check = app.add_subcommand("check", "Validate a model file and evaluate its properties");
  check->add_option("model", model, "Model file (any document kind)")->required();
  check->add_option("--report", check_report, "Write the JSON report here instead of stdout");

  cli::BuildConfig build_config;
  std::vector<std::string> gecms;
  std::string germ;
  std::string report;
  auto* build = app.add_subcommand("build", "Run the full pipeline on one GEIM");
  build->add_option("--geim", build_config.geim, "Platform independent architecture")->required();
  build->add_option("--gecm", gecms, "QoS pattern, FILE[:key=value,...]; applied in order");
  build->add_option("--getm", build_config.getm, "Platform model")->required();
  build->add_option("--gemm", build_config.gemm, "Mapping model")->required();
  build->add_option("--germ", germ, "Resource model; enables deployment planning");
  build->add_option("--out", build_config.out, "Output directory")->required();
  build->add_option("--report", report, "Report path (default OUT/report.json)");
  build->add_flag("--strict", build_config.strict, "Fail on components no mapping rule matches");

  cli::MatrixConfig matrix_config;
  std::vector<std::string> gecm_sets;
  std::string matrix_germ;
  auto* matrix = app.add_subcommand("matrix", "Build every GECM set against every platform");
  matrix->add_option("--geim", matrix_config.geim, "Platform independent architecture")
      ->required();
  matrix->add_option("--gecm-set", gecm_sets, "Pattern set, specs joined with '+'")->required();
  matrix->add_option("--getm", matrix_config.getms, "Platform model")->required();
  matrix->add_option("--gemm", matrix_config.gemm, "Mapping model")->required();
  matrix->add_option("--germ", matrix_germ, "Resource model");
  matrix->add_option("--out", matrix_config.out, "Output directory")->required();
  matrix->add_flag("--strict", matrix_config.strict, "Fail on unmatched components");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return cli::kUsage;
  }

  try {
    if (*check) {
      auto result = cli::run_check(model);
      if (check_report.empty()) {
        std::cout << cli::dump_report(result.report);
      } else {
        std::ofstream out(check_report, std::ios::binary | std::ios::trunc);
        out << cli::dump_report(result.report);
        if (!out) {
          std::cerr << "weave check: cannot write " << check_report << '\n';
          return cli::kInvalidInput;
        }
      }
      print_summary("check", result);
      return result.exit_code;
    }
    if (*build) {
      for (const auto& spec : gecms) build_config.gecms.push_back(cli::parse_pattern_spec(spec));
      if (!germ.empty()) build_config.germ = germ;
      if (!report.empty()) build_config.report = report;
      auto result = cli::run_build(build_config);
      print_summary("build", result);
      return result.exit_code;
    }
    for (const auto& set : gecm_sets) matrix_config.gecm_sets.push_back(parse_set(set));
    if (!matrix_germ.empty()) matrix_config.germ = matrix_germ;
    auto result = cli::run_matrix(matrix_config);
    print_summary("matrix", result);
    return result.exit_code;
  } catch (const cli::UsageError& e) {
    std::cerr << "weave: " << e.what() << "\n" << app.help() << '\n';
    return cli::kUsage;
  } catch (const std::exception& e) {
    std::cerr << "weave: " << e.what() << '\n';
    return cli::kInvalidInput;
  }
}
