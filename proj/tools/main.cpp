// disquo: simulate, analyze and sweep crossbar schedulers.

#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "disquo/analysis_report.hpp"
#include "disquo/experiment.hpp"

namespace fs = std::filesystem;

namespace {

void print_summary(const std::vector<disquo::RunStats>& rows) {
  for (const auto& r : rows) {
    std::cout << disquo::to_string(r.scheduler) << " n=" << r.n << " k=" << r.k << " sigma=" << r.sigma;
    if (r.mean_delay) std::cout << " delay=" << *r.mean_delay << " +- " << r.ci95;
    else std::cout << " delay=n/a";
    std::cout << " throughput=" << r.throughput << (r.stable ? " stable" : " UNSTABLE") << " slope=" << r.slope
              << '\n';
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"DISQUO crossbar scheduler simulator and chain analyzer"};
  app.require_subcommand(1);

  std::string config_path, out_dir;
  bool raw = false;
  auto* simulate = app.add_subcommand("simulate", "Run the experiment described by a JSON config");
  simulate->add_option("--config", config_path, "JSON experiment config")->required()->check(CLI::ExistingFile);
  simulate->add_option("--out", out_dir, "Existing output directory")->required();
  simulate->add_flag("--raw", raw, "Also write raw.jsonl with sampled per-slot state");

  int n = 2;
  std::string weights = "zero";
  std::string analyze_out;
  auto* analyze = app.add_subcommand("analyze", "Exact Markov-chain analysis for a small switch");
  analyze->add_option("--n", n, "Switch size")->required()->check(CLI::Range(1, 4));
  analyze->add_option("--weights", weights,
                      "zero | uniform:<w> | diag:<w> | random:<seed>[:<wmax>] | JSON file with an N x N array")
      ->required();
  analyze->add_option("--out", analyze_out, "Existing output directory")->required();

  std::string sweep_config, param, sweep_out = ".";
  std::vector<double> values;
  bool sweep_raw = false;
  auto* sweep = app.add_subcommand("sweep", "Run a config over a list of parameter values");
  sweep->add_option("--config", sweep_config, "JSON experiment config")->required()->check(CLI::ExistingFile);
  sweep->add_option("--param", param, "sigma | omega | n | k")->required();
  sweep->add_option("--values", values, "Parameter values")->required()->expected(1, -1);
  sweep->add_option("--out", sweep_out, "Existing output directory");
  sweep->add_flag("--raw", sweep_raw, "Also write raw.jsonl");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*simulate) {
      const auto config = disquo::load_config(config_path);
      print_summary(disquo::run_to_directory(config, out_dir, raw));
    } else if (*analyze) {
      if (!fs::is_directory(analyze_out)) throw std::invalid_argument("output directory does not exist: " + analyze_out);
      const auto report = disquo::analyze_chain(disquo::parse_weights(weights, n));
      const fs::path path = fs::path(analyze_out) / "analysis.json";
      std::ofstream(path) << report.dump(2) << '\n';
      std::cout << "wrote " << path.string() << '\n';
    } else if (*sweep) {
      const auto config = disquo::load_config(sweep_config);
      print_summary(disquo::run_sweep(config, param, values, sweep_out, sweep_raw));
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
