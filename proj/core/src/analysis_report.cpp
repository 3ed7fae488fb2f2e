#include "disquo/analysis_report.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <stdexcept>

#include "disquo/chain.hpp"
#include "disquo/mixing.hpp"
#include "disquo/random.hpp"

namespace disquo {

Matrix<double> parse_weights(const std::string& spec, int n) {
  Matrix<double> w(n, 0.0);
  auto arg = [&](std::size_t pos) { return spec.substr(pos); };
  if (spec == "zero") return w;
  if (spec.rfind("uniform:", 0) == 0) {
    w.fill(std::stod(arg(8)));
  } else if (spec.rfind("diag:", 0) == 0) {
    const double v = std::stod(arg(5));
    for (int i = 0; i < n; ++i) w(i, i) = v;
  } else if (spec.rfind("random:", 0) == 0) {
    const std::string rest = arg(7);
    const auto colon = rest.find(':');
    const std::uint64_t seed = std::stoull(rest.substr(0, colon));
    const double w_max = colon == std::string::npos ? 2.0 : std::stod(rest.substr(colon + 1));
    Rng rng(seed);
    for (double& x : w.flat()) x = w_max * rng.uniform();
  } else if (std::filesystem::is_regular_file(spec)) {
    std::ifstream in(spec);
    const auto j = nlohmann::json::parse(in);
    const auto rows = j.get<std::vector<std::vector<double>>>();
    if (static_cast<int>(rows.size()) != n) throw std::invalid_argument("weights file: expected " + std::to_string(n) + " rows");
    for (int i = 0; i < n; ++i) {
      if (static_cast<int>(rows[i].size()) != n) throw std::invalid_argument("weights file: row length mismatch");
      for (int k = 0; k < n; ++k) w(i, k) = rows[i][k];
    }
  } else {
    throw std::invalid_argument("unknown weight preset or missing file: " + spec);
  }
  for (double x : w.flat())
    if (!(x >= 0.0)) throw std::invalid_argument("weights must be non-negative");
  return w;
}

nlohmann::json analyze_chain(const Matrix<double>& w, const std::vector<double>& epsilons) {
  const int n = w.size();
  const ChainModel chain = build_chain(w);
  const ReversibilityReport rev = verify_reversibility(chain.P, chain.pi);

  nlohmann::json out;
  out["n"] = n;
  out["states"] = chain.states.size();
  std::vector<std::vector<double>> wr(n, std::vector<double>(n));
  double w_max = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      wr[i][j] = w(i, j);
      w_max = std::max(w_max, w(i, j));
    }
  out["weights"] = wr;
  out["pi"] = std::vector<double>(chain.pi.data(), chain.pi.data() + chain.pi.size());
  out["row_sum_error"] = rev.row_sum_error;
  out["detailed_balance_residual"] = rev.detailed_balance_residual;
  out["stationarity_residual"] = rev.stationarity_residual;
  out["irreducible"] = rev.irreducible;
  out["max_depth_from_empty"] = rev.max_depth_from_empty;

  const SpectralReport spec = spectral_mixing(chain.P, chain.pi, 1e-9);
  const int vertices = switch_vertices(n);
  const double log_bound = log_mixing_upper_bound(vertices, w_max);
  nlohmann::json mix;
  mix["e_max"] = spec.e_max;
  mix["t_mix"] = spec.t_mix;
  mix["vertices"] = vertices;
  mix["vertex_reading"] = "one vertex per crosspoint, V = N^2";
  mix["w_max"] = w_max;
  mix["log_upper_bound"] = log_bound;
  mix["t_mix_within_bound"] = std::log(spec.t_mix) <= log_bound;
  if (const auto phi = conductance(chain.P, chain.pi)) {
    mix["conductance"] = *phi;
    mix["cheeger_limit"] = 1.0 - (*phi) * (*phi) / 2.0;
    mix["e_max_within_cheeger"] = spec.e_max <= 1.0 - (*phi) * (*phi) / 2.0 + 1e-12;
  } else {
    mix["conductance"] = nullptr;
  }
  out["mixing"] = mix;

  nlohmann::json conc = nlohmann::json::array();
  for (double eps : epsilons) {
    const ConcentrationReport c = concentration_check(w, eps);
    nlohmann::json e;
    e["epsilon"] = eps;
    e["skipped"] = c.skipped;
    if (!c.skipped) {
      e["w_star"] = c.w_star;
      e["pi_k"] = c.pi_k;
      e["bound"] = c.bound;
      e["holds"] = c.holds;
    }
    conc.push_back(e);
  }
  out["concentration"] = conc;

  const double log_z = log_partition_function(w, n);
  out["log_partition"] = log_z;
  out["free_energy_at_pi"] = free_energy(chain.pi, chain.states, w);
  return out;
}

}  // namespace disquo
