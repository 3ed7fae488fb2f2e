#pragma once

#include <nlohmann/json.hpp>
#include <string>
#include <vector>

#include "disquo/matrix.hpp"

namespace disquo {

/// Weight presets for the analyze command:
///   zero | uniform:<w> | diag:<w> | random:<seed>[:<w_max>] | path to a JSON N x N array.
Matrix<double> parse_weights(const std::string& spec, int n);

/// Exact chain analysis for frozen weights: stochasticity, detailed balance,
/// stationarity, irreducibility, spectral gap, conductance, the mixing-time
/// bound with V = N^2 vertices, concentration and free-energy checks.
nlohmann::json analyze_chain(const Matrix<double>& w, const std::vector<double>& epsilons = {0.1, 0.3, 0.5});

}  // namespace disquo
