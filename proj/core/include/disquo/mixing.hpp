#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <vector>

#include "disquo/chain.hpp"
#include "disquo/matrix.hpp"
#include "disquo/weights.hpp"

namespace disquo {

struct DistanceReport {
  double tv = 0.0;
  double chi = 0.0;  // chi-square distance ||nu/mu - 1||_{2,mu}
  double slack() const { return chi - 2.0 * tv; }
};

// mu is the reference measure; chi is infinite where nu charges a mu-null state.
DistanceReport distances(const Eigen::VectorXd& mu, const Eigen::VectorXd& nu);

struct SpectralReport {
  double e_max = 0.0;   // largest |eigenvalue| other than the Perron root
  double t_mix = 1.0;   // 1 / (1 - e_max)
  std::vector<double> eigenvalues;  // all of them, ascending
};

/// Eigenvalues of D^{1/2} P D^{-1/2}, D = diag(pi). Throws if P is not
/// reversible with respect to pi (residual above `tol`).
SpectralReport spectral_mixing(const Eigen::MatrixXd& P, const Eigen::VectorXd& pi, double tol = 1e-10);

inline constexpr int kConductanceMaxStates = 20;

/// Exact conductance min over pi(A) <= 1/2 of Q(A, A^c) / pi(A); nullopt
/// when the chain has more than 20 states.
std::optional<double> conductance(const Eigen::MatrixXd& P, const Eigen::VectorXd& pi);

/// log of 2^{6V} exp(4 V w_max); the bound itself overflows quickly.
double log_mixing_upper_bound(int n_vertices, double w_max);
double mixing_upper_bound(int n_vertices, double w_max);

// The switch conflict graph has one vertex per crosspoint.
inline int switch_vertices(int n) { return n * n; }

/// E_mu[W] + H(mu).
double free_energy(const Eigen::VectorXd& mu, const std::vector<DisquoSchedule>& states, const Matrix<double>& w);

struct ConcentrationReport {
  bool skipped = false;  // W* = 0
  double w_star = 0.0;
  double pi_k = 0.0;     // pi of {X : W(X) <= (1 - eps) W*}
  double bound = 0.0;    // log|X| / (eps W*)
  bool holds = false;
};

ConcentrationReport concentration_check(const Matrix<double>& w, double epsilon);

struct ConvergenceReport {
  double alpha = 0.0;
  double alpha_cap = 0.0;  // 2 N^2 max f'(Q~_min)
  double log_alpha_times_bound = 0.0;
  bool alpha_within_cap = false;
  bool f_prime_bound_holds = false;  // f'(Q~) <= 1 / (1 + Q~) everywhere
};

/// alpha_n = sum_ij f'(Q~_ij(n)) + f'(Q~_ij(n+1)) for consecutive snapshots.
/// Rejects pairs of snapshots that differ by more than one cell anywhere.
ConvergenceReport convergence_diagnostics(const Matrix<std::int64_t>& q_n, const Matrix<std::int64_t>& q_n1,
                                          const WeightConfig& config);

}  // namespace disquo
