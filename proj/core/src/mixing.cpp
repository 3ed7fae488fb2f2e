#include "disquo/mixing.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "disquo/mwm.hpp"

namespace disquo {

DistanceReport distances(const Eigen::VectorXd& mu, const Eigen::VectorXd& nu) {
  if (mu.size() != nu.size()) throw std::invalid_argument("distances: size mismatch");
  DistanceReport r;
  double chi2 = 0.0;
  for (Eigen::Index k = 0; k < mu.size(); ++k) {
    r.tv += std::abs(mu(k) - nu(k));
    if (mu(k) > 0.0) {
      const double d = nu(k) / mu(k) - 1.0;
      chi2 += mu(k) * d * d;
    } else if (nu(k) > 0.0) {
      chi2 = std::numeric_limits<double>::infinity();
    }
  }
  r.tv *= 0.5;
  r.chi = std::sqrt(chi2);
  return r;
}

SpectralReport spectral_mixing(const Eigen::MatrixXd& P, const Eigen::VectorXd& pi, double tol) {
  const ReversibilityReport rev = verify_reversibility(P, pi);
  if (rev.detailed_balance_residual > tol) throw std::invalid_argument("spectral_mixing: chain is not reversible");
  const Eigen::VectorXd s = pi.cwiseSqrt();
  const Eigen::VectorXd s_inv = s.cwiseInverse();
  Eigen::MatrixXd a = s.asDiagonal() * P * s_inv.asDiagonal();
  a = 0.5 * (a + a.transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(a, Eigen::EigenvaluesOnly);
  const Eigen::VectorXd ev = solver.eigenvalues();
  SpectralReport r;
  r.eigenvalues.assign(ev.data(), ev.data() + ev.size());
  // The Perron root is the largest eigenvalue (= 1); drop exactly one copy.
  r.e_max = 0.0;
  for (Eigen::Index k = 0; k + 1 < ev.size(); ++k) r.e_max = std::max(r.e_max, std::abs(ev(k)));
  r.t_mix = 1.0 / (1.0 - r.e_max);
  return r;
}

std::optional<double> conductance(const Eigen::MatrixXd& P, const Eigen::VectorXd& pi) {
  const int m = static_cast<int>(pi.size());
  if (m > kConductanceMaxStates) return std::nullopt;
  double best = std::numeric_limits<double>::infinity();
  const std::uint32_t full = (1u << m) - 1;
  for (std::uint32_t set = 1; set < full; ++set) {
    double mass = 0.0;
    for (int x = 0; x < m; ++x)
      if (set >> x & 1u) mass += pi(x);
    if (mass > 0.5 + 1e-15) continue;
    double flow = 0.0;
    for (int x = 0; x < m; ++x) {
      if (!(set >> x & 1u)) continue;
      for (int y = 0; y < m; ++y)
        if (!(set >> y & 1u)) flow += pi(x) * P(x, y);
    }
    best = std::min(best, flow / mass);
  }
  return best;
}

double log_mixing_upper_bound(int n_vertices, double w_max) {
  return 6.0 * n_vertices * std::numbers::ln2 + 4.0 * n_vertices * w_max;
}

double mixing_upper_bound(int n_vertices, double w_max) { return std::exp(log_mixing_upper_bound(n_vertices, w_max)); }

double free_energy(const Eigen::VectorXd& mu, const std::vector<DisquoSchedule>& states, const Matrix<double>& w) {
  if (mu.size() != static_cast<Eigen::Index>(states.size())) throw std::invalid_argument("free_energy: size mismatch");
  double f = 0.0;
  for (std::size_t s = 0; s < states.size(); ++s) {
    const double m = mu(static_cast<Eigen::Index>(s));
    if (m <= 0.0) continue;
    f += m * schedule_weight(states[s], w) - m * std::log(m);
  }
  return f;
}

ConcentrationReport concentration_check(const Matrix<double>& w, double epsilon) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw std::invalid_argument("concentration_check: epsilon in (0, 1)");
  const int n = w.size();
  ConcentrationReport r;
  r.w_star = mwm(w, TieBreak::kAny).weight;
  if (!(r.w_star > 0.0)) {
    r.skipped = true;
    return r;
  }
  const auto states = enumerate_schedules(n);
  const Eigen::VectorXd pi = stationary_product_form(w, n);
  for (std::size_t s = 0; s < states.size(); ++s)
    if (schedule_weight(states[s], w) <= (1.0 - epsilon) * r.w_star) r.pi_k += pi(static_cast<Eigen::Index>(s));
  r.bound = std::log(static_cast<double>(states.size())) / (epsilon * r.w_star);
  r.holds = r.pi_k <= r.bound;
  return r;
}

ConvergenceReport convergence_diagnostics(const Matrix<std::int64_t>& q_n, const Matrix<std::int64_t>& q_n1,
                                          const WeightConfig& config) {
  const int n = q_n.size();
  if (q_n1.size() != n) throw std::invalid_argument("convergence_diagnostics: snapshot sizes differ");
  std::int64_t qmax_n = 0, qmax_n1 = 0;
  for (int k = 0; k < n * n; ++k) {
    const std::int64_t a = q_n.flat()[k], b = q_n1.flat()[k];
    if (a < 0 || b < 0) throw std::invalid_argument("convergence_diagnostics: negative queue");
    if (std::abs(a - b) > 1) throw std::invalid_argument("convergence_diagnostics: snapshots drift by more than one cell");
    qmax_n = std::max(qmax_n, a);
    qmax_n1 = std::max(qmax_n1, b);
  }
  auto q_tilde = [&](std::int64_t q, std::int64_t qmax) {
    if (config.qmax_mode == QmaxMode::kConjecture) return static_cast<double>(q);
    return effective_queue(static_cast<double>(q), static_cast<double>(qmax), config.epsilon, n, config.g_choice);
  };

  ConvergenceReport r;
  r.f_prime_bound_holds = true;
  double q_min = std::numeric_limits<double>::infinity();
  for (int k = 0; k < n * n; ++k) {
    for (double x : {q_tilde(q_n.flat()[k], qmax_n), q_tilde(q_n1.flat()[k], qmax_n1)}) {
      const double fp = weight_f_prime(x, config.g_choice);
      r.alpha += fp;
      q_min = std::min(q_min, x);
      if (fp > 1.0 / (1.0 + x) * (1.0 + 1e-12)) r.f_prime_bound_holds = false;
    }
  }
  r.alpha_cap = 2.0 * n * n * weight_f_prime(q_min, config.g_choice);
  r.alpha_within_cap = r.alpha <= r.alpha_cap * (1.0 + 1e-12);

  // W_max bounded by f at the larger Q_max of the two snapshots.
  const double w_max = weight_f(q_tilde(std::max(qmax_n, qmax_n1), std::max(qmax_n, qmax_n1)), config.g_choice);
  r.log_alpha_times_bound = (r.alpha > 0.0 ? std::log(r.alpha) : -INFINITY) +
                            log_mixing_upper_bound(switch_vertices(n), w_max);
  return r;
}

}  // namespace disquo
