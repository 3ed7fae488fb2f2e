#include "disquo/chain.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <queue>
#include <stdexcept>
#include <string>

#include "disquo/permutation_stream.hpp"
#include "disquo/weights.hpp"

namespace disquo {
namespace {

void extend(int n, int row, DisquoSchedule& x, std::vector<DisquoSchedule>& out) {
  if (row == n) {
    out.push_back(x);
    return;
  }
  extend(n, row + 1, x, out);
  for (int j = 0; j < n; ++j) {
    if (!x.output_free(j)) continue;
    x.activate(row, j);
    extend(n, row + 1, x, out);
    x.deactivate(row, j);
  }
}

std::vector<Permutation> permutations_for(int n, ChainHMode mode) {
  std::vector<Permutation> hs;
  if (mode == ChainHMode::kHamiltonianCycleAveraged) {
    HamiltonianWalk walk(n);
    int count = 1;
    for (int k = 2; k <= n; ++k) count *= k;
    for (int k = 0; k < count; ++k) hs.push_back(walk.next());
    return hs;
  }
  std::vector<int> a(n);
  std::iota(a.begin(), a.end(), 0);
  do hs.emplace_back(a);
  while (std::next_permutation(a.begin(), a.end()));
  return hs;
}

}  // namespace

std::vector<DisquoSchedule> enumerate_schedules(int n) {
  if (n < 1) throw std::invalid_argument("enumerate_schedules: n must be >= 1");
  if (n > kExactChainMaxN)
    throw std::invalid_argument("exact chain analysis supports n <= " + std::to_string(kExactChainMaxN) +
                                "; use Monte-Carlo simulation of basic_update for larger switches");
  std::vector<DisquoSchedule> out;
  DisquoSchedule x(n);
  extend(n, 0, x, out);
  std::stable_sort(out.begin(), out.end(), [](const DisquoSchedule& a, const DisquoSchedule& b) {
    const int ca = a.cardinality(), cb = b.cardinality();
    if (ca != cb) return ca < cb;
    return a.pairs() < b.pairs();
  });
  return out;
}

StateIndex::StateIndex(const std::vector<DisquoSchedule>& states) {
  if (states.empty()) throw std::invalid_argument("StateIndex: no states");
  n_ = states.front().size();
  int size = 1;
  for (int i = 0; i < n_; ++i) size *= n_ + 1;
  table_.assign(size, -1);
  for (int s = 0; s < static_cast<int>(states.size()); ++s) table_[code(states[s])] = s;
}

int StateIndex::code(const DisquoSchedule& x) const {
  int c = 0;
  for (int i = 0; i < n_; ++i) c = c * (n_ + 1) + (x.output_of(i) + 1);
  return c;
}

int StateIndex::operator()(const DisquoSchedule& x) const {
  if (x.size() != n_) throw std::invalid_argument("StateIndex: size mismatch");
  return table_[code(x)];
}

double schedule_weight(const DisquoSchedule& x, const Matrix<double>& w) {
  double s = 0.0;
  for (auto [i, j] : x.pairs()) s += w(i, j);
  return s;
}

Eigen::MatrixXd transition_matrix(const Matrix<double>& w, int n, ChainHMode mode) {
  if (w.size() != n) throw std::invalid_argument("transition_matrix: weight matrix size");
  const auto states = enumerate_schedules(n);
  const auto hs = permutations_for(n, mode);
  const int m = static_cast<int>(states.size());
  const double a_h = 1.0 / static_cast<double>(hs.size());

  Matrix<double> p(n, 0.0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) p(i, j) = activation_probability(w(i, j));

  Eigen::MatrixXd P = Eigen::MatrixXd::Zero(m, m);
  for (int s = 0; s < m; ++s) {
    const DisquoSchedule& x = states[s];
    for (int t = 0; t < m; ++t) {
      const DisquoSchedule& y = states[t];
      double total = 0.0;
      for (const Permutation& h : hs) {
        double prob = 1.0;
        for (int i = 0; i < n && prob > 0.0; ++i)
          for (int j = 0; j < n; ++j) {
            const bool in_x = x.contains(i, j), in_y = y.contains(i, j), in_h = h.contains(i, j);
            if (in_x != in_y && !in_h) {
              prob = 0.0;
              break;
            }
            if (in_x && !in_y) prob *= 1.0 - p(i, j);
            else if (!in_x && in_y) prob *= p(i, j);
            else if (in_x && in_y && in_h) prob *= p(i, j);
            else if (in_h && !in_x && !in_y && !x.has_active_neighbor(i, j) && !y.has_active_neighbor(i, j))
              prob *= 1.0 - p(i, j);
          }
        total += a_h * prob;
      }
      P(s, t) = total;
    }
  }
  return P;
}

double log_partition_function(const Matrix<double>& w, int n) {
  const auto states = enumerate_schedules(n);
  double top = -INFINITY;
  std::vector<double> logs;
  for (const auto& x : states) {
    logs.push_back(schedule_weight(x, w));
    top = std::max(top, logs.back());
  }
  double s = 0.0;
  for (double l : logs) s += std::exp(l - top);
  return top + std::log(s);
}

Eigen::VectorXd stationary_product_form(const Matrix<double>& w, int n) {
  if (w.size() != n) throw std::invalid_argument("stationary_product_form: weight matrix size");
  const auto states = enumerate_schedules(n);
  const double log_z = log_partition_function(w, n);
  Eigen::VectorXd pi(states.size());
  for (std::size_t s = 0; s < states.size(); ++s) pi(static_cast<Eigen::Index>(s)) = std::exp(schedule_weight(states[s], w) - log_z);
  return pi;
}

ChainModel build_chain(const Matrix<double>& w, ChainHMode mode) {
  ChainModel c;
  c.n = w.size();
  c.states = enumerate_schedules(c.n);
  c.weights = w;
  c.P = transition_matrix(w, c.n, mode);
  c.pi = stationary_product_form(w, c.n);
  return c;
}

ReversibilityReport verify_reversibility(const Eigen::MatrixXd& P, const Eigen::VectorXd& pi) {
  const Eigen::Index m = P.rows();
  if (P.cols() != m || pi.size() != m) throw std::invalid_argument("verify_reversibility: dimension mismatch");
  ReversibilityReport r;
  for (Eigen::Index x = 0; x < m; ++x) {
    r.row_sum_error = std::max(r.row_sum_error, std::abs(P.row(x).sum() - 1.0));
    for (Eigen::Index y = 0; y < m; ++y)
      r.detailed_balance_residual = std::max(r.detailed_balance_residual, std::abs(pi(x) * P(x, y) - pi(y) * P(y, x)));
  }
  const Eigen::VectorXd drift = P.transpose() * pi - pi;
  r.stationarity_residual = drift.cwiseAbs().maxCoeff();
  r.pi_sum_error = std::abs(pi.sum() - 1.0);

  auto bfs = [&](bool forward) {
    std::vector<int> depth(static_cast<std::size_t>(m), -1);
    std::queue<Eigen::Index> q;
    depth[0] = 0;
    q.push(0);
    while (!q.empty()) {
      const Eigen::Index u = q.front();
      q.pop();
      for (Eigen::Index v = 0; v < m; ++v) {
        const double pr = forward ? P(u, v) : P(v, u);
        if (pr > 0.0 && depth[v] < 0) {
          depth[v] = depth[u] + 1;
          q.push(v);
        }
      }
    }
    return depth;
  };
  const auto fwd = bfs(true);
  const auto bwd = bfs(false);
  r.irreducible = std::none_of(fwd.begin(), fwd.end(), [](int d) { return d < 0; }) &&
                  std::none_of(bwd.begin(), bwd.end(), [](int d) { return d < 0; });
  r.max_depth_from_empty = r.irreducible ? *std::max_element(fwd.begin(), fwd.end()) : -1;
  return r;
}

}  // namespace disquo
