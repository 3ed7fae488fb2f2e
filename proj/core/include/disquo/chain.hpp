#pragma once

#include <Eigen/Dense>
#include <vector>

#include "disquo/matrix.hpp"
#include "disquo/schedule.hpp"

namespace disquo {

inline constexpr int kExactChainMaxN = 4;

/// All partial matchings of an n x n switch, ordered by cardinality and then
/// by their sorted pair lists. Throws for n > 4: Eq.-level enumeration sums
/// over n! permutations per entry and the state count explodes beyond that.
std::vector<DisquoSchedule> enumerate_schedules(int n);

/// Maps a schedule back to its position in enumerate_schedules(n).
class StateIndex {
 public:
  explicit StateIndex(const std::vector<DisquoSchedule>& states);
  int operator()(const DisquoSchedule& x) const;

 private:
  int code(const DisquoSchedule& x) const;
  int n_;
  std::vector<int> table_;
};

enum class ChainHMode {
  kUniformRandom,             // a(H) = 1/N! for every permutation
  kHamiltonianCycleAveraged,  // one full period of the plain-changes walk
};

/// Weight of a schedule: sum of W_ij over its pairs.
double schedule_weight(const DisquoSchedule& x, const Matrix<double>& w);

/// One-step transition matrix of the DISQUO chain under frozen weights.
/// For each H the probability of X -> X' is zero unless X xor X' is inside H,
/// and otherwise the product of p over kept and joining pairs, 1 - p over
/// leaving pairs and over pairs of H that are free to join but stay off.
Eigen::MatrixXd transition_matrix(const Matrix<double>& w, int n, ChainHMode mode = ChainHMode::kUniformRandom);

/// Product form pi(X) = exp(W(X)) / Z, evaluated with log-sum-exp.
Eigen::VectorXd stationary_product_form(const Matrix<double>& w, int n);
double log_partition_function(const Matrix<double>& w, int n);

struct ChainModel {
  int n = 0;
  std::vector<DisquoSchedule> states;
  Matrix<double> weights;
  Eigen::MatrixXd P;
  Eigen::VectorXd pi;
};

ChainModel build_chain(const Matrix<double>& w, ChainHMode mode = ChainHMode::kUniformRandom);

struct ReversibilityReport {
  double detailed_balance_residual = 0.0;  // max |pi(x)P(x,y) - pi(y)P(y,x)|
  double row_sum_error = 0.0;              // max |sum_y P(x,y) - 1|
  double stationarity_residual = 0.0;      // max |(pi P - pi)(y)|
  double pi_sum_error = 0.0;
  bool irreducible = false;
  int max_depth_from_empty = -1;  // longest BFS distance from the empty schedule
};

/// Assumes state 0 is the empty schedule (true for enumerate_schedules).
ReversibilityReport verify_reversibility(const Eigen::MatrixXd& P, const Eigen::VectorXd& pi);

}  // namespace disquo
