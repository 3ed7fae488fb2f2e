#include "disquo/mwm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace disquo {
namespace {

// Best total weight over matchings restricted to the given rows and columns.
// Hungarian method on a rows x cols rectangle (rows <= cols padded implicitly
// by transposing when needed). Returns the assignment row -> col index.
double hungarian(const std::vector<std::vector<double>>& w, std::vector<int>* assign) {
  const int r = static_cast<int>(w.size());
  if (r == 0) {
    if (assign) assign->clear();
    return 0.0;
  }
  const int c = static_cast<int>(w[0].size());
  if (r > c) {
    std::vector<std::vector<double>> t(c, std::vector<double>(r));
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < c; ++j) t[j][i] = w[i][j];
    std::vector<int> ta;
    const double best = hungarian(t, &ta);
    if (assign) {
      assign->assign(r, -1);
      for (int j = 0; j < c; ++j) (*assign)[ta[j]] = j;
    }
    return best;
  }
  // Minimise -w with row potentials u and column potentials v (one-based).
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> u(r + 1, 0.0), v(c + 1, 0.0);
  std::vector<int> p(c + 1, 0), way(c + 1, 0);
  for (int i = 1; i <= r; ++i) {
    p[0] = i;
    int j0 = 0;
    std::vector<double> minv(c + 1, inf);
    std::vector<char> used(c + 1, 0);
    do {
      used[j0] = 1;
      const int i0 = p[j0];
      double delta = inf;
      int j1 = 0;
      for (int j = 1; j <= c; ++j) {
        if (used[j]) continue;
        const double cur = -w[i0 - 1][j - 1] - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (int j = 0; j <= c; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      const int j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0);
  }
  std::vector<int> a(r, -1);
  double total = 0.0;
  for (int j = 1; j <= c; ++j)
    if (p[j] != 0) {
      a[p[j] - 1] = j - 1;
      total += w[p[j] - 1][j - 1];
    }
  if (assign) *assign = std::move(a);
  return total;
}

std::vector<std::vector<double>> submatrix(const Matrix<double>& w, const std::vector<int>& rows,
                                           const std::vector<int>& cols) {
  std::vector<std::vector<double>> s(rows.size(), std::vector<double>(cols.size()));
  for (std::size_t a = 0; a < rows.size(); ++a)
    for (std::size_t b = 0; b < cols.size(); ++b) s[a][b] = w(rows[a], cols[b]);
  return s;
}

bool close(double a, double b, double scale) { return std::abs(a - b) <= 1e-9 * std::max(1.0, scale); }

}  // namespace

MatchingResult mwm(const Matrix<double>& w, TieBreak tie) {
  const int n = w.size();
  for (double x : w.flat())
    if (!(x >= 0.0)) throw std::invalid_argument("mwm: weights must be non-negative");

  MatchingResult res;
  std::vector<int> all(n);
  for (int i = 0; i < n; ++i) all[i] = i;

  if (tie == TieBreak::kAny) {
    std::vector<int> a;
    hungarian(submatrix(w, all, all), &a);
    for (int i = 0; i < n; ++i)
      if (a[i] >= 0 && w(i, a[i]) > 0.0) {
        res.matching.emplace_back(i, a[i]);
        res.weight += w(i, a[i]);
      }
    return res;
  }

  // Lexicographic: fix the smallest pair that still admits an optimal
  // completion from strictly later rows, then repeat on what is left.
  const double opt = hungarian(submatrix(w, all, all), nullptr);
  double remaining = opt;
  std::vector<int> cols = all;
  int first_row = 0;
  while (first_row < n && !close(remaining, 0.0, opt)) {
    bool placed = false;
    for (int i = first_row; i < n && !placed; ++i) {
      std::vector<int> later;
      for (int k = i + 1; k < n; ++k) later.push_back(k);
      for (std::size_t cj = 0; cj < cols.size() && !placed; ++cj) {
        const int j = cols[cj];
        if (!(w(i, j) > 0.0)) continue;
        std::vector<int> rest = cols;
        rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(cj));
        const double tail = later.empty() || rest.empty() ? 0.0 : hungarian(submatrix(w, later, rest), nullptr);
        if (close(w(i, j) + tail, remaining, opt)) {
          res.matching.emplace_back(i, j);
          res.weight += w(i, j);
          remaining -= w(i, j);
          cols = std::move(rest);
          first_row = i + 1;
          placed = true;
        }
      }
    }
    if (!placed) throw std::logic_error("mwm: lexicographic reconstruction failed");
  }
  return res;
}

MatchingResult mwm(const std::vector<std::vector<double>>& w, TieBreak tie) {
  const int n = static_cast<int>(w.size());
  Matrix<double> m(n, 0.0);
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(w[i].size()) != n) throw std::invalid_argument("mwm: weight matrix must be square");
    for (int j = 0; j < n; ++j) m(i, j) = w[i][j];
  }
  return mwm(m, tie);
}

}  // namespace disquo
