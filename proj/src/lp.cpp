// SPDX-License-Identifier: Apache-2.0
#include <cmath>
#include <vector>

#include "sixdma/optimizer.hpp"

namespace sixdma {

namespace {

constexpr double kPivotEps = 1e-11;
constexpr double kCostEps = 1e-9;

// Dense tableau for min c.x, A x = b, x >= 0, b >= 0, with Bland's rule.
class SimplexTableau {
 public:
  SimplexTableau(int rows, int cols)
      : rows_(rows), cols_(cols), t_(static_cast<std::size_t>((rows + 1) * (cols + 1)), 0.0),
        basis_(static_cast<std::size_t>(rows), -1) {}

  double& at(int r, int c) { return t_[static_cast<std::size_t>(r * (cols_ + 1) + c)]; }
  double at(int r, int c) const { return t_[static_cast<std::size_t>(r * (cols_ + 1) + c)]; }
  double& rhs(int r) { return at(r, cols_); }
  double& cost(int c) { return at(rows_, c); }
  int& basis(int r) { return basis_[static_cast<std::size_t>(r)]; }

  void price_out(int r) {
    const int var = basis(r);
    const double factor = cost(var);
    if (factor == 0.0) return;
    for (int c = 0; c <= cols_; ++c) cost(c) -= factor * at(r, c);
  }

  void pivot(int pr, int pc) {
    const double pivot_val = at(pr, pc);
    for (int c = 0; c <= cols_; ++c) at(pr, c) /= pivot_val;
    for (int r = 0; r <= rows_; ++r) {
      if (r == pr) continue;
      const double factor = at(r, pc);
      if (factor == 0.0) continue;
      for (int c = 0; c <= cols_; ++c) at(r, c) -= factor * at(pr, c);
    }
    basis(pr) = pc;
  }

  // Returns false when the entering column is unbounded below.
  bool iterate(int max_col) {
    for (;;) {
      int entering = -1;
      for (int c = 0; c < max_col; ++c) {
        if (cost(c) < -kCostEps) {
          entering = c;
          break;  // Bland: lowest index
        }
      }
      if (entering < 0) return true;

      int leaving = -1;
      double best_ratio = 0.0;
      for (int r = 0; r < rows_; ++r) {
        const double a = at(r, entering);
        if (a > kPivotEps) {
          const double ratio = rhs(r) / a;
          if (leaving < 0 || ratio < best_ratio - kPivotEps ||
              (ratio < best_ratio + kPivotEps && basis(r) < basis(leaving))) {
            leaving = r;
            best_ratio = ratio;
          }
        }
      }
      if (leaving < 0) return false;
      pivot(leaving, entering);
    }
  }

  int rows_;
  int cols_;
  std::vector<double> t_;
  std::vector<int> basis_;
};

}  // namespace

Vec3 solve_lp3(const LinearProgram3& lp) {
  const int m = static_cast<int>(lp.constraints.size());
  if (m == 0) throw LpUnboundedError("solve_lp3: no constraints");

  // Columns: x+ (3), x- (3), slack (m), artificial (m).
  const int n_struct = 6 + m;
  const int n_total = n_struct + m;
  SimplexTableau tab(m, n_total);

  int artificials = 0;
  for (int r = 0; r < m; ++r) {
    const auto& hs = lp.constraints[static_cast<std::size_t>(r)];
    double a[6] = {hs.a.x(), hs.a.y(), hs.a.z(), -hs.a.x(), -hs.a.y(), -hs.a.z()};
    double b = hs.b;
    double slack = 1.0;
    if (b < 0.0) {
      for (double& v : a) v = -v;
      b = -b;
      slack = -1.0;
    }
    for (int c = 0; c < 6; ++c) tab.at(r, c) = a[c];
    tab.at(r, 6 + r) = slack;
    tab.rhs(r) = b;
    if (slack > 0.0) {
      tab.basis(r) = 6 + r;
    } else {
      tab.at(r, n_struct + r) = 1.0;
      tab.basis(r) = n_struct + r;
      ++artificials;
    }
  }

  if (artificials > 0) {
    // Phase 1: minimize the sum of artificials.
    for (int r = 0; r < m; ++r) {
      if (tab.basis(r) >= n_struct) tab.cost(n_struct + r) = 1.0;
    }
    for (int r = 0; r < m; ++r) {
      if (tab.basis(r) >= n_struct) tab.price_out(r);
    }
    if (!tab.iterate(n_total)) {
      throw NumericalFailureError("solve_lp3: phase-1 unbounded");
    }
    if (-tab.cost(n_total) > 1e-8) {
      throw LpInfeasibleError("solve_lp3: constraints are contradictory");
    }
    // Drive residual artificials out of the basis where possible.
    for (int r = 0; r < m; ++r) {
      if (tab.basis(r) < n_struct) continue;
      int pc = -1;
      for (int c = 0; c < n_struct; ++c) {
        if (std::abs(tab.at(r, c)) > kPivotEps) {
          pc = c;
          break;
        }
      }
      if (pc >= 0) tab.pivot(r, pc);
    }
    // Reset costs for phase 2.
    for (int c = 0; c <= tab.cols_; ++c) tab.cost(c) = 0.0;
  }

  const double obj[6] = {lp.objective.x(), lp.objective.y(), lp.objective.z(),
                         -lp.objective.x(), -lp.objective.y(), -lp.objective.z()};
  for (int c = 0; c < 6; ++c) tab.cost(c) = obj[c];
  for (int r = 0; r < m; ++r) {
    if (tab.basis(r) < n_struct) tab.price_out(r);
  }
  if (!tab.iterate(n_struct)) {
    throw LpUnboundedError("solve_lp3: objective unbounded over the feasible set");
  }

  double x[6] = {0, 0, 0, 0, 0, 0};
  for (int r = 0; r < m; ++r) {
    if (tab.basis(r) < 6) x[tab.basis(r)] = tab.rhs(r);
  }
  return Vec3(x[0] - x[3], x[1] - x[4], x[2] - x[5]);
}

Vec3 fd_gradient(const std::function<double(const Vec3&)>& objective, const Vec3& x0, double eps) {
  const double f0 = objective(x0);
  if (!std::isfinite(f0)) throw NonFiniteObjectiveError("fd_gradient: objective not finite at x0");
  Vec3 g;
  for (int j = 0; j < 3; ++j) {
    Vec3 x = x0;
    x(j) += eps;
    const double fj = objective(x);
    if (!std::isfinite(fj)) {
      throw NonFiniteObjectiveError("fd_gradient: objective not finite at perturbation");
    }
    g(j) = (fj - f0) / eps;
  }
  return g;
}

}  // namespace sixdma
