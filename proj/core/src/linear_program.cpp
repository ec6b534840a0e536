#include "cqot/linear_program.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>

namespace cqot::lp {

LinearProgram::LinearProgram(std::size_t num_vars)
    : num_vars_(num_vars), objective_(num_vars, 0.0), free_(num_vars, false) {}

void LinearProgram::set_objective(std::vector<double> objective) {
  if (objective.size() != num_vars_) throw std::invalid_argument("lp: objective size");
  objective_ = std::move(objective);
}

void LinearProgram::set_free(std::size_t var, bool free) { free_.at(var) = free; }

void LinearProgram::add_less_equal(std::vector<double> row, double rhs) {
  if (row.size() != num_vars_) throw std::invalid_argument("lp: row size");
  le_rows_.push_back(std::move(row));
  le_rhs_.push_back(rhs);
}

void LinearProgram::add_equal(std::vector<double> row, double rhs) {
  if (row.size() != num_vars_) throw std::invalid_argument("lp: row size");
  eq_rows_.push_back(std::move(row));
  eq_rhs_.push_back(rhs);
}

namespace {

// Dense tableau. Row r reads sum_c a[r][c] x_c = rhs[r] with basis[r] basic.
// obj[c] holds reduced costs of the maximization (entering when < -eps).
struct Tableau {
  std::vector<std::vector<double>> a;
  std::vector<double> rhs;
  std::vector<std::size_t> basis;
  std::vector<double> obj;
  double obj_value = 0.0;  // current objective
  std::vector<bool> blocked;  // columns never allowed to enter

  void pivot(std::size_t row, std::size_t col) {
    const double p = a[row][col];
    for (double& v : a[row]) v /= p;
    rhs[row] /= p;
    for (std::size_t r = 0; r < a.size(); ++r) {
      if (r == row) continue;
      const double f = a[r][col];
      if (f == 0.0) continue;
      for (std::size_t c = 0; c < a[r].size(); ++c) a[r][c] -= f * a[row][c];
      rhs[r] -= f * rhs[row];
    }
    const double f = obj[col];
    if (f != 0.0) {
      for (std::size_t c = 0; c < obj.size(); ++c) obj[c] -= f * a[row][c];
      obj_value -= f * rhs[row];
    }
    basis[row] = col;
  }

  // Loads maximize cost . x and prices out the basic columns.
  void load_objective(const std::vector<double>& cost) {
    obj.assign(cost.size(), 0.0);
    for (std::size_t c = 0; c < cost.size(); ++c) obj[c] = -cost[c];
    obj_value = 0.0;
    for (std::size_t r = 0; r < a.size(); ++r) {
      const double f = obj[basis[r]];
      if (f == 0.0) continue;
      for (std::size_t c = 0; c < obj.size(); ++c) obj[c] -= f * a[r][c];
      obj_value -= f * rhs[r];
    }
  }

  Status run(double eps, std::size_t& pivots, std::size_t max_pivots) {
    while (pivots < max_pivots) {
      std::size_t enter = obj.size();
      for (std::size_t c = 0; c < obj.size(); ++c) {
        if (!blocked[c] && obj[c] < -eps) {
          enter = c;
          break;
        }
      }
      if (enter == obj.size()) return Status::Optimal;

      std::size_t leave = a.size();
      double best = std::numeric_limits<double>::infinity();
      for (std::size_t r = 0; r < a.size(); ++r) {
        if (a[r][enter] <= eps) continue;
        const double ratio = rhs[r] / a[r][enter];
        if (leave == a.size() || ratio < best - eps) {
          best = ratio;
          leave = r;
        } else if (ratio <= best + eps && basis[r] < basis[leave]) {
          best = std::min(best, ratio);
          leave = r;
        }
      }
      if (leave == a.size()) return Status::Unbounded;
      pivot(leave, enter);
      ++pivots;
    }
    return Status::IterationLimit;
  }
};

}  // namespace

Solution maximize(const LinearProgram& program, double eps) {
  const std::size_t n = program.num_vars_;

  // Column layout: one column per nonnegative variable, two per free one.
  std::vector<std::size_t> pos_col(n), neg_col(n, SIZE_MAX);
  std::size_t cols = 0;
  for (std::size_t v = 0; v < n; ++v) {
    pos_col[v] = cols++;
    if (program.free_[v]) neg_col[v] = cols++;
  }
  const std::size_t n_le = program.le_rows_.size();
  const std::size_t n_eq = program.eq_rows_.size();
  const std::size_t m = n_le + n_eq;
  const std::size_t slack0 = cols;
  cols += n_le;
  const std::size_t art0 = cols;
  cols += m;

  Tableau t;
  t.a.assign(m, std::vector<double>(cols, 0.0));
  t.rhs.assign(m, 0.0);
  t.basis.assign(m, 0);
  t.blocked.assign(cols, false);

  auto fill = [&](std::size_t r, const std::vector<double>& row, double rhs) {
    for (std::size_t v = 0; v < n; ++v) {
      t.a[r][pos_col[v]] = row[v];
      if (neg_col[v] != SIZE_MAX) t.a[r][neg_col[v]] = -row[v];
    }
    t.rhs[r] = rhs;
  };
  for (std::size_t r = 0; r < n_le; ++r) {
    fill(r, program.le_rows_[r], program.le_rhs_[r]);
    t.a[r][slack0 + r] = 1.0;
  }
  for (std::size_t r = 0; r < n_eq; ++r) fill(n_le + r, program.eq_rows_[r], program.eq_rhs_[r]);
  for (std::size_t r = 0; r < m; ++r) {
    if (t.rhs[r] < 0.0) {
      for (double& v : t.a[r]) v = -v;
      t.rhs[r] = -t.rhs[r];
    }
    t.a[r][art0 + r] = 1.0;
    t.basis[r] = art0 + r;
  }

  Solution sol;
  const std::size_t max_pivots = 50'000 + 100 * (m + cols);

  // Phase one: maximize -sum(artificials).
  std::vector<double> phase1(cols, 0.0);
  for (std::size_t r = 0; r < m; ++r) phase1[art0 + r] = -1.0;
  t.load_objective(phase1);
  Status st = t.run(eps, sol.pivots, max_pivots);
  if (st == Status::IterationLimit) {
    sol.status = st;
    return sol;
  }
  double scale = 1.0;
  for (double b : t.rhs) scale = std::max(scale, std::abs(b));
  if (t.obj_value < -1e-9 * scale) {
    sol.status = Status::Infeasible;
    return sol;
  }

  // Drive remaining artificials out of the basis; rows that cannot be
  // pivoted are redundant and dropped.
  for (std::size_t r = 0; r < t.a.size();) {
    if (t.basis[r] < art0) {
      ++r;
      continue;
    }
    std::size_t col = art0;
    for (std::size_t c = 0; c < art0; ++c) {
      if (std::abs(t.a[r][c]) > eps) {
        col = c;
        break;
      }
    }
    if (col < art0) {
      t.pivot(r, col);
      ++r;
    } else {
      t.a.erase(t.a.begin() + static_cast<std::ptrdiff_t>(r));
      t.rhs.erase(t.rhs.begin() + static_cast<std::ptrdiff_t>(r));
      t.basis.erase(t.basis.begin() + static_cast<std::ptrdiff_t>(r));
    }
  }
  for (std::size_t c = art0; c < cols; ++c) t.blocked[c] = true;

  std::vector<double> phase2(cols, 0.0);
  for (std::size_t v = 0; v < n; ++v) {
    phase2[pos_col[v]] = program.objective_[v];
    if (neg_col[v] != SIZE_MAX) phase2[neg_col[v]] = -program.objective_[v];
  }
  t.load_objective(phase2);
  st = t.run(eps, sol.pivots, max_pivots);
  sol.status = st;
  if (st != Status::Optimal) return sol;

  std::vector<double> col_value(cols, 0.0);
  for (std::size_t r = 0; r < t.a.size(); ++r) col_value[t.basis[r]] = t.rhs[r];
  sol.x.assign(n, 0.0);
  for (std::size_t v = 0; v < n; ++v) {
    sol.x[v] = col_value[pos_col[v]];
    if (neg_col[v] != SIZE_MAX) sol.x[v] -= col_value[neg_col[v]];
  }
  sol.value = 0.0;
  for (std::size_t v = 0; v < n; ++v) sol.value += program.objective_[v] * sol.x[v];
  return sol;
}

}  // namespace cqot::lp
