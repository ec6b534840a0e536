#pragma once

#include <cstddef>
#include <vector>

namespace cqot::lp {

enum class Status { Optimal, Infeasible, Unbounded, IterationLimit };

struct Solution {
  Status status = Status::Infeasible;
  std::vector<double> x;
  double value = 0.0;
  std::size_t pivots = 0;
};

class LinearProgram;

/// Two-phase dense tableau simplex with Bland's rule (no cycling).
Solution maximize(const LinearProgram& program, double eps = 1e-10);

/// Small dense LP: maximize objective . x subject to row constraints.
/// Variables are nonnegative unless marked free.
class LinearProgram {
 public:
  explicit LinearProgram(std::size_t num_vars);

  void set_objective(std::vector<double> objective);
  void set_free(std::size_t var, bool free = true);
  void add_less_equal(std::vector<double> row, double rhs);
  void add_equal(std::vector<double> row, double rhs);

  [[nodiscard]] std::size_t num_vars() const { return num_vars_; }

 private:
  friend Solution maximize(const LinearProgram&, double);

  std::size_t num_vars_;
  std::vector<double> objective_;
  std::vector<bool> free_;
  std::vector<std::vector<double>> le_rows_;
  std::vector<double> le_rhs_;
  std::vector<std::vector<double>> eq_rows_;
  std::vector<double> eq_rhs_;
};

}  // namespace cqot::lp
