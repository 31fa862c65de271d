#pragma once

#include <vector>

#include "mld1/poly.hpp"
#include "mld1/rational.hpp"

namespace mld1 {

// Dense rational matrix, row major.
class Mat {
 public:
  Mat(int rows, int cols) : rows_(rows), cols_(cols), a_(rows * cols) {}
  int rows() const { return rows_; }
  int cols() const { return cols_; }
  Rat& at(int r, int c) { return a_[r * cols_ + c]; }
  const Rat& at(int r, int c) const { return a_[r * cols_ + c]; }

 private:
  int rows_, cols_;
  std::vector<Rat> a_;
};

// Coefficient matrix of sum_i c_i t^{nu_i} (1-t)^{mu_i} compared with the
// constant 1 coefficient-wise in t^0..t^degree. Expanding one entry gives
// t^nu (1-t)^mu = sum_k (-1)^k C(mu,k) t^{nu+k}, so column i holds
// (-1)^(alpha-nu_i) C(mu_i, alpha-nu_i) at row alpha inside that band and
// zero outside: mu_i + 1 nonzeros with alternating signs starting positive
// at row nu_i. Columns follow the order of `support`.
Mat expansion_matrix(const std::vector<Pair>& support, int degree);

// Right-hand side matching the constant polynomial 1.
std::vector<Rat> unit_rhs(int degree);

enum class SolveKind { Unique, Underdetermined, Inconsistent };

struct SolveResult {
  SolveKind kind;
  int rank = 0;
  // Unique: the solution. Underdetermined: the particular solution with all
  // free variables set to zero.
  std::vector<Rat> solution;
  // Underdetermined only: one basis vector per free column, ascending by
  // column index, with a 1 in the free slot.
  std::vector<std::vector<Rat>> nullspace;
};

// Exact classification of A x = b. Rows are scaled to integers, the
// elimination is fraction-free (two-term cross multiplication divided by
// the previous pivot), and divisions by anything data-dependent happen
// only during back substitution.
SolveResult solve_exact(const Mat& a, const std::vector<Rat>& b);

}  // namespace mld1
