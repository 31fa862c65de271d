#include "mld1/linsolve.hpp"

#include <utility>

#include "mld1/errors.hpp"

namespace mld1 {

Mat expansion_matrix(const std::vector<Pair>& support, int degree) {
  Mat a(degree + 1, static_cast<int>(support.size()));
  for (int i = 0; i < static_cast<int>(support.size()); ++i) {
    Pair p = support[i];
    if (grade(p) > degree) {
      throw ContractError("support point " + to_string(p) +
                          " exceeds degree " + std::to_string(degree));
    }
    for (int k = 0; k <= p.mu; ++k) {
      Rat c(binomial(p.mu, k));
      a.at(p.nu + k, i) = (k % 2 == 0) ? c : -c;
    }
  }
  return a;
}

std::vector<Rat> unit_rhs(int degree) {
  std::vector<Rat> b(degree + 1);
  b[0] = 1;
  return b;
}

SolveResult solve_exact(const Mat& a, const std::vector<Rat>& b) {
  const int m = a.rows();
  const int n = a.cols();
  if (static_cast<int>(b.size()) != m) {
    throw ContractError("right-hand side length does not match row count");
  }

  // Integer working copy of [A | b], each row scaled by its denominators'
  // lcm. Row scaling changes neither rank nor solution set.
  std::vector<std::vector<Int>> w(m, std::vector<Int>(n + 1));
  for (int r = 0; r < m; ++r) {
    Int scale = 1;
    for (int c = 0; c <= n; ++c) {
      const Rat& q = c < n ? a.at(r, c) : b[r];
      Int den = q.get_den();
      scale = scale / gcd(scale, den) * den;
    }
    for (int c = 0; c <= n; ++c) {
      const Rat& q = c < n ? a.at(r, c) : b[r];
      w[r][c] = q.get_num() * (scale / q.get_den());
    }
  }

  // Fraction-free elimination: after each sweep every entry is divisible
  // by the previous pivot, keeping intermediate values polynomial-size.
  std::vector<int> pivot_col;
  Int prev_pivot = 1;
  int row = 0;
  for (int col = 0; col < n && row < m; ++col) {
    int sel = -1;
    for (int r = row; r < m; ++r) {
      if (w[r][col] != 0) {
        sel = r;
        break;
      }
    }
    if (sel < 0) continue;
    std::swap(w[row], w[sel]);
    const Int pivot = w[row][col];
    for (int r = row + 1; r < m; ++r) {
      for (int c = col + 1; c <= n; ++c) {
        w[r][c] = (pivot * w[r][c] - w[r][col] * w[row][c]) / prev_pivot;
      }
      w[r][col] = 0;
    }
    prev_pivot = pivot;
    pivot_col.push_back(col);
    ++row;
  }
  const int rank = row;

  SolveResult out;
  out.rank = rank;
  for (int r = rank; r < m; ++r) {
    if (w[r][n] != 0) {
      out.kind = SolveKind::Inconsistent;
      return out;
    }
  }
  out.kind = rank == n ? SolveKind::Unique : SolveKind::Underdetermined;

  // Back substitution over the rationals for the particular solution
  // (free variables zero).
  std::vector<Rat> x(n, Rat(0));
  for (int r = rank - 1; r >= 0; --r) {
    Rat acc(w[r][n]);
    for (int c = pivot_col[r] + 1; c < n; ++c) {
      if (w[r][c] != 0) acc -= Rat(w[r][c]) * x[c];
    }
    acc /= Rat(w[r][pivot_col[r]]);
    x[pivot_col[r]] = acc;
  }
  out.solution = std::move(x);

  if (out.kind == SolveKind::Underdetermined) {
    std::vector<bool> is_pivot(n, false);
    for (int c : pivot_col) is_pivot[c] = true;
    for (int free = 0; free < n; ++free) {
      if (is_pivot[free]) continue;
      std::vector<Rat> v(n, Rat(0));
      v[free] = 1;
      for (int r = rank - 1; r >= 0; --r) {
        Rat acc(0);
        for (int c = pivot_col[r] + 1; c < n; ++c) {
          if (w[r][c] != 0) acc -= Rat(w[r][c]) * v[c];
        }
        acc /= Rat(w[r][pivot_col[r]]);
        v[pivot_col[r]] = acc;
      }
      out.nullspace.push_back(std::move(v));
    }
  }
  return out;
}

}  // namespace mld1
