#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mld1/linsolve.hpp"
#include "mld1/poly.hpp"
#include "mld1/rational.hpp"

namespace mld1 {

struct Entry {
  Pair p;  // powers of t and 1-t
  Rat c;   // strictly positive scaling
  friend bool operator==(const Entry&, const Entry&) = default;
};

// Distribution family t -> (c_i t^{nu_i} (1-t)^{mu_i})_i on n+1 states:
// distinct non-origin exponent pairs with positive scalings whose
// components sum to one identically. Entries are kept in GradedLess order.
class Model {
 public:
  // Validates everything, including the sum-to-one identity.
  static Model from_entries(std::vector<Entry> entries);

  int n() const { return static_cast<int>(entries_.size()) - 1; }
  int degree() const;
  const std::vector<Entry>& entries() const { return entries_; }
  std::vector<Pair> support() const;
  Rat coeff(Pair p) const;  // zero when p is not in the support

  Poly f() const;  // sum c_i x^nu y^mu, equal to one on x + y = 1
  Model swap_states() const;  // substitute t -> 1-t

 private:
  Model() = default;
  std::vector<Entry> entries_;
};

// C(n,i) t^i (1-t)^(n-i): number of successes in n independent tries.
Model binomial_model(int n);
// t, (1-t)t, ..., (1-t)^{n-1} t, (1-t)^n: tries until the first success,
// capped at n.
Model geometric_model(int n);
// The degree-(2n-1) model t^{2n-1} plus the entries
// (2n-1)/(2i+1) C(n+i-1,2i) t^{n-i-1} (1-t)^{2i+1} for i = 0..n-1. Its top
// corner (2n-1, 0) carries coefficient one, which makes it composable.
Model sharp_model(int n);

struct SolveReport {
  bool has_model = false;
  bool fundamental = false;  // a model exists and is the only solution
  int rank = 0;
  int nullity = 0;
  int degree = 0;
};

// Scalings admitted by a support: solves the expansion system exactly and
// looks for a strictly positive point. With positive nullity the search
// walks the affine solution space (interval arithmetic for one free
// variable, exact Fourier-Motzkin elimination beyond that); any returned
// witness is then one of infinitely many models on the same support.
struct SupportSolve {
  std::optional<Model> model;
  SolveReport report;
};
SupportSolve solve_scalings(const std::vector<Pair>& support);

// Graft of m2 onto the top corner (d1, 0) of m1, whose coefficient there
// must be exactly one: that entry is removed and every entry of m2 is added
// shifted by (d1, 0). Produces a model on (n1 + n2) + 1 states of degree
// d1 + d2, fundamental whenever both inputs are.
Model compose(const Model& m1, const Model& m2);
// Interior graft at any support point of m1 with coefficient >= 1. The
// entry loses one unit of mass and m2 is added shifted by `at`.
Model compose_at(const Model& m1, const Model& m2, Pair at);

// Replace c x^(a+1) y^b + c x^a y^(b+1) by c x^a y^b: both split
// coefficients must cover c > 0. Values on the line x + y = 1 are
// unchanged, and the cofactor of f - 1 drops by c x^a y^b.
Poly unsplit(const Poly& f, Pair at, const Rat& c);
// The same move on a model, re-validated (fails when `at` is the origin).
Model unsplit(const Model& m, Pair at, const Rat& c);

// Maximum-likelihood parameter for counts u (nonnegative, not all zero,
// aligned with entries()): the unique critical point
//   t = (sum u_i nu_i) / (sum u_i (nu_i + mu_i)).
Rat mle(const Model& m, const std::vector<Rat>& u);

// Degree-d family with one free parameter 0 < c < 1, built from a
// fundamental base on n-1 states of degree d-1 with unit coefficient at
// (d-1, 0): that entry splits into (1-c) t^{d-1} + c t^{d-1}(1-t) + c t^d.
// Every instance shares the same support, which is therefore not
// fundamental. Needs n >= 4 and n <= d <= 2n-4.
class Family {
 public:
  struct Term {
    Pair p;
    Rat constant;  // coefficient is constant + slope * c
    Rat slope;
  };

  int n() const { return static_cast<int>(terms_.size()) - 1; }
  int degree() const;
  const std::vector<Term>& terms() const { return terms_; }
  std::vector<Pair> support() const;
  Model instantiate(const Rat& c) const;

 private:
  friend Family one_parameter_family(int n, int d);
  Family() = default;
  std::vector<Term> terms_;
};
Family one_parameter_family(int n, int d);

// r-parameter counterpart on the simplex: states
// c_i t_1^{e_1} ... t_r^{e_r} (1 - t_1 - ... - t_r)^{e_{r+1}}. Used to
// cross-check the one-parameter estimator.
class MultiModel {
 public:
  // exponents[i] lists e_1..e_{r+1} for state i; the last slot tracks the
  // complement 1 - t_1 - ... - t_r. Validates the sum-to-one identity by
  // full multivariate expansion.
  static MultiModel from_entries(int r, std::vector<std::vector<int>> exponents,
                                 std::vector<Rat> coeffs);
  static MultiModel lift(const Model& m);  // the r = 1 view of a model

  int r() const { return r_; }
  int states() const { return static_cast<int>(coeffs_.size()); }
  const std::vector<std::vector<int>>& exponents() const { return exponents_; }
  const std::vector<Rat>& coeffs() const { return coeffs_; }

 private:
  MultiModel() = default;
  int r_ = 0;
  std::vector<std::vector<int>> exponents_;
  std::vector<Rat> coeffs_;
};

// Maximum-likelihood parameters (t_1, ..., t_r) for counts u: with
// U_alpha = sum_i u_i e_alpha,i the estimate is t_alpha = U_alpha / sum U.
// Clearing denominators in each score equation gives
// sum_i u_i (e_{r+1,i} t_alpha + e_alpha,i (t_1+...+t_r - 1)) = 0, which
// the returned point satisfies exactly.
std::vector<Rat> mle(const MultiModel& m, const std::vector<Rat>& u);

}  // namespace mld1
