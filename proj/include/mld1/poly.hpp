#pragma once

#include <compare>
#include <map>
#include <string>
#include <vector>

#include "mld1/rational.hpp"

namespace mld1 {

// Exponent pair: x^nu y^mu as a monomial, or the (nu, mu) powers of t and
// 1-t in a model entry. x tracks t throughout.
struct Pair {
  int nu = 0;
  int mu = 0;
  friend constexpr auto operator<=>(const Pair&, const Pair&) = default;
};

constexpr int grade(Pair p) { return p.nu + p.mu; }
constexpr Pair swapped(Pair p) { return {p.mu, p.nu}; }

// Listing order used wherever terms or support points are serialized:
// ascending total degree, ties x-power first, so 1 < x < y < x^2 < xy < y^2.
struct GradedLess {
  constexpr bool operator()(Pair a, Pair b) const {
    if (grade(a) != grade(b)) return grade(a) < grade(b);
    return a.mu < b.mu;
  }
};

std::string to_string(Pair p);  // "(nu,mu)"

// Sparse bivariate polynomial over the rationals. Stored terms are nonzero.
class Poly {
 public:
  Poly() = default;
  explicit Poly(const Rat& constant);
  static Poly term(const Rat& c, Pair p);
  static Poly line();  // x + y - 1

  const std::map<Pair, Rat, GradedLess>& terms() const { return terms_; }
  Rat coeff(Pair p) const;
  bool is_zero() const { return terms_.empty(); }
  int degree() const;  // -1 for the zero polynomial
  void add_term(Pair p, const Rat& c);

  Rat eval(const Rat& x, const Rat& y) const;

  friend Poly operator+(const Poly& f, const Poly& g);
  friend Poly operator-(const Poly& f, const Poly& g);
  friend Poly operator*(const Poly& f, const Poly& g);
  friend bool operator==(const Poly& f, const Poly& g) = default;

 private:
  std::map<Pair, Rat, GradedLess> terms_;
};

// Quotient and remainder of f - 1 by x + y - 1, always reducing the term
// with the highest x-power in the top degree block, so the remainder is a
// polynomial in y alone. The remainder is zero exactly when f is one
// everywhere on the line x + y = 1, and then deg(quotient) = deg(f) - 1.
struct LineDivision {
  Poly quotient;
  Poly remainder;
};
LineDivision divide_by_line(const Poly& f);

// Term listing like "2x^2y+x^2+2xy^2+y^2": x-power descending, then
// y-power descending. Unit coefficients are dropped before a monomial.
std::string to_string(const Poly& f);

}  // namespace mld1
