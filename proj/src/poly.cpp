#include "mld1/poly.hpp"

#include <algorithm>
#include <sstream>
#include <vector>

namespace mld1 {

std::string to_string(Pair p) {
  return "(" + std::to_string(p.nu) + "," + std::to_string(p.mu) + ")";
}

Poly::Poly(const Rat& constant) {
  if (constant != 0) terms_.emplace(Pair{0, 0}, constant);
}

Poly Poly::term(const Rat& c, Pair p) {
  Poly f;
  f.add_term(p, c);
  return f;
}

Poly Poly::line() {
  Poly f;
  f.add_term({1, 0}, 1);
  f.add_term({0, 1}, 1);
  f.add_term({0, 0}, -1);
  return f;
}

Rat Poly::coeff(Pair p) const {
  auto it = terms_.find(p);
  return it == terms_.end() ? Rat(0) : it->second;
}

int Poly::degree() const {
  return terms_.empty() ? -1 : grade(terms_.rbegin()->first);
}

void Poly::add_term(Pair p, const Rat& c) {
  if (c == 0) return;
  auto [it, fresh] = terms_.emplace(p, c);
  if (!fresh) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

Rat Poly::eval(const Rat& x, const Rat& y) const {
  // Powers are cached up to the degree; each term is then one multiply.
  std::vector<Rat> xs{Rat(1)}, ys{Rat(1)};
  int d = degree();
  for (int i = 1; i <= d; ++i) {
    xs.push_back(xs.back() * x);
    ys.push_back(ys.back() * y);
  }
  Rat total = 0;
  for (const auto& [p, c] : terms_) total += c * xs[p.nu] * ys[p.mu];
  return total;
}

Poly operator+(const Poly& f, const Poly& g) {
  Poly sum = f;
  for (const auto& [p, c] : g.terms_) sum.add_term(p, c);
  return sum;
}

Poly operator-(const Poly& f, const Poly& g) {
  Poly diff = f;
  for (const auto& [p, c] : g.terms_) diff.add_term(p, -c);
  return diff;
}

Poly operator*(const Poly& f, const Poly& g) {
  Poly prod;
  for (const auto& [p, a] : f.terms_) {
    for (const auto& [q, b] : g.terms_) {
      prod.add_term({p.nu + q.nu, p.mu + q.mu}, a * b);
    }
  }
  return prod;
}

LineDivision divide_by_line(const Poly& f) {
  LineDivision div;
  div.remainder = f - Poly(Rat(1));
  // Reduce the term maximal under (degree, then x-power) among those with
  // positive x-power: subtracting c x^(a-1) y^b (x + y - 1) clears
  // c x^a y^b and only adds terms strictly smaller in that order, so the
  // loop terminates with an x-free remainder.
  while (true) {
    const auto& terms = div.remainder.terms();
    Pair top{-1, -1};
    for (auto it = terms.rbegin(); it != terms.rend(); ++it) {
      Pair p = it->first;
      if (top.nu >= 0 && grade(p) < grade(top)) break;
      if (p.nu > 0 && p.nu > top.nu) top = p;
    }
    if (top.nu < 0) break;
    Rat c = div.remainder.coeff(top);
    Pair below{top.nu - 1, top.mu};
    div.quotient.add_term(below, c);
    div.remainder.add_term(top, -c);
    div.remainder.add_term({below.nu, below.mu + 1}, -c);
    div.remainder.add_term(below, c);
  }
  return div;
}

std::string to_string(const Poly& f) {
  if (f.is_zero()) return "0";
  // x-power descending, then y-power descending.
  std::vector<std::pair<Pair, Rat>> order(f.terms().begin(), f.terms().end());
  std::sort(order.begin(), order.end(), [](const auto& a, const auto& b) {
    if (a.first.nu != b.first.nu) return a.first.nu > b.first.nu;
    return a.first.mu > b.first.mu;
  });
  std::ostringstream out;
  bool first = true;
  for (const auto& [p, c] : order) {
    Rat a = c;
    if (first) {
      if (a < 0) {
        out << "-";
        a = -a;
      }
    } else {
      out << (a < 0 ? "-" : "+");
      if (a < 0) a = -a;
    }
    first = false;
    bool has_vars = p.nu > 0 || p.mu > 0;
    if (a != 1 || !has_vars) out << to_string(a);
    if (p.nu > 0) {
      out << "x";
      if (p.nu > 1) out << "^" << p.nu;
    }
    if (p.mu > 0) {
      out << "y";
      if (p.mu > 1) out << "^" << p.mu;
    }
  }
  return out.str();
}

}  // namespace mld1
