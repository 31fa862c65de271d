#include "mld1/model.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <utility>

#include "mld1/errors.hpp"

namespace mld1 {
namespace {

// One strict inequality sum_j coef[j] s_j + cst > 0.
struct StrictIneq {
  std::vector<Rat> coef;
  Rat cst;
};

constexpr std::size_t kIneqCap = 1u << 20;

// Feasibility of a strict linear system by eliminating the last variable
// against every (lower, upper) pair, then back-substituting a witness:
// at each level the surviving bounds leave an open interval, and any
// rational inside it extends the assignment.
std::optional<std::vector<Rat>> strict_point(std::vector<StrictIneq> system,
                                             int vars) {
  std::vector<std::vector<StrictIneq>> level(vars + 1);
  for (int v = vars; v >= 1; --v) {
    level[v] = system;
    std::vector<StrictIneq> next;
    std::vector<const StrictIneq*> lowers, uppers;
    for (const StrictIneq& q : system) {
      const Rat& a = q.coef[v - 1];
      if (a == 0) {
        StrictIneq kept{{q.coef.begin(), q.coef.begin() + (v - 1)}, q.cst};
        next.push_back(std::move(kept));
      } else if (a > 0) {
        lowers.push_back(&q);
      } else {
        uppers.push_back(&q);
      }
    }
    for (const StrictIneq* lo : lowers) {
      for (const StrictIneq* up : uppers) {
        const Rat a = lo->coef[v - 1];
        const Rat nb = -up->coef[v - 1];
        StrictIneq mix;
        mix.coef.resize(v - 1);
        for (int j = 0; j < v - 1; ++j) {
          mix.coef[j] = a * up->coef[j] + nb * lo->coef[j];
        }
        mix.cst = a * up->cst + nb * lo->cst;
        next.push_back(std::move(mix));
        if (next.size() > kIneqCap) {
          throw BudgetError("positivity search outgrew its budget");
        }
      }
    }
    system = std::move(next);
  }
  for (const StrictIneq& q : system) {
    if (q.cst <= 0) return std::nullopt;
  }

  std::vector<Rat> value(vars);
  for (int v = 1; v <= vars; ++v) {
    bool has_lo = false, has_up = false;
    Rat lo = 0, up = 0;
    for (const StrictIneq& q : level[v]) {
      const Rat& a = q.coef[v - 1];
      if (a == 0) continue;
      Rat rest = q.cst;
      for (int j = 0; j < v - 1; ++j) rest += q.coef[j] * value[j];
      Rat bound = -rest / a;
      if (a > 0) {
        if (!has_lo || bound > lo) lo = bound;
        has_lo = true;
      } else {
        if (!has_up || bound < up) up = bound;
        has_up = true;
      }
    }
    if (has_lo && has_up) {
      value[v - 1] = (lo + up) / 2;
    } else if (has_lo) {
      value[v - 1] = lo + 1;
    } else if (has_up) {
      value[v - 1] = up - 1;
    }
  }
  return value;
}

std::vector<Pair> sorted_support(std::vector<Pair> support) {
  std::sort(support.begin(), support.end(), GradedLess{});
  return support;
}

}  // namespace

Model Model::from_entries(std::vector<Entry> entries) {
  if (entries.empty()) throw ContractError("a model needs at least one entry");
  std::sort(entries.begin(), entries.end(),
            [](const Entry& a, const Entry& b) {
              return GradedLess{}(a.p, b.p);
            });
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const Entry& e = entries[i];
    if (e.p == Pair{0, 0}) {
      throw ContractError("exponent pair (0,0) is not allowed");
    }
    if (e.p.nu < 0 || e.p.mu < 0) {
      throw ContractError("exponents must be nonnegative, got " +
                          to_string(e.p));
    }
    if (e.c <= 0) {
      throw ContractError("coefficient at " + to_string(e.p) +
                          " must be positive, got " + to_string(e.c));
    }
    if (i > 0 && entries[i - 1].p == e.p) {
      throw ContractError("exponent pair " + to_string(e.p) + " repeats");
    }
  }
  Model m;
  m.entries_ = std::move(entries);
  if (!divide_by_line(m.f()).remainder.is_zero()) {
    throw ContractError("components do not sum to one on the line");
  }
  return m;
}

int Model::degree() const { return grade(entries_.back().p); }

std::vector<Pair> Model::support() const {
  std::vector<Pair> s;
  s.reserve(entries_.size());
  for (const Entry& e : entries_) s.push_back(e.p);
  return s;
}

Rat Model::coeff(Pair p) const {
  for (const Entry& e : entries_) {
    if (e.p == p) return e.c;
  }
  return 0;
}

Poly Model::f() const {
  Poly f;
  for (const Entry& e : entries_) f.add_term(e.p, e.c);
  return f;
}

Model Model::swap_states() const {
  std::vector<Entry> flipped;
  flipped.reserve(entries_.size());
  for (const Entry& e : entries_) flipped.push_back({swapped(e.p), e.c});
  return from_entries(std::move(flipped));
}

Model binomial_model(int n) {
  if (n < 1) throw InputError("binomial model needs n >= 1");
  std::vector<Entry> entries;
  for (int i = 0; i <= n; ++i) {
    entries.push_back({{i, n - i}, Rat(binomial(n, i))});
  }
  return Model::from_entries(std::move(entries));
}

Model geometric_model(int n) {
  if (n < 1) throw InputError("geometric model needs n >= 1");
  std::vector<Entry> entries;
  for (int k = 0; k < n; ++k) entries.push_back({{1, k}, 1});
  entries.push_back({{0, n}, 1});
  return Model::from_entries(std::move(entries));
}

Model sharp_model(int n) {
  if (n < 1) throw InputError("sharp model needs n >= 1");
  std::vector<Entry> entries;
  entries.push_back({{2 * n - 1, 0}, 1});
  for (int i = 0; i < n; ++i) {
    Rat c = Rat(2 * n - 1) / (2 * i + 1) * Rat(binomial(n + i - 1, 2 * i));
    entries.push_back({{n - i - 1, 2 * i + 1}, c});
  }
  return Model::from_entries(std::move(entries));
}

SupportSolve solve_scalings(const std::vector<Pair>& support) {
  if (support.empty()) throw InputError("empty support");
  std::vector<Pair> s = sorted_support(support);
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == Pair{0, 0}) throw InputError("support contains (0,0)");
    if (s[i].nu < 0 || s[i].mu < 0) {
      throw InputError("support exponents must be nonnegative");
    }
    if (i > 0 && s[i - 1] == s[i]) {
      throw InputError("support point " + to_string(s[i]) + " repeats");
    }
  }
  const int d = grade(s.back());

  SupportSolve out;
  out.report.degree = d;
  SolveResult res = solve_exact(expansion_matrix(s, d), unit_rhs(d));
  out.report.rank = res.rank;
  out.report.nullity = static_cast<int>(s.size()) - res.rank;
  if (res.kind == SolveKind::Inconsistent) return out;

  std::vector<Rat> c;
  if (res.kind == SolveKind::Unique) {
    if (std::any_of(res.solution.begin(), res.solution.end(),
                    [](const Rat& q) { return q <= 0; })) {
      return out;
    }
    c = res.solution;
    out.report.fundamental = true;
  } else {
    const int k = static_cast<int>(res.nullspace.size());
    std::vector<StrictIneq> system;
    for (std::size_t i = 0; i < s.size(); ++i) {
      StrictIneq q;
      q.coef.resize(k);
      for (int j = 0; j < k; ++j) q.coef[j] = res.nullspace[j][i];
      q.cst = res.solution[i];
      system.push_back(std::move(q));
    }
    auto point = strict_point(std::move(system), k);
    if (!point) return out;
    c = res.solution;
    for (std::size_t i = 0; i < s.size(); ++i) {
      for (int j = 0; j < k; ++j) c[i] += (*point)[j] * res.nullspace[j][i];
    }
  }

  std::vector<Entry> entries;
  for (std::size_t i = 0; i < s.size(); ++i) entries.push_back({s[i], c[i]});
  out.model = Model::from_entries(std::move(entries));
  out.report.has_model = true;
  return out;
}

Model compose_at(const Model& m1, const Model& m2, Pair at) {
  if (m1.coeff(at) < 1) {
    throw ContractError("composition needs coefficient >= 1 at " +
                        to_string(at) + ", got " + to_string(m1.coeff(at)));
  }
  std::map<Pair, Rat, GradedLess> merged;
  for (const Entry& e : m1.entries()) merged[e.p] += e.c;
  merged[at] -= 1;
  for (const Entry& e : m2.entries()) {
    merged[Pair{at.nu + e.p.nu, at.mu + e.p.mu}] += e.c;
  }
  std::vector<Entry> entries;
  for (const auto& [p, c] : merged) {
    if (c != 0) entries.push_back({p, c});
  }
  return Model::from_entries(std::move(entries));
}

Model compose(const Model& m1, const Model& m2) {
  Pair corner{m1.degree(), 0};
  if (m1.coeff(corner) != 1) {
    throw ContractError("composition needs coefficient exactly 1 at " +
                        to_string(corner) + ", got " +
                        to_string(m1.coeff(corner)));
  }
  return compose_at(m1, m2, corner);
}

Poly unsplit(const Poly& f, Pair at, const Rat& c) {
  if (c <= 0) throw ContractError("unsplit amount must be positive");
  Pair right{at.nu + 1, at.mu};
  Pair up{at.nu, at.mu + 1};
  if (f.coeff(right) < c || f.coeff(up) < c) {
    throw ContractError("coefficients at " + to_string(right) + " and " +
                        to_string(up) + " must both cover " + to_string(c));
  }
  Poly g = f;
  g.add_term(right, -c);
  g.add_term(up, -c);
  g.add_term(at, c);
  return g;
}

Model unsplit(const Model& m, Pair at, const Rat& c) {
  Poly g = unsplit(m.f(), at, c);
  std::vector<Entry> entries;
  for (const auto& [p, coeff] : g.terms()) entries.push_back({p, coeff});
  return Model::from_entries(std::move(entries));
}

Rat mle(const Model& m, const std::vector<Rat>& u) {
  if (static_cast<int>(u.size()) != m.n() + 1) {
    throw InputError("expected " + std::to_string(m.n() + 1) +
                     " counts, got " + std::to_string(u.size()));
  }
  Rat num = 0, den = 0;
  bool any = false;
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (u[i] < 0) throw InputError("counts must be nonnegative");
    if (u[i] > 0) any = true;
    const Pair p = m.entries()[i].p;
    num += u[i] * p.nu;
    den += u[i] * grade(p);
  }
  if (!any) throw InputError("counts must not all be zero");
  return num / den;
}

int Family::degree() const { return grade(terms_.back().p); }

std::vector<Pair> Family::support() const {
  std::vector<Pair> s;
  s.reserve(terms_.size());
  for (const Term& t : terms_) s.push_back(t.p);
  return s;
}

Model Family::instantiate(const Rat& c) const {
  if (c <= 0 || c >= 1) {
    throw InputError("family parameter must lie strictly between 0 and 1");
  }
  std::vector<Entry> entries;
  for (const Term& t : terms_) {
    entries.push_back({t.p, t.constant + t.slope * c});
  }
  return Model::from_entries(std::move(entries));
}

Family one_parameter_family(int n, int d) {
  if (n < 4 || d < n || d > 2 * n - 4) {
    throw InputError(
        "one-parameter families need n >= 4 and n <= d <= 2n-4");
  }
  // A base on n-1 states of degree d-1 with coefficient one at its top
  // corner: the top-degree case is the sharp construction, everything
  // below composes a sharp head with a binomial tail of matching size.
  const int m = n - 2;
  const int e = d - 1;
  Model base = (e == 2 * m - 1)
                   ? sharp_model(m)
                   : compose(sharp_model(e - m + 1), binomial_model(2 * m - e - 1));
  Family fam;
  for (const Entry& entry : base.entries()) {
    if (entry.p == Pair{e, 0}) continue;
    fam.terms_.push_back({entry.p, entry.c, 0});
  }
  fam.terms_.push_back({{e, 0}, 1, -1});
  fam.terms_.push_back({{e, 1}, 0, 1});
  fam.terms_.push_back({{d, 0}, 0, 1});
  std::sort(fam.terms_.begin(), fam.terms_.end(),
            [](const Family::Term& a, const Family::Term& b) {
              return GradedLess{}(a.p, b.p);
            });
  return fam;
}

MultiModel MultiModel::from_entries(int r,
                                    std::vector<std::vector<int>> exponents,
                                    std::vector<Rat> coeffs) {
  if (r < 1) throw InputError("needs at least one parameter");
  if (exponents.size() != coeffs.size() || exponents.empty()) {
    throw InputError("exponent rows and coefficients must match and be nonempty");
  }
  for (const auto& row : exponents) {
    if (static_cast<int>(row.size()) != r + 1) {
      throw InputError("each state needs r+1 exponents");
    }
    if (std::all_of(row.begin(), row.end(), [](int x) { return x == 0; })) {
      throw ContractError("all-zero exponent row is not allowed");
    }
    for (int x : row) {
      if (x < 0) throw ContractError("exponents must be nonnegative");
    }
  }
  for (std::size_t i = 0; i < exponents.size(); ++i) {
    for (std::size_t j = i + 1; j < exponents.size(); ++j) {
      if (exponents[i] == exponents[j]) {
        throw ContractError("exponent rows repeat");
      }
    }
    if (coeffs[i] <= 0) throw ContractError("coefficients must be positive");
  }

  // Sum-to-one holds identically: expand every state in t_1..t_r and
  // compare the total with the constant 1.
  std::map<std::vector<int>, Rat> total;
  for (std::size_t i = 0; i < exponents.size(); ++i) {
    std::map<std::vector<int>, Rat> state;
    std::vector<int> lead(exponents[i].begin(), exponents[i].end() - 1);
    state[lead] = coeffs[i];
    for (int rep = 0; rep < exponents[i][r]; ++rep) {
      // Multiply by 1 - t_1 - ... - t_r.
      std::map<std::vector<int>, Rat> next;
      for (const auto& [mono, c] : state) {
        next[mono] += c;
        for (int alpha = 0; alpha < r; ++alpha) {
          std::vector<int> bumped = mono;
          ++bumped[alpha];
          next[bumped] -= c;
        }
      }
      state = std::move(next);
    }
    for (const auto& [mono, c] : state) {
      total[mono] += c;
      if (total[mono] == 0) total.erase(mono);
    }
  }
  if (total.size() != 1 || total.begin()->first != std::vector<int>(r, 0) ||
      total.begin()->second != 1) {
    throw ContractError("components do not sum to one on the simplex");
  }

  MultiModel m;
  m.r_ = r;
  m.exponents_ = std::move(exponents);
  m.coeffs_ = std::move(coeffs);
  return m;
}

MultiModel MultiModel::lift(const Model& m) {
  std::vector<std::vector<int>> exponents;
  std::vector<Rat> coeffs;
  for (const Entry& e : m.entries()) {
    exponents.push_back({e.p.nu, e.p.mu});
    coeffs.push_back(e.c);
  }
  return from_entries(1, std::move(exponents), std::move(coeffs));
}

std::vector<Rat> mle(const MultiModel& m, const std::vector<Rat>& u) {
  if (u.size() != m.exponents().size()) {
    throw InputError("expected " + std::to_string(m.exponents().size()) +
                     " counts, got " + std::to_string(u.size()));
  }
  const int r = m.r();
  std::vector<Rat> weight(r + 1, Rat(0));
  Rat sum = 0;
  bool any = false;
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (u[i] < 0) throw InputError("counts must be nonnegative");
    if (u[i] > 0) any = true;
    for (int alpha = 0; alpha <= r; ++alpha) {
      weight[alpha] += u[i] * m.exponents()[i][alpha];
    }
  }
  if (!any) throw InputError("counts must not all be zero");
  for (int alpha = 0; alpha <= r; ++alpha) sum += weight[alpha];
  std::vector<Rat> t(r);
  for (int alpha = 0; alpha < r; ++alpha) t[alpha] = weight[alpha] / sum;
  return t;
}

}  // namespace mld1
