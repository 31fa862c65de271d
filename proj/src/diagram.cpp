#include "mld1/diagram.hpp"

#include <algorithm>
#include <array>
#include <sstream>

#include "mld1/errors.hpp"

namespace mld1 {
namespace {

// (left, self, below) sign patterns that make a cell a sink; sources are
// the same patterns with Plus and Minus exchanged.
constexpr std::array<std::array<Sign, 3>, 7> kSinkPatterns = {{
    {Sign::Plus, Sign::Minus, Sign::Plus},
    {Sign::Plus, Sign::Minus, Sign::Zero},
    {Sign::Zero, Sign::Minus, Sign::Plus},
    {Sign::Zero, Sign::Minus, Sign::Zero},
    {Sign::Plus, Sign::Zero, Sign::Plus},
    {Sign::Zero, Sign::Zero, Sign::Plus},
    {Sign::Plus, Sign::Zero, Sign::Zero},
}};

Sign flipped(Sign s) {
  if (s == Sign::Plus) return Sign::Minus;
  if (s == Sign::Minus) return Sign::Plus;
  return Sign::Zero;
}

char letter(Sign s) {
  if (s == Sign::Plus) return 'P';
  if (s == Sign::Minus) return 'N';
  return '0';
}

}  // namespace

Diagram Diagram::of(const Model& m) {
  LineDivision div = divide_by_line(m.f());
  if (!div.remainder.is_zero()) {
    throw ContractError("cofactor division left a remainder");
  }
  return of_poly(div.quotient);
}

Diagram Diagram::of_poly(const Poly& g) {
  Diagram dia;
  dia.degree_ = g.degree() + 1;
  dia.grid_.resize(dia.degree_ + 1);
  for (int mu = 0; mu <= dia.degree_; ++mu) {
    dia.grid_[mu].assign(dia.degree_ - mu + 1, Sign::Zero);
  }
  for (const auto& [p, c] : g.terms()) {
    dia.grid_[p.mu][p.nu] = c > 0 ? Sign::Plus : Sign::Minus;
  }
  return dia;
}

Sign Diagram::at(Pair p) const {
  if (p.nu < 0 || p.mu < 0 || grade(p) > degree_) return Sign::Zero;
  return grid_[p.mu][p.nu];
}

std::vector<Pair> Diagram::sinks() const {
  std::vector<Pair> found;
  for (int mu = 0; mu <= degree_; ++mu) {
    for (int nu = 0; nu <= degree_ - mu; ++nu) {
      std::array<Sign, 3> window = {at({nu - 1, mu}), at({nu, mu}),
                                    at({nu, mu - 1})};
      if (std::find(kSinkPatterns.begin(), kSinkPatterns.end(), window) !=
          kSinkPatterns.end()) {
        found.push_back({nu, mu});
      }
    }
  }
  std::sort(found.begin(), found.end(), GradedLess{});
  return found;
}

std::vector<Pair> Diagram::sources() const {
  std::vector<Pair> found;
  for (int mu = 0; mu <= degree_; ++mu) {
    for (int nu = 0; nu <= degree_ - mu; ++nu) {
      std::array<Sign, 3> window = {flipped(at({nu - 1, mu})),
                                    flipped(at({nu, mu})),
                                    flipped(at({nu, mu - 1}))};
      if (std::find(kSinkPatterns.begin(), kSinkPatterns.end(), window) !=
          kSinkPatterns.end()) {
        found.push_back({nu, mu});
      }
    }
  }
  std::sort(found.begin(), found.end(), GradedLess{});
  return found;
}

std::pair<int, int> Diagram::axis_cutoffs() const {
  int a = 0;
  while (a <= degree_ && at({a, 0}) == Sign::Plus) ++a;
  int b = 0;
  while (b <= degree_ && at({0, b}) == Sign::Plus) ++b;
  return {a, b};
}

StructureReport check_structure(const Model& m) {
  Diagram dia = Diagram::of(m);
  StructureReport rep;
  const int d = dia.degree();

  std::vector<Pair> sinks = dia.sinks();
  std::vector<Pair> sources = dia.sources();
  rep.sink_count = static_cast<int>(sinks.size());
  rep.source_count = static_cast<int>(sources.size());

  rep.sinks_in_support = true;
  for (Pair p : sinks) {
    if (m.coeff(p) <= 0) {
      rep.sinks_in_support = false;
      rep.detail = "sink " + to_string(p) + " is not a support point";
      break;
    }
  }

  rep.unique_source = sources.size() == 1 && sources[0] == Pair{0, 0};
  if (rep.detail.empty() && !rep.unique_source) {
    rep.detail = "expected the single source (0,0), found " +
                 std::to_string(sources.size());
  }

  auto [a, b] = dia.axis_cutoffs();
  rep.axis_pattern = a > 0 && b > 0;
  for (int j = a; j <= d && rep.axis_pattern; ++j) {
    if (dia.at({j, 0}) != Sign::Zero) rep.axis_pattern = false;
  }
  for (int j = b; j <= d && rep.axis_pattern; ++j) {
    if (dia.at({0, j}) != Sign::Zero) rep.axis_pattern = false;
  }
  if (rep.detail.empty() && !rep.axis_pattern) {
    rep.detail = "axis signs are not a positive run followed by zeros";
  }

  rep.sink_bound = rep.sink_count >= 2 + d / 2;  // d/2 = ceil((d-1)/2)
  if (rep.detail.empty() && !rep.sink_bound) {
    rep.detail = "too few sinks: " + std::to_string(rep.sink_count);
  }

  rep.support_bound = static_cast<int>(m.entries().size()) >= rep.sink_count;
  if (rep.detail.empty() && !rep.support_bound) {
    rep.detail = "support is smaller than the sink set";
  }

  rep.ok = rep.sinks_in_support && rep.unique_source && rep.axis_pattern &&
           rep.sink_bound && rep.support_bound;
  return rep;
}

bool sharp_support_ok(const std::vector<Pair>& support, int d) {
  bool corner_x = false, corner_y = false;
  std::vector<bool> on_x(d, false), on_y(d, false);
  bool top_minus_one = false;
  for (Pair p : support) {
    if (grade(p) == d) {
      if (p == Pair{d, 0}) {
        corner_x = true;
      } else if (p == Pair{0, d}) {
        corner_y = true;
      } else {
        return false;  // nothing else lives in grade d
      }
    }
    if (p.mu == 0 && p.nu < d) on_x[p.nu] = true;
    if (p.nu == 0 && p.mu < d) on_y[p.mu] = true;
    if (grade(p) == d - 1) {
      if (p.nu % 2 == 0) return false;  // even slots of grade d-1 are empty
      top_minus_one = true;
    }
  }
  if (!corner_x || !corner_y) return false;
  if (d > 1 && !top_minus_one) return false;  // at d = 1 grade d-1 is the
                                              // origin, which no support
                                              // can hold
  for (int k = 1; k < d; ++k) {
    if (on_x[k] && on_y[k]) return false;  // axis points never pair up
  }
  return true;
}

std::string render_diagram(const Diagram& dia) {
  std::ostringstream out;
  const int d = dia.degree();
  for (int mu = d; mu >= 0; --mu) {
    for (int nu = 0; nu <= d - mu; ++nu) {
      if (nu > 0) out << ' ';
      out << letter(dia.at({nu, mu}));
    }
    out << '\n';
  }
  return out.str();
}

std::string render_chips(const Model& m) {
  Poly p = m.f() - Poly(Rat(1));
  const int d = p.degree();
  auto cell = [&](int nu, int mu) -> std::string {
    Rat c = p.coeff({nu, mu});
    return c == 0 ? "." : to_string(c);
  };
  std::vector<std::size_t> width(d + 1, 0);
  for (int mu = 0; mu <= d; ++mu) {
    for (int nu = 0; nu <= d - mu; ++nu) {
      width[nu] = std::max(width[nu], cell(nu, mu).size());
    }
  }
  std::ostringstream out;
  for (int mu = d; mu >= 0; --mu) {
    for (int nu = 0; nu <= d - mu; ++nu) {
      if (nu > 0) out << ' ';
      std::string s = cell(nu, mu);
      out << std::string(width[nu] - s.size(), ' ') << s;
    }
    out << '\n';
  }
  return out.str();
}

Model parse_chips(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream cells(line);
    std::vector<std::string> row;
    std::string tok;
    while (cells >> tok) row.push_back(tok);
    if (!row.empty()) rows.push_back(std::move(row));
  }
  if (rows.empty()) throw InputError("empty chip triangle");
  const int d = static_cast<int>(rows.size()) - 1;
  Poly p;
  for (int i = 0; i <= d; ++i) {
    const int mu = d - i;
    if (static_cast<int>(rows[i].size()) != d - mu + 1) {
      throw InputError("row for y-power " + std::to_string(mu) + " needs " +
                       std::to_string(d - mu + 1) + " cells");
    }
    for (int nu = 0; nu < static_cast<int>(rows[i].size()); ++nu) {
      const std::string& tok = rows[i][nu];
      if (tok == ".") continue;
      auto c = parse_rational(tok);
      if (!c) throw InputError("bad chip count '" + tok + "'");
      p.add_term({nu, mu}, *c);
    }
  }
  Poly f = p + Poly(Rat(1));
  std::vector<Entry> entries;
  for (const auto& [q, c] : f.terms()) entries.push_back({q, c});
  return Model::from_entries(std::move(entries));
}

}  // namespace mld1
