#include "mld1.h"

#include <cstdlib>
#include <cstring>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "mld1/diagram.hpp"
#include "mld1/enumerate.hpp"
#include "mld1/errors.hpp"
#include "mld1/io.hpp"
#include "mld1/linsolve.hpp"
#include "mld1/model.hpp"

struct mld1_model {
  mld1::Model m;
};
struct mld1_catalog {
  mld1::Catalog c;
};
struct mld1_family {
  mld1::Family f;
};

namespace {

thread_local std::string last_error;

template <typename Fn>
mld1_status guarded(Fn&& fn) {
  try {
    fn();
    return MLD1_OK;
  } catch (const mld1::InputError& e) {
    last_error = e.what();
    return MLD1_ERR_INPUT;
  } catch (const mld1::BudgetError& e) {
    last_error = e.what();
    return MLD1_ERR_BUDGET;
  } catch (const std::exception& e) {
    last_error = e.what();
    return MLD1_ERR_CONTRACT;
  }
}

mld1_status complain(mld1_status status, const char* what) {
  last_error = what;
  return status;
}

char* copy_out(const std::string& s) {
  char* raw = static_cast<char*>(std::malloc(s.size() + 1));
  std::memcpy(raw, s.c_str(), s.size() + 1);
  return raw;
}

std::string join_pairs(const std::vector<mld1::Pair>& pairs) {
  std::string out;
  for (const mld1::Pair& p : pairs) {
    if (!out.empty()) out += ' ';
    out += to_string(p);
  }
  return out;
}

// Coefficients echoed in the order the caller gave the support in, not
// the model's canonical order.
std::string coefficient_line(const mld1::Model& m,
                             const std::vector<mld1::Pair>& order) {
  std::string line = "c =";
  for (std::size_t i = 0; i < order.size(); ++i) {
    line += (i == 0) ? " " : ", ";
    line += mld1::to_string(m.coeff(order[i]));
  }
  return line;
}

const char* yes_no(bool b) { return b ? "yes" : "no"; }

void describe_structure(std::ostringstream& out, const mld1::Model& m) {
  mld1::StructureReport s = mld1::check_structure(m);
  out << "sinks carry positive coefficients: " << yes_no(s.sinks_in_support)
      << "\n";
  out << "unique source at the origin: " << yes_no(s.unique_source) << "\n";
  out << "axis sign pattern: " << yes_no(s.axis_pattern) << "\n";
  out << "sink bound (" << s.sink_count << " sinks >= " << 2 + m.degree() / 2
      << "): " << yes_no(s.sink_bound) << "\n";
  out << "support covers sinks (" << m.n() + 1 << " >= " << s.sink_count
      << "): " << yes_no(s.support_bound) << "\n";
}

// The shared tail of the support reports: solvability, positivity,
// fundamentality, one representative scaling when there is one.
void describe_solve(std::ostringstream& out, const mld1::SupportSolve& solve,
                    const std::vector<mld1::Pair>& order) {
  const mld1::SolveReport& r = solve.report;
  out << "expansion rank " << r.rank << ", nullity " << r.nullity << "\n";
  if (!r.has_model) {
    if (r.nullity == 0 && r.rank > 0) {
      out << "scalings: none are strictly positive\n";
    } else {
      out << "scalings: no solution\n";
    }
    out << "fundamental: no\n";
    return;
  }
  if (r.nullity == 0) {
    out << "scalings: unique\n";
  } else {
    out << "scalings: " << r.nullity
        << "-parameter family with a strictly positive member\n";
  }
  out << "fundamental: " << yes_no(r.fundamental) << "\n";
  out << coefficient_line(*solve.model, order) << "\n";
}

}  // namespace

extern "C" {

const char* mld1_last_error(void) { return last_error.c_str(); }

void mld1_string_free(char* s) { std::free(s); }

/* ---- models: construction ------------------------------------------- */

mld1_status mld1_model_parse(const char* text, mld1_model** out) {
  if (!text || !out) return complain(MLD1_ERR_INPUT, "null argument");
  return guarded([&] { *out = new mld1_model{mld1::parse_model(text)}; });
}

mld1_status mld1_model_binomial(int n, mld1_model** out) {
  if (!out) return complain(MLD1_ERR_INPUT, "null argument");
  return guarded([&] { *out = new mld1_model{mld1::binomial_model(n)}; });
}

mld1_status mld1_model_geometric(int n, mld1_model** out) {
  if (!out) return complain(MLD1_ERR_INPUT, "null argument");
  return guarded([&] { *out = new mld1_model{mld1::geometric_model(n)}; });
}

mld1_status mld1_model_sharp(int n, mld1_model** out) {
  if (!out) return complain(MLD1_ERR_INPUT, "null argument");
  return guarded([&] { *out = new mld1_model{mld1::sharp_model(n)}; });
}

mld1_status mld1_model_swap(const mld1_model* m, mld1_model** out) {
  if (!m || !out) return complain(MLD1_ERR_INPUT, "null argument");
  return guarded([&] { *out = new mld1_model{m->m.swap_states()}; });
}

mld1_status mld1_compose(const mld1_model* a, const mld1_model* b,
                         mld1_model** out) {
  if (!a || !b || !out) return complain(MLD1_ERR_INPUT, "null argument");
  return guarded([&] { *out = new mld1_model{mld1::compose(a->m, b->m)}; });
}

mld1_status mld1_compose_at(const mld1_model* a, const mld1_model* b, int nu,
                            int mu, mld1_model** out) {
  if (!a || !b || !out) return complain(MLD1_ERR_INPUT, "null argument");
  return guarded([&] {
    *out = new mld1_model{mld1::compose_at(a->m, b->m, {nu, mu})};
  });
}

mld1_status mld1_unsplit(const mld1_model* m, int nu, int mu,
                         const char* amount, mld1_model** out) {
  if (!m || !amount || !out) return complain(MLD1_ERR_INPUT, "null argument");
  return guarded([&] {
    std::optional<mld1::Rat> c = mld1::parse_rational(amount);
    if (!c) throw mld1::InputError("not a rational: " + std::string(amount));
    *out = new mld1_model{mld1::unsplit(m->m, {nu, mu}, *c)};
  });
}

void mld1_model_free(mld1_model* m) { delete m; }

/* ---- models: inspection ---------------------------------------------- */

int mld1_model_n(const mld1_model* m) { return m ? m->m.n() : -1; }

int mld1_model_degree(const mld1_model* m) { return m ? m->m.degree() : -1; }

mld1_status mld1_model_format(const mld1_model* m, char** out) {
  if (!m || !out) return complain(MLD1_ERR_INPUT, "null argument");
  return guarded([&] { *out = copy_out(mld1::format_model(m->m)); });
}

mld1_status mld1_model_poly(const mld1_model* m, char** out) {
  if (!m || !out) return complain(MLD1_ERR_INPUT, "null argument");
  return guarded([&] { *out = copy_out(to_string(m->m.f())); });
}

mld1_status mld1_model_diagram(const mld1_model* m, char** out) {
  if (!m || !out) return complain(MLD1_ERR_INPUT, "null argument");
  return guarded([&] {
    *out = copy_out(mld1::render_diagram(mld1::Diagram::of(m->m)));
  });
}

mld1_status mld1_model_chips(const mld1_model* m, char** out) {
  if (!m || !out) return complain(MLD1_ERR_INPUT, "null argument");
  return guarded([&] { *out = copy_out(mld1::render_chips(m->m)); });
}

mld1_status mld1_model_sinks(const mld1_model* m, char** out) {
  if (!m || !out) return complain(MLD1_ERR_INPUT, "null argument");
  return guarded([&] {
    *out = copy_out(join_pairs(mld1::Diagram::of(m->m).sinks()));
  });
}

mld1_status mld1_model_sources(const mld1_model* m, char** out) {
  if (!m || !out) return complain(MLD1_ERR_INPUT, "null argument");
  return guarded([&] {
    *out = copy_out(join_pairs(mld1::Diagram::of(m->m).sources()));
  });
}

mld1_status mld1_model_mle(const mld1_model* m, const char* counts,
                           char** out) {
  if (!m || !counts || !out) return complain(MLD1_ERR_INPUT, "null argument");
  return guarded([&] {
    std::vector<mld1::Rat> u = mld1::parse_counts(counts);
    *out = copy_out(mld1::to_string(mld1::mle(m->m, u)));
  });
}

/* ---- reports ---------------------------------------------------------- */

mld1_status mld1_check_model(const char* text, char** report, int* ok) {
  if (!text || !report || !ok) return complain(MLD1_ERR_INPUT, "null argument");
  return guarded([&] {
    mld1::ModelText shape = mld1::parse_model_text(text);
    std::ostringstream out;
    out << "states: " << shape.n + 1 << " (n = " << shape.n << ")\n";
    bool good = true;

    bool pairs_ok = true;
    for (std::size_t i = 0; i < shape.entries.size() && pairs_ok; ++i) {
      const auto& [p, c] = shape.entries[i];
      if (p.nu < 0 || p.mu < 0 || (p.nu == 0 && p.mu == 0)) pairs_ok = false;
      for (std::size_t j = 0; j < i; ++j) {
        if (shape.entries[j].p == p) pairs_ok = false;
      }
    }
    out << "support pairs distinct, non-origin, nonnegative: "
        << yes_no(pairs_ok) << "\n";
    good = good && pairs_ok;

    bool positive = true;
    for (const auto& [p, c] : shape.entries) {
      if (c <= 0) positive = false;
    }
    out << "coefficients strictly positive: " << yes_no(positive) << "\n";
    good = good && positive;

    mld1::Poly f;
    for (const auto& [p, c] : shape.entries) f.add_term(p, c);
    bool sums_to_one = divide_by_line(f).remainder.is_zero();
    out << "sum identically one on the line: " << yes_no(sums_to_one) << "\n";
    good = good && sums_to_one;

    int degree = f.degree();
    out << "degree: " << degree << " (declared " << shape.d << ")\n";
    good = good && degree == shape.d;

    if (pairs_ok) {
      std::vector<mld1::Pair> support;
      for (const auto& [p, c] : shape.entries) support.push_back(p);
      mld1::SupportSolve solve = mld1::solve_scalings(support);
      out << "expansion rank " << solve.report.rank << ", nullity "
          << solve.report.nullity << "\n";
      out << "fundamental: " << yes_no(solve.report.fundamental) << "\n";
      good = good && solve.report.fundamental;
    }

    if (good) {
      mld1::Model m = mld1::parse_model(text);
      std::vector<mld1::Pair> order;
      for (const mld1::Entry& entry : shape.entries) order.push_back(entry.p);
      out << coefficient_line(m, order) << "\n";
      describe_structure(out, m);
      good = good && mld1::check_structure(m).ok;
    }

    *ok = good ? 1 : 0;
    *report = copy_out(out.str());
  });
}

mld1_status mld1_check_support(const char* support, char** report, int* ok) {
  if (!support || !report || !ok) {
    return complain(MLD1_ERR_INPUT, "null argument");
  }
  return guarded([&] {
    std::vector<mld1::Pair> pairs = mld1::parse_support(support);
    mld1::SupportSolve solve = mld1::solve_scalings(pairs);
    std::ostringstream out;
    out << "support: " << join_pairs(pairs) << "\n";
    out << "states: " << pairs.size() << ", degree " << solve.report.degree
        << "\n";
    describe_solve(out, solve, pairs);
    *ok = solve.report.has_model ? 1 : 0;
    *report = copy_out(out.str());
  });
}

mld1_status mld1_solve_support(const char* support, char** report, int* ok,
                               mld1_model** witness) {
  if (!support || !report || !ok) {
    return complain(MLD1_ERR_INPUT, "null argument");
  }
  return guarded([&] {
    std::vector<mld1::Pair> pairs = mld1::parse_support(support);
    mld1::SupportSolve solve = mld1::solve_scalings(pairs);
    std::ostringstream out;
    out << "support: " << join_pairs(pairs) << "\n";
    out << "states: " << pairs.size() << ", degree " << solve.report.degree
        << "\n";
    describe_solve(out, solve, pairs);
    *ok = solve.report.has_model ? 1 : 0;
    if (witness) {
      *witness =
          solve.model ? new mld1_model{std::move(*solve.model)} : nullptr;
    }
    *report = copy_out(out.str());
  });
}

/* ---- enumeration ------------------------------------------------------ */

mld1_status mld1_enumerate(const mld1_search* spec, mld1_catalog** out) {
  if (!spec || !out) return complain(MLD1_ERR_INPUT, "null argument");
  return guarded([&] {
    mld1::SearchSpec s;
    s.n = spec->n;
    s.d = spec->d;
    s.collect = spec->collect != 0;
    s.workers = spec->workers > 1 ? spec->workers : 1;
    s.node_budget =
        spec->node_budget ? spec->node_budget : std::uint64_t{1'000'000'000};
    s.prunes.window = (spec->prune_mask & MLD1_PRUNE_WINDOW) != 0;
    s.prunes.anchors = (spec->prune_mask & MLD1_PRUNE_ANCHORS) != 0;
    s.prunes.sharp = (spec->prune_mask & MLD1_PRUNE_SHARP) != 0;
    s.prunes.rank = (spec->prune_mask & MLD1_PRUNE_RANK) != 0;
    s.prunes.feasible = (spec->prune_mask & MLD1_PRUNE_FEASIBLE) != 0;
    *out = new mld1_catalog{mld1::enumerate_models(s)};
  });
}

void mld1_catalog_free(mld1_catalog* c) { delete c; }

unsigned long long mld1_catalog_count(const mld1_catalog* c) {
  return c ? c->c.count : 0;
}

unsigned long long mld1_catalog_swap_classes(const mld1_catalog* c) {
  return c ? c->c.swap_classes : 0;
}

int mld1_catalog_size(const mld1_catalog* c) {
  return c ? static_cast<int>(c->c.models.size()) : 0;
}

mld1_status mld1_catalog_model(const mld1_catalog* c, int index,
                               mld1_model** out) {
  if (!c || !out) return complain(MLD1_ERR_INPUT, "null argument");
  if (index < 0 || index >= static_cast<int>(c->c.models.size())) {
    return complain(MLD1_ERR_INPUT, "catalog index out of range");
  }
  return guarded([&] { *out = new mld1_model{c->c.models[index]}; });
}

mld1_status mld1_catalog_format(const mld1_catalog* c, char** out) {
  if (!c || !out) return complain(MLD1_ERR_INPUT, "null argument");
  return guarded([&] { *out = copy_out(mld1::format_catalog(c->c)); });
}

mld1_status mld1_verify_table(int max_n, int workers,
                              unsigned long long node_budget, char** report,
                              int* ok) {
  if (!report || !ok) return complain(MLD1_ERR_INPUT, "null argument");
  return guarded([&] {
    mld1::TableCheck check = mld1::verify_table(
        max_n, workers > 1 ? workers : 1,
        node_budget ? node_budget : std::uint64_t{1'000'000'000});
    *ok = check.ok ? 1 : 0;
    *report = copy_out(mld1::format_table(check));
  });
}

mld1_status mld1_verify_recursive(int n, int workers, char** report,
                                  int* ok) {
  if (!report || !ok) return complain(MLD1_ERR_INPUT, "null argument");
  return guarded([&] {
    mld1::RecursiveCheck check =
        mld1::verify_recursive(n, workers > 1 ? workers : 1);
    *ok = check.ok ? 1 : 0;
    *report = copy_out(mld1::format_recursive(check));
  });
}

/* ---- one-parameter families ------------------------------------------ */

mld1_status mld1_family_create(int n, int d, mld1_family** out) {
  if (!out) return complain(MLD1_ERR_INPUT, "null argument");
  return guarded([&] {
    *out = new mld1_family{mld1::one_parameter_family(n, d)};
  });
}

void mld1_family_free(mld1_family* f) { delete f; }

int mld1_family_n(const mld1_family* f) { return f ? f->f.n() : -1; }

int mld1_family_degree(const mld1_family* f) { return f ? f->f.degree() : -1; }

mld1_status mld1_family_format(const mld1_family* f, char** out) {
  if (!f || !out) return complain(MLD1_ERR_INPUT, "null argument");
  return guarded([&] { *out = copy_out(mld1::format_family(f->f)); });
}

mld1_status mld1_family_instantiate(const mld1_family* f, const char* c,
                                    mld1_model** out) {
  if (!f || !c || !out) return complain(MLD1_ERR_INPUT, "null argument");
  return guarded([&] {
    std::optional<mld1::Rat> value = mld1::parse_rational(c);
    if (!value) throw mld1::InputError("not a rational: " + std::string(c));
    *out = new mld1_model{f->f.instantiate(*value)};
  });
}

} /* extern "C" */
