#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "mld1.h"

namespace {

// Every failing library call lands here; the status is the exit code.
int report_failure(mld1_status status) {
  std::fprintf(stderr, "error: %s\n", mld1_last_error());
  return static_cast<int>(status);
}

int usage_failure(const std::string& what) {
  std::fprintf(stderr, "error: %s\n", what.c_str());
  return 2;
}

struct ModelGuard {
  mld1_model* m = nullptr;
  ~ModelGuard() { mld1_model_free(m); }
};

struct CatalogGuard {
  mld1_catalog* c = nullptr;
  ~CatalogGuard() { mld1_catalog_free(c); }
};

struct FamilyGuard {
  mld1_family* f = nullptr;
  ~FamilyGuard() { mld1_family_free(f); }
};

struct StringGuard {
  char* s = nullptr;
  ~StringGuard() { mld1_string_free(s); }
};

// Reads a model file; "-" means standard input.
std::optional<std::string> slurp(const std::string& path) {
  std::ostringstream buf;
  if (path == "-") {
    buf << std::cin.rdbuf();
    return buf.str();
  }
  std::ifstream in(path);
  if (!in) return std::nullopt;
  buf << in.rdbuf();
  return buf.str();
}

int load_model(const std::string& path, ModelGuard& guard) {
  std::optional<std::string> text = slurp(path);
  if (!text) return usage_failure("cannot read " + path);
  mld1_status status = mld1_model_parse(text->c_str(), &guard.m);
  if (status != MLD1_OK) return report_failure(status);
  return 0;
}

bool parse_pair(const std::string& text, int& nu, int& mu) {
  std::istringstream in(text);
  char comma = 0;
  return (in >> nu >> comma >> mu) && comma == ',' && (in >> std::ws).eof();
}

// --jobs, capped by the MLD1_MAX_JOBS environment variable when set.
int effective_jobs(int jobs) {
  if (jobs < 1) jobs = 1;
  if (const char* cap_text = std::getenv("MLD1_MAX_JOBS")) {
    int cap = std::atoi(cap_text);
    if (cap >= 1 && jobs > cap) jobs = cap;
  }
  return jobs;
}

unsigned int prune_mask_from(const std::vector<std::string>& disabled) {
  unsigned int mask = MLD1_PRUNE_ALL;
  for (const std::string& rule : disabled) {
    if (rule == "window") mask &= ~MLD1_PRUNE_WINDOW;
    if (rule == "anchors") mask &= ~MLD1_PRUNE_ANCHORS;
    if (rule == "sharp") mask &= ~MLD1_PRUNE_SHARP;
    if (rule == "rank") mask &= ~MLD1_PRUNE_RANK;
    if (rule == "feasible") mask &= ~MLD1_PRUNE_FEASIBLE;
    if (rule == "all") mask = 0;
  }
  return mask;
}

int run_enumerate(int n, int d, bool count_only, int jobs,
                  const std::string& out_path, bool up_to_swap,
                  const std::vector<std::string>& no_prune,
                  unsigned long long budget) {
  mld1_search spec{};
  spec.n = n;
  spec.d = d;
  spec.collect = (count_only && out_path.empty()) ? 0 : 1;
  spec.workers = effective_jobs(jobs);
  spec.node_budget = budget;
  spec.prune_mask = prune_mask_from(no_prune);
  CatalogGuard cat;
  mld1_status status = mld1_enumerate(&spec, &cat.c);
  if (status != MLD1_OK) return report_failure(status);
  if (!out_path.empty()) {
    StringGuard text;
    status = mld1_catalog_format(cat.c, &text.s);
    if (status != MLD1_OK) return report_failure(status);
    std::ofstream out(out_path);
    if (!out) return usage_failure("cannot write " + out_path);
    out << text.s;
  }
  if (count_only) {
    std::printf("%llu\n", mld1_catalog_count(cat.c));
    if (up_to_swap) std::printf("%llu\n", mld1_catalog_swap_classes(cat.c));
  } else if (out_path.empty()) {
    StringGuard text;
    status = mld1_catalog_format(cat.c, &text.s);
    if (status != MLD1_OK) return report_failure(status);
    std::fputs(text.s, stdout);
  }
  return 0;
}

int run_table(int max_n, int jobs, unsigned long long budget, bool long_run) {
  if (max_n > 5 && !long_run) {
    return usage_failure("cells beyond n=5 take hours; pass --long to run them");
  }
  StringGuard report;
  int ok = 0;
  mld1_status status = mld1_verify_table(max_n, effective_jobs(jobs), budget,
                                         &report.s, &ok);
  if (status != MLD1_OK) return report_failure(status);
  std::fputs(report.s, stdout);
  return ok ? 0 : 1;
}

int run_recursive(int n, int jobs) {
  StringGuard report;
  int ok = 0;
  mld1_status status =
      mld1_verify_recursive(n, effective_jobs(jobs), &report.s, &ok);
  if (status != MLD1_OK) return report_failure(status);
  std::fputs(report.s, stdout);
  return ok ? 0 : 1;
}

int run_check(const std::string& path, const std::string& support) {
  StringGuard report;
  int ok = 0;
  mld1_status status;
  if (!support.empty()) {
    status = mld1_check_support(support.c_str(), &report.s, &ok);
  } else {
    std::optional<std::string> text = slurp(path);
    if (!text) return usage_failure("cannot read " + path);
    status = mld1_check_model(text->c_str(), &report.s, &ok);
  }
  if (status != MLD1_OK) return report_failure(status);
  std::fputs(report.s, stdout);
  return ok ? 0 : 1;
}

int run_solve(const std::string& support) {
  StringGuard report;
  ModelGuard witness;
  int ok = 0;
  mld1_status status =
      mld1_solve_support(support.c_str(), &report.s, &ok, &witness.m);
  if (status != MLD1_OK) return report_failure(status);
  if (!ok || !witness.m) {
    std::fputs(report.s, stderr);
    return 1;
  }
  StringGuard text;
  status = mld1_model_format(witness.m, &text.s);
  if (status != MLD1_OK) return report_failure(status);
  std::fputs(text.s, stdout);
  return 0;
}

int run_compose(const std::string& path_a, const std::string& path_b,
                const std::string& at) {
  if (path_a == "-" && path_b == "-") {
    return usage_failure("only one of the two models may come from stdin");
  }
  ModelGuard a, b, composed;
  if (int rc = load_model(path_a, a)) return rc;
  if (int rc = load_model(path_b, b)) return rc;
  mld1_status status;
  if (at.empty()) {
    status = mld1_compose(a.m, b.m, &composed.m);
  } else {
    int nu = 0, mu = 0;
    if (!parse_pair(at, nu, mu)) {
      return usage_failure("--at wants \"nu,mu\"");
    }
    status = mld1_compose_at(a.m, b.m, nu, mu, &composed.m);
  }
  if (status != MLD1_OK) return report_failure(status);
  StringGuard text;
  status = mld1_model_format(composed.m, &text.s);
  if (status != MLD1_OK) return report_failure(status);
  std::fputs(text.s, stdout);
  return 0;
}

int run_unsplit(const std::string& path, const std::string& at,
                const std::string& amount) {
  ModelGuard m, result;
  if (int rc = load_model(path, m)) return rc;
  int nu = 0, mu = 0;
  if (!parse_pair(at, nu, mu)) return usage_failure("--at wants \"nu,mu\"");
  mld1_status status =
      mld1_unsplit(m.m, nu, mu, amount.c_str(), &result.m);
  if (status != MLD1_OK) return report_failure(status);
  StringGuard text;
  status = mld1_model_format(result.m, &text.s);
  if (status != MLD1_OK) return report_failure(status);
  std::fputs(text.s, stdout);
  return 0;
}

int run_diagram(const std::string& path) {
  ModelGuard m;
  if (int rc = load_model(path, m)) return rc;
  StringGuard triangle, sinks, sources;
  mld1_status status = mld1_model_diagram(m.m, &triangle.s);
  if (status != MLD1_OK) return report_failure(status);
  status = mld1_model_sinks(m.m, &sinks.s);
  if (status != MLD1_OK) return report_failure(status);
  status = mld1_model_sources(m.m, &sources.s);
  if (status != MLD1_OK) return report_failure(status);
  std::fputs(triangle.s, stdout);
  std::printf("sinks: %s\n", sinks.s);
  std::printf("sources: %s\n", sources.s);
  return 0;
}

int run_chips(const std::string& path) {
  ModelGuard m;
  if (int rc = load_model(path, m)) return rc;
  StringGuard text;
  mld1_status status = mld1_model_chips(m.m, &text.s);
  if (status != MLD1_OK) return report_failure(status);
  std::fputs(text.s, stdout);
  return 0;
}

int run_mle(const std::string& path, const std::string& counts) {
  ModelGuard m;
  if (int rc = load_model(path, m)) return rc;
  StringGuard value;
  mld1_status status = mld1_model_mle(m.m, counts.c_str(), &value.s);
  if (status != MLD1_OK) return report_failure(status);
  std::printf("%s\n", value.s);
  return 0;
}

int run_family(int n, int d, const std::string& c) {
  FamilyGuard fam;
  mld1_status status = mld1_family_create(n, d, &fam.f);
  if (status != MLD1_OK) return report_failure(status);
  StringGuard text;
  if (c.empty()) {
    status = mld1_family_format(fam.f, &text.s);
    if (status != MLD1_OK) return report_failure(status);
    std::fputs(text.s, stdout);
    return 0;
  }
  ModelGuard member;
  status = mld1_family_instantiate(fam.f, c.c_str(), &member.m);
  if (status != MLD1_OK) return report_failure(status);
  status = mld1_model_format(member.m, &text.s);
  if (status != MLD1_OK) return report_failure(status);
  std::fputs(text.s, stdout);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Discrete statistical models on the unit interval with "
      "maximum-likelihood degree one: construction, verification, "
      "and exhaustive search.\n"
      "Model files are lines of \"nu mu coefficient\" after an \"n d\" "
      "header; \"-\" reads the model from stdin."};
  app.require_subcommand(1);

  int en_n = 0, en_d = 0, en_jobs = 1;
  bool en_count_only = false, en_up_to_swap = false;
  std::string en_out;
  std::vector<std::string> en_no_prune;
  unsigned long long en_budget = 0;
  CLI::App* enumerate =
      app.add_subcommand("enumerate",
                         "List every fundamental model with the given "
                         "state count and degree");
  enumerate->add_option("--n", en_n, "number of states minus one")
      ->required();
  enumerate->add_option("--d", en_d, "degree of the models")->required();
  enumerate->add_flag("--count-only", en_count_only,
                      "print the count instead of the catalog");
  enumerate->add_flag("--up-to-swap", en_up_to_swap,
                      "with --count-only, also print the number of "
                      "orbits under t -> 1-t");
  enumerate->add_option("--jobs", en_jobs, "worker threads (result is "
                        "identical for any value)");
  enumerate->add_option("--out", en_out, "write the catalog to this file");
  enumerate
      ->add_option("--no-prune", en_no_prune,
                   "disable a search cut (slower, same result)")
      ->check(CLI::IsMember(
          {"window", "anchors", "sharp", "rank", "feasible", "all"}));
  enumerate->add_option("--budget", en_budget,
                        "search node budget (default 10^9)");

  int ta_max_n = 0, ta_jobs = 1;
  unsigned long long ta_budget = 0;
  bool ta_long = false;
  CLI::App* table = app.add_subcommand(
      "table", "Recount the census of fundamental models per (n, d) cell "
               "and compare with the stored reference");
  table->add_option("--max-n", ta_max_n, "largest n to recount (1 to 7)")
      ->required();
  table->add_option("--jobs", ta_jobs, "worker threads");
  table->add_option("--budget", ta_budget, "search node budget");
  table->add_flag("--long", ta_long, "allow the multi-hour cells beyond n=5");

  int re_n = 0, re_jobs = 1;
  CLI::App* recursive = app.add_subcommand(
      "recursive", "Check the composition lower bound for the "
                   "degree-(2n-2) count against a fresh search");
  recursive->add_option("--n", re_n, "number of states minus one")
      ->required();
  recursive->add_option("--jobs", re_jobs, "worker threads");

  std::string ch_path, ch_support;
  CLI::App* check = app.add_subcommand(
      "check", "Validate a model file (or bare support) and report "
               "degree, rank, fundamentality, and diagram structure");
  check->add_option("path", ch_path, "model file, or - for stdin");
  check->add_option("--support", ch_support,
                    "bare support \"nu,mu;nu,mu;...\" instead of a file");

  std::string so_support;
  CLI::App* solve = app.add_subcommand(
      "solve", "Solve a support for its scalings and print the model");
  solve->add_option("--support", so_support, "support \"nu,mu;nu,mu;...\"")
      ->required();

  std::string co_a, co_b, co_at;
  CLI::App* compose = app.add_subcommand(
      "compose", "Graft the second model onto a support point of the "
                 "first (default: its top corner)");
  compose->add_option("a", co_a, "model whose corner is replaced")
      ->required();
  compose->add_option("b", co_b, "model grafted on")->required();
  compose->add_option("--at", co_at,
                      "support point \"nu,mu\" holding coefficient >= 1");

  std::string un_path, un_at, un_amount;
  CLI::App* unsplit = app.add_subcommand(
      "unsplit", "Move mass from (nu+1,mu) and (nu,mu+1) onto (nu,mu)");
  unsplit->add_option("path", un_path, "model file, or - for stdin")
      ->required();
  unsplit->add_option("--at", un_at, "target pair \"nu,mu\"")->required();
  unsplit->add_option("--amount", un_amount, "mass to move (rational)")
      ->required();

  std::string di_path;
  CLI::App* diagram = app.add_subcommand(
      "diagram", "Sign triangle of the cofactor of f - 1, with its sinks "
                 "and sources");
  diagram->add_option("path", di_path, "model file, or - for stdin")
      ->required();

  std::string chp_path;
  CLI::App* chips = app.add_subcommand(
      "chips", "Coefficient triangle of f - 1 (\".\" marks zero)");
  chips->add_option("path", chp_path, "model file, or - for stdin")
      ->required();

  std::string ml_path, ml_counts;
  CLI::App* mle = app.add_subcommand(
      "mle", "Exact maximum-likelihood parameter for observed counts");
  mle->add_option("path", ml_path, "model file, or - for stdin")->required();
  mle->add_option("--counts", ml_counts,
                  "comma-separated counts, one per state in canonical "
                  "order")
      ->required();

  int fa_n = 0, fa_d = 0;
  std::string fa_c;
  CLI::App* family = app.add_subcommand(
      "family", "One-parameter family of reduced models (n >= 4, "
                "n <= d <= 2n-4)");
  family->add_option("--n", fa_n, "number of states minus one")->required();
  family->add_option("--d", fa_d, "degree")->required();
  family->add_option("--c", fa_c,
                     "instantiate at this parameter (rational in (0,1))");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (enumerate->parsed()) {
    return run_enumerate(en_n, en_d, en_count_only, en_jobs, en_out,
                         en_up_to_swap, en_no_prune, en_budget);
  }
  if (table->parsed()) return run_table(ta_max_n, ta_jobs, ta_budget, ta_long);
  if (recursive->parsed()) return run_recursive(re_n, re_jobs);
  if (check->parsed()) {
    if (ch_path.empty() == ch_support.empty()) {
      return usage_failure("check wants a model file or --support, not both");
    }
    return run_check(ch_path, ch_support);
  }
  if (solve->parsed()) return run_solve(so_support);
  if (compose->parsed()) return run_compose(co_a, co_b, co_at);
  if (unsplit->parsed()) return run_unsplit(un_path, un_at, un_amount);
  if (diagram->parsed()) return run_diagram(di_path);
  if (chips->parsed()) return run_chips(chp_path);
  if (mle->parsed()) return run_mle(ml_path, ml_counts);
  if (family->parsed()) return run_family(fa_n, fa_d, fa_c);
  return usage_failure("no command given");
}
