#pragma once

#include <string>
#include <vector>

#include "mld1/enumerate.hpp"
#include "mld1/model.hpp"

namespace mld1 {

// Model text: a header line "n d", then n+1 lines "nu mu coefficient",
// with blank lines and #-comments ignored throughout and coefficients
// written as integers or p/q.

// Shape-level parse: header and triples, no model laws. Lets a report
// name the specific law a near-miss file breaks.
struct ModelText {
  int n = 0;
  int d = 0;  // the degree the header claims
  std::vector<Entry> entries;
};
ModelText parse_model_text(const std::string& text);

// Full parse: shape, model laws, and the header degree matching the
// actual one.
Model parse_model(const std::string& text);

// Canonical text form; re-parses to an equal model.
std::string format_model(const Model& m);

// "nu,mu;nu,mu;..." -> pairs, order preserved.
std::vector<Pair> parse_support(const std::string& text);
// "u0,u1,..." -> rationals.
std::vector<Rat> parse_counts(const std::string& text);

// Catalog members in canonical order in the model text format, separated
// by "---" lines, behind a header comment carrying the cell and counts.
std::string format_catalog(const Catalog& cat);

// One term per line with its coefficient affine in the parameter c.
std::string format_family(const Family& fam);

// One line per census cell with the recount, the reference, and
// PASS/FAIL; then a summary line.
std::string format_table(const TableCheck& check);
// The sharp counts, the bound, the almost-sharp count, and whether they
// agree.
std::string format_recursive(const RecursiveCheck& check);

}  // namespace mld1
