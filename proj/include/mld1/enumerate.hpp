#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mld1/model.hpp"

namespace mld1 {

// Search cuts applied while walking candidate supports. Every cut is
// conservative, so switching any off can only slow the search down, never
// change what it finds; with all of them off the walk checks every
// support of the right size whose degree comes out exactly d, which small
// cells use as a brute-force cross-check.
struct Prunes {
  bool window = true;   // return empty without search when d is outside
                        // n <= d <= 2n-1
  bool anchors = true;  // a nu = 0 point and a mu = 0 point must still be
                        // choosable (the identity fails at t = 1 or t = 0
                        // without them)
  bool sharp = true;    // sharp_support_ok filter when d = 2n-1
  bool rank = true;     // drop branches whose columns are already
                        // dependent (they can never solve uniquely)
  bool feasible = true; // drop branches that cannot reach n+1 points or
                        // degree d with what is left

  static Prunes all_off() { return {false, false, false, false, false}; }
};

struct SearchSpec {
  int n = 1;
  int d = 1;
  bool collect = true;  // keep the models, not only the counts
  int workers = 1;      // top-level branches are dealt out to this many
                        // threads; the result is identical regardless
  std::uint64_t node_budget = 1'000'000'000;  // search tree nodes
  Prunes prunes;
};

// Every fundamental model with n+1 states and degree exactly d (supports
// whose expansion system has a unique, strictly positive solution), in
// lexicographic order of their GradedLess-sorted supports.
struct Catalog {
  int n = 0;
  int d = 0;
  std::uint64_t count = 0;
  std::uint64_t swap_classes = 0;  // orbits under t -> 1-t
  std::vector<Model> models;       // empty when collect was off
};

// Exhaustive search. Throws BudgetError past spec.node_budget nodes.
Catalog enumerate_models(const SearchSpec& spec);

// Census constants for 1 <= n <= 7: reference_counts()[n-1][d-n] is the
// number of fundamental models on n+1 states of degree d.
const std::vector<std::vector<std::uint64_t>>& reference_counts();

struct TableCheck {
  bool ok = false;
  int max_n = 0;
  std::vector<std::vector<std::uint64_t>> counts;  // counts[n-1][d-n]
  std::string detail;  // first mismatch against the reference, if any
};
// Recounts the full census up to max_n and compares with the reference;
// also probes a few out-of-window cells by real search to confirm they
// are empty.
TableCheck verify_table(int max_n, int workers = 1,
                        std::uint64_t node_budget = 1'000'000'000);

struct RecursiveCheck {
  bool ok = false;        // the composition bound holds
  bool equality = false;  // an observation, asserted nowhere
  int n = 0;
  std::uint64_t actual = 0;  // fundamental models of degree 2n-2
  std::uint64_t bound = 0;   // 2 (a_1 a_{n-1} + ... + a_{n-1} a_1)
  std::vector<std::uint64_t> sharp_counts;  // a_1 .. a_{n-1}
  std::string detail;
};
// Counts a_k = |enumerate(k, 2k-1)| for k < n by search, evaluates the
// composition bound, and compares it with the almost-sharp count at n.
RecursiveCheck verify_recursive(int n, int workers = 1);

struct CatalogProperties {
  bool ok = false;
  std::uint64_t checked = 0;  // members revalidated
  std::string detail;         // first violated invariant, empty when ok
};
// Revalidates every member: entries positive and sum to one on the line,
// state count and degree match the cell, supports pairwise distinct, the
// support solves uniquely, diagram structure holds, sharp members pass
// the support filter, and the swap of every member is again a member.
CatalogProperties catalog_properties(const Catalog& cat);

}  // namespace mld1
