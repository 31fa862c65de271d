#pragma once

#include <string>
#include <utility>
#include <vector>

#include "mld1/model.hpp"
#include "mld1/poly.hpp"

namespace mld1 {

enum class Sign { Zero, Plus, Minus };

// Sign grid of the cofactor g = (f - 1) / (x + y - 1) over the triangle
// nu + mu <= d, where d is the model degree; the whole d-diagonal is Zero
// because deg g = d - 1. Cells outside the triangle read as Zero too.
class Diagram {
 public:
  static Diagram of(const Model& m);
  // The grid of a given cofactor (treated as some f's g, so the triangle
  // spans one grade beyond its degree).
  static Diagram of_poly(const Poly& g);

  int degree() const { return degree_; }  // d, one above deg g
  Sign at(Pair p) const;                  // Zero outside the triangle

  // A sink is a cell whose (left, self, below) signs match one of seven
  // patterns like (P, N, P); off-grid neighbors count as Zero. Sources are
  // the sign-flipped counterparts; every model's diagram has the single
  // source (0, 0). Results are sorted in GradedLess order.
  std::vector<Pair> sinks() const;
  std::vector<Pair> sources() const;

  // (A, B): the axis rows of g hold strictly positive values up to these
  // lengths, g(a, 0) > 0 for a < A and g(0, b) > 0 for b < B. Whether
  // zeros follow the positive run (as they must for a model) is
  // check_structure's business.
  std::pair<int, int> axis_cutoffs() const;

 private:
  Diagram() = default;
  int degree_ = 0;
  std::vector<std::vector<Sign>> grid_;  // grid_[mu][nu]
};

// The combinatorial constraints every model's diagram satisfies.
struct StructureReport {
  bool ok = false;
  bool sinks_in_support = false;  // sinks carry positive f coefficients
  bool unique_source = false;     // exactly one source, at the origin
  bool axis_pattern = false;      // positive run then zeros on both axes
  bool sink_bound = false;        // #sinks >= 2 + ceil((d-1)/2)
  bool support_bound = false;     // #support >= #sinks
  int sink_count = 0;
  int source_count = 0;
  std::string detail;  // first violation, empty when ok
};
StructureReport check_structure(const Model& m);

// Quick filter for supports of top degree d = 2n-1 relative to their
// state count: the corners (d,0) and (0,d) are present and alone in grade
// d, no pair (k,0), (0,k) with 0 < k < d appears on both axes, grade d-1
// is inhabited, and (j, d-1-j) is absent for even j. Necessary, not
// sufficient; the caller decides when the top-degree case applies.
bool sharp_support_ok(const std::vector<Pair>& support, int d);

// Triangle of 0/P/N letters, one row per mu from d down to 0, row mu
// listing nu = 0..d-mu.
std::string render_diagram(const Diagram& dia);

// Triangle of the coefficients of f - 1 in the same layout: "." for zero,
// so the origin shows -1 and the support shows the scalings. Cells are
// right-aligned per column and joined by single spaces.
std::string render_chips(const Model& m);
// Inverse of render_chips (tolerant about spacing).
Model parse_chips(const std::string& text);

}  // namespace mld1
